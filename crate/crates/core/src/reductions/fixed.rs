use num_traits::Signed;

use super::{as_sequential, join_usize, Provenance, ReductionOutput, Relation};
use crate::geometry::collinearity;
use crate::model::{ReachInstance, SequentialVas, Vass};
use crate::Result;

/// Drops coordinates no base effect touches. Those evolve only through the
/// bridges, so they either replay to the target value without going
/// negative or the target is unreachable.
pub fn remove_fixed_coordinates(inst: &ReachInstance) -> Result<ReductionOutput> {
    let seq = as_sequential(inst)?;
    let d = seq.dim();
    let fixed = collinearity(&Vass::vas(d, seq.base().to_vec())?).fixed;
    let provenance = Provenance::new("remove_fixed_coordinates").with("fixed", join_usize(&fixed));
    let (s, t) = (&inst.source().vector, &inst.target().vector);
    for &i in &fixed {
        let mut x = s[i].clone();
        for (k, a) in seq.bridges().iter().enumerate() {
            x += &a[i];
            if x.is_negative() {
                return Ok(ReductionOutput::unreachable(
                    format!("bridge {} drives fixed coordinate {i} negative", k + 1),
                    Relation::LenEqual,
                    provenance,
                ));
            }
        }
        if x != t[i] {
            return Ok(ReductionOutput::unreachable(
                format!("fixed coordinate {i} ends at {x}, target needs {}", t[i]),
                Relation::LenEqual,
                provenance,
            ));
        }
    }
    let out = SequentialVas::new(
        d - fixed.len(),
        seq.base().iter().map(|a| a.without(&fixed)).collect(),
        seq.bridges().iter().map(|a| a.without(&fixed)).collect(),
    )?;
    let instance = ReachInstance::sequential(out, s.without(&fixed), t.without(&fixed))?;
    Ok(ReductionOutput::instance(instance, Relation::LenEqual, provenance))
}
