//! Constructions turning one reachability instance into others, each tagged
//! with the relation between length sets it guarantees.

mod encode;
mod fixed;
mod gadget;
mod nonwide;
mod planar;
mod subset_sum;

use std::fmt;

pub use encode::{
    concat_two_encodings, eliminate_negative_collinear, encode_bounded_coordinates, negative_collinear_bound,
};
pub use fixed::remove_fixed_coordinates;
pub use gadget::{gadget_nonneg, NonnegGadget};
pub use nonwide::{decompose_nonwide, WideFamily};
pub use planar::{geo2d_to_2vass, geo2vas_to_4vass, make_projective, pad_to_projective, DEFAULT_SHIFT_CAP};
pub use subset_sum::subset_sum_instance;

use crate::model::{Configuration, ReachInstance, SequentialVas, StateId, System, Vass};
use crate::vector::IntVector;
use crate::{Error, Result};

/// What the output's length sets say about the original's.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    LenEqual,
    /// The union over the family equals the original.
    LenCapturedByUnion,
    /// Every output length ℓ yields an original run of length ℓ − offset.
    LenLowerBoundsOriginal {
        offset: usize,
    },
    /// Output lengths are exactly the original ones times the factor.
    LenScaled(usize),
    ReachEquivalent,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::LenEqual => write!(f, "len-equal"),
            Relation::LenCapturedByUnion => write!(f, "len-captured-by-union"),
            Relation::LenLowerBoundsOriginal { offset: 0 } => write!(f, "len-lower-bounds-original"),
            Relation::LenLowerBoundsOriginal { offset } => write!(f, "len-lower-bounds-original +{offset}"),
            Relation::LenScaled(k) => write!(f, "len-scaled {k}"),
            Relation::ReachEquivalent => write!(f, "reach-equivalent"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub construction: &'static str,
    pub parameters: Vec<(String, String)>,
}

impl Provenance {
    fn new(construction: &'static str) -> Self {
        Provenance {
            construction,
            parameters: Vec::new(),
        }
    }

    fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.construction)?;
        for (k, v) in &self.parameters {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Produced {
    Instance(ReachInstance),
    /// The target is provably unreachable; the length set is empty.
    Unreachable {
        reason: String,
    },
    Family(WideFamily),
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub produced: Produced,
    pub relation: Relation,
    pub provenance: Provenance,
}

impl ReductionOutput {
    fn instance(instance: ReachInstance, relation: Relation, provenance: Provenance) -> Self {
        ReductionOutput {
            produced: Produced::Instance(instance),
            relation,
            provenance,
        }
    }

    fn unreachable(reason: impl Into<String>, relation: Relation, provenance: Provenance) -> Self {
        ReductionOutput {
            produced: Produced::Unreachable { reason: reason.into() },
            relation,
            provenance,
        }
    }

    pub fn as_instance(&self) -> Option<&ReachInstance> {
        match &self.produced {
            Produced::Instance(i) => Some(i),
            _ => None,
        }
    }

    pub fn is_unreachable(&self) -> bool {
        matches!(self.produced, Produced::Unreachable { .. })
    }
}

/// Two isolated states: no run connects source and target.
pub fn unreachable_instance(dim: usize) -> ReachInstance {
    let (p, q) = (StateId::new("source"), StateId::new("sink"));
    let v = Vass::new(dim, [p.clone(), q.clone()], Vec::new()).expect("no transitions");
    ReachInstance::from_vass(
        v,
        Configuration::new(p, IntVector::zeros(dim)),
        Configuration::new(q, IntVector::zeros(dim)),
    )
    .expect("valid endpoints")
}

/// Sequential view of an instance: sequential systems as they are, single
/// state VAS as sequential VAS without bridges.
fn as_sequential(inst: &ReachInstance) -> Result<SequentialVas> {
    match inst.system() {
        System::Sequential(s) => Ok(s.clone()),
        System::Vass(v) if v.states().len() == 1 => Ok(SequentialVas::new(v.dim(), v.effects(), Vec::new())?),
        System::Vass(_) => Err(Error::UnsupportedShape("expected a VAS or sequential VAS".into())),
    }
}

fn join(values: &[num_bigint::BigInt]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn join_usize(values: &[usize]) -> String {
    format!(
        "[{}]",
        values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    )
}

#[cfg(test)]
mod tests;
