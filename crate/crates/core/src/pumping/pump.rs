use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{pairwise_positive, rackoff_extract, ub_set};
use crate::geometry::{collinearity, is_wide};
use crate::model::{Configuration, Path, Run, Semantics, SequentialTransition, SequentialVas, System, Vass};
use crate::oracle::{cover_witness, coverable};
use crate::{Error, Result};

/// B(‖x₀‖, size) = (‖x₀‖ + 1 + size)·(1 + size).
pub fn pump_bound(x0_norm: &BigInt, size: &BigInt) -> BigInt {
    (x0_norm + 1 + size) * (size + 1)
}

/// R(U, M) = 4(U+1)(M+1)².
pub fn rackoff_polynomial(u: &BigInt, m: &BigInt) -> BigInt {
    BigInt::from(4) * (u + 1) * (m + 1) * (m + 1)
}

/// P(‖x₀‖, size) = R(B(‖x₀‖, size), size).
pub fn pumpability_polynomial(x0_norm: &BigInt, size: &BigInt) -> BigInt {
    rackoff_polynomial(&pump_bound(x0_norm, size), size)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// A cycle whose effect is at least 1 everywhere, firable from the
/// configuration. Backward cycles are paths of the reversed system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpCertificate {
    pub cycle: Path,
    pub direction: Direction,
}

impl PumpCertificate {
    fn system(&self, vass: &Vass) -> Vass {
        match self.direction {
            Direction::Forward => vass.clone(),
            Direction::Backward => vass.reverse(),
        }
    }

    pub fn verify(&self, vass: &Vass, config: &Configuration) -> bool {
        let sys = self.system(vass);
        match sys.replay(config, &self.cycle, Semantics::N) {
            Ok(end) => end.state == config.state && (&end.vector - &config.vector).iter().all(|x| *x >= BigInt::one()),
            Err(_) => false,
        }
    }

    /// The cycle as a path of the original system: reversed order for
    /// backward certificates.
    pub fn forward_path(&self) -> Path {
        match self.direction {
            Direction::Forward => self.cycle.clone(),
            Direction::Backward => Path(self.cycle.0.iter().rev().copied().collect()),
        }
    }
}

fn lifted(config: &Configuration) -> Configuration {
    Configuration::new(config.state.clone(), config.vector.add_scalar(&BigInt::one()))
}

/// Some configuration ≥ config + 1 in the same state is reachable
/// (forward) or co-reachable (backward).
pub fn pumpable(vass: &Vass, config: &Configuration, direction: Direction) -> Result<bool> {
    let sys = match direction {
        Direction::Forward => vass.clone(),
        Direction::Backward => vass.reverse(),
    };
    coverable(&sys, config, &lifted(config)).map_err(Error::from)
}

/// A pumping cycle found by coverability search, when one exists.
pub fn find_pump_certificate(
    vass: &Vass,
    config: &Configuration,
    direction: Direction,
    max_states: usize,
) -> Result<Option<PumpCertificate>> {
    if !pumpable(vass, config, direction)? {
        return Ok(None);
    }
    let sys = match direction {
        Direction::Forward => vass.clone(),
        Direction::Backward => vass.reverse(),
    };
    let cycle = cover_witness(&sys, config, &lifted(config), max_states)?
        .ok_or_else(|| Error::SearchLimit(format!("no pumping cycle within {max_states} configurations")))?;
    Ok(Some(PumpCertificate { cycle, direction }))
}

fn require_wide_without_fixed(seq: &SequentialVas) -> Result<()> {
    if !is_wide(&System::Sequential(seq.clone()))? {
        return Err(Error::Precondition("sequential VAS is not wide".into()));
    }
    let base = Vass::vas(seq.dim(), seq.base().to_vec())?;
    if let Some(i) = collinearity(&base).fixed.first() {
        return Err(Error::Precondition(format!("coordinate {i} is fixed")));
    }
    Ok(())
}

fn state_number(seq: &SequentialVas, c: &Configuration) -> usize {
    (0..=seq.bridges().len())
        .find(|&j| SequentialVas::state(j) == c.state)
        .expect("a state of the expansion")
}

/// ρ = t^H π₀…π_ℓ: the run's loops replayed at the end state, preceded by H
/// copies of a base effect positive on the whole block.
pub fn pump_witness(
    seq: &SequentialVas,
    run: &Run,
    bval: &BigInt,
    positive_block: &[usize],
) -> Result<Option<PumpCertificate>> {
    require_wide_without_fixed(seq)?;
    let vass = seq.expand();
    let end = run.end(&vass);
    if let Some(i) = (0..seq.dim()).find(|i| !positive_block.contains(i) && end.vector[*i] < *bval) {
        return Err(Error::Precondition(format!(
            "coordinate {i} outside the block is below {bval}"
        )));
    }
    let base = Vass::vas(seq.dim(), seq.base().to_vec())?;
    if !pairwise_positive(positive_block, &collinearity(&base)) {
        return Err(Error::Precondition("block is not pairwise positively collinear".into()));
    }
    let q = state_number(seq, &end);
    let mut cycle = Vec::new();
    if !positive_block.is_empty() {
        let t = seq
            .base()
            .iter()
            .position(|a| positive_block.iter().all(|&i| a[i].is_positive()))
            .ok_or_else(|| Error::Internal("no base effect is positive on the block".into()))?;
        let h = run.start().vector.norm() + 1 + vass.size();
        let h = usize::try_from(h).map_err(|_| Error::Capacity {
            what: "pumping prefix length".into(),
            cap: usize::MAX,
        })?;
        cycle.extend(std::iter::repeat_n(seq.loop_index(q, t), h));
    }
    for &k in run.path().indices() {
        if let SequentialTransition::Loop { base, .. } = seq.classify(k) {
            cycle.push(seq.loop_index(q, base));
        }
    }
    let cert = PumpCertificate {
        cycle: Path(cycle),
        direction: Direction::Forward,
    };
    Ok(cert.verify(&vass, &end).then_some(cert))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpExtraction {
    pub run: Run,
    pub config: Configuration,
    pub certificate: PumpCertificate,
}

/// Cuts self-loops out of a run until it ends in a certified pumpable
/// configuration, when ub(run, P) has at least d − 1 coordinates.
pub fn extract_pumpable(seq: &SequentialVas, run: &Run, p_value: &BigInt) -> Result<Option<PumpExtraction>> {
    require_wide_without_fixed(seq)?;
    let vass = seq.expand();
    let d = seq.dim();
    if (ub_set(&vass, run, p_value).len() as i64) < d as i64 - 1 {
        return Ok(None);
    }
    let size = vass.size();
    let b = pump_bound(&run.start().vector.norm(), &size);
    let extracted = rackoff_extract(&vass, run, &b, &size)?;
    let base = Vass::vas(d, seq.base().to_vec())?;
    let col = collinearity(&base);
    for candidate in [&extracted.run, run] {
        let end = candidate.end(&vass);
        let block: Vec<usize> = (0..d).filter(|&i| end.vector[i] < b).collect();
        if !pairwise_positive(&block, &col) {
            continue;
        }
        if let Some(certificate) = pump_witness(seq, candidate, &b, &block)? {
            return Ok(Some(PumpExtraction {
                run: candidate.clone(),
                config: end,
                certificate,
            }));
        }
    }
    Ok(None)
}
