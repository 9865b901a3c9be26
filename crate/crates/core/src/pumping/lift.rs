use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::pump::{Direction, PumpCertificate};
use crate::linalg::{in_cone, nonneg_integer_solution, LinalgError, RationalMatrix};
use crate::model::{Configuration, Path, Run, Semantics, SequentialVas};
use crate::vector::IntVector;
use crate::{Error, Result};

/// Longest lifted run this module will materialise.
const MAX_LIFT_LEN: usize = 50_000_000;

/// Bridges in order, then the base multiset λ with Aλ = y − x − Σbridges as
/// self-loops on the last state.
pub fn short_z_run(seq: &SequentialVas, x: &IntVector, y: &IntVector, bound: &BigInt) -> Result<Option<Path>> {
    let d = seq.dim();
    let rhs = &(y - x) - &seq.bridge_sum();
    let a = RationalMatrix::from_columns(d, seq.base());
    let lambda = match nonneg_integer_solution(&a, &rhs, bound) {
        Ok(Some(l)) => l,
        Ok(None) => return Ok(None),
        Err(LinalgError::NodeLimit(n)) => return Err(Error::SearchLimit(format!("Z-run search after {n} nodes"))),
        Err(e) => return Err(Error::Internal(e.to_string())),
    };
    let k = seq.bridges().len();
    let mut path: Vec<usize> = (1..=k).map(|i| seq.bridge_index(i)).collect();
    for (b, count) in lambda.iter().enumerate() {
        let count = count.to_usize().ok_or_else(|| Error::Capacity {
            what: "self-loop multiplicity".into(),
            cap: usize::MAX,
        })?;
        path.extend(std::iter::repeat_n(seq.loop_index(k, b), count));
    }
    Ok(Some(Path(path)))
}

fn count(x: &BigInt, what: &str) -> Result<usize> {
    x.to_usize()
        .filter(|&n| n <= MAX_LIFT_LEN)
        .ok_or_else(|| Error::Capacity {
            what: what.into(),
            cap: MAX_LIFT_LEN,
        })
}

fn repeat(p: &Path, times: usize) -> Result<Path> {
    if p.len().saturating_mul(times) > MAX_LIFT_LEN {
        return Err(Error::Capacity {
            what: "lifted run length".into(),
            cap: MAX_LIFT_LEN,
        });
    }
    Ok(p.repeat(times))
}

/// Turns a Z-run from a forward pumpable source to a backward pumpable
/// target into a run: ρ = (θ₁^{n₁λ₀} o^{n₁})^{n₂} ς θ₂^{n₁n₂λ₀}, where o
/// realises λ₀·(−Δθ₂ − Δθ₁) with base self-loops on the source state.
pub fn lift_z_run(
    seq: &SequentialVas,
    x: &IntVector,
    theta1: &PumpCertificate,
    y: &IntVector,
    theta2: &PumpCertificate,
    zpath: &Path,
) -> Result<Run> {
    let vass = seq.expand();
    let source = Configuration::new(seq.source_state(), x.clone());
    let target = Configuration::new(seq.target_state(), y.clone());
    if vass.replay(&source, zpath, Semantics::Z)? != target {
        return Err(Error::Precondition("zpath does not Z-reach the target".into()));
    }
    if let Ok(run) = Run::new(&vass, source.clone(), zpath.clone()) {
        return Ok(run);
    }
    if theta1.direction != Direction::Forward || !theta1.verify(&vass, &source) {
        return Err(Error::Precondition(
            "θ₁ is not a forward pumping cycle of the source".into(),
        ));
    }
    if theta2.direction != Direction::Backward || !theta2.verify(&vass, &target) {
        return Err(Error::Precondition(
            "θ₂ is not a backward pumping cycle of the target".into(),
        ));
    }
    let t1 = theta1.forward_path();
    let t2 = theta2.forward_path();
    let d1 = vass.effect(&t1)?;
    let d2 = vass.effect(&t2)?;
    let goal = -&(&d2 + &d1);
    let cert = in_cone(&goal, seq.base())
        .ok_or_else(|| Error::InfeasibleLift("−Δθ₂ − Δθ₁ is outside the cone of base effects".into()))?;
    let lambda0 = cert
        .coefficients
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut o = Vec::new();
    for (b, c) in cert.coefficients.iter().enumerate() {
        let times = count(
            &(c * BigRational::from_integer(lambda0.clone())).to_integer(),
            "cycle multiplicity",
        )?;
        if o.len().saturating_add(times) > MAX_LIFT_LEN {
            return Err(Error::Capacity {
                what: "lifted run length".into(),
                cap: MAX_LIFT_LEN,
            });
        }
        o.extend(std::iter::repeat_n(seq.loop_index(0, b), times));
    }
    let o = Path(o);
    let n1 = vass.drop_vector(&o)?.norm().max(BigInt::one());
    let n1l0 = count(&(&n1 * &lambda0), "pumping repetitions")?;
    let theta1_prime = repeat(&t1, n1l0)?.then(&repeat(&o, count(&n1, "cycle repetitions")?)?);
    // Prefer the short Z-path when it is shorter than the given one.
    let m = &vass.size() + BigInt::from(seq.dim()) * (x.norm() + y.norm() + 1);
    let r = crate::linalg::rank(seq.dim(), seq.base());
    let pottier = num_traits::pow(m + 1, r + 1);
    let varsigma = match short_z_run(seq, x, y, &pottier) {
        Ok(Some(p)) if p.len() < zpath.len() => p,
        _ => zpath.clone(),
    };
    let n2 = BigInt::from(varsigma.len()) * vass.norm();
    let n2 = count(&n2, "lift repetitions")?;
    let tail = count(&(BigInt::from(n1l0) * BigInt::from(n2)), "backward repetitions")?;
    let path = repeat(&theta1_prime, n2)?.then(&varsigma).then(&repeat(&t2, tail)?);
    if path.len() > MAX_LIFT_LEN {
        return Err(Error::Capacity {
            what: "lifted run length".into(),
            cap: MAX_LIFT_LEN,
        });
    }
    let run = Run::new(&vass, source, path).map_err(|e| Error::Internal(format!("lifted path is not a run: {e}")))?;
    if run.end(&vass) != target {
        return Err(Error::Internal("lifted run misses the target".into()));
    }
    Ok(run)
}
