use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{combinations, cone_equals_span, in_cone, rank, strict_homogeneous_solution, LinalgError};
use crate::vector::IntVector;
use crate::{Error, Result};

/// A nonzero n with ⟨n, x⟩ ≥ 0 on every generator, whose zero set spans a
/// cone equal to its own span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalVectorCertificate {
    pub n: IntVector,
    /// Indices of generators orthogonal to n.
    pub zero_set: Vec<usize>,
}

impl NormalVectorCertificate {
    /// Checks all conditions, including the norm bound, against `xs`.
    pub fn verify(&self, xs: &[IntVector]) -> bool {
        if self.n.is_zero() || self.n.norm() > farkas_bound(xs) {
            return false;
        }
        let mut zero = Vec::new();
        for (k, x) in xs.iter().enumerate() {
            let p = self.n.inner(x);
            if p.is_negative() {
                return false;
            }
            if p.is_zero() {
                zero.push(k);
            }
        }
        let members: Vec<IntVector> = zero.iter().map(|&k| xs[k].clone()).collect();
        zero == self.zero_set && cone_equals_span(&members)
    }
}

/// (d+1)·(r‖X‖)^r with r the rank of X.
pub fn farkas_bound(xs: &[IntVector]) -> BigInt {
    let Some(first) = xs.first() else {
        return BigInt::zero();
    };
    let d = first.dim();
    let r = rank(d, xs);
    let norm = xs.iter().map(IntVector::norm).max().unwrap_or_default();
    BigInt::from(d + 1) * num_traits::pow(BigInt::from(r) * norm, r)
}

fn solve(xs: &[IntVector], zero: &[usize], bound: &BigInt) -> Result<Option<IntVector>> {
    let d = xs[0].dim();
    let r0: Vec<IntVector> = zero.iter().map(|&k| xs[k].clone()).collect();
    let r1: Vec<IntVector> = (0..xs.len())
        .filter(|k| !zero.contains(k))
        .map(|k| xs[k].clone())
        .collect();
    strict_homogeneous_solution(&r0, &r1, d, bound).map_err(|e| match e {
        LinalgError::NodeLimit(n) => Error::SearchLimit(format!("normal vector search after {n} nodes")),
        other => Error::Internal(other.to_string()),
    })
}

/// The zero set is taken to be the generators lying in the lineality space of
/// cone(X), i.e. those whose negation is also in the cone; then n solves
/// X₀·n = 0, (X∖X₀)·n ≥ 1 within the norm bound.
pub fn farkas_normal_vector(xs: &[IntVector]) -> Result<NormalVectorCertificate> {
    if cone_equals_span(xs) {
        return Err(Error::Precondition(
            "cone(X) equals span(X); no normal vector exists".into(),
        ));
    }
    let bound = farkas_bound(xs);
    let lineal: Vec<usize> = (0..xs.len()).filter(|&k| in_cone(&-&xs[k], xs).is_some()).collect();
    if let Some(n) = solve(xs, &lineal, &bound)? {
        return Ok(NormalVectorCertificate { n, zero_set: lineal });
    }
    // Not expected to run: try every other closed zero set, largest first.
    if xs.len() > 16 {
        return Err(Error::Internal("normal vector not found from the lineality set".into()));
    }
    for size in (0..xs.len()).rev() {
        for zero in combinations(xs.len(), size) {
            let members: Vec<IntVector> = zero.iter().map(|&k| xs[k].clone()).collect();
            if zero == lineal || !cone_equals_span(&members) {
                continue;
            }
            if let Some(n) = solve(xs, &zero, &bound)? {
                return Ok(NormalVectorCertificate { n, zero_set: zero });
            }
        }
    }
    Err(Error::Internal("no normal vector within the norm bound".into()))
}
