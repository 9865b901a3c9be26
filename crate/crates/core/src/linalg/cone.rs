//! Cone membership, cone-versus-span, and minimal generators in the plane.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::lp::{solve_lp, Cmp, Constraint, LinearProgram, LpOutcome};
use super::{combinations, rat, Rational};
use crate::vector::IntVector;

/// Nonnegative coefficients, one per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeMembershipCertificate {
    pub coefficients: Vec<Rational>,
}

impl ConeMembershipCertificate {
    /// Exact re-substitution.
    pub fn verifies(&self, x: &IntVector, generators: &[IntVector]) -> bool {
        if self.coefficients.len() != generators.len() || self.coefficients.iter().any(|c| c.is_negative()) {
            return false;
        }
        (0..x.dim()).all(|i| {
            let s: Rational = generators
                .iter()
                .zip(&self.coefficients)
                .map(|(g, c)| c * rat(&g[i]))
                .sum();
            s == rat(&x[i])
        })
    }
}

pub fn in_cone(x: &IntVector, generators: &[IntVector]) -> Option<ConeMembershipCertificate> {
    let d = x.dim();
    let constraints = (0..d)
        .map(|i| Constraint {
            coeffs: generators.iter().map(|g| rat(&g[i])).collect(),
            cmp: Cmp::Eq,
            rhs: rat(&x[i]),
        })
        .collect();
    let lp = LinearProgram {
        vars: generators.len(),
        constraints,
        minimize: None,
    };
    match solve_lp(&lp) {
        LpOutcome::Optimal(coefficients) => Some(ConeMembershipCertificate { coefficients }),
        _ => None,
    }
}

/// cone(G) = span(G), tested as −g ∈ cone(G) for every generator g.
pub fn cone_equals_span(generators: &[IntVector]) -> bool {
    generators.iter().all(|g| in_cone(&-g, generators).is_some())
}

/// a₀b₁ − a₁b₀ of two planar vectors.
pub fn cross(a: &IntVector, b: &IntVector) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn same_ray(a: &IntVector, b: &IntVector) -> bool {
    cross(a, b).is_zero() && a.inner(b).is_positive()
}

/// Exact planar cone membership: the zero vector, a generator's ray, or a
/// nonnegative combination of two independent generators.
pub fn in_cone_2d(r: &IntVector, generators: &[IntVector]) -> bool {
    if r.is_zero() {
        return true;
    }
    if generators.iter().any(|g| same_ray(r, g)) {
        return true;
    }
    for (a, g1) in generators.iter().enumerate() {
        for g2 in &generators[a + 1..] {
            let det = cross(g1, g2);
            if det.is_zero() {
                continue;
            }
            let s1 = cross(r, g2);
            let s2 = cross(g1, r);
            let ok = |s: &BigInt| s.is_zero() || s.signum() == det.signum();
            if ok(&s1) && ok(&s2) {
                return true;
            }
        }
    }
    false
}

/// Smallest index set generating the same planar cone; among parallel rays
/// the lowest index represents, and among minimal sets the lexicographically
/// first wins.
pub fn minimal_cone_generators_2d(vectors: &[IntVector]) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        assert_eq!(v.dim(), 2, "planar vectors expected");
        if v.is_zero() || reps.iter().any(|&j| same_ray(&vectors[j], v)) {
            continue;
        }
        reps.push(i);
    }
    let rays: Vec<IntVector> = reps.iter().map(|&i| vectors[i].clone()).collect();
    for k in 0..=rays.len() {
        for combo in combinations(rays.len(), k) {
            let gens: Vec<IntVector> = combo.iter().map(|&c| rays[c].clone()).collect();
            if rays.iter().all(|r| in_cone_2d(r, &gens)) {
                return combo.iter().map(|&c| reps[c]).collect();
            }
        }
    }
    unreachable!("the full ray set generates its own cone")
}
