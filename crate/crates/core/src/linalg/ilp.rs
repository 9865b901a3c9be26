//! Bounded integer feasibility: lattice pre-check plus LP-guided branch and bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::lp::{solve_lp, Cmp, Constraint, LinearProgram, LpOutcome};
use super::{clear_denominators, common_denominator, rat, LinalgError, Rational, RationalMatrix};
use crate::vector::IntVector;

const NODE_LIMIT: usize = 200_000;

/// Integer variables boxed by `lower ≤ x ≤ upper`.
#[derive(Clone, Debug)]
pub struct IntegerProgram {
    pub constraints: Vec<Constraint>,
    pub lower: Vec<BigInt>,
    pub upper: Vec<BigInt>,
    /// Minimized over the LP relaxation at every node; guides toward small solutions.
    pub minimize: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IlpOutcome {
    Found(Vec<BigInt>),
    Infeasible,
    NodeLimit,
}

pub fn solve_integer(ip: &IntegerProgram, node_limit: usize) -> IlpOutcome {
    let n = ip.lower.len();
    let mut stack = vec![(ip.lower.clone(), ip.upper.clone())];
    let mut nodes = 0;
    while let Some((lo, hi)) = stack.pop() {
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            continue;
        }
        nodes += 1;
        if nodes > node_limit {
            return IlpOutcome::NodeLimit;
        }
        // Substitute x = lo + y with 0 ≤ y ≤ hi − lo.
        let mut constraints = Vec::with_capacity(ip.constraints.len() + n);
        for c in &ip.constraints {
            let shift: Rational = c.coeffs.iter().zip(&lo).map(|(a, l)| a * rat(l)).sum();
            constraints.push(Constraint {
                coeffs: c.coeffs.clone(),
                cmp: c.cmp,
                rhs: &c.rhs - shift,
            });
        }
        for k in 0..n {
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[k] = Rational::one();
            constraints.push(Constraint {
                coeffs,
                cmp: Cmp::Le,
                rhs: rat(&(&hi[k] - &lo[k])),
            });
        }
        let lp = LinearProgram {
            vars: n,
            constraints,
            minimize: ip.minimize.clone(),
        };
        let y = match solve_lp(&lp) {
            LpOutcome::Optimal(y) => y,
            _ => continue,
        };
        match y.iter().position(|v| !v.is_integer()) {
            None => {
                return IlpOutcome::Found(y.iter().zip(&lo).map(|(v, l)| v.to_integer() + l).collect());
            }
            Some(k) => {
                let v = &y[k] + rat(&lo[k]);
                let mut up_lo = lo.clone();
                up_lo[k] = v.ceil().to_integer();
                stack.push((up_lo, hi.clone()));
                let mut down_hi = hi;
                down_hi[k] = v.floor().to_integer();
                stack.push((lo, down_hi));
            }
        }
    }
    IlpOutcome::Infeasible
}

/// Whether `b` lies in the integer lattice spanned by the columns.
pub fn integer_lattice_contains(columns: &[Vec<BigInt>], b: &[BigInt]) -> bool {
    let m = b.len();
    let mut remaining: Vec<Vec<BigInt>> = columns
        .iter()
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut residual = b.to_vec();
    for r in 0..m {
        loop {
            let nz: Vec<usize> = (0..remaining.len()).filter(|&k| !remaining[k][r].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let s = *nz.iter().min_by_key(|&&k| remaining[k][r].abs()).expect("nonempty");
            let pivot = remaining[s].clone();
            for &k in &nz {
                if k != s {
                    let q = remaining[k][r].div_floor(&pivot[r]);
                    for (a, p) in remaining[k].iter_mut().zip(&pivot) {
                        *a -= &q * p;
                    }
                }
            }
        }
        match (0..remaining.len()).find(|&k| !remaining[k][r].is_zero()) {
            Some(k) => {
                let col = remaining.remove(k);
                if !residual[r].is_multiple_of(&col[r]) {
                    return false;
                }
                let q = &residual[r] / &col[r];
                for (a, c) in residual.iter_mut().zip(&col) {
                    *a -= &q * c;
                }
            }
            None => {
                if !residual[r].is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// λ ∈ N^cols with Aλ = b and ‖λ‖ ≤ bound, preferring small Σλ.
pub fn nonneg_integer_solution(
    a: &RationalMatrix,
    b: &IntVector,
    bound: &BigInt,
) -> Result<Option<IntVector>, LinalgError> {
    if b.dim() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            found: b.dim(),
        });
    }
    if bound.is_negative() {
        return Ok(None);
    }
    // Integer rows for the lattice test.
    let mut int_cols = vec![vec![BigInt::zero(); a.rows()]; a.cols()];
    let mut int_b = Vec::with_capacity(a.rows());
    for r in 0..a.rows() {
        let mut row = a.row(r).to_vec();
        row.push(rat(&b[r]));
        let (scaled, _) = clear_denominators(&row);
        for (c, col) in int_cols.iter_mut().enumerate() {
            col[r] = scaled[c].clone();
        }
        int_b.push(scaled[a.cols()].clone());
    }
    if !integer_lattice_contains(&int_cols, &int_b) {
        return Ok(None);
    }
    let constraints = (0..a.rows())
        .map(|r| Constraint {
            coeffs: a.row(r).to_vec(),
            cmp: Cmp::Eq,
            rhs: rat(&b[r]),
        })
        .collect();
    let ip = IntegerProgram {
        constraints,
        lower: vec![BigInt::zero(); a.cols()],
        upper: vec![bound.clone(); a.cols()],
        minimize: Some(vec![Rational::one(); a.cols()]),
    };
    match solve_integer(&ip, NODE_LIMIT) {
        IlpOutcome::Found(x) => Ok(Some(IntVector::new(x))),
        IlpOutcome::Infeasible => Ok(None),
        IlpOutcome::NodeLimit => Err(LinalgError::NodeLimit(NODE_LIMIT)),
    }
}

/// Integral n with ‖n‖ ≤ bound, R0·n = 0 and R1·n ≥ 1 row-wise.
///
/// First minimizes ‖n‖₁ over the rationals and scales to an integer point;
/// falls back to a boxed integer search when that point is too long.
pub fn strict_homogeneous_solution(
    r0: &[IntVector],
    r1: &[IntVector],
    dim: usize,
    bound: &BigInt,
) -> Result<Option<IntVector>, LinalgError> {
    for row in r0.iter().chain(r1) {
        if row.dim() != dim {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                found: row.dim(),
            });
        }
    }
    // n = p − q with p, q ≥ 0.
    let split = |row: &IntVector| -> Vec<Rational> {
        let mut c: Vec<Rational> = row.iter().map(rat).collect();
        c.extend(row.iter().map(|x| rat(&-x)));
        c
    };
    let mut constraints = Vec::new();
    for row in r0 {
        constraints.push(Constraint {
            coeffs: split(row),
            cmp: Cmp::Eq,
            rhs: Rational::zero(),
        });
    }
    for row in r1 {
        constraints.push(Constraint {
            coeffs: split(row),
            cmp: Cmp::Ge,
            rhs: Rational::one(),
        });
    }
    let lp = LinearProgram {
        vars: 2 * dim,
        constraints: constraints.clone(),
        minimize: Some(vec![Rational::one(); 2 * dim]),
    };
    let x = match solve_lp(&lp) {
        LpOutcome::Optimal(x) => x,
        _ => return Ok(None),
    };
    let n: Vec<Rational> = (0..dim).map(|i| &x[i] - &x[dim + i]).collect();
    let l = common_denominator(&n);
    let candidate = IntVector::new(n.iter().map(|v| (v * rat(&l)).to_integer()).collect());
    if candidate.norm() <= *bound {
        return Ok(Some(candidate));
    }
    let constraints = r0
        .iter()
        .map(|row| Constraint {
            coeffs: row.iter().map(rat).collect(),
            cmp: Cmp::Eq,
            rhs: Rational::zero(),
        })
        .chain(r1.iter().map(|row| Constraint {
            coeffs: row.iter().map(rat).collect(),
            cmp: Cmp::Ge,
            rhs: Rational::one(),
        }))
        .collect();
    let ip = IntegerProgram {
        constraints,
        lower: vec![-bound.clone(); dim],
        upper: vec![bound.clone(); dim],
        minimize: None,
    };
    match solve_integer(&ip, NODE_LIMIT) {
        IlpOutcome::Found(v) => Ok(Some(IntVector::new(v))),
        IlpOutcome::Infeasible => Ok(None),
        IlpOutcome::NodeLimit => Err(LinalgError::NodeLimit(NODE_LIMIT)),
    }
}
