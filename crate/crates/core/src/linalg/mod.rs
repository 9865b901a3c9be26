//! Exact rational linear algebra and small integer feasibility problems.

mod cone;
mod ilp;
mod lp;

pub use cone::{cone_equals_span, cross, in_cone, in_cone_2d, minimal_cone_generators_2d, ConeMembershipCertificate};
pub use ilp::{
    integer_lattice_contains, nonneg_integer_solution, solve_integer, strict_homogeneous_solution, IlpOutcome,
    IntegerProgram,
};
pub use lp::{solve_lp, Cmp, Constraint, LinearProgram, LpOutcome};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::vector::IntVector;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("branch-and-bound node limit {0} reached")]
    NodeLimit(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub fn rat(x: &BigInt) -> Rational {
    Rational::from_integer(x.clone())
}

pub fn to_rational(v: &IntVector) -> Vec<Rational> {
    v.iter().map(rat).collect()
}

/// Least common multiple of the denominators.
pub fn common_denominator(xs: &[Rational]) -> BigInt {
    xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales by the common denominator; returns the integer vector and the factor.
pub fn clear_denominators(xs: &[Rational]) -> (IntVector, BigInt) {
    let l = common_denominator(xs);
    let v = xs.iter().map(|x| (x * rat(&l)).to_integer()).collect();
    (IntVector::new(v), l)
}

/// Dense row-major matrix of normalized rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "matrix entry count");
        RationalMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    /// Matrix whose columns are the given vectors; `rows` is their common dimension.
    pub fn from_columns(rows: usize, columns: &[IntVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.dim(), rows, "column dimension");
            for r in 0..rows {
                m.entries[r * m.cols + c] = rat(&v[r]);
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[IntVector]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for v in rows {
            assert_eq!(v.dim(), cols, "row dimension");
            entries.extend(to_rational(v));
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Incremental reduced row echelon form for span queries.
#[derive(Clone, Debug)]
pub struct SpanTracker {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl SpanTracker {
    pub fn new(dim: usize) -> Self {
        SpanTracker { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &IntVector) -> Vec<Rational> {
        assert_eq!(v.dim(), self.dim, "span query dimension");
        let mut r = to_rational(v);
        for (p, row) in &self.rows {
            if !r[*p].is_zero() {
                let f = r[*p].clone();
                for (a, b) in r.iter_mut().zip(row) {
                    *a -= &f * b;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns whether it was independent.
    pub fn insert(&mut self, v: &IntVector) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = r[p].clone();
        for a in r.iter_mut() {
            *a /= &lead;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (a, b) in row.iter_mut().zip(&r) {
                    *a -= &f * b;
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanBasis {
    /// A maximal independent subset, taken greedily in input order.
    pub basis: Vec<IntVector>,
    pub indices: Vec<usize>,
    pub rank: usize,
}

pub fn span_basis(dim: usize, vectors: &[IntVector]) -> SpanBasis {
    let mut t = SpanTracker::new(dim);
    let mut basis = Vec::new();
    let mut indices = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if t.insert(v) {
            basis.push(v.clone());
            indices.push(i);
        }
    }
    SpanBasis {
        rank: basis.len(),
        basis,
        indices,
    }
}

pub fn rank(dim: usize, vectors: &[IntVector]) -> usize {
    span_basis(dim, vectors).rank
}

pub fn in_span(x: &IntVector, vectors: &[IntVector]) -> bool {
    let mut t = SpanTracker::new(x.dim());
    for v in vectors {
        t.insert(v);
    }
    t.contains(x)
}

/// Whether two families span the same subspace.
pub fn same_span(dim: usize, a: &[IntVector], b: &[IntVector]) -> bool {
    let ra = rank(dim, a);
    ra == rank(dim, b) && b.iter().all(|v| in_span(v, a)) && a.iter().all(|v| in_span(v, b))
}

/// Combinations of `k` out of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    #[test]
    fn span_examples() {
        assert_eq!(span_basis(2, &[v(&[1, 0]), v(&[0, 1])]).rank, 2);
        assert_eq!(span_basis(2, &[v(&[1, 1]), v(&[2, 2])]).rank, 1);
        let empty = span_basis(2, &[]);
        assert_eq!(empty.rank, 0);
        assert!(empty.basis.is_empty());
    }

    #[test]
    fn span_membership() {
        let gens = [v(&[1, 0, 1]), v(&[0, 1, 1])];
        assert!(in_span(&v(&[2, 3, 5]), &gens));
        assert!(!in_span(&v(&[0, 0, 5]), &gens));
        assert!(same_span(3, &gens, &[v(&[1, 1, 2]), v(&[1, -1, 0])]));
    }

    #[test]
    fn combination_order() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn matrix_product() {
        let m = RationalMatrix::from_columns(2, &[v(&[1, 0]), v(&[1, 1])]);
        let y = m.mul_vec(&[rat(&2.into()), rat(&1.into())]);
        assert_eq!(y, vec![rat(&3.into()), rat(&1.into())]);
    }
}
