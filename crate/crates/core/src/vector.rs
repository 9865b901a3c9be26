use std::fmt;
use std::ops::{Add, AddAssign, Index, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// An integer vector of arbitrary precision.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    pub fn ones(dim: usize) -> Self {
        IntVector(vec![BigInt::from(1); dim])
    }

    /// The vector of the given dimension with a single 1 at `i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigInt::from(1);
        v
    }

    pub fn from_i64s(xs: &[i64]) -> Self {
        IntVector(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn set(&mut self, i: usize, value: BigInt) {
        self.0[i] = value;
    }

    /// Max norm; zero for the empty vector.
    pub fn norm(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn inner(&self, other: &IntVector) -> BigInt {
        assert_eq!(self.dim(), other.dim(), "inner product of mismatched dimensions");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// Index of the first negative entry.
    pub fn first_negative(&self) -> Option<usize> {
        self.0.iter().position(|x| x.is_negative())
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &IntVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Keeps the listed coordinates, in the listed order.
    pub fn restrict(&self, coords: &[usize]) -> IntVector {
        IntVector(coords.iter().map(|&i| self.0[i].clone()).collect())
    }

    /// Removes the listed coordinates.
    pub fn without(&self, coords: &[usize]) -> IntVector {
        IntVector(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| !coords.contains(i))
                .map(|(_, x)| x.clone())
                .collect(),
        )
    }

    /// Adds `k` to every entry.
    pub fn add_scalar(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x + k).collect())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| x.to_i64()).collect()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigInt> {
        self.0.iter()
    }

    /// Comma-separated entries without parentheses.
    pub fn joined(&self) -> String {
        self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl From<Vec<BigInt>> for IntVector {
    fn from(v: Vec<BigInt>) -> Self {
        IntVector(v)
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl<const N: usize> From<[i64; N]> for IntVector {
    fn from(v: [i64; N]) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.joined())
    }
}

impl AddAssign<&IntVector> for IntVector {
    fn add_assign(&mut self, rhs: &IntVector) {
        assert_eq!(self.dim(), rhs.dim(), "adding mismatched dimensions");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&IntVector> for IntVector {
    fn sub_assign(&mut self, rhs: &IntVector) {
        assert_eq!(self.dim(), rhs.dim(), "subtracting mismatched dimensions");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Add<&IntVector> for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&IntVector> for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for IntVector {
    type Output = IntVector;
    fn add(mut self, rhs: IntVector) -> IntVector {
        self += &rhs;
        self
    }
}

impl Sub for IntVector {
    type Output = IntVector;
    fn sub(mut self, rhs: IntVector) -> IntVector {
        self -= &rhs;
        self
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_and_inner() {
        let v = IntVector::from([3, -7, 2]);
        assert_eq!(v.norm(), BigInt::from(7));
        assert_eq!(v.inner(&IntVector::from([1, 1, 1])), BigInt::from(-2));
        assert_eq!(IntVector::zeros(0).norm(), BigInt::zero());
    }

    #[test]
    fn restrict_and_without() {
        let v = IntVector::from([1, 2, 3, 4]);
        assert_eq!(v.restrict(&[2, 0]), IntVector::from([3, 1]));
        assert_eq!(v.without(&[1, 2]), IntVector::from([1, 4]));
    }

    #[test]
    fn display() {
        assert_eq!(IntVector::from([1, -1]).to_string(), "(1,-1)");
        assert_eq!(IntVector::zeros(0).to_string(), "()");
    }
}
