use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::OracleError;
use crate::model::{Configuration, Vass};
use crate::vector::IntVector;

/// Largest magnitude accepted anywhere in a search; leaves room for sums.
const LIMIT: i64 = 1 << 40;

/// A VASS with states as indices and effects as machine integers.
pub(crate) struct Compiled {
    pub dim: usize,
    pub dst: Vec<usize>,
    pub eff: Vec<Vec<i64>>,
    pub out: Vec<Vec<usize>>,
    /// Largest absolute effect entry.
    pub norm: i64,
}

fn small(x: &BigInt) -> Result<i64, OracleError> {
    match x.to_i64() {
        Some(v) if v.abs() <= LIMIT => Ok(v),
        _ => Err(OracleError::Overflow(x.to_string())),
    }
}

pub(crate) fn small_vec(v: &IntVector) -> Result<Vec<i64>, OracleError> {
    v.iter().map(small).collect()
}

pub(crate) fn small_u64(x: u64) -> Result<i64, OracleError> {
    if x > LIMIT as u64 {
        return Err(OracleError::Overflow(x.to_string()));
    }
    Ok(x as i64)
}

impl Compiled {
    pub fn new(v: &Vass) -> Result<Self, OracleError> {
        let mut dst = Vec::new();
        let mut eff = Vec::new();
        let mut norm = 0;
        for t in v.transitions() {
            dst.push(v.state_index(&t.dst).expect("declared"));
            let e = small_vec(&t.effect)?;
            norm = e.iter().fold(norm, |m, x| m.max(x.abs()));
            eff.push(e);
        }
        let out = (0..v.states().len()).map(|q| v.outgoing(q).to_vec()).collect();
        Ok(Compiled {
            dim: v.dim(),
            dst,
            eff,
            out,
            norm,
        })
    }

    /// Key layout: state index followed by the vector.
    pub fn key(&self, v: &Vass, c: &Configuration) -> Result<Vec<i64>, OracleError> {
        let q = v
            .state_index(&c.state)
            .ok_or_else(|| crate::model::ModelError::UndeclaredState(c.state.to_string()))?;
        if c.vector.dim() != self.dim {
            return Err(crate::model::ModelError::DimensionMismatch {
                expected: self.dim,
                found: c.vector.dim(),
            }
            .into());
        }
        let mut k = vec![q as i64];
        k.extend(small_vec(&c.vector)?);
        Ok(k)
    }

    pub fn config(&self, v: &Vass, key: &[i64]) -> Configuration {
        Configuration::new(v.states()[key[0] as usize].clone(), IntVector::from_i64s(&key[1..]))
    }

    /// Successor under transition `t`, or None when it leaves N^d.
    pub fn fire(&self, key: &[i64], t: usize) -> Option<Vec<i64>> {
        let mut next = Vec::with_capacity(key.len());
        next.push(self.dst[t] as i64);
        for (x, a) in key[1..].iter().zip(&self.eff[t]) {
            let y = x + a;
            if y < 0 {
                return None;
            }
            next.push(y);
        }
        Some(next)
    }
}
