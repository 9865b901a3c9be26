use num_bigint::BigInt;

use crate::model::{Configuration, ReachInstance, StateId, Transition, Vass};
use crate::oracle::subset_sum_bruteforce;
use crate::vector::IntVector;
use crate::{Error, Result};

/// Bits of `x` over `d` coordinates, least significant first.
fn binary(x: u64, d: usize) -> IntVector {
    IntVector::new((0..d).map(|i| BigInt::from((x >> i) & 1)).collect())
}

/// A VASS whose target is reachable iff some subset of `set` sums to
/// `target`, with the answer from brute force. Item j is added in binary
/// (or skipped) between p_j and q_j; a carry chain back to p_{j+1} trades
/// two units of bit i for one of bit i + 1.
pub fn subset_sum_instance(set: &[u64], target: u64) -> Result<(ReachInstance, bool)> {
    if set.is_empty() {
        return Err(Error::Precondition("subset-sum needs at least one item".into()));
    }
    let total: u128 = set.iter().map(|&a| a as u128).sum();
    let mut d = 1;
    while (1u128 << d) <= total {
        d += 1;
    }
    let p = |j: usize| StateId::new(&format!("p{j}"));
    let q = |j: usize| StateId::new(&format!("q{j}"));
    let n = set.len();
    let mut states = Vec::new();
    let mut ts = Vec::new();
    for (j, &a) in set.iter().enumerate() {
        let j = j + 1;
        states.push(p(j));
        states.push(q(j));
        ts.push(Transition::new(p(j), IntVector::zeros(d), q(j)));
        ts.push(Transition::new(p(j), binary(a, d), q(j)));
        let mut chain = vec![q(j)];
        for i in 2..d {
            let r = q(j).derived("carry", &i.to_string());
            states.push(r.clone());
            chain.push(r);
        }
        chain.push(p(j + 1));
        for (i, w) in chain.windows(2).enumerate() {
            if i + 1 < d {
                let carry = &IntVector::unit(d, i + 1) - &IntVector::unit(d, i).scale(&BigInt::from(2));
                ts.push(Transition::new(w[0].clone(), carry, w[0].clone()));
            }
            ts.push(Transition::new(w[0].clone(), IntVector::zeros(d), w[1].clone()));
        }
    }
    states.push(p(n + 1));
    let goal = if (target as u128) < 1u128 << d {
        binary(target, d)
    } else {
        IntVector::unit(d, d - 1).scale(&BigInt::from(target))
    };
    let v = Vass::new(d, states, ts)?;
    let inst = ReachInstance::from_vass(
        v,
        Configuration::new(p(1), IntVector::zeros(d)),
        Configuration::new(p(n + 1), goal),
    )?;
    Ok((inst, subset_sum_bruteforce(set, target)?))
}
