use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use super::ub_of_configurations;
use crate::model::{Configuration, Path, Run, StateId, Vass};
use crate::{Error, Result};

/// H₀ = 0, L₀ = M, H_{i+1} = U + L_i·M, L_{i+1} = M·H_{i+1}^{i+1} + L_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RackoffSchedule {
    pub h: Vec<BigInt>,
    pub l: Vec<BigInt>,
}

pub fn rackoff_schedule(u: &BigInt, m: &BigInt, dim: usize) -> RackoffSchedule {
    let mut h = vec![BigInt::zero()];
    let mut l = vec![m.clone()];
    for i in 0..dim {
        let next_h = u + &l[i] * m;
        let next_l = m * num_traits::pow(next_h.clone(), i + 1) + &l[i];
        h.push(next_h);
        l.push(next_l);
    }
    RackoffSchedule { h, l }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RackoffExtraction {
    pub run: Run,
    /// ub(π, H_d): every such coordinate ends at least U.
    pub covered: BTreeSet<usize>,
    /// Positions in the original path that were kept, ascending.
    pub kept: Vec<usize>,
}

impl RackoffExtraction {
    /// Maximal deleted ranges [a, b) of the original path.
    pub fn deleted_segments(&self, original_len: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut next = 0;
        for &k in self.kept.iter().chain(std::iter::once(&original_len)) {
            if k > next {
                out.push((next, k));
            }
            next = k + 1;
        }
        out
    }
}

type Key = (StateId, Vec<BigInt>);

fn key(c: &Configuration, active: &[usize]) -> Key {
    (c.state.clone(), active.iter().map(|&i| c.vector[i].clone()).collect())
}

/// Keeps one transition per visited position, jumping from each position to
/// the last configuration on [from, to] with the same projected key.
fn remove_cycles(configs: &[Configuration], from: usize, to: usize, active: &[usize], kept: &mut Vec<usize>) {
    let mut last: HashMap<Key, usize> = HashMap::new();
    for (k, c) in configs.iter().enumerate().take(to + 1).skip(from) {
        last.insert(key(c, active), k);
    }
    let mut i = from;
    loop {
        i = last[&key(&configs[i], active)];
        if i >= to {
            return;
        }
        kept.push(i);
        i += 1;
    }
}

fn extract(
    configs: &[Configuration],
    from: usize,
    to: usize,
    active: &[usize],
    schedule: &RackoffSchedule,
    kept: &mut Vec<usize>,
) {
    let h = &schedule.h[active.len()];
    let hit = (from..=to).find_map(|k| active.iter().find(|&&j| configs[k].vector[j] >= *h).map(|&j| (k, j)));
    match hit {
        Some((m, j)) if !active.is_empty() => {
            remove_cycles(configs, from, m, active, kept);
            let rest: Vec<usize> = active.iter().copied().filter(|&i| i != j).collect();
            extract(configs, m, to, &rest, schedule, kept);
        }
        _ => remove_cycles(configs, from, to, active, kept),
    }
}

/// Removes cycles from a run so that its length is at most L_d and its end
/// is at least U on every coordinate of ub(π, H_d).
pub fn rackoff_extract(vass: &Vass, run: &Run, u: &BigInt, m: &BigInt) -> Result<RackoffExtraction> {
    if *m < vass.size() {
        return Err(Error::Precondition(format!(
            "M = {m} is below size(V) = {}",
            vass.size()
        )));
    }
    let d = vass.dim();
    let schedule = rackoff_schedule(u, m, d);
    let configs = run.configurations(vass);
    let mut kept = Vec::new();
    let all: Vec<usize> = (0..d).collect();
    extract(&configs, 0, run.len(), &all, &schedule, &mut kept);
    let path = Path(kept.iter().map(|&k| run.path().0[k]).collect());
    let out = Run::new(vass, run.start().clone(), path)
        .map_err(|e| Error::Internal(format!("extracted path is not a run: {e}")))?;
    let covered = ub_of_configurations(&configs, &schedule.h[d]).ub_set;
    let end = out.end(vass);
    if covered.iter().any(|&i| end.vector[i] < *u) {
        return Err(Error::Internal("extracted run misses the covering target".into()));
    }
    debug_assert!(BigInt::from(out.len()) <= schedule.l[d]);
    Ok(RackoffExtraction {
        run: out,
        covered,
        kept,
    })
}
