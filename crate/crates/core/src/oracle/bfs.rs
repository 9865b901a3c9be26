use std::collections::{BTreeSet, HashMap, HashSet};

use super::compiled::{small_u64, Compiled};
use super::OracleError;
use crate::model::{Configuration, Path, Semantics, Vass};

/// Limits for the breadth-first engines. The start configuration is never
/// cut off by the norm cap; successors with an entry above it are.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_len: usize,
    pub max_norm: u64,
    pub max_states_expanded: usize,
}

impl SearchBudget {
    pub fn new(max_len: usize, max_norm: u64) -> Self {
        SearchBudget {
            max_len,
            max_norm,
            max_states_expanded: 2_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReachOutcome {
    /// Shortest run among those respecting the budget.
    Reachable {
        len: usize,
        witness: Path,
    },
    /// No run of length ≤ max_len exists at all. `exhaustive` means the whole
    /// reachable set was enumerated, so the target is unreachable outright.
    UnreachableWithinBudget {
        exhaustive: bool,
    },
    Inconclusive {
        reason: String,
    },
}

impl ReachOutcome {
    pub fn is_reachable(&self) -> bool {
        matches!(self, ReachOutcome::Reachable { .. })
    }

    /// Some(true/false) when conclusive.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            ReachOutcome::Reachable { .. } => Some(true),
            ReachOutcome::UnreachableWithinBudget { exhaustive: true } => Some(false),
            _ => None,
        }
    }
}

/// A configuration cut off by the norm cap matters only if it could still
/// reach the target in the remaining steps.
fn could_matter(key: &[i64], target: &[i64], remaining: usize, step_norm: i64) -> bool {
    let reach = (remaining as i64).saturating_mul(step_norm);
    key[1..].iter().zip(&target[1..]).all(|(y, t)| (y - t).abs() <= reach)
}

fn over_cap(key: &[i64], cap: i64) -> bool {
    key[1..].iter().any(|&x| x > cap)
}

pub fn reach_bfs(
    vass: &Vass,
    source: &Configuration,
    target: &Configuration,
    budget: &SearchBudget,
) -> Result<ReachOutcome, OracleError> {
    let c = Compiled::new(vass)?;
    let cap = small_u64(budget.max_norm)?;
    let start = c.key(vass, source)?;
    let goal = c.key(vass, target)?;
    if start[1..].iter().any(|&x| x < 0) {
        return Err(crate::model::ModelError::NegativeConfiguration(source.to_string()).into());
    }
    // Node arena: key, parent, incoming transition.
    let mut nodes: Vec<(Vec<i64>, usize, usize)> = vec![(start.clone(), usize::MAX, usize::MAX)];
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(start.clone());
    let witness = |nodes: &Vec<(Vec<i64>, usize, usize)>, mut i: usize| {
        let mut path = Vec::new();
        while nodes[i].1 != usize::MAX {
            path.push(nodes[i].2);
            i = nodes[i].1;
        }
        path.reverse();
        Path(path)
    };
    if start == goal {
        return Ok(ReachOutcome::Reachable {
            len: 0,
            witness: Path::empty(),
        });
    }
    let mut frontier = vec![0usize];
    let mut truncated = false;
    let mut relevant = false;
    let mut depth = 0;
    while !frontier.is_empty() && depth < budget.max_len {
        let mut next = Vec::new();
        for &i in &frontier {
            let q = nodes[i].0[0] as usize;
            for &t in &c.out[q] {
                let Some(y) = c.fire(&nodes[i].0, t) else { continue };
                if over_cap(&y, cap) {
                    truncated = true;
                    if could_matter(&y, &goal, budget.max_len - depth - 1, c.norm) {
                        relevant = true;
                    }
                    continue;
                }
                if seen.contains(&y) {
                    continue;
                }
                seen.insert(y.clone());
                let done = y == goal;
                nodes.push((y, i, t));
                if done {
                    let path = witness(&nodes, nodes.len() - 1);
                    vass.replay(source, &path, Semantics::N)?;
                    return Ok(ReachOutcome::Reachable {
                        len: path.len(),
                        witness: path,
                    });
                }
                next.push(nodes.len() - 1);
                if nodes.len() > budget.max_states_expanded {
                    return Ok(ReachOutcome::Inconclusive {
                        reason: format!("more than {} states expanded", budget.max_states_expanded),
                    });
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    if relevant {
        return Ok(ReachOutcome::Inconclusive {
            reason: format!("norm cap {} cut off configurations near the target", budget.max_norm),
        });
    }
    Ok(ReachOutcome::UnreachableWithinBudget {
        exhaustive: frontier.is_empty() && !truncated,
    })
}

/// Lengths ℓ ≤ horizon of runs from source to target staying within the norm cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LenSet {
    pub horizon: usize,
    pub lengths: BTreeSet<usize>,
    /// Set when the cap or the state budget may have hidden a run.
    pub inconclusive: bool,
}

impl LenSet {
    pub fn scaled(&self, factor: usize) -> BTreeSet<usize> {
        self.lengths.iter().map(|l| l * factor).collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.lengths.iter().next().copied()
    }
}

pub fn len_set(
    vass: &Vass,
    source: &Configuration,
    target: &Configuration,
    horizon: usize,
    budget: &SearchBudget,
) -> Result<LenSet, OracleError> {
    let c = Compiled::new(vass)?;
    let cap = small_u64(budget.max_norm)?;
    let start = c.key(vass, source)?;
    let goal = c.key(vass, target)?;
    let mut lengths = BTreeSet::new();
    let mut inconclusive = false;
    let mut layer: HashSet<Vec<i64>> = HashSet::new();
    layer.insert(start);
    let mut expanded = 0usize;
    for k in 0..=horizon {
        if layer.contains(&goal) {
            lengths.insert(k);
        }
        if k == horizon || layer.is_empty() {
            break;
        }
        expanded += layer.len();
        if expanded > budget.max_states_expanded {
            inconclusive = true;
            break;
        }
        let mut next = HashSet::with_capacity(layer.len());
        for key in &layer {
            let q = key[0] as usize;
            for &t in &c.out[q] {
                let Some(y) = c.fire(key, t) else { continue };
                if over_cap(&y, cap) {
                    if could_matter(&y, &goal, horizon - k - 1, c.norm) {
                        inconclusive = true;
                    }
                    continue;
                }
                next.insert(y);
            }
        }
        layer = next;
    }
    Ok(LenSet {
        horizon,
        lengths,
        inconclusive,
    })
}

/// Everything reachable within the budget, with the first depth seen.
#[derive(Clone, Debug)]
pub struct Exploration {
    pub configurations: Vec<(Configuration, usize)>,
    /// Some successor exceeded the norm cap.
    pub truncated: bool,
    /// The frontier died out before max_len (and nothing was truncated).
    pub complete: bool,
}

pub fn explore(vass: &Vass, source: &Configuration, budget: &SearchBudget) -> Result<Exploration, OracleError> {
    let c = Compiled::new(vass)?;
    let cap = small_u64(budget.max_norm)?;
    let start = c.key(vass, source)?;
    let mut depth_of: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut order = vec![start.clone()];
    depth_of.insert(start, 0);
    let mut frontier = order.clone();
    let mut truncated = false;
    let mut depth = 0;
    while !frontier.is_empty() && depth < budget.max_len && order.len() <= budget.max_states_expanded {
        let mut next = Vec::new();
        for key in &frontier {
            for &t in &c.out[key[0] as usize] {
                let Some(y) = c.fire(key, t) else { continue };
                if over_cap(&y, cap) {
                    truncated = true;
                    continue;
                }
                if depth_of.contains_key(&y) {
                    continue;
                }
                depth_of.insert(y.clone(), depth + 1);
                order.push(y.clone());
                next.push(y);
            }
        }
        frontier = next;
        depth += 1;
    }
    Ok(Exploration {
        configurations: order.iter().map(|k| (c.config(vass, k), depth_of[k])).collect(),
        complete: frontier.is_empty() && !truncated,
        truncated,
    })
}
