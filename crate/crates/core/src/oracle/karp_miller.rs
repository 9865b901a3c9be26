use std::collections::HashSet;

use super::compiled::{small_vec, Compiled};
use super::OracleError;
use crate::model::{Configuration, ModelError, Path, Vass};

const OMEGA: i64 = i64::MAX;
const NODE_LIMIT: usize = 2_000_000;

fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| *y == OMEGA || (*x != OMEGA && x <= y))
}

fn covers(label: &[i64], target: &[i64]) -> bool {
    label.iter().zip(target).all(|(x, t)| *x == OMEGA || x >= t)
}

fn fire(label: &[i64], eff: &[i64]) -> Option<Vec<i64>> {
    let mut out = Vec::with_capacity(label.len());
    for (x, a) in label.iter().zip(eff) {
        if *x == OMEGA {
            out.push(OMEGA);
        } else {
            let y = x + a;
            if y < 0 {
                return None;
            }
            out.push(y);
        }
    }
    Some(out)
}

struct Frame {
    state: usize,
    label: Vec<i64>,
    next: usize,
}

/// Exact coverability via the Karp–Miller tree, exploring depth-first and
/// stopping at the first covering node.
pub fn coverable(vass: &Vass, from: &Configuration, target: &Configuration) -> Result<bool, OracleError> {
    let c = Compiled::new(vass)?;
    let q0 = vass
        .state_index(&from.state)
        .ok_or_else(|| ModelError::UndeclaredState(from.state.to_string()))?;
    let qt = vass
        .state_index(&target.state)
        .ok_or_else(|| ModelError::UndeclaredState(target.state.to_string()))?;
    let start = small_vec(&from.vector)?;
    let goal = small_vec(&target.vector)?;
    if q0 == qt && covers(&start, &goal) {
        return Ok(true);
    }
    let mut stack = vec![Frame {
        state: q0,
        label: start,
        next: 0,
    }];
    let mut visited: Vec<Vec<Vec<i64>>> = vec![Vec::new(); c.out.len()];
    visited[q0].push(stack[0].label.clone());
    let mut nodes = 1;
    while let Some(top) = stack.last_mut() {
        let q = top.state;
        if top.next >= c.out[q].len() {
            stack.pop();
            continue;
        }
        let t = c.out[q][top.next];
        top.next += 1;
        let Some(mut label) = fire(&top.label, &c.eff[t]) else {
            continue;
        };
        let dst = c.dst[t];
        // Accelerate against dominated ancestors until nothing changes.
        loop {
            let mut changed = false;
            for f in stack.iter().filter(|f| f.state == dst) {
                if leq(&f.label, &label) {
                    for (x, a) in label.iter_mut().zip(&f.label) {
                        if *x != OMEGA && *x > *a {
                            *x = OMEGA;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if dst == qt && covers(&label, &goal) {
            return Ok(true);
        }
        // A dominating label already seen covers everything this one can.
        if visited[dst].iter().any(|seen| leq(&label, seen)) {
            continue;
        }
        visited[dst].retain(|seen| !leq(seen, &label));
        visited[dst].push(label.clone());
        nodes += 1;
        if nodes > NODE_LIMIT {
            return Err(OracleError::NodeLimit(NODE_LIMIT));
        }
        stack.push(Frame {
            state: dst,
            label,
            next: 0,
        });
    }
    Ok(false)
}

/// Shortest path from `from` to some configuration dominating `target`,
/// by plain breadth-first search over at most `max_states` configurations.
pub fn cover_witness(
    vass: &Vass,
    from: &Configuration,
    target: &Configuration,
    max_states: usize,
) -> Result<Option<Path>, OracleError> {
    let c = Compiled::new(vass)?;
    let start = c.key(vass, from)?;
    let goal = c.key(vass, target)?;
    let hit = |k: &[i64]| k[0] == goal[0] && k[1..].iter().zip(&goal[1..]).all(|(x, t)| x >= t);
    let mut nodes: Vec<(Vec<i64>, usize, usize)> = vec![(start.clone(), usize::MAX, usize::MAX)];
    let mut seen = HashSet::new();
    seen.insert(start);
    let mut head = 0;
    let path_to = |nodes: &Vec<(Vec<i64>, usize, usize)>, mut i: usize| {
        let mut p = Vec::new();
        while nodes[i].1 != usize::MAX {
            p.push(nodes[i].2);
            i = nodes[i].1;
        }
        p.reverse();
        Path(p)
    };
    if hit(&nodes[0].0) {
        return Ok(Some(Path::empty()));
    }
    while head < nodes.len() && nodes.len() < max_states {
        let key = nodes[head].0.clone();
        for &t in &c.out[key[0] as usize] {
            let Some(y) = c.fire(&key, t) else { continue };
            if y[1..].iter().any(|x| x.abs() > (1 << 40)) {
                return Err(OracleError::Overflow(format!("{:?}", &y[1..])));
            }
            if !seen.insert(y.clone()) {
                continue;
            }
            let done = hit(&y);
            nodes.push((y, head, t));
            if done {
                return Ok(Some(path_to(&nodes, nodes.len() - 1)));
            }
        }
        head += 1;
    }
    Ok(None)
}
