use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Signed;

use super::{as_sequential, join, join_usize, Provenance, ReductionOutput, Relation};
use crate::geometry::collinearity;
use crate::model::{Configuration, ReachInstance, StateId, Transition, Vass};
use crate::vector::IntVector;
use crate::{Error, Result};

type Node = (usize, Vec<BigInt>);

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sweep {
    Forward,
    Backward,
}

/// The pairs (state, values on `coords`) with values in [0, B) connected to
/// the root, and the transitions between them.
struct Encoding {
    nodes: Vec<Node>,
    index: HashMap<Node, usize>,
    /// (from node, transition, to node), oriented forward.
    edges: Vec<(usize, usize, usize)>,
}

fn in_box(x: &[BigInt], bound: &BigInt) -> bool {
    x.iter().all(|v| !v.is_negative() && v < bound)
}

fn explore(v: &Vass, coords: &[usize], bound: &BigInt, root: Node, sweep: Sweep) -> Encoding {
    let ends = |k: usize| {
        let t = v.transition(k);
        (
            v.state_index(&t.src).expect("declared"),
            v.state_index(&t.dst).expect("declared"),
        )
    };
    let mut incoming = vec![Vec::new(); v.states().len()];
    for k in 0..v.transitions().len() {
        incoming[ends(k).1].push(k);
    }
    let mut enc = Encoding {
        nodes: vec![root.clone()],
        index: HashMap::from([(root, 0)]),
        edges: Vec::new(),
    };
    let mut queue = VecDeque::from([0]);
    while let Some(n) = queue.pop_front() {
        let (q, vals) = enc.nodes[n].clone();
        let moves: &[usize] = match sweep {
            Sweep::Forward => v.outgoing(q),
            Sweep::Backward => &incoming[q],
        };
        for &k in moves {
            let eff = &v.transition(k).effect;
            let (src, dst) = ends(k);
            let next: Vec<BigInt> = coords
                .iter()
                .zip(&vals)
                .map(|(&i, x)| match sweep {
                    Sweep::Forward => x + &eff[i],
                    Sweep::Backward => x - &eff[i],
                })
                .collect();
            if !in_box(&next, bound) {
                continue;
            }
            let node = (if sweep == Sweep::Forward { dst } else { src }, next);
            let m = match enc.index.get(&node) {
                Some(&m) => m,
                None => {
                    let m = enc.nodes.len();
                    enc.index.insert(node.clone(), m);
                    enc.nodes.push(node);
                    queue.push_back(m);
                    m
                }
            };
            enc.edges.push(match sweep {
                Sweep::Forward => (n, k, m),
                Sweep::Backward => (m, k, n),
            });
        }
    }
    enc
}

fn encoded_state(q: &StateId, vals: &[BigInt]) -> StateId {
    q.derived("vec", &join(vals))
}

fn normalized(coords: &[usize], d: usize) -> Result<Vec<usize>> {
    let mut c = coords.to_vec();
    c.sort_unstable();
    c.dedup();
    if let Some(&i) = c.iter().find(|&&i| i >= d) {
        return Err(Error::Precondition(format!(
            "coordinate {i} out of range for dimension {d}"
        )));
    }
    Ok(c)
}

fn check_below(label: &str, x: &IntVector, coords: &[usize], bound: &BigInt) -> Result<()> {
    match coords.iter().find(|&&i| x[i] >= *bound) {
        Some(i) => Err(Error::Precondition(format!(
            "{label} coordinate {i} is not below {bound}"
        ))),
        None => Ok(()),
    }
}

fn restrict(x: &IntVector, coords: &[usize]) -> Vec<BigInt> {
    coords.iter().map(|&i| x[i].clone()).collect()
}

/// Builds the encoded system from one exploration: states carry the values
/// on `coords`, vectors stay d-dimensional.
pub(super) fn encoded_instance(inst: &ReachInstance, coords: &[usize], bound: &BigInt) -> Result<ReachInstance> {
    let v = inst.vass();
    let (s, t) = (inst.source(), inst.target());
    let qs = v.state_index(&s.state).expect("declared");
    let enc = explore(v, coords, bound, (qs, restrict(&s.vector, coords)), Sweep::Forward);
    let name = |n: &Node| encoded_state(&v.states()[n.0], &n.1);
    let mut states: Vec<StateId> = enc.nodes.iter().map(name).collect();
    let target_state = encoded_state(&t.state, &restrict(&t.vector, coords));
    states.push(target_state.clone());
    let ts = enc
        .edges
        .iter()
        .map(|&(a, k, b)| Transition::new(states[a].clone(), v.transition(k).effect.clone(), states[b].clone()))
        .collect();
    let out = Vass::new(v.dim(), states.clone(), ts)?;
    Ok(ReachInstance::from_vass(
        out,
        Configuration::new(states[0].clone(), s.vector.clone()),
        Configuration::new(target_state, t.vector.clone()),
    )?)
}

/// Tracks the coordinates in `coords` inside the control state while they
/// stay below `bound`. Only the part connected to the source is built.
pub fn encode_bounded_coordinates(inst: &ReachInstance, coords: &[usize], bound: &BigInt) -> Result<ReductionOutput> {
    let coords = normalized(coords, inst.dim())?;
    check_below("source", &inst.source().vector, &coords, bound)?;
    check_below("target", &inst.target().vector, &coords, bound)?;
    let instance = encoded_instance(inst, &coords, bound)?;
    Ok(ReductionOutput::instance(
        instance,
        Relation::LenLowerBoundsOriginal { offset: 0 },
        Provenance::new("encode_bounded_coordinates")
            .with("coords", join_usize(&coords))
            .with("bound", bound),
    ))
}

/// A copy encoding `first` from the source, a copy encoding `second` into
/// the target, and zero-effect transitions between matching states whose
/// encodings agree on the shared coordinates.
pub fn concat_two_encodings(
    inst: &ReachInstance,
    first: &[usize],
    second: &[usize],
    bound: &BigInt,
) -> Result<ReductionOutput> {
    let d = inst.dim();
    let (c1, c2) = (normalized(first, d)?, normalized(second, d)?);
    let (s, t) = (inst.source(), inst.target());
    check_below("source", &s.vector, &c1, bound)?;
    check_below("target", &t.vector, &c2, bound)?;
    let v = inst.vass();
    let e1 = explore(
        v,
        &c1,
        bound,
        (v.state_index(&s.state).expect("declared"), restrict(&s.vector, &c1)),
        Sweep::Forward,
    );
    let e2 = explore(
        v,
        &c2,
        bound,
        (v.state_index(&t.state).expect("declared"), restrict(&t.vector, &c2)),
        Sweep::Backward,
    );
    let copy = |n: &Node, k: usize| encoded_state(&v.states()[n.0], &n.1).derived("copy", &k.to_string());
    let n1: Vec<StateId> = e1.nodes.iter().map(|n| copy(n, 1)).collect();
    let n2: Vec<StateId> = e2.nodes.iter().map(|n| copy(n, 2)).collect();
    let mut ts = Vec::new();
    for (e, names) in [(&e1, &n1), (&e2, &n2)] {
        for &(a, k, b) in &e.edges {
            ts.push(Transition::new(
                names[a].clone(),
                v.transition(k).effect.clone(),
                names[b].clone(),
            ));
        }
    }
    // Positions of shared coordinates within each encoding.
    let shared: Vec<(usize, usize)> = c1
        .iter()
        .enumerate()
        .filter_map(|(a, i)| c2.iter().position(|j| j == i).map(|b| (a, b)))
        .collect();
    for (a, (p, u1)) in e1.nodes.iter().enumerate() {
        for (b, (q, u2)) in e2.nodes.iter().enumerate() {
            if p == q && shared.iter().all(|&(x, y)| u1[x] == u2[y]) {
                ts.push(Transition::new(n1[a].clone(), IntVector::zeros(d), n2[b].clone()));
            }
        }
    }
    let states: Vec<StateId> = n1.iter().chain(&n2).cloned().collect();
    let out = Vass::new(d, states, ts)?;
    let instance = ReachInstance::from_vass(
        out,
        Configuration::new(n1[0].clone(), s.vector.clone()),
        Configuration::new(n2[0].clone(), t.vector.clone()),
    )?;
    Ok(ReductionOutput::instance(
        instance,
        Relation::LenLowerBoundsOriginal { offset: 1 },
        Provenance::new("concat_two_encodings")
            .with("first", join_usize(&c1))
            .with("second", join_usize(&c2))
            .with("bound", bound),
    ))
}

/// 3M² + 2M: no run leaves [0, B) on a negatively collinear pair.
pub fn negative_collinear_bound(m: &BigInt) -> BigInt {
    BigInt::from(3) * m * m + BigInt::from(2) * m
}

/// Encodes the first negatively collinear pair with B = 3M² + 2M, M the
/// instance size, then deletes both coordinates.
pub fn eliminate_negative_collinear(inst: &ReachInstance) -> Result<ReductionOutput> {
    let seq = as_sequential(inst)?;
    let report = collinearity(&Vass::vas(seq.dim(), seq.base().to_vec())?);
    let (i, j) = report
        .negative_pairs()
        .next()
        .ok_or_else(|| Error::Precondition("no negatively collinear pair of coordinates".into()))?;
    let bound = negative_collinear_bound(&inst.size());
    let provenance = Provenance::new("eliminate_negative_collinear")
        .with("pair", join_usize(&[i, j]))
        .with("alpha", &report.pairs[&(i, j)].alpha)
        .with("bound", &bound);
    let t = &inst.target().vector;
    if t[i] >= bound || t[j] >= bound {
        return Ok(ReductionOutput::unreachable(
            "target exceeds the bound on the collinear pair",
            Relation::LenEqual,
            provenance,
        ));
    }
    let encoded = encoded_instance(inst, &[i, j], &bound)?;
    let pair = [i, j];
    let v = encoded.vass().without_coordinates(&pair);
    let (s, t) = (encoded.source(), encoded.target());
    let instance = ReachInstance::from_vass(
        v,
        Configuration::new(s.state.clone(), s.vector.without(&pair)),
        Configuration::new(t.state.clone(), t.vector.without(&pair)),
    )?;
    Ok(ReductionOutput::instance(instance, Relation::LenEqual, provenance))
}
