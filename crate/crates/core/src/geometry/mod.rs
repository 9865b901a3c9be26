//! Cycle spaces and the planar geometry of two-dimensional cycle spaces.

mod farkas;
mod planar;

use std::collections::{BTreeMap, VecDeque};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

pub use farkas::{farkas_bound, farkas_normal_vector, NormalVectorCertificate};
pub use planar::{
    cone_by_four, is_projective, nonprojective_normal, r_vectors, shift, sign_reflecting_projection, ConeByFour,
    FourTuple, ProjectionCertificate,
};

use crate::linalg::{cone_equals_span, span_basis};
use crate::model::{System, Vass};
use crate::vector::IntVector;
use crate::{Error, Result};

/// Cycle-effect span of one strongly connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccCycleSpace {
    /// State indices, ascending.
    pub states: Vec<usize>,
    pub basis: Vec<IntVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSpaceInfo {
    pub global_basis: Vec<IntVector>,
    /// Components ordered by their smallest state.
    pub per_scc: Vec<SccCycleSpace>,
    pub dim_cyc: usize,
    pub dim_com: usize,
}

impl CycleSpaceInfo {
    /// Index of the component containing `state`.
    pub fn scc_of(&self, state: usize) -> usize {
        self.per_scc
            .iter()
            .position(|s| s.states.binary_search(&state).is_ok())
            .expect("every state lies in some component")
    }
}

/// Strongly connected components as ascending state lists, ordered by minimum.
pub fn strongly_connected_components(v: &Vass) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..v.states().len()).map(|_| g.add_node(())).collect();
    for t in v.transitions() {
        let p = v.state_index(&t.src).expect("declared");
        let q = v.state_index(&t.dst).expect("declared");
        g.add_edge(nodes[p], nodes[q], ());
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut s: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            s.sort_unstable();
            s
        })
        .collect();
    comps.sort();
    comps
}

/// Per component, a spanning tree assigns each state the effect of its tree
/// path from the root; every internal edge (p, a, q) then contributes the
/// fundamental cycle effect pot(p) + a − pot(q).
pub fn cycle_space(v: &Vass) -> CycleSpaceInfo {
    let d = v.dim();
    let n = v.states().len();
    let comps = strongly_connected_components(v);
    let mut comp_of = vec![0; n];
    for (k, c) in comps.iter().enumerate() {
        for &q in c {
            comp_of[q] = k;
        }
    }
    let ends = |k: usize| {
        let t = v.transition(k);
        (
            v.state_index(&t.src).expect("declared"),
            v.state_index(&t.dst).expect("declared"),
        )
    };
    let mut per_scc = Vec::with_capacity(comps.len());
    let mut all = Vec::new();
    for (k, comp) in comps.iter().enumerate() {
        let root = comp[0];
        let mut pot: Vec<Option<IntVector>> = vec![None; n];
        pot[root] = Some(IntVector::zeros(d));
        let mut queue = VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            for &t in v.outgoing(p) {
                let (_, q) = ends(t);
                if comp_of[q] == k && pot[q].is_none() {
                    pot[q] = Some(pot[p].as_ref().expect("visited") + &v.transition(t).effect);
                    queue.push_back(q);
                }
            }
        }
        let mut candidates = Vec::new();
        for &p in comp {
            for &t in v.outgoing(p) {
                let (_, q) = ends(t);
                if comp_of[q] == k {
                    let c = &(pot[p].as_ref().expect("strongly connected") + &v.transition(t).effect)
                        - pot[q].as_ref().expect("strongly connected");
                    if !c.is_zero() {
                        candidates.push(c);
                    }
                }
            }
        }
        let basis = span_basis(d, &candidates).basis;
        all.extend(basis.iter().cloned());
        per_scc.push(SccCycleSpace {
            states: comp.clone(),
            basis,
        });
    }
    let global_basis = span_basis(d, &all).basis;
    CycleSpaceInfo {
        dim_cyc: global_basis.len(),
        dim_com: per_scc.iter().map(|s| s.basis.len()).max().unwrap_or(0),
        global_basis,
        per_scc,
    }
}

/// Effects whose nonnegative combinations form the cycle cone of a system
/// whose simple cycles are exactly its self-loops.
fn loop_effects(system: &System) -> Result<Vec<IntVector>> {
    match system {
        System::Sequential(s) => Ok(s.base().to_vec()),
        System::Vass(v) if v.states().len() == 1 => Ok(v.effects()),
        System::Vass(_) => Err(Error::UnsupportedShape(
            "wideness is decided only for VAS and sequential VAS".into(),
        )),
    }
}

/// Whether the cone of cycle effects equals their span.
pub fn is_wide(system: &System) -> Result<bool> {
    Ok(cone_equals_span(&loop_effects(system)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollinearSign {
    Positive,
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollinearPair {
    /// u(i) = alpha · u(j) for every transition u.
    pub alpha: BigRational,
    pub sign: CollinearSign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollinearityReport {
    /// Coordinates every transition leaves unchanged.
    pub fixed: Vec<usize>,
    /// Pairs i < j of non-fixed coordinates that are collinear.
    pub pairs: BTreeMap<(usize, usize), CollinearPair>,
}

impl CollinearityReport {
    pub fn negative_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs
            .iter()
            .filter(|(_, p)| p.sign == CollinearSign::Negative)
            .map(|(k, _)| *k)
    }
}

pub fn collinearity(v: &Vass) -> CollinearityReport {
    let d = v.dim();
    let effects = v.effects();
    let fixed: Vec<usize> = (0..d).filter(|&i| effects.iter().all(|u| u[i].is_zero())).collect();
    let mut pairs = BTreeMap::new();
    for i in 0..d {
        if fixed.contains(&i) {
            continue;
        }
        for j in i + 1..d {
            if fixed.contains(&j) {
                continue;
            }
            let w = effects.iter().find(|u| !u[j].is_zero()).expect("non-fixed");
            let alpha = BigRational::new(w[i].clone(), w[j].clone());
            let collinear = effects
                .iter()
                .all(|u| BigRational::from_integer(u[i].clone()) == &alpha * BigRational::from_integer(u[j].clone()));
            if collinear && !alpha.is_zero() {
                let sign = if alpha.is_positive() {
                    CollinearSign::Positive
                } else {
                    CollinearSign::Negative
                };
                pairs.insert((i, j), CollinearPair { alpha, sign });
            }
        }
    }
    CollinearityReport { fixed, pairs }
}

/// Geometric dimension: rank of the whole cycle space.
pub fn geometric_dimension(v: &Vass) -> usize {
    cycle_space(v).dim_cyc
}

/// The two basis vectors of a rank-2 cycle space.
pub fn cycle_space_pair(info: &CycleSpaceInfo) -> Option<(IntVector, IntVector)> {
    match info.global_basis.as_slice() {
        [u, v] => Some((u.clone(), v.clone())),
        _ => None,
    }
}
