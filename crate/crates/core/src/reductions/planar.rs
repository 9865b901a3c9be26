use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;

use super::gadget::gadget_on;
use super::{join, join_usize, Produced, Provenance, ReductionOutput, Relation};
use crate::geometry::{
    cone_by_four, cycle_space, is_projective, nonprojective_normal, shift, sign_reflecting_projection, CycleSpaceInfo,
};
use crate::linalg::in_span;
use crate::model::{Configuration, ReachInstance, StateId, Transition, Vass};
use crate::vector::IntVector;
use crate::{Error, Result};

/// Default limit on (state, shift) pairs explored by `geo2d_to_2vass`.
pub const DEFAULT_SHIFT_CAP: usize = 100_000;

fn geo2(v: &Vass) -> Result<CycleSpaceInfo> {
    let info = cycle_space(v);
    if info.dim_cyc > 2 {
        return Err(Error::Precondition(format!(
            "cycle space has dimension {}, at most 2 required",
            info.dim_cyc
        )));
    }
    Ok(info)
}

fn basis_pair(info: &CycleSpaceInfo, d: usize) -> (IntVector, IntVector) {
    let mut b = info.global_basis.clone();
    b.resize(2, IntVector::zeros(d));
    (b[0].clone(), b[1].clone())
}

fn fresh_state(v: &Vass, base: &str) -> StateId {
    let mut q = StateId::new(base);
    while v.has_state(&q) {
        q = q.derived("fresh", "");
    }
    q
}

fn rebuild(inst: &ReachInstance, v: Vass) -> Result<ReachInstance> {
    Ok(ReachInstance::from_vass(
        v,
        inst.source().clone(),
        inst.target().clone(),
    )?)
}

/// Adds an isolated state whose self-loops lift a cycle space of dimension
/// below 2 to a projective plane. Projective planes are returned unchanged.
pub fn pad_to_projective(inst: &ReachInstance) -> Result<ReductionOutput> {
    let v = inst.vass();
    let d = v.dim();
    if d < 2 {
        return Err(Error::Precondition(
            "projective padding needs at least two coordinates".into(),
        ));
    }
    let info = geo2(v)?;
    let provenance = Provenance::new("pad_to_projective").with("dim_cyc", info.dim_cyc);
    let loops = match info.dim_cyc {
        0 => vec![IntVector::unit(d, 0), IntVector::unit(d, 1)],
        1 => {
            let u = &info.global_basis[0];
            if u.iter().all(|x| *x == u[0]) {
                vec![&IntVector::unit(d, 0) - &IntVector::unit(d, 1)]
            } else {
                vec![IntVector::ones(d)]
            }
        }
        _ => {
            let (u, w) = basis_pair(&info, d);
            if is_projective(&u, &w).is_none() {
                return Err(Error::Precondition("cycle space is a non-projective plane".into()));
            }
            Vec::new()
        }
    };
    if loops.is_empty() {
        return Ok(ReductionOutput::instance(inst.clone(), Relation::LenEqual, provenance));
    }
    let pad = fresh_state(v, "pad");
    let mut states = v.states().to_vec();
    states.push(pad.clone());
    let mut ts = v.transitions().to_vec();
    for a in &loops {
        ts.push(Transition::new(pad.clone(), a.clone(), pad.clone()));
    }
    let out = rebuild(inst, Vass::new(d, states, ts)?)?;
    let provenance = provenance.with(
        "loops",
        loops
            .iter()
            .map(|a| format!("({})", a.joined()))
            .collect::<Vec<_>>()
            .join(""),
    );
    Ok(ReductionOutput::instance(out, Relation::LenEqual, provenance))
}

/// For a non-projective plane: a nonnegative normal n bounds the
/// coordinates K = supp(n) by 6·size³ on every run from the source, so they
/// are tracked in the control state; the cycle space then drops below
/// dimension 2 and is padded back to a projective plane.
pub fn make_projective(inst: &ReachInstance) -> Result<ReductionOutput> {
    let v = inst.vass();
    let d = v.dim();
    let info = geo2(v)?;
    if info.dim_cyc != 2 {
        return Err(Error::Precondition("cycle space is not a plane".into()));
    }
    let (u, w) = basis_pair(&info, d);
    let n = nonprojective_normal(&u, &w)?;
    let k = n.support();
    let size = inst.size();
    let bound = BigInt::from(6) * &size * &size * &size;
    let provenance = Provenance::new("make_projective")
        .with("normal", &n)
        .with("K", join_usize(&k))
        .with("bound", &bound);
    if k.iter().any(|&i| inst.target().vector[i] > bound) {
        return Ok(ReductionOutput::unreachable(
            "target exceeds the bound on supp(n)",
            Relation::LenEqual,
            provenance,
        ));
    }
    let encoded = super::encode::encoded_instance(inst, &k, &(&bound + 1))?;
    let padded = pad_to_projective(&encoded)?;
    match padded.produced {
        Produced::Instance(out) => Ok(ReductionOutput::instance(out, Relation::LenEqual, provenance)),
        _ => Err(Error::Internal("padding produced no instance".into())),
    }
}

fn widen(inst: &ReachInstance, dim: usize) -> Result<ReachInstance> {
    let pad = |x: &IntVector| {
        let mut e = x.entries().to_vec();
        e.resize(dim, BigInt::zero());
        IntVector::new(e)
    };
    let v = inst.vass();
    let ts = v
        .transitions()
        .iter()
        .map(|t| Transition::new(t.src.clone(), pad(&t.effect), t.dst.clone()))
        .collect();
    let (s, t) = (inst.source(), inst.target());
    Ok(ReachInstance::from_vass(
        Vass::new(dim, v.states().to_vec(), ts)?,
        Configuration::new(s.state.clone(), pad(&s.vector)),
        Configuration::new(t.state.clone(), pad(&t.vector)),
    )?)
}

/// A 2-VASS over (state, shift) pairs. Each original transition becomes its
/// projection onto the sign-reflecting pair, followed by one nonnegativity
/// gadget per coordinate, so every length is multiplied by 2d + 1. Systems
/// with fewer than two coordinates are first padded with zero coordinates,
/// which stay zero and get no gadget.
pub fn geo2d_to_2vass(inst: &ReachInstance, shift_cap: usize) -> Result<ReductionOutput> {
    let mut work = if inst.dim() < 2 { widen(inst, 2)? } else { inst.clone() };
    let d = work.dim();
    let checked = inst.dim();
    let relation = Relation::LenScaled(2 * checked + 1);
    let mut provenance = Provenance::new("geo2d_to_2vass");
    let info = geo2(work.vass())?;
    let (u, w) = basis_pair(&info, d);
    let prepared = if info.dim_cyc < 2 {
        Some(pad_to_projective(&work)?)
    } else if is_projective(&u, &w).is_none() {
        Some(make_projective(&work)?)
    } else {
        None
    };
    if let Some(out) = prepared {
        provenance = provenance.with("via", out.provenance.construction);
        match out.produced {
            Produced::Instance(i) => work = i,
            Produced::Unreachable { reason } => {
                return Ok(ReductionOutput::unreachable(reason, relation, provenance));
            }
            Produced::Family(_) => return Err(Error::Internal("unexpected family".into())),
        }
    }
    project_by_shifts(&work, checked, shift_cap, relation, provenance)
}

fn project_by_shifts(
    work: &ReachInstance,
    checked: usize,
    shift_cap: usize,
    relation: Relation,
    provenance: Provenance,
) -> Result<ReductionOutput> {
    let v = work.vass();
    let d = v.dim();
    let info = cycle_space(v);
    let (u, w) = basis_pair(&info, d);
    let cert = sign_reflecting_projection(&u, &w)?;
    let (i, j) = (cert.i, cert.j);
    let provenance = provenance
        .with("I", join_usize(&[i, j]))
        .with("c", &cert.c)
        .with("u_bar", &cert.u_bar)
        .with("v_bar", &cert.v_bar);
    let (s, t) = (work.source(), work.target());
    let delta_s = shift(&s.vector, &cert);
    let size = v.size();
    let radius = BigInt::from(6) * &size * &size * &size;
    // Forward exploration of the shift-constraint graph.
    let root = (v.state_index(&s.state).expect("declared"), delta_s.clone());
    let mut nodes = vec![root.clone()];
    let mut index: HashMap<(usize, IntVector), usize> = HashMap::from([(root, 0)]);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(n) = queue.pop_front() {
        let (q, sigma) = nodes[n].clone();
        for &k in v.outgoing(q) {
            let tr = v.transition(k);
            let next = &sigma + &shift(&tr.effect, &cert);
            if (&next - &delta_s).norm() > radius {
                continue;
            }
            let key = (v.state_index(&tr.dst).expect("declared"), next);
            let m = match index.get(&key) {
                Some(&m) => m,
                None => {
                    if nodes.len() >= shift_cap {
                        return Err(Error::Capacity {
                            what: "reachable (state, shift) pairs".into(),
                            cap: shift_cap,
                        });
                    }
                    let m = nodes.len();
                    index.insert(key.clone(), m);
                    nodes.push(key);
                    queue.push_back(m);
                    m
                }
            };
            edges.push((n, k, m));
        }
    }
    let tested = |q: usize, sigma: &IntVector| v.states()[q].derived("shift", &join(sigma.entries()));
    let mut states = Vec::new();
    let mut ts = Vec::new();
    for (q, sigma) in &nodes {
        let low = tested(*q, sigma);
        states.push(low.clone());
        if checked == 0 {
            continue;
        }
        let high = low.derived("pending", "");
        states.push(high.clone());
        let mut chain = vec![high];
        for l in 1..checked {
            let c = low.derived("check", &l.to_string());
            states.push(c.clone());
            chain.push(c);
        }
        chain.push(low);
        for l in 0..checked {
            let g = gadget_on(&cert.u_bar[l], &cert.v_bar[l], &sigma[l], 0, 1)?;
            g.wire(
                &chain[l],
                &chain[l + 1],
                &l.to_string(),
                2,
                (0, 1),
                &mut states,
                &mut ts,
            );
        }
    }
    for &(a, k, b) in &edges {
        let eff = &v.transition(k).effect;
        let (from, to) = (&nodes[a], &nodes[b]);
        let arrive = tested(to.0, &to.1);
        let arrive = if checked == 0 {
            arrive
        } else {
            arrive.derived("pending", "")
        };
        ts.push(Transition::new(tested(from.0, &from.1), eff.restrict(&[i, j]), arrive));
    }
    let qt = v.state_index(&t.state).expect("declared");
    let target_state = tested(qt, &shift(&t.vector, &cert));
    states.push(target_state.clone());
    let out = Vass::new(2, states, ts)?;
    let instance = ReachInstance::from_vass(
        out,
        Configuration::new(tested(nodes[0].0, &nodes[0].1), s.vector.restrict(&[i, j])),
        Configuration::new(target_state, t.vector.restrict(&[i, j])),
    )?;
    Ok(ReductionOutput::instance(
        instance,
        relation,
        provenance.with("shift_states", nodes.len()),
    ))
}

/// Projects a single-state VAS with a cycle space of dimension at most 2 onto
/// at most four coordinates I, recovering the others through the
/// cone-by-four tuples and testing them with gadgets between a pending and
/// a tested copy of the state.
pub fn geo2vas_to_4vass(inst: &ReachInstance) -> Result<ReductionOutput> {
    let v = inst.vass();
    if v.states().len() != 1 {
        return Err(Error::UnsupportedShape("expected a single-state VAS".into()));
    }
    let d = v.dim();
    let info = geo2(v)?;
    let effects = v.effects();
    let (s, t) = (&inst.source().vector, &inst.target().vector);
    let mut provenance = Provenance::new("geo2vas_to_4vass");
    let diff = t - s;
    if !diff.is_zero() && !in_span(&diff, &effects) {
        return Ok(ReductionOutput::unreachable(
            "t − s is outside the span of the transitions",
            Relation::ReachEquivalent,
            provenance,
        ));
    }
    let (u, w) = basis_pair(&info, d);
    let four = cone_by_four(&u, &w);
    let mut index_set: Vec<usize> = four.generators.clone();
    if d == 0 {
        index_set.clear();
    }
    index_set.sort_unstable();
    index_set.dedup();
    let pos = |k: usize| index_set.binary_search(&k).expect("tuple indices lie in I");
    provenance = provenance.with("I", join_usize(&index_set));
    let q = &v.states()[0];
    let low = q.derived("tested", "");
    let high = q.derived("pending", "");
    let mut states = vec![low.clone(), high.clone()];
    let mut ts: Vec<Transition> = effects
        .iter()
        .map(|a| Transition::new(low.clone(), a.restrict(&index_set), high.clone()))
        .collect();
    let mut chain = vec![high];
    for l in 1..d {
        let c = q.derived("check", &l.to_string());
        states.push(c.clone());
        chain.push(c);
    }
    chain.push(low.clone());
    if d == 0 {
        ts.push(Transition::new(chain[0].clone(), IntVector::zeros(0), low.clone()));
    }
    let dim = index_set.len();
    for (l, tuple) in four.tuples.iter().enumerate() {
        let offset = &tuple.c * &s[l] - &tuple.alpha * &s[tuple.i] - &tuple.beta * &s[tuple.j];
        let g = gadget_on(&tuple.alpha, &tuple.beta, &offset, tuple.i, tuple.j)?;
        g.wire(
            &chain[l],
            &chain[l + 1],
            &l.to_string(),
            dim,
            (pos(tuple.i), pos(tuple.j)),
            &mut states,
            &mut ts,
        );
    }
    let out = Vass::new(dim, states, ts)?;
    let instance = ReachInstance::from_vass(
        out,
        Configuration::new(low.clone(), s.restrict(&index_set)),
        Configuration::new(low, t.restrict(&index_set)),
    )?;
    Ok(ReductionOutput::instance(
        instance,
        Relation::ReachEquivalent,
        provenance,
    ))
}
