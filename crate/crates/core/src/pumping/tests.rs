use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::geometry::collinearity;
use crate::model::{Path, Semantics, SequentialVas, StateId};
use crate::oracle::coverable;
use crate::vector::IntVector;

fn v(x: &[i64]) -> IntVector {
    IntVector::from_i64s(x)
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn vas(effects: &[&[i64]]) -> Vass {
    Vass::vas(effects[0].len(), effects.iter().map(|e| v(e)).collect()).unwrap()
}

fn vas_run(v: &Vass, start: &[i64], path: &[usize]) -> Run {
    Run::new(
        v,
        Configuration::new(StateId::vas(), IntVector::from_i64s(start)),
        Path(path.to_vec()),
    )
    .unwrap()
}

#[test]
fn ub_examples() {
    let s = vas(&[&[1, 0], &[0, 1], &[-1, -1]]);
    let r = ub_set(&s, &vas_run(&s, &[5, 0], &[]), &big(5));
    assert_eq!(r.ub_set, BTreeSet::from([0]));
    // Prefix maxima (3, 7).
    let run = vas_run(&s, &[0, 0], &[0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 2, 2]);
    let r = ub_set(&s, &run, &big(4));
    assert_eq!(r.ub_set, BTreeSet::from([1]));
    assert_eq!(r.first_exceed[&1], 7);
    assert_eq!(ub_set(&s, &run, &big(0)).ub_set, BTreeSet::from([0, 1]));
}

#[test]
fn dichotomy_examples() {
    let s = vas(&[&[1, 0], &[0, 1], &[-1, -1]]);
    let col = collinearity(&s);
    let b = big(10);
    let low = vas_run(&s, &[0, 0], &[0, 1, 2, 0]);
    let split = dichotomy_split(&s, &low, &b, SplitMode::Almost, &col).unwrap();
    assert_eq!(split.kind, SplitKind::AlmostBounded);
    assert_eq!(split.split_index, low.len());
    assert_eq!(split.threshold_used, &b + s.size());
    assert!(split.holds_for(&s, &low, &col));

    let high = vas_run(&s, &[10, 10], &[2, 2]);
    let split = dichotomy_split(&s, &high, &b, SplitMode::Almost, &col).unwrap();
    assert_eq!((split.kind, split.split_index), (SplitKind::AlmostUnbounded, 0));
    assert!(split.holds_for(&s, &high, &col));
}

#[test]
fn quasi_split_rejects_negative_pairs() {
    let s = vas(&[&[1, -1], &[-1, 1]]);
    let run = vas_run(&s, &[1, 0], &[1]);
    let err = dichotomy_split(&s, &run, &big(3), SplitMode::Quasi, &collinearity(&s)).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
}

#[test]
fn rackoff_schedule_matches_recurrence() {
    let s = rackoff_schedule(&big(2), &big(2), 2);
    assert_eq!(s.h, vec![big(0), big(6), big(30)]);
    assert_eq!(s.l, vec![big(2), big(14), big(1814)]);
}

fn deletions_are_cycles(vass: &Vass, original: &Run, ex: &RackoffExtraction) -> bool {
    let configs = original.configurations(vass);
    ex.deleted_segments(original.len())
        .iter()
        .all(|&(a, b)| configs[a].state == configs[b].state)
        && ex.kept.windows(2).all(|w| w[0] < w[1])
        && ex.run.path().indices() == ex.kept.iter().map(|&k| original.path().0[k]).collect::<Vec<_>>()
}

#[test]
fn rackoff_below_threshold_only_removes_repeats() {
    let s = vas(&[&[1, 0], &[-1, 0], &[0, 1]]);
    // (0,0) → (1,0) → (0,0) → (0,1): the first two steps revisit (0,0).
    let run = vas_run(&s, &[0, 0], &[0, 1, 2]);
    let ex = rackoff_extract(&s, &run, &big(2), &s.size()).unwrap();
    assert!(ex.covered.is_empty());
    assert_eq!(ex.run.path().indices(), &[2]);
    assert!(deletions_are_cycles(&s, &run, &ex));
}

#[test]
fn rackoff_reaches_cover_on_ub_coordinates() {
    // Coordinate 0 climbs past H₂ and drops again; extraction must end high.
    let s = vas(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
    let m = s.size();
    let sched = rackoff_schedule(&big(2), &m, 2);
    let h = usize::try_from(&sched.h[2]).unwrap();
    let mut path = vec![0; h];
    path.extend(vec![1; h]);
    path.extend([2, 3, 2]);
    let run = vas_run(&s, &[0, 0], &path);
    let ex = rackoff_extract(&s, &run, &big(2), &m).unwrap();
    assert_eq!(ex.covered, BTreeSet::from([0]));
    assert!(ex.run.end(&s).vector[0] >= big(2));
    assert!(deletions_are_cycles(&s, &run, &ex));
    assert!(BigInt::from(ex.run.len()) <= sched.l[2]);
}

#[test]
fn rackoff_requires_size_bound() {
    let s = vas(&[&[1]]);
    let run = vas_run(&s, &[0], &[0]);
    assert!(matches!(
        rackoff_extract(&s, &run, &big(1), &big(1)),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn bound_formulas() {
    assert_eq!(pump_bound(&big(1), &big(4)), big(30));
    assert_eq!(rackoff_polynomial(&big(1), &big(1)), big(32));
    assert_eq!(
        pumpability_polynomial(&big(1), &big(4)),
        rackoff_polynomial(&big(30), &big(4))
    );
}

fn seq(d: usize, base: &[&[i64]], bridges: &[&[i64]]) -> SequentialVas {
    SequentialVas::new(
        d,
        base.iter().map(|e| v(e)).collect(),
        bridges.iter().map(|e| v(e)).collect(),
    )
    .unwrap()
}

fn seq_run(s: &SequentialVas, start: &[i64], path: &[usize]) -> Run {
    Run::new(
        &s.expand(),
        Configuration::new(s.source_state(), v(start)),
        Path(path.to_vec()),
    )
    .unwrap()
}

#[test]
fn pump_witness_single_loop() {
    let s = seq(1, &[&[1], &[-1]], &[]);
    let run = seq_run(&s, &[0], &[]);
    let cert = pump_witness(&s, &run, &big(0), &[0]).unwrap().unwrap();
    assert!(cert.verify(&s.expand(), &run.end(&s.expand())));
    assert!(cert.cycle.indices().iter().all(|&k| k == 0));
}

#[test]
fn pump_witness_preconditions() {
    let not_wide = seq(1, &[&[1]], &[]);
    let run = seq_run(&not_wide, &[0], &[]);
    assert!(matches!(
        pump_witness(&not_wide, &run, &big(0), &[0]),
        Err(Error::Precondition(_))
    ));
    let s = seq(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[]);
    let run = seq_run(&s, &[0, 0], &[]);
    // Coordinate 1 is outside the block but below the bound.
    assert!(matches!(
        pump_witness(&s, &run, &big(5), &[0]),
        Err(Error::Precondition(_))
    ));
    // 0 and 1 are not collinear, so they cannot share a block.
    assert!(matches!(
        pump_witness(&s, &run, &big(5), &[0, 1]),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn extract_pumpable_examples() {
    let s = seq(1, &[&[1], &[-1]], &[&[2]]);
    let e = s.expand();
    let run = seq_run(&s, &[0], &[0, 1, 2, 3]);
    let out = extract_pumpable(&s, &run, &big(1000)).unwrap().unwrap();
    assert!(out.certificate.verify(&e, &out.config));
    assert!(coverable(
        &e,
        &out.config,
        &Configuration::new(out.config.state.clone(), out.config.vector.add_scalar(&big(1)))
    )
    .unwrap());

    let s = seq(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[]);
    let run = seq_run(&s, &[0, 0], &[0, 2]);
    assert_eq!(extract_pumpable(&s, &run, &big(50)).unwrap(), None);
}

#[test]
fn extract_pumpable_two_dims_driven_high() {
    let s = seq(2, &[&[1, 1], &[-1, 0], &[0, -1], &[1, -1], &[-1, 1]], &[]);
    let e = s.expand();
    let size = e.size();
    let b = pump_bound(&big(0), &size);
    let p = rackoff_schedule(&b, &size, 2).h[2].clone();
    let n = usize::try_from(&p).unwrap();
    let mut path = vec![0; n];
    path.extend(vec![1; n / 2]);
    let run = seq_run(&s, &[0, 0], &path);
    let out = extract_pumpable(&s, &run, &p).unwrap().unwrap();
    assert!(out.certificate.verify(&e, &out.config));
    assert!(pumpable(&e, &out.config, Direction::Forward).unwrap());
    assert!(out.run.len() <= run.len());
}

#[test]
fn pumpable_examples() {
    let c = |x: &[i64]| Configuration::new(StateId::vas(), v(x));
    assert!(pumpable(&vas(&[&[1]]), &c(&[0]), Direction::Forward).unwrap());
    assert!(!pumpable(&vas(&[&[-1]]), &c(&[5]), Direction::Forward).unwrap());
    assert!(pumpable(&vas(&[&[-1]]), &c(&[5]), Direction::Backward).unwrap());
    let t = vas(&[&[1, -1], &[0, 1]]);
    assert!(pumpable(&t, &c(&[0, 0]), Direction::Forward).unwrap());
    let cert = find_pump_certificate(&t, &c(&[0, 0]), Direction::Forward, 10_000)
        .unwrap()
        .unwrap();
    assert!(cert.verify(&t, &c(&[0, 0])));
}

#[test]
fn short_z_run_examples() {
    let s = seq(1, &[&[1]], &[]);
    let p = short_z_run(&s, &v(&[0]), &v(&[3]), &big(10)).unwrap().unwrap();
    assert_eq!(p.indices(), &[0, 0, 0]);
    let s = seq(1, &[&[2]], &[]);
    assert_eq!(short_z_run(&s, &v(&[0]), &v(&[3]), &big(10)).unwrap(), None);
    let s = seq(2, &[&[1, 0], &[0, 1]], &[&[-1, -1]]);
    let p = short_z_run(&s, &v(&[1, 1]), &v(&[2, 2]), &big(10)).unwrap().unwrap();
    let e = s.expand();
    let end = e
        .replay(&Configuration::new(s.source_state(), v(&[1, 1])), &p, Semantics::Z)
        .unwrap();
    assert_eq!(end, Configuration::new(s.target_state(), v(&[2, 2])));
    assert_eq!(p.len(), 5);
}

#[test]
fn lift_accepts_a_run_as_is() {
    let s = seq(2, &[&[1, 1], &[-1, -1]], &[]);
    let e = s.expand();
    let x = v(&[0, 0]);
    let src = Configuration::new(s.source_state(), x.clone());
    let t1 = find_pump_certificate(&e, &src, Direction::Forward, 10_000)
        .unwrap()
        .unwrap();
    let t2 = find_pump_certificate(&e, &src, Direction::Backward, 10_000)
        .unwrap()
        .unwrap();
    let run = lift_z_run(&s, &x, &t1, &x, &t2, &Path::empty()).unwrap();
    assert!(run.is_empty());
}

#[test]
fn lift_repairs_a_negative_z_run() {
    let s = seq(2, &[&[1, -1], &[-1, 1], &[1, 1], &[-1, -1]], &[]);
    let e = s.expand();
    let x = v(&[0, 0]);
    let src = Configuration::new(s.source_state(), x.clone());
    let t1 = find_pump_certificate(&e, &src, Direction::Forward, 10_000)
        .unwrap()
        .unwrap();
    let t2 = find_pump_certificate(&e, &src, Direction::Backward, 10_000)
        .unwrap()
        .unwrap();
    // Goes negative first: (-1,-1), then (1,1) back.
    let z = Path(vec![3, 2, 0, 1]);
    let run = lift_z_run(&s, &x, &t1, &x, &t2, &z).unwrap();
    assert_eq!(run.end(&e), src);
}

fn wide_seq() -> impl Strategy<Value = (SequentialVas, IntVector, IntVector, Path)> {
    (2usize..=3).prop_flat_map(|d| {
        let unit = |i: usize, s: i64| {
            let mut x = vec![0i64; d];
            x[i] = s;
            x
        };
        let mut base: Vec<Vec<i64>> = Vec::new();
        for i in 0..d {
            base.push(unit(i, 1));
            base.push(unit(i, -1));
        }
        (
            prop::collection::vec(prop::collection::vec(-2i64..=2, d), 0..=2),
            prop::collection::vec(0i64..=3, d),
            prop::collection::vec(0..2 * d, 0..=8),
            Just(base),
        )
            .prop_map(move |(bridges, x, loops, mut base)| {
                base.push(vec![1; d]);
                let s = SequentialVas::new(
                    d,
                    base.iter().map(|e| IntVector::from_i64s(e)).collect(),
                    bridges.iter().map(|e| IntVector::from_i64s(e)).collect(),
                )
                .unwrap();
                // Z-path: all bridges, then the loops on the last state.
                let k = s.bridges().len();
                let mut p: Vec<usize> = (1..=k).map(|i| s.bridge_index(i)).collect();
                p.extend(loops.iter().map(|&b| s.loop_index(k, b)));
                let path = Path(p);
                let x = IntVector::from_i64s(&x);
                let y = s
                    .expand()
                    .replay(&Configuration::new(s.source_state(), x.clone()), &path, Semantics::Z)
                    .unwrap()
                    .vector;
                (s, x, y, path)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn ub_is_monotone(path in prop::collection::vec(0usize..3, 0..20), b in 0i64..6, extra in 0i64..4) {
        let s = vas(&[&[1, 0], &[0, 1], &[1, 1]]);
        let run = vas_run(&s, &[0, 0], &path);
        let low = ub_set(&s, &run, &big(b));
        let high = ub_set(&s, &run, &big(b + extra));
        prop_assert!(high.ub_set.is_subset(&low.ub_set));
    }

    #[test]
    fn dichotomy_predicates_hold(steps in prop::collection::vec(0usize..6, 0..25), b in 0i64..8, quasi in any::<bool>()) {
        let s = vas(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        let mut x = [0i64; 3];
        let mut path = Vec::new();
        for t in steps {
            let i = t % 3;
            if t >= 3 && x[i] == 0 { continue; }
            x[i] += if t < 3 { 1 } else { -1 };
            path.push(t);
        }
        let run = vas_run(&s, &[0, 0, 0], &path);
        let col = collinearity(&s);
        let mode = if quasi { SplitMode::Quasi } else { SplitMode::Almost };
        let split = dichotomy_split(&s, &run, &big(b), mode, &col).unwrap();
        prop_assert!(split.holds_for(&s, &run, &col));
        let unbounded = matches!(split.kind, SplitKind::AlmostUnbounded | SplitKind::QuasiUnbounded);
        prop_assert_eq!(split.threshold_used.clone(), if unbounded { big(b) } else { big(b) + s.size() });
    }

    #[test]
    fn rackoff_postconditions(steps in prop::collection::vec(0usize..4, 0..120), u in 1i64..4) {
        let s = vas(&[&[2, 0], &[-1, 0], &[0, 1], &[1, -1]]);
        let mut x = [0i64; 2];
        let mut path = Vec::new();
        let eff = [[2, 0], [-1, 0], [0, 1], [1, -1]];
        for t in steps {
            let y = [x[0] + eff[t][0], x[1] + eff[t][1]];
            if y[0] >= 0 && y[1] >= 0 { x = y; path.push(t); }
        }
        let run = vas_run(&s, &[0, 0], &path);
        let m = s.size();
        let ex = rackoff_extract(&s, &run, &big(u), &m).unwrap();
        prop_assert!(deletions_are_cycles(&s, &run, &ex));
        prop_assert_eq!(ex.run.start(), run.start());
        let end = ex.run.end(&s);
        for &i in &ex.covered { prop_assert!(end.vector[i] >= big(u)); }
    }

    #[test]
    fn pumpable_forward_is_backward_of_reverse(x in prop::collection::vec(0i64..3, 2)) {
        let t = vas(&[&[1, -1], &[-2, 1], &[0, -1]]);
        let c = Configuration::new(StateId::vas(), v(&x));
        prop_assert_eq!(
            pumpable(&t, &c, Direction::Forward).unwrap(),
            pumpable(&t.reverse(), &c, Direction::Backward).unwrap()
        );
    }

    #[test]
    fn lift_output_replays((s, x, y, z) in wide_seq()) {
        let e = s.expand();
        let src = Configuration::new(s.source_state(), x.clone());
        let tgt = Configuration::new(s.target_state(), y.clone());
        prop_assume!(y.is_nonneg());
        let t1 = find_pump_certificate(&e, &src, Direction::Forward, 100_000).unwrap().unwrap();
        let t2 = find_pump_certificate(&e, &tgt, Direction::Backward, 100_000).unwrap().unwrap();
        let run = lift_z_run(&s, &x, &t1, &y, &t2, &z).unwrap();
        prop_assert_eq!(run.end(&e), tgt);
        prop_assert_eq!(e.effect(run.path()).unwrap(), e.effect(&z).unwrap());
    }
}
