use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

use super::*;
use crate::geometry::{collinearity, cycle_space, is_projective, is_wide};
use crate::model::{SequentialVas, Transition};
use crate::oracle::{enumerate_simple_cycles, explore, len_set, reach_bfs, subset_sum_bruteforce, SearchBudget};

fn v(x: &[i64]) -> IntVector {
    IntVector::from_i64s(x)
}

fn vas(effects: &[&[i64]], s: &[i64], t: &[i64]) -> ReachInstance {
    ReachInstance::vas(s.len(), effects.iter().map(|e| v(e)).collect(), v(s), v(t)).unwrap()
}

fn seq(base: &[&[i64]], bridges: &[&[i64]], s: &[i64], t: &[i64]) -> ReachInstance {
    let sv = SequentialVas::new(
        s.len(),
        base.iter().map(|e| v(e)).collect(),
        bridges.iter().map(|e| v(e)).collect(),
    )
    .unwrap();
    ReachInstance::sequential(sv, v(s), v(t)).unwrap()
}

fn vass(
    dim: usize,
    states: &[&str],
    ts: &[(&str, &[i64], &str)],
    s: (&str, &[i64]),
    t: (&str, &[i64]),
) -> ReachInstance {
    let sys = Vass::new(
        dim,
        states.iter().map(|q| StateId::new(q)),
        ts.iter().map(|(p, e, q)| Transition::new(*p, v(e), *q)).collect(),
    )
    .unwrap();
    ReachInstance::from_vass(sys, Configuration::new(s.0, v(s.1)), Configuration::new(t.0, v(t.1))).unwrap()
}

/// Exact length set up to `horizon` under a norm cap; panics if the cap may hide runs.
fn lens_capped(inst: &ReachInstance, horizon: usize, cap: u64) -> BTreeSet<usize> {
    let l = len_set(
        inst.vass(),
        inst.source(),
        inst.target(),
        horizon,
        &SearchBudget::new(horizon, cap),
    )
    .unwrap();
    l.lengths
}

/// Length set up to `horizon`; the norm cap is large enough to be irrelevant.
fn lens(inst: &ReachInstance, horizon: usize) -> BTreeSet<usize> {
    let l = len_set(
        inst.vass(),
        inst.source(),
        inst.target(),
        horizon,
        &SearchBudget::new(horizon, 1_000),
    )
    .unwrap();
    assert!(!l.inconclusive, "length oracle was cut off");
    l.lengths
}

fn out_instance(out: &ReductionOutput) -> &ReachInstance {
    out.as_instance()
        .unwrap_or_else(|| panic!("expected an instance, got {:?}", out.produced))
}

fn scaled_upto(a: &BTreeSet<usize>, k: usize, horizon: usize) -> BTreeSet<usize> {
    a.iter().map(|l| l * k).filter(|&l| l <= horizon).collect()
}

fn reachable(inst: &ReachInstance, max_len: usize, cap: u64) -> bool {
    reach_bfs(
        inst.vass(),
        inst.source(),
        inst.target(),
        &SearchBudget::new(max_len, cap),
    )
    .unwrap()
    .is_reachable()
}

fn family_union(out: ReductionOutput, horizon: usize) -> BTreeSet<usize> {
    let Produced::Family(f) = out.produced else {
        panic!("expected a family")
    };
    let (members, truncated) = f.collect_all();
    assert!(!truncated);
    members.iter().flat_map(|m| lens(m, horizon)).collect()
}

#[test]
fn fixed_coordinates() {
    let out = remove_fixed_coordinates(&seq(&[&[1, 0]], &[], &[0, 5], &[3, 5])).unwrap();
    let inst = out_instance(&out);
    assert_eq!(inst.dim(), 1);
    assert_eq!(out.relation, Relation::LenEqual);
    assert_eq!(lens(inst, 6), lens(&seq(&[&[1, 0]], &[], &[0, 5], &[3, 5]), 6));
    assert!(remove_fixed_coordinates(&seq(&[&[1, 0]], &[], &[0, 5], &[3, 4]))
        .unwrap()
        .is_unreachable());
    assert!(
        remove_fixed_coordinates(&seq(&[&[1, 0]], &[&[0, -1]], &[0, 0], &[0, 0]))
            .unwrap()
            .is_unreachable()
    );
}

#[test]
fn nonwide_unit_vectors() {
    let inst = vas(&[&[1, 0], &[0, 1]], &[0, 0], &[1, 1]);
    let out = decompose_nonwide(&inst, 100).unwrap();
    assert_eq!(out.relation, Relation::LenCapturedByUnion);
    assert!(out.provenance.parameters.contains(&("K".into(), "2".into())));
    assert!(out.provenance.parameters.contains(&("normal".into(), "(1,1)".into())));
    assert_eq!(family_union(out, 6), BTreeSet::from([2]));
    assert_eq!(lens(&inst, 6), BTreeSet::from([2]));
}

#[test]
fn nonwide_with_balanced_base() {
    let inst = vas(&[&[1, -1], &[-1, 1], &[1, 0]], &[0, 0], &[2, 0]);
    let out = decompose_nonwide(&inst, 1000).unwrap();
    assert!(out.provenance.parameters.contains(&("K".into(), "2".into())));
    let Produced::Family(f) = &out.produced else { panic!() };
    assert_eq!(f.base(), &[v(&[1, -1]), v(&[-1, 1])]);
    let base_dim = cycle_space(inst.vass()).dim_cyc;
    for m in f.clone() {
        assert!(is_wide(m.system()).unwrap());
        let System::Sequential(sq) = m.system() else { panic!() };
        assert!(cycle_space(&Vass::vas(2, sq.base().to_vec()).unwrap()).dim_cyc < base_dim);
    }
    assert_eq!(family_union(out, 8), lens(&inst, 8));
}

#[test]
fn nonwide_negative_budget_and_truncation() {
    let inst = vas(&[&[1, 0], &[0, 1]], &[1, 1], &[0, 0]);
    assert!(decompose_nonwide(&inst, 10).unwrap().is_unreachable());
    let inst = vas(&[&[1, 0], &[0, 1]], &[0, 0], &[2, 2]);
    let Produced::Family(mut f) = decompose_nonwide(&inst, 3).unwrap().produced else {
        panic!()
    };
    assert_eq!(f.by_ref().count(), 3);
    assert!(f.is_truncated());
}

#[test]
fn nonwide_wide_input_is_singleton() {
    let inst = vas(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[0, 0], &[1, 1]);
    let Produced::Family(f) = decompose_nonwide(&inst, 10).unwrap().produced else {
        panic!()
    };
    let (members, truncated) = f.collect_all();
    assert_eq!(members.len(), 1);
    assert!(!truncated);
    assert_eq!(lens(&members[0], 6), lens(&inst, 6));
}

#[test]
fn encode_chain() {
    let inst = vas(&[&[1], &[-1]], &[0], &[2]);
    let out = encode_bounded_coordinates(&inst, &[0], &BigInt::from(3)).unwrap();
    let enc = out_instance(&out);
    assert_eq!(enc.vass().states().len(), 3);
    assert_eq!(enc.dim(), 1);
    assert_eq!(out.relation, Relation::LenLowerBoundsOriginal { offset: 0 });
    assert_eq!(lens(enc, 8), lens_capped(&inst, 8, 2));
    let cycles = enumerate_simple_cycles(enc.vass(), 1000);
    assert!(cycles.effects.iter().all(|e| e[0] == BigInt::from(0)));
}

#[test]
fn encode_unit_bound_drops_moves() {
    let inst = vas(&[&[1, 1], &[0, 1]], &[0, 0], &[0, 3]);
    let enc = encode_bounded_coordinates(&inst, &[0], &BigInt::from(1)).unwrap();
    let enc = out_instance(&enc);
    assert!(enc.vass().effects().iter().all(|e| e[0] == BigInt::from(0)));
    assert_eq!(lens(enc, 5), BTreeSet::from([3]));
    let bad = vas(&[&[1]], &[0], &[3]);
    assert!(matches!(
        encode_bounded_coordinates(&bad, &[0], &BigInt::from(3)),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn concat_adds_one_step() {
    let inst = vas(&[&[1, 0], &[0, 1], &[-1, 0]], &[0, 0], &[1, 2]);
    let out = concat_two_encodings(&inst, &[0], &[0], &BigInt::from(10)).unwrap();
    assert_eq!(out.relation, Relation::LenLowerBoundsOriginal { offset: 1 });
    let a = lens(&inst, 8);
    let b = lens(out_instance(&out), 9);
    assert_eq!(b.iter().next().copied(), a.iter().next().map(|l| l + 1));
    assert!(b.iter().all(|l| a.contains(&(l - 1))));
}

#[test]
fn concat_unsplittable() {
    let inst = vass(
        2,
        &["a", "b", "c"],
        &[("a", &[2, 2], "b"), ("b", &[-2, -2], "c")],
        ("a", &[0, 0]),
        ("c", &[0, 0]),
    );
    assert_eq!(lens(&inst, 4), BTreeSet::from([2]));
    let out = concat_two_encodings(&inst, &[0], &[1], &BigInt::from(2)).unwrap();
    assert!(lens(out_instance(&out), 6).is_empty());
}

#[test]
fn concat_zero_dimensional() {
    let inst = vass(0, &["q"], &[], ("q", &[]), ("q", &[]));
    let out = concat_two_encodings(&inst, &[], &[], &BigInt::from(1)).unwrap();
    let out = out_instance(&out);
    assert_eq!(out.vass().states().len(), 2);
    assert_eq!(lens(out, 3), BTreeSet::from([1]));
}

#[test]
fn negative_collinear() {
    assert_eq!(negative_collinear_bound(&BigInt::from(4)), BigInt::from(56));
    let inst = seq(&[&[1, -1, 0], &[-1, 1, 2]], &[], &[1, 0, 0], &[1, 0, 4]);
    let report = collinearity(&Vass::vas(3, vec![v(&[1, -1, 0]), v(&[-1, 1, 2])]).unwrap());
    let alpha = &report.pairs[&(0, 1)].alpha;
    assert!(alpha.is_negative());
    assert!(alpha.abs() >= BigRational::new(1.into(), inst.size()));
    let out = eliminate_negative_collinear(&inst).unwrap();
    let red = out_instance(&out);
    assert_eq!(red.dim(), 1);
    assert_eq!(out.relation, Relation::LenEqual);
    assert_eq!(lens(red, 8), lens(&inst, 8));
    assert!(!lens(red, 8).is_empty());
    assert!(cycle_space(red.vass()).dim_cyc < cycle_space(inst.vass()).dim_cyc);
    assert!(matches!(
        eliminate_negative_collinear(&seq(&[&[1, 0]], &[], &[0, 0], &[1, 0])),
        Err(Error::Precondition(_))
    ));
}

fn points(g: &NonnegGadget) -> Vec<(i64, i64)> {
    g.minimal_points
        .iter()
        .map(|(a, b)| (a.try_into().unwrap(), b.try_into().unwrap()))
        .collect()
}

#[test]
fn gadget_examples() {
    let b = |x: i64| BigInt::from(x);
    assert_eq!(points(&gadget_nonneg(&b(1), &b(2), &b(3)).unwrap()), vec![(0, 0)]);
    assert_eq!(
        points(&gadget_nonneg(&b(2), &b(3), &b(-6)).unwrap()),
        vec![(0, 2), (1, 2), (2, 1), (3, 0)]
    );
    let empty = gadget_nonneg(&b(0), &b(0), &b(-1)).unwrap();
    assert!(empty.minimal_points.is_empty());
    let g = empty.vass();
    let (p, q) = (Configuration::new("p", v(&[3, 3])), Configuration::new("q", v(&[3, 3])));
    assert_eq!(
        reach_bfs(&g, &p, &q, &SearchBudget::new(4, 10)).unwrap().verdict(),
        Some(false)
    );
    assert!(gadget_nonneg(&b(-1), &b(0), &b(0)).is_err());
}

#[test]
fn geo2d_identity_plane() {
    let inst = vas(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[0, 0], &[1, 1]);
    let out = geo2d_to_2vass(&inst, DEFAULT_SHIFT_CAP).unwrap();
    assert_eq!(out.relation, Relation::LenScaled(5));
    let red = out_instance(&out);
    assert_eq!(red.dim(), 2);
    assert_eq!(lens(red, 50), scaled_upto(&lens(&inst, 10), 5, 50));
}

#[test]
fn geo2d_three_dimensional_projective() {
    let inst = vas(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, -1]], &[1, 1, 2], &[1, 1, 2]);
    let out = geo2d_to_2vass(&inst, DEFAULT_SHIFT_CAP).unwrap();
    assert_eq!(out.relation, Relation::LenScaled(7));
    let red = out_instance(&out);
    let base = lens(&inst, 8);
    assert!(base.contains(&0) && base.contains(&2));
    assert_eq!(lens(red, 56), scaled_upto(&base, 7, 56));
}

#[test]
fn geo2d_nonprojective_plane() {
    let inst = vas(&[&[1, 0, -1], &[0, 1, -1]], &[0, 0, 4], &[1, 1, 2]);
    let out = geo2d_to_2vass(&inst, DEFAULT_SHIFT_CAP).unwrap();
    assert!(out
        .provenance
        .parameters
        .contains(&("via".into(), "make_projective".into())));
    let red = out_instance(&out);
    assert_eq!(lens(red, 56), scaled_upto(&lens(&inst, 8), 7, 56));
    assert_eq!(lens(red, 56), BTreeSet::from([14]));
}

#[test]
fn geo2d_low_dimensions() {
    let one = vas(&[&[2], &[-1]], &[1], &[2]);
    let out = geo2d_to_2vass(&one, DEFAULT_SHIFT_CAP).unwrap();
    assert_eq!(out.relation, Relation::LenScaled(3));
    assert_eq!(lens(out_instance(&out), 30), scaled_upto(&lens(&one, 10), 3, 30));
    let zero = vass(
        0,
        &["p", "q"],
        &[("p", &[], "q"), ("q", &[], "q")],
        ("p", &[]),
        ("q", &[]),
    );
    let out = geo2d_to_2vass(&zero, DEFAULT_SHIFT_CAP).unwrap();
    assert_eq!(out.relation, Relation::LenScaled(1));
    assert_eq!(lens(out_instance(&out), 5), lens(&zero, 5));
    let line = vas(&[&[1, 2], &[-1, -2]], &[0, 0], &[2, 4]);
    let out = geo2d_to_2vass(&line, DEFAULT_SHIFT_CAP).unwrap();
    assert_eq!(lens(out_instance(&out), 30), scaled_upto(&lens(&line, 6), 5, 30));
}

#[test]
fn geo2d_shift_cap() {
    let inst = vas(&[&[1, 0, -1], &[0, 1, -1]], &[0, 0, 4], &[1, 1, 2]);
    assert!(matches!(geo2d_to_2vass(&inst, 1), Err(Error::Capacity { cap: 1, .. })));
    let wide = vas(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[0, 0, 0], &[0, 0, 0]);
    assert!(matches!(geo2d_to_2vass(&wide, 10), Err(Error::Precondition(_))));
}

#[test]
fn make_projective_example() {
    let inst = vas(&[&[1, 0, -1], &[0, 1, -1]], &[0, 0, 4], &[1, 1, 2]);
    let out = make_projective(&inst).unwrap();
    assert_eq!(out.relation, Relation::LenEqual);
    let red = out_instance(&out);
    let info = cycle_space(red.vass());
    assert_eq!(info.dim_cyc, 2);
    assert!(is_projective(&info.global_basis[0], &info.global_basis[1]).is_some());
    assert_eq!(lens(red, 8), lens(&inst, 8));
    let bound = BigInt::from(6) * inst.size().pow(3);
    let seen = explore(inst.vass(), inst.source(), &SearchBudget::new(8, 100)).unwrap();
    assert!(seen.configurations.iter().all(|(c, _)| c.vector.norm() <= bound));
    let projective = vas(&[&[1, 0], &[0, 1]], &[0, 0], &[1, 1]);
    assert!(matches!(make_projective(&projective), Err(Error::Precondition(_))));
}

#[test]
fn pad_cases() {
    let zero = vas(&[], &[0, 0], &[0, 0]);
    let red = pad_to_projective(&zero).unwrap();
    let effects = out_instance(&red).vass().effects();
    assert!(effects.contains(&v(&[1, 0])) && effects.contains(&v(&[0, 1])));
    let ones = vas(&[&[2, 2], &[-1, -1]], &[0, 0], &[0, 0]);
    let red = pad_to_projective(&ones).unwrap();
    assert!(out_instance(&red).vass().effects().contains(&v(&[1, -1])));
    let line = vas(&[&[1, 2]], &[0, 0], &[0, 0]);
    let red = pad_to_projective(&line).unwrap();
    assert!(out_instance(&red).vass().effects().contains(&v(&[1, 1])));
    for inst in [&zero, &ones, &line] {
        let red = pad_to_projective(inst).unwrap();
        let info = cycle_space(out_instance(&red).vass());
        assert_eq!(info.dim_cyc, 2);
        assert!(is_projective(&info.global_basis[0], &info.global_basis[1]).is_some());
        assert_eq!(lens(out_instance(&red), 6), lens(inst, 6));
    }
}

#[test]
fn four_vass_plane() {
    let t: &[&[i64]] = &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]];
    for x in 0..=5 {
        for y in 0..=5 - x {
            let inst = vas(t, &[0, 0], &[x, y]);
            let out = geo2vas_to_4vass(&inst).unwrap();
            assert_eq!(out.relation, Relation::ReachEquivalent);
            let red = out_instance(&out);
            assert_eq!(red.dim(), 2);
            assert_eq!(reachable(red, 60, 10), reachable(&inst, 12, 10));
        }
    }
}

#[test]
fn four_vass_offset_plane() {
    let t: &[&[i64]] = &[&[1, 1, 0, 0], &[0, 0, 1, 1], &[-1, -1, 0, 0], &[0, 0, -1, -1]];
    let s = [1, 0, 2, 1];
    let mut rng_targets = Vec::new();
    for k in 0..50i64 {
        let (a, b) = (k % 5 - 1, (k / 5) % 5 - 1);
        let skew = if k % 3 == 0 { 1 } else { 0 };
        rng_targets.push([1 + a + skew, a, 2 + b, 1 + b]);
    }
    let mut agree = 0;
    for tgt in rng_targets.iter().filter(|x| x.iter().all(|&e| e >= 0)) {
        let inst = vas(t, &s, tgt);
        let out = geo2vas_to_4vass(&inst).unwrap();
        let expected = reachable(&inst, 12, 8);
        let got = match &out.produced {
            Produced::Unreachable { .. } => false,
            Produced::Instance(red) => {
                assert!(red.dim() <= 4);
                reachable(red, 60, 8)
            }
            Produced::Family(_) => unreachable!(),
        };
        assert_eq!(got, expected, "target {tgt:?}");
        agree += 1;
    }
    assert!(agree >= 30);
}

#[test]
fn four_vass_cycles_are_projections() {
    let t: &[&[i64]] = &[&[1, 1, 0, 0], &[0, 0, 1, 1], &[-1, -1, 0, 0]];
    let inst = vas(t, &[1, 0, 2, 1], &[2, 1, 3, 2]);
    let out = geo2vas_to_4vass(&inst).unwrap();
    let red = out_instance(&out);
    let index: Vec<usize> = out
        .provenance
        .parameters
        .iter()
        .find(|(k, _)| k == "I")
        .map(|(_, x)| {
            x.trim_matches(['[', ']'])
                .split(',')
                .map(|c| c.parse().unwrap())
                .collect()
        })
        .unwrap();
    let projections: Vec<IntVector> = t.iter().map(|a| v(a).restrict(&index)).collect();
    let cycles = enumerate_simple_cycles(red.vass(), 10_000);
    assert!(!cycles.truncated);
    assert!(!cycles.effects.is_empty());
    assert!(cycles.effects.iter().all(|e| projections.contains(e)));
    assert!(cycle_space(red.vass()).dim_cyc <= 2);
}

#[test]
fn subset_sum_examples() {
    let (inst, expected) = subset_sum_instance(&[1, 2], 3).unwrap();
    assert!(expected);
    assert_eq!(inst.dim(), 2);
    assert_eq!(inst.target().vector, v(&[1, 1]));
    assert!(reachable(&inst, 20, 8));
    let (inst, expected) = subset_sum_instance(&[2, 2], 3).unwrap();
    assert!(!expected);
    assert!(!reachable(&inst, 40, 8));
    let (inst, expected) = subset_sum_instance(&[1], 0).unwrap();
    assert!(expected);
    assert!(reachable(&inst, 10, 4));
    let (inst, expected) = subset_sum_instance(&[1, 2], 9).unwrap();
    assert!(!expected);
    assert!(!reachable(&inst, 40, 16));
    assert!(subset_sum_instance(&[], 0).is_err());
}

#[test]
fn relation_labels() {
    assert_eq!(Relation::LenScaled(5).to_string(), "len-scaled 5");
    assert_eq!(
        Relation::LenLowerBoundsOriginal { offset: 1 }.to_string(),
        "len-lower-bounds-original +1"
    );
    assert!(unreachable_instance(2).vass().transitions().is_empty());
}

fn small_effects(d: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, d), 1..=3)
}

fn as_refs(xs: &[Vec<i64>]) -> Vec<&[i64]> {
    xs.iter().map(|x| x.as_slice()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gadget_truth_table(m in 0i64..4, n in 0i64..4, b in -9i64..4) {
        let g = gadget_nonneg(&m.into(), &n.into(), &b.into()).unwrap();
        let sys = g.vass();
        for x in 0..7i64 {
            for y in 0..7i64 {
                let holds = m * x + n * y + b >= 0;
                prop_assert_eq!(g.accepts(&x.into(), &y.into()), holds);
                let p = Configuration::new("p", v(&[x, y]));
                let out = reach_bfs(&sys, &p, &Configuration::new("q", v(&[x, y])), &SearchBudget::new(3, 20)).unwrap();
                match out {
                    crate::oracle::ReachOutcome::Reachable { len, .. } => {
                        prop_assert!(holds);
                        prop_assert_eq!(len, 2);
                    }
                    _ => prop_assert!(!holds),
                }
                // No other endpoint is reachable in q.
                let seen = explore(&sys, &p, &SearchBudget::new(3, 20)).unwrap();
                for (c, _) in &seen.configurations {
                    if c.state == StateId::new("q") {
                        prop_assert_eq!(&c.vector, &v(&[x, y]));
                    }
                }
            }
        }
    }

    #[test]
    fn fixed_removal_preserves_lengths(
        base in small_effects(2),
        bridges in prop::collection::vec(prop::collection::vec(-1i64..=2, 3), 0..=2),
        s in prop::collection::vec(0i64..3, 3),
        t in prop::collection::vec(0i64..3, 3),
    ) {
        let base: Vec<Vec<i64>> = base.into_iter().map(|mut e| { e.push(0); e }).collect();
        let inst = seq(&as_refs(&base), &as_refs(&bridges), &s, &t);
        let out = remove_fixed_coordinates(&inst).unwrap();
        let original = lens_capped(&inst, 6, 12);
        match out.as_instance() {
            Some(red) => prop_assert_eq!(lens_capped(red, 6, 12), original),
            None => prop_assert!(original.is_empty()),
        }
    }

    #[test]
    fn encoding_matches_capped_lengths(
        effects in small_effects(2),
        s in prop::collection::vec(0i64..3, 2),
        t in prop::collection::vec(0i64..3, 2),
        b in 3i64..5,
    ) {
        let inst = vas(&as_refs(&effects), &s, &t);
        let out = encode_bounded_coordinates(&inst, &[0, 1], &BigInt::from(b)).unwrap();
        prop_assert_eq!(lens(out_instance(&out), 6), lens_capped(&inst, 6, (b - 1) as u64));
    }

    #[test]
    fn nonwide_union_matches(effects in small_effects(2), t in prop::collection::vec(0i64..3, 2)) {
        let inst = vas(&as_refs(&effects), &[1, 1], &t);
        let out = decompose_nonwide(&inst, 10_000).unwrap();
        let original = lens_capped(&inst, 5, 12);
        match out.produced {
            Produced::Unreachable { .. } => prop_assert!(original.is_empty()),
            Produced::Family(f) => {
                let (members, truncated) = f.collect_all();
                prop_assert!(!truncated);
                let union: BTreeSet<usize> = members.iter().flat_map(|m| lens_capped(m, 5, 12)).collect();
                prop_assert_eq!(union, original);
            }
            Produced::Instance(_) => prop_assert!(false),
        }
    }

    #[test]
    fn geo2d_scales_lengths(
        effects in prop::collection::vec(prop::collection::vec(-1i64..=1, 2), 1..=3),
        s in prop::collection::vec(0i64..2, 2),
        t in prop::collection::vec(0i64..2, 2),
    ) {
        let inst = vas(&as_refs(&effects), &s, &t);
        let out = geo2d_to_2vass(&inst, DEFAULT_SHIFT_CAP).unwrap();
        let original = lens(&inst, 4);
        match out.as_instance() {
            Some(red) => prop_assert_eq!(lens(red, 20), scaled_upto(&original, 5, 20)),
            None => prop_assert!(original.is_empty()),
        }
    }

    #[test]
    fn subset_sum_agrees(set in prop::collection::vec(0u64..4, 1..=3), target in 0u64..8) {
        let (inst, expected) = subset_sum_instance(&set, target).unwrap();
        prop_assert_eq!(expected, subset_sum_bruteforce(&set, target).unwrap());
        let out = reach_bfs(inst.vass(), inst.source(), inst.target(), &SearchBudget::new(60, 16)).unwrap();
        prop_assert_eq!(out.is_reachable(), expected);
    }
}
