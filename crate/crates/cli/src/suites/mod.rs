//! The acceptance criteria as seeded, self-checking suites.

pub mod gen;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use vasreach::geometry::{
    collinearity, cone_by_four, cycle_space, farkas_normal_vector, is_projective, is_wide, shift,
    sign_reflecting_projection,
};
use vasreach::linalg::{cone_equals_span, in_cone, rank};
use vasreach::oracle::{
    coverable, enumerate_simple_cycles, explore, len_set, reach_bfs, subset_sum_bruteforce, LenSet, ReachOutcome,
    SearchBudget,
};
use vasreach::pumping::{
    extract_pumpable, find_pump_certificate, lift_z_run, pump_bound, rackoff_extract, rackoff_schedule, Direction,
};
use vasreach::reductions::{
    decompose_nonwide, eliminate_negative_collinear, encode_bounded_coordinates, gadget_nonneg, geo2d_to_2vass,
    geo2vas_to_4vass, remove_fixed_coordinates, subset_sum_instance, Produced, ReductionOutput, Relation,
    DEFAULT_SHIFT_CAP,
};
use vasreach::{Configuration, IntVector, Path, ReachInstance, Run, Semantics, SequentialVas, StateId, System, Vass};

use gen::Rng8;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Failures kept verbatim in a report; the rest are only counted.
const KEPT_FAILURES: usize = 5;

#[derive(Default)]
struct Outcome {
    cases: usize,
    excluded: usize,
    failures: Vec<String>,
    failure_count: usize,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn need_cases(&mut self, minimum: usize) {
        let cases = self.cases;
        self.check(cases >= minimum, || format!("only {cases} cases, {minimum} required"));
    }
}

pub struct Criterion {
    pub id: u8,
    pub suite: &'static str,
    pub title: &'static str,
    time_limit: Option<Duration>,
    run: fn(&mut Rng8) -> Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub suite: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub excluded: usize,
    pub failures: usize,
    pub failure_samples: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
    pub time_limit_ms: Option<u128>,
}

impl CriterionResult {
    /// One human-readable line.
    pub fn line(&self) -> String {
        let mut s = format!(
            "{} [{:>2}] {:<16} {}: {} cases",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.suite,
            self.title,
            self.cases
        );
        if self.excluded > 0 {
            s += &format!(", {} excluded", self.excluded);
        }
        if self.failures > 0 {
            s += &format!(", {} failures", self.failures);
        }
        s += &format!(" ({:.2}s", self.elapsed_ms as f64 / 1000.0);
        if let Some(limit) = self.time_limit_ms {
            s += &format!(" of {}s", limit / 1000);
        }
        s.push(')');
        for n in &self.notes {
            s += &format!("; {n}");
        }
        for f in &self.failure_samples {
            s += &format!("\n       - {f}");
        }
        s
    }
}

pub fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion {
            id: 1,
            suite: "gadget",
            title: "gadget exhaustive truth table",
            time_limit: secs(10),
            run: gadget_truth_table,
        },
        Criterion {
            id: 2,
            suite: "geo2d",
            title: "geo2d_to_2vass length scaling",
            time_limit: secs(300),
            run: geo2d_scaling,
        },
        Criterion {
            id: 3,
            suite: "four-vass",
            title: "geo2vas_to_4vass reachability equivalence",
            time_limit: None,
            run: four_vass_equivalence,
        },
        Criterion {
            id: 4,
            suite: "nonwide",
            title: "non-wide decomposition length union",
            time_limit: None,
            run: nonwide_union,
        },
        Criterion {
            id: 5,
            suite: "fixed-collinear",
            title: "fixed-coordinate and negative-collinear removal",
            time_limit: None,
            run: fixed_and_collinear,
        },
        Criterion {
            id: 6,
            suite: "encode",
            title: "bounded-coordinate encoding",
            time_limit: None,
            run: encode_bounded,
        },
        Criterion {
            id: 7,
            suite: "cycle-space",
            title: "cycle space against simple cycles",
            time_limit: None,
            run: cycle_space_spans,
        },
        Criterion {
            id: 8,
            suite: "farkas",
            title: "normal vector certificates",
            time_limit: None,
            run: farkas_certificates,
        },
        Criterion {
            id: 9,
            suite: "rackoff",
            title: "Rackoff extraction postconditions",
            time_limit: None,
            run: rackoff_postconditions,
        },
        Criterion {
            id: 10,
            suite: "pumping",
            title: "pumping certificates and lifted runs",
            time_limit: None,
            run: pumping,
        },
        Criterion {
            id: 11,
            suite: "subset-sum",
            title: "subset-sum generator against brute force",
            time_limit: secs(30),
            run: subset_sum,
        },
        Criterion {
            id: 12,
            suite: "shifts",
            title: "shift constancy and bounded shifts",
            time_limit: None,
            run: shift_invariants,
        },
        Criterion {
            id: 13,
            suite: "projective",
            title: "projectiveness under base change",
            time_limit: None,
            run: projective_base_change,
        },
    ]
}

pub fn suite_names() -> Vec<&'static str> {
    criteria().iter().map(|c| c.suite).collect()
}

fn run_one(c: &Criterion, seed: u64) -> CriterionResult {
    let mut rng = Rng8::seed_from_u64(seed ^ (u64::from(c.id) << 32));
    let start = Instant::now();
    let mut out = (c.run)(&mut rng);
    let elapsed = start.elapsed();
    if let Some(limit) = c.time_limit {
        out.check(elapsed <= limit, || {
            format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs())
        });
    }
    CriterionResult {
        id: c.id,
        suite: c.suite,
        title: c.title,
        passed: out.failure_count == 0,
        cases: out.cases,
        excluded: out.excluded,
        failures: out.failure_count,
        failure_samples: out.failures,
        notes: out.notes,
        elapsed_ms: elapsed.as_millis(),
        time_limit_ms: c.time_limit.map(|l| l.as_millis()),
    }
}

/// Runs the selected suites (all when `only` is empty) on worker threads;
/// results come back in criterion order.
pub fn run(only: &[String], seed: u64) -> Result<Vec<CriterionResult>, String> {
    let all = criteria();
    for name in only {
        if name != "all" && !all.iter().any(|c| c.suite == name || c.id.to_string() == *name) {
            return Err(format!(
                "unknown suite `{name}`; known: all, {}",
                suite_names().join(", ")
            ));
        }
    }
    let chosen: Vec<&Criterion> = all
        .iter()
        .filter(|c| {
            only.is_empty()
                || only
                    .iter()
                    .any(|n| n == "all" || n == c.suite || *n == c.id.to_string())
        })
        .collect();
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = chosen.iter().map(|c| scope.spawn(move || run_one(c, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
    });
    Ok(results)
}

fn budget(max_len: usize, max_norm: u64) -> SearchBudget {
    SearchBudget::new(max_len, max_norm)
}

fn lens(inst: &ReachInstance, horizon: usize, max_norm: u64) -> LenSet {
    len_set(
        inst.vass(),
        inst.source(),
        inst.target(),
        horizon,
        &budget(horizon, max_norm),
    )
    .expect("oracle input is valid")
}

fn at(state: &str, x: &[i64]) -> Configuration {
    Configuration::new(state, IntVector::from_i64s(x))
}

fn show(set: &BTreeSet<usize>) -> String {
    format!("{set:?}")
}

/// A random nonnegative walk from `start`, at most `steps` long.
fn walk(rng: &mut Rng8, v: &Vass, start: &Configuration, steps: usize) -> (Path, Configuration) {
    let mut cur = start.clone();
    let mut path = Vec::new();
    for _ in 0..steps {
        let q = v.state_index(&cur.state).expect("declared");
        let options: Vec<usize> = v
            .outgoing(q)
            .iter()
            .copied()
            .filter(|&k| (&cur.vector + &v.transition(k).effect).is_nonneg())
            .collect();
        if options.is_empty() {
            break;
        }
        let k = options[rng.gen_range(0..options.len())];
        let t = v.transition(k);
        cur = Configuration::new(t.dst.clone(), &cur.vector + &t.effect);
        path.push(k);
    }
    (Path(path), cur)
}

fn gadget_truth_table(_: &mut Rng8) -> Outcome {
    let mut out = Outcome::default();
    let q = StateId::new("q");
    for m in 0..=3i64 {
        for n in 0..=3i64 {
            for b in -8..=8i64 {
                let g = gadget_nonneg(&m.into(), &n.into(), &b.into()).expect("m, n ≥ 0");
                let sys = g.vass();
                for x in 0..=12i64 {
                    for y in 0..=12i64 {
                        out.cases += 1;
                        let holds = m * x + n * y + b >= 0;
                        let ex = explore(&sys, &at("p", &[x, y]), &budget(3, 64)).expect("valid");
                        let arrivals: Vec<&(Configuration, usize)> =
                            ex.configurations.iter().filter(|(c, _)| c.state == q).collect();
                        let ok = ex.complete
                            && if holds {
                                arrivals.len() == 1
                                    && arrivals[0].0.vector == IntVector::from_i64s(&[x, y])
                                    && arrivals[0].1 == 2
                            } else {
                                arrivals.is_empty()
                            };
                        out.check(ok, || {
                            format!("m={m} n={n} b={b} (x,y)=({x},{y}): inequality {holds}, reached {arrivals:?}")
                        });
                    }
                }
            }
        }
    }
    out
}

fn random_endpoints(rng: &mut Rng8, v: &Vass, hi: i64) -> (Configuration, Configuration) {
    let n = v.states().len();
    let d = v.dim();
    let s = Configuration::new(v.states()[rng.gen_range(0..n)].clone(), gen::naturals(rng, d, hi));
    let t = if rng.gen_bool(0.5) {
        let steps = rng.gen_range(0..=8);
        walk(rng, v, &s, steps).1
    } else {
        Configuration::new(v.states()[rng.gen_range(0..n)].clone(), gen::naturals(rng, d, hi))
    };
    let t = if t.vector.norm() > BigInt::from(hi) {
        Configuration::new(t.state, gen::naturals(rng, d, hi))
    } else {
        t
    };
    (s, t)
}

fn geo2d_scaling(rng: &mut Rng8) -> Outcome {
    let mut out = Outcome::default();
    let mut nonempty = 0;
    let mut attempts = 0;
    while out.cases < 200 && attempts < 2000 {
        attempts += 1;
        let d = rng.gen_range(1..=4);
        let (v, _, _) = gen::planar_vass(rng, d, 1..=5, 1..=6, 2);
        let (s, t) = random_endpoints(rng, &v, 3);
        let inst = ReachInstance::from_vass(v, s, t).expect("valid endpoints");
        let red = match geo2d_to_2vass(&inst, DEFAULT_SHIFT_CAP) {
            Ok(r) => r,
            Err(e) => {
                out.cases += 1;
                out.check(false, || format!("construction failed: {e}"));
                continue;
            }
        };
        let k = 2 * d + 1;
        let orig = lens(&inst, 10, 15);
        let got = match &red.produced {
            Produced::Instance(o) => lens(o, k * 10, 15),
            _ => LenSet {
                horizon: k * 10,
                lengths: BTreeSet::new(),
                inconclusive: false,
            },
        };
        if orig.inconclusive || got.inconclusive {
            out.excluded += 1;
            continue;
        }
        out.cases += 1;
        nonempty += usize::from(!orig.lengths.is_empty());
        out.check(red.relation == Relation::LenScaled(k), || {
            format!("relation {} for d={d}", red.relation)
        });
        out.check(got.lengths == orig.scaled(k), || {
            format!("d={d}: output {} vs {k}·{}", show(&got.lengths), show(&orig.lengths))
        });
    }
    out.need_cases(200);
    out.notes.push(format!("{nonempty} with nonempty length sets"));
    out
}

fn verdict(o: &ReachOutcome) -> Option<bool> {
    match o {
        ReachOutcome::Reachable { .. } => Some(true),
        ReachOutcome::UnreachableWithinBudget { .. } => Some(false),
        ReachOutcome::Inconclusive { .. } => None,
    }
}

fn four_vass_equivalence(rng: &mut Rng8) -> Outcome {
    let mut out = Outcome::default();
    let mut reachable = 0;
    let mut total = 0;
    while total < 250 {
        let d = rng.gen_range(1..=6);
        let effects = gen::planar_effects(rng, d, 1..=5, 2);
        if effects.is_empty() {
            continue;
        }
        total += 1;
        let v = Vass::vas(d, effects).expect("well-formed");
        let s = Configuration::new(StateId::vas(), gen::naturals(rng, d, 3));
        let t = if rng.gen_bool(0.6) {
            let steps = rng.gen_range(0..=6);
            walk(rng, &v, &s, steps).1
        } else {
            Configuration::new(StateId::vas(), gen::naturals(rng, d, 3))
        };
        let inst = ReachInstance::from_vass(v, s, t).expect("valid endpoints");
        let red = match geo2vas_to_4vass(&inst) {
            Ok(r) => r,
            Err(e) => {
                out.cases += 1;
                out.check(false, || format!("construction failed: {e}"));
                continue;
            }
        };
        let len = 8;
        let orig = verdict(&reach_bfs(inst.vass(), inst.source(), inst.target(), &budget(len, 15)).expect("valid"));
        let got = match &red.produced {
            Produced::Instance(o) => {
                out.check(o.dim() <= 4, || format!("output dimension {}", o.dim()));
                verdict(&reach_bfs(o.vass(), o.source(), o.target(), &budget((2 * d + 1) * len, 15)).expect("valid"))
            }
            _ => Some(false),
        };
        let (Some(a), Some(b)) = (orig, got) else {
            out.excluded += 1;
            continue;
        };
        out.cases += 1;
        reachable += usize::from(a);
        out.check(a == b, || {
            format!(
                "d={d} s={} t={}: original {a}, output {b}",
                inst.source(),
                inst.target()
            )
        });
    }
    out.need_cases(200);
    let (ex, all) = (out.excluded, out.cases + out.excluded);
    out.check(ex * 5 < all, || {
        format!("{ex} of {all} inconclusive, must stay below 20%")
    });
    out.notes.push(format!("{reachable} reachable"));
    out
}

fn lens_of_family(
    red: ReductionOutput,
    horizon: usize,
    max_norm: u64,
) -> Result<(BTreeSet<usize>, bool, usize), String> {
    match red.produced {
        Produced::Unreachable { .. } => Ok((BTreeSet::new(), false, 0)),
        Produced::Family(f) => {
            let (members, truncated) = f.collect_all();
            let mut union = BTreeSet::new();
            for m in &members {
                let l = lens(m, horizon, max_norm);
                if l.inconclusive {
                    return Err("member length oracle inconclusive".into());
                }
                union.extend(l.lengths);
            }
            Ok((union, truncated, members.len()))
        }
        Produced::Instance(_) => Err("expected a family".into()),
    }
}

fn nonwide_union(rng: &mut Rng8) -> Outcome {
    let mut out = Outcome::default();
    let mut truncated_cases = 0;
    let mut members = 0;
    while out.cases < 100 {
        let n = rng.gen_range(2..=4);
        let effects: Vec<IntVector> = (0..n).map(|_| gen::vector(rng, 3, -2, 2)).collect();
        let v = Vass::vas(3, effects).expect("well-formed");
        if is_wide(&System::Vass(v.clone())).expect("vas") {
            continue;
        }
        let s = Configuration::new(StateId::vas(), gen::naturals(rng, 3, 3));
        let t = if rng.gen_bool(0.6) {
            let steps = rng.gen_range(0..=5);
            walk(rng, &v, &s, steps).1
        } else {
            Configuration::new(StateId::vas(), gen::naturals(rng, 3, 3))
        };
        let inst = ReachInstance::from_vass(v, s, t).expect("valid");
        out.cases += 1;
        let orig = lens(&inst, 8, 64);
        let red = match decompose_nonwide(&inst, 500) {
            Ok(r) => r,
            Err(e) => {
                out.check(false, || format!("construction failed: {e}"));
                continue;
            }
        };
        match lens_of_family(red, 8, 64) {
            Ok((union, truncated, count)) => {
                members += count;
                if truncated {
                    truncated_cases += 1;
                    out.check(union.is_subset(&orig.lengths), || {
                        format!("truncated union {} ⊄ {}", show(&union), show(&orig.lengths))
                    });
                } else {
                    out.check(union == orig.lengths, || {
                        format!("union {} vs original {}", show(&union), show(&orig.lengths))
                    });
                }
            }
            Err(e) => out.check(false, || e),
        }
        out.check(!orig.inconclusive, || "original length oracle inconclusive".into());
    }
    out.notes.push(format!(
        "{members} family members, {truncated_cases} truncated families"
    ));
    out
}

fn compare_len_equal(out: &mut Outcome, label: &str, inst: &ReachInstance, red: &ReductionOutput) {
    let orig = lens(inst, 8, 64);
    let got = match red.as_instance() {
        Some(o) => lens(o, 8, 64),
        None => LenSet {
            horizon: 8,
            lengths: BTreeSet::new(),
            inconclusive: false,
        },
    };
    out.check(!orig.inconclusive && !got.inconclusive, || {
        format!("{label}: oracle inconclusive")
    });
    out.check(orig.lengths == got.lengths, || {
        format!(
            "{label}: output {} vs original {}",
            show(&got.lengths),
            show(&orig.lengths)
        )
    });
}

/// Usually the end of a random walk that reaches the last state, otherwise
/// a random vector.
fn target_by_walk(rng: &mut Rng8, seq: &SequentialVas, s: &IntVector) -> IntVector {
    if rng.gen_bool(0.75) {
        let e = seq.expand();
        let start = Configuration::new(seq.source_state(), s.clone());
        for _ in 0..20 {
            let steps = rng.gen_range(seq.bridges().len()..=8);
            let (_, end) = walk(rng, &e, &start, steps);
            if end.state == seq.target_state() {
                return end.vector;
            }
        }
    }
    gen::naturals(rng, seq.dim(), 3)
}

fn fixed_and_collinear(rng: &mut Rng8) -> Outcome {
    let mut out = Outcome::default();
    let mut nonempty = [0usize; 2];
    for _ in 0..100 {
        let fixed: Vec<usize> = (0..3).filter(|_| rng.gen_bool(0.4)).collect();
        let fixed = if fixed.is_empty() {
            vec![rng.gen_range(0..3)]
        } else {
            fixed
        };
        let base: Vec<IntVector> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let mut a = gen::vector(rng, 3, -2, 2);
                for &i in &fixed {
                    a.set(i, 0.into());
                }
                a
            })
            .collect();
        let bridges: Vec<IntVector> = (0..rng.gen_range(0..=2)).map(|_| gen::vector(rng, 3, -1, 2)).collect();
        let seq = SequentialVas::new(3, base, bridges).expect("well-formed");
        let s = gen::naturals(rng, 3, 3);
        let t = target_by_walk(rng, &seq, &s);
        let inst = ReachInstance::sequential(seq, s, t).expect("valid");
        out.cases += 1;
        match remove_fixed_coordinates(&inst) {
            Ok(red) => {
                nonempty[0] += usize::from(!lens(&inst, 8, 64).lengths.is_empty());
                compare_len_equal(&mut out, "fixed", &inst, &red);
            }
            Err(e) => out.check(false, || format!("fixed: {e}")),
        }
    }
    for _ in 0..100 {
        let (p, q) = [(1i64, 1i64), (1, 2), (2, 1)][rng.gen_range(0..3)];
        let base: Vec<IntVector> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let k = [-1i64, 1][rng.gen_range(0..2)];
                IntVector::from_i64s(&[k * p, -k * q, rng.gen_range(-2..=2)])
            })
            .collect();
        let bridges: Vec<IntVector> = (0..rng.gen_range(0..=1)).map(|_| gen::vector(rng, 3, -1, 2)).collect();
        let seq = SequentialVas::new(3, base, bridges).expect("well-formed");
        let s = gen::naturals(rng, 3, 3);
        let t = target_by_walk(rng, &seq, &s);
        let inst = ReachInstance::sequential(seq, s, t).expect("valid");
        out.cases += 1;
        match eliminate_negative_collinear(&inst) {
            Ok(red) => {
                out.check(red.as_instance().is_none_or(|o| o.dim() == 1), || {
                    "output dimension is not d − 2".into()
                });
                nonempty[1] += usize::from(!lens(&inst, 8, 64).lengths.is_empty());
                compare_len_equal(&mut out, "collinear", &inst, &red);
            }
            Err(e) => out.check(false, || format!("collinear: {e}")),
        }
    }
    out.need_cases(200);
    out.notes.push(format!(
        "nonempty length sets: {} fixed, {} collinear",
        nonempty[0], nonempty[1]
    ));
    out
}

fn encode_bounded(rng: &mut Rng8) -> Outcome {
    let mut out = Outcome::default();
    let mut bounded_cases = 0;
    while out.cases < 150 {
        let d = rng.gen_range(1..=3);
        let v = gen::random_vass(rng, d, 1..=3, 2..=5, -1, 1);
        let coords: Vec<usize> = (0..d).filter(|_| rng.gen_bool(0.5)).collect();
        if coords.is_empty() {
            continue;
        }
        let b = rng.gen_range(1..=4i64);
        let n = v.states().len();
        let pick = |rng: &mut Rng8| {
            let mut x = gen::naturals(rng, d, 3);
            for &i in &coords {
                x.set(i, rng.gen_range(0..b).into());
            }
            Configuration::new(v.states()[rng.gen_range(0..n)].clone(), x)
        };
        let s = pick(rng);
        let t = if rng.gen_bool(0.5) {
            let steps = rng.gen_range(0..=6);
            let end = walk(rng, &v, &s, steps).1;
            if coords.iter().all(|&i| end.vector[i] < BigInt::from(b)) {
                end
            } else {
                pick(rng)
            }
        } else {
            pick(rng)
        };
        let inst = ReachInstance::from_vass(v, s, t).expect("valid");
        out.cases += 1;
        let red = match encode_bounded_coordinates(&inst, &coords, &BigInt::from(b)) {
            Ok(r) => r,
            Err(e) => {
                out.check(false, || format!("construction failed: {e}"));
                continue;
            }
        };
        let seen = explore(inst.vass(), inst.source(), &budget(8, 64)).expect("valid");
        let bounded = !seen.truncated
            && seen
                .configurations
                .iter()
                .all(|(c, _)| coords.iter().all(|&i| c.vector[i] < BigInt::from(b)));
        let orig = lens(&inst, 8, 64);
        let got = lens(red.as_instance().expect("an instance"), 8, 64);
        out.check(!orig.inconclusive && !got.inconclusive, || "oracle inconclusive".into());
        if bounded {
            bounded_cases += 1;
            out.check(got.lengths == orig.lengths, || {
                format!("bounded: {} vs {}", show(&got.lengths), show(&orig.lengths))
            });
        } else {
            out.check(got.lengths.is_subset(&orig.lengths), || {
                format!("{} ⊄ {}", show(&got.lengths), show(&orig.lengths))
            });
        }
    }
    out.notes.push(format!(
        "{bounded_cases} within the bound (equality), the rest inclusion"
    ));
    out
}

fn cycle_space_spans(rng: &mut Rng8) -> Outcome {
    let mut out = Outcome::default();
    let mut ranks = BTreeMap::new();
    while out.cases < 300 {
        let d = rng.gen_range(1..=4);
        let v = gen::random_vass(rng, d, 1..=6, 1..=10, -2, 2);
        let cycles = enumerate_simple_cycles(&v, 200_000);
        if cycles.truncated {
            out.excluded += 1;
            continue;
        }
        out.cases += 1;
        let info = cycle_space(&v);
        let basis = &info.global_basis;
        let joint: Vec<IntVector> = basis.iter().chain(&cycles.effects).cloned().collect();
        let (rb, rc, rj) = (rank(d, basis), rank(d, &cycles.effects), rank(d, &joint));
        *ranks.entry(rc).or_insert(0) += 1;
        out.check(rb == basis.len() && rb == rc && rc == rj && info.dim_cyc == rb, || {
            format!(
                "basis rank {rb} ({} vectors), cycle rank {rc}, joint {rj}, dim_cyc {}",
                basis.len(),
                info.dim_cyc
            )
        });
    }
    out.notes.push(format!("rank histogram {ranks:?}"));
    out
}

fn farkas_certificates(rng: &mut Rng8) -> Outcome {
    let mut out = Outcome::default();
    while out.cases < 200 {
        let d = rng.gen_range(1..=4);
        let xs: Vec<IntVector> = (0..rng.gen_range(1..=5)).map(|_| gen::vector(rng, d, -3, 3)).collect();
        if cone_equals_span(&xs) {
            continue;
        }
        out.cases += 1;
        let cert = match farkas_normal_vector(&xs) {
            Ok(c) => c,
            Err(e) => {
                out.check(false, || format!("{xs:?}: {e}"));
                continue;
            }
        };
        let n = &cert.n;
        let products: Vec<BigInt> = xs.iter().map(|x| n.inner(x)).collect();
        let zero: Vec<usize> = (0..xs.len()).filter(|&k| products[k] == BigInt::from(0)).collect();
        let x0: Vec<IntVector> = zero.iter().map(|&k| xs[k].clone()).collect();
        let r = rank(d, &xs);
        let norm_x = xs.iter().map(IntVector::norm).max().expect("nonempty");
        let bound = BigInt::from(d + 1) * num_traits::pow(BigInt::from(r) * norm_x, r);
        let nonneg = products.iter().all(|p| *p >= BigInt::from(0));
        let wide_zero_set = x0.iter().all(|x| in_cone(&-x, &x0).is_some());
        out.check(!n.is_zero() && nonneg, || {
            format!("{xs:?}: n = {n} has a negative product or is zero")
        });
        out.check(wide_zero_set && zero == cert.zero_set, || {
            format!("{xs:?}: zero set {zero:?} not wide or mislabelled")
        });
        out.check(n.norm() <= bound, || {
            format!("{xs:?}: ‖n‖ = {} above {bound}", n.norm())
        });
    }
    out
}

fn rackoff_postconditions(rng: &mut Rng8) -> Outcome {
    let mut out = Outcome::default();
    let mut covered_cases = 0;
    while out.cases < 100 {
        let d = rng.gen_range(1..=2);
        let nq = rng.gen_range(1..=2);
        let mut v = gen::random_vass(rng, d, nq..=nq, 2..=4, -1, 1);
        let mut ts = v.transitions().to_vec();
        let climb = ts.len();
        ts.push(vasreach::Transition::new("p0", IntVector::unit(d, 0), "p0"));
        v = Vass::new(d, gen::states(nq), ts).expect("well-formed");
        let u = BigInt::from(rng.gen_range(1..=3));
        let m = v.size();
        let sched = rackoff_schedule(&u, &m, d);
        let start = at("p0", &vec![0; d]);
        let mut path = Vec::new();
        if rng.gen_bool(0.6) {
            let h = usize::try_from(&sched.h[d]).expect("small schedule");
            path.extend(std::iter::repeat_n(climb, h + rng.gen_range(0..5)));
        }
        let mid = v
            .replay(&start, &Path(path.clone()), Semantics::N)
            .expect("climbing is firable");
        let steps = rng.gen_range(0..=60);
        let (tail, _) = walk(rng, &v, &mid, steps);
        path.extend(tail.indices());
        let run = Run::new(&v, start.clone(), Path(path)).expect("nonnegative walk");
        out.cases += 1;
        let ex = match rackoff_extract(&v, &run, &u, &m) {
            Ok(e) => e,
            Err(e) => {
                out.check(false, || format!("extraction failed: {e}"));
                continue;
            }
        };
        let configs = run.configurations(&v);
        let kept_ok = ex.kept.windows(2).all(|w| w[0] < w[1])
            && ex.run.path().indices() == ex.kept.iter().map(|&k| run.path().0[k]).collect::<Vec<_>>();
        let segments_are_cycles = {
            let mut next = 0;
            let mut ok = true;
            for &k in ex.kept.iter().chain(std::iter::once(&run.len())) {
                if k > next {
                    ok &= configs[next].state == configs[k].state;
                }
                next = k + 1;
            }
            ok
        };
        out.check(kept_ok && segments_are_cycles, || {
            "not a subsequence by cycle deletion".into()
        });
        out.check(ex.run.start() == run.start(), || "source changed".into());
        out.check(Run::new(&v, start.clone(), ex.run.path().clone()).is_ok(), || {
            "extracted path does not replay".into()
        });
        let hd = &sched.h[d];
        let ub: BTreeSet<usize> = (0..d).filter(|&i| configs.iter().any(|c| c.vector[i] >= *hd)).collect();
        let end = ex.run.end(&v);
        covered_cases += usize::from(!ub.is_empty());
        out.check(ub.iter().all(|&i| end.vector[i] >= u), || {
            format!("end {end} below U = {u} on ub = {ub:?}")
        });
    }
    out.notes.push(format!("{covered_cases} runs with nonempty ub(π, H_d)"));
    out
}

/// A wide sequential VAS with base ±e_i and the all-ones vector, a source,
/// and a Z-path through all bridges with some loops on the last state.
fn wide_sequential(rng: &mut Rng8) -> (SequentialVas, IntVector, IntVector, Path) {
    loop {
        let d = rng.gen_range(1..=3);
        let mut base = Vec::new();
        for i in 0..d {
            base.push(IntVector::unit(d, i));
            base.push(-&IntVector::unit(d, i));
        }
        base.push(IntVector::ones(d));
        let bridges = (0..rng.gen_range(0..=2)).map(|_| gen::vector(rng, d, -2, 2)).collect();
        let seq = SequentialVas::new(d, base, bridges).expect("well-formed");
        let x = gen::naturals(rng, d, 3);
        let k = seq.bridges().len();
        let mut p: Vec<usize> = (1..=k).map(|i| seq.bridge_index(i)).collect();
        p.extend((0..rng.gen_range(0..=8)).map(|_| seq.loop_index(k, rng.gen_range(0..2 * d))));
        let path = Path(p);
        let y = seq
            .expand()
            .replay(&Configuration::new(seq.source_state(), x.clone()), &path, Semantics::Z)
            .expect("chain is valid")
            .vector;
        if y.is_nonneg() {
            return (seq, x, y, path);
        }
    }
}

/// A wide 2-VAS run that climbs along (1, 1) to the threshold P = H₂ of
/// the Rackoff schedule, then drifts down on one coordinate.
fn driven_high(rng: &mut Rng8) -> (SequentialVas, Run, BigInt) {
    let base = [[1, 1], [-1, 0], [0, -1], [1, -1], [-1, 1]]
        .iter()
        .map(|a| IntVector::from_i64s(a))
        .collect();
    let seq = SequentialVas::new(2, base, Vec::new()).expect("well-formed");
    let e = seq.expand();
    let size = e.size();
    let b = pump_bound(&0.into(), &size);
    let p = rackoff_schedule(&b, &size, 2).h[2].clone();
    let n = usize::try_from(&p).expect("small threshold");
    let down = 1 + rng.gen_range(0..2);
    let mut path = vec![seq.loop_index(0, 0); n];
    path.extend(std::iter::repeat_n(seq.loop_index(0, down), rng.gen_range(0..=n / 2)));
    let run = Run::new(
        &e,
        Configuration::new(seq.source_state(), IntVector::zeros(2)),
        Path(path),
    )
    .expect("nonnegative");
    (seq, run, p)
}

fn pumping(rng: &mut Rng8) -> Outcome {
    let mut out = Outcome::default();
    let mut repaired = 0;
    let mut certificates = 0;
    for case in 0..100 {
        let (seq, x, y, z) = wide_sequential(rng);
        let e = seq.expand();
        let src = Configuration::new(seq.source_state(), x.clone());
        let tgt = Configuration::new(seq.target_state(), y.clone());
        out.cases += 1;
        let certs = (
            find_pump_certificate(&e, &src, Direction::Forward, 100_000),
            find_pump_certificate(&e, &tgt, Direction::Backward, 100_000),
        );
        let (Ok(Some(t1)), Ok(Some(t2))) = certs else {
            out.check(false, || format!("no pumping certificates for {src} / {tgt}"));
            continue;
        };
        repaired += usize::from(Run::new(&e, src.clone(), z.clone()).is_err());
        match lift_z_run(&seq, &x, &t1, &y, &t2, &z) {
            Ok(run) => {
                out.check(run.start() == &src && run.end(&e) == tgt, || {
                    format!("lifted run ends at {}", run.end(&e))
                });
                out.check(e.effect(run.path()).ok() == e.effect(&z).ok(), || {
                    "lifted run changes the effect".into()
                });
            }
            Err(err) => out.check(false, || format!("lift failed: {err}")),
        }
        // Extraction on an N-run; every tenth case drives a 2-VAS above the
        // pumpability threshold so that ub has d − 1 coordinates.
        let (seq, run, p_value) = if case % 10 == 0 {
            driven_high(rng)
        } else {
            let steps = rng.gen_range(0..=12);
            let (path, _) = walk(rng, &e, &src, steps);
            (
                seq,
                Run::new(&e, src.clone(), path).expect("walk replays"),
                BigInt::from(rng.gen_range(1..=4)),
            )
        };
        let e = seq.expand();
        match extract_pumpable(&seq, &run, &p_value) {
            Ok(Some(ex)) => {
                certificates += 1;
                let lifted = Configuration::new(ex.config.state.clone(), ex.config.vector.add_scalar(&1.into()));
                let covers = coverable(&e, &ex.config, &lifted).unwrap_or(false);
                out.check(covers && ex.certificate.verify(&e, &ex.config), || {
                    format!("certificate at {} not confirmed", ex.config)
                });
            }
            Ok(None) => {}
            Err(err) => out.check(false, || format!("extraction failed: {err}")),
        }
    }
    let c = certificates;
    out.check(c > 0, || "no extraction produced a certificate".into());
    out.notes.push(format!(
        "{repaired} Z-paths needed repair, {certificates} extracted certificates confirmed"
    ));
    out
}

fn subset_sum(rng: &mut Rng8) -> Outcome {
    let mut out = Outcome::default();
    let mut yes = 0;
    for _ in 0..100 {
        let set: Vec<u64> = (0..rng.gen_range(1..=6)).map(|_| rng.gen_range(0..=12)).collect();
        let total: u64 = set.iter().sum();
        let target = rng.gen_range(0..=total + 3);
        out.cases += 1;
        let (inst, expected) = match subset_sum_instance(&set, target) {
            Ok(r) => r,
            Err(e) => {
                out.check(false, || format!("{set:?} → {target}: {e}"));
                continue;
            }
        };
        let truth = subset_sum_bruteforce(&set, target).expect("small set");
        let cap = total.max(target).max(1);
        let got = reach_bfs(inst.vass(), inst.source(), inst.target(), &budget(100_000, cap))
            .expect("valid")
            .verdict();
        yes += usize::from(truth);
        out.check(expected == truth && got == Some(truth), || {
            format!("{set:?} → {target}: brute force {truth}, oracle {got:?}")
        });
    }
    out.notes.push(format!("{yes} solvable"));
    out
}

/// Paths of length ≤ `depth` from `start`, every maximal one kept.
fn enumerate_runs(v: &Vass, start: &Configuration, depth: usize, cap: usize) -> Vec<Path> {
    fn go(v: &Vass, cur: &Configuration, path: &mut Vec<usize>, depth: usize, cap: usize, out: &mut Vec<Path>) {
        if out.len() >= cap {
            return;
        }
        let q = v.state_index(&cur.state).expect("declared");
        let mut extended = false;
        if path.len() < depth {
            for &k in v.outgoing(q) {
                let t = v.transition(k);
                let next = &cur.vector + &t.effect;
                if next.is_nonneg() {
                    extended = true;
                    path.push(k);
                    go(v, &Configuration::new(t.dst.clone(), next), path, depth, cap, out);
                    path.pop();
                }
            }
        }
        if !extended && !path.is_empty() && out.len() < cap {
            out.push(Path(path.clone()));
        }
    }
    let mut out = Vec::new();
    go(v, start, &mut Vec::new(), depth, cap, &mut out);
    out
}

fn shift_invariants(rng: &mut Rng8) -> Outcome {
    let mut out = Outcome::default();
    let mut systems = 0;
    while out.cases < 150 {
        let d = rng.gen_range(2..=4);
        let (v, _, _) = gen::planar_vass(rng, d, 1..=4, 2..=6, 2);
        let info = cycle_space(&v);
        if info.dim_cyc != 2 {
            continue;
        }
        let (b0, b1) = (&info.global_basis[0], &info.global_basis[1]);
        if is_projective(b0, b1).is_none() {
            continue;
        }
        let cert = sign_reflecting_projection(b0, b1).expect("projective plane");
        systems += 1;
        let size = v.size();
        let radius = BigInt::from(6) * &size * &size * &size;
        let start = Configuration::new(
            v.states()[rng.gen_range(0..v.states().len())].clone(),
            gen::naturals(rng, d, 3),
        );
        for path in enumerate_runs(&v, &start, 6, 20) {
            out.cases += 1;
            let configs = v.trace(&start, &path).expect("enumerated run");
            let deltas: Vec<IntVector> = configs.iter().map(|c| shift(&c.vector, &cert)).collect();
            let mut per_state: BTreeMap<&StateId, &IntVector> = BTreeMap::new();
            for (c, dlt) in configs.iter().zip(&deltas) {
                let first = *per_state.entry(&c.state).or_insert(dlt);
                out.check(first == dlt, || {
                    format!("shift at {} changed from {first} to {dlt}", c.state)
                });
            }
            for a in &deltas {
                for b in &deltas {
                    out.check((a - b).norm() <= radius, || {
                        format!("‖{a} − {b}‖ above 6·size³ = {radius}")
                    });
                }
            }
        }
    }
    out.need_cases(100);
    out.notes.push(format!("{systems} projective systems"));
    out
}

fn projective_base_change(rng: &mut Rng8) -> Outcome {
    let mut out = Outcome::default();
    let mut projective = 0;
    while out.cases < 100 {
        let d = rng.gen_range(2..=5);
        let (u, v) = (gen::vector(rng, d, -2, 2), gen::vector(rng, d, -2, 2));
        if rank(d, &[u.clone(), v.clone()]) < 2 {
            continue;
        }
        out.cases += 1;
        let m = gen::unimodular(rng);
        let comb = |a: i64, b: i64| &u.scale(&a.into()) + &v.scale(&b.into());
        let (u2, v2) = (comb(m[0][0], m[0][1]), comb(m[1][0], m[1][1]));
        let before = is_projective(&u, &v).is_some();
        let after = is_projective(&u2, &v2).is_some();
        projective += usize::from(before);
        out.check(before == after, || {
            format!("({u}, {v}) gives {before}, base change {m:?} gives {after}")
        });
        let four = cone_by_four(&u, &v);
        out.check(four.generators.len() <= 4, || {
            "cone_by_four used more than four coordinates".into()
        });
    }
    out.notes.push(format!("{projective} projective"));
    out
}

/// Keeps `collinearity` linked for callers that only want the report type.
pub fn collinear_pairs(v: &Vass) -> usize {
    collinearity(v).pairs.len()
}
