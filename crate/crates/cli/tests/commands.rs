use std::path::PathBuf;
use std::process::{Command, Output};

use vasreach::oracle::{reach_bfs, ReachOutcome, SearchBudget};
use vasreach_cli::commands::load;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn vasreach(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vasreach"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
}

#[test]
fn reach_finds_the_seven_step_run() {
    let f = corpus().join("ladder.vass");
    let o = vasreach(&[
        "reach",
        "--budget-len",
        "20",
        "--budget-norm",
        "12",
        f.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("REACHABLE 7\nwitness "), "{out}");
}

#[test]
fn reach_agrees_with_the_oracle_on_the_corpus() {
    for f in corpus_files() {
        let doc = load(&f).unwrap();
        let inst = &doc.instance;
        let expected = reach_bfs(inst.vass(), inst.source(), inst.target(), &SearchBudget::new(20, 12)).unwrap();
        let o = vasreach(&[
            "reach",
            "--budget-len",
            "20",
            "--budget-norm",
            "12",
            f.to_str().unwrap(),
        ]);
        let first = stdout(&o).lines().next().unwrap_or_default().to_string();
        match expected {
            ReachOutcome::Reachable { len, .. } => assert_eq!(first, format!("REACHABLE {len}"), "{f:?}"),
            ReachOutcome::UnreachableWithinBudget { .. } => assert_eq!(first, "UNREACHABLE_WITHIN_BUDGET", "{f:?}"),
            ReachOutcome::Inconclusive { .. } => {
                assert_eq!(first, "INCONCLUSIVE", "{f:?}");
                assert_eq!(o.status.code(), Some(4));
            }
        }
    }
}

#[test]
fn corpus_parses_and_analyzes() {
    for f in corpus_files() {
        let o = vasreach(&["analyze", "--json", f.to_str().unwrap()]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{f:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(report["schema"], "vasreach.analyze/1");
        assert!(report["dim_cyc"].as_u64().unwrap() <= report["dim"].as_u64().unwrap());
    }
}

#[test]
fn analyze_reports_geometry() {
    let f = corpus().join("collinear.seqvas");
    let o = vasreach(&["analyze", "--json", f.to_str().unwrap()]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["dim_cyc"], 2);
    assert_eq!(r["wide"], false);
    assert_eq!(r["collinear_pairs"][0]["sign"], "negative");
    let f = corpus().join("fixed.seqvas");
    let r: serde_json::Value =
        serde_json::from_slice(&vasreach(&["analyze", "--json", f.to_str().unwrap()]).stdout).unwrap();
    assert_eq!(r["fixed_coordinates"], serde_json::json!([2]));
}

#[test]
fn geo2d_transform_declares_scaling_and_round_trips() {
    let dir = std::env::temp_dir().join(format!("vasreach-geo2d-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("out.vass");
    let f = corpus().join("planar3.vass");
    let o = vasreach(&[
        "transform",
        "--reduction",
        "geo2d-to-2vass",
        f.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("# relation: len-scaled 7"), "{text}");
    assert!(text.lines().next().unwrap().starts_with("# provenance: geo2d_to_2vass"));
    let produced = load(&out).unwrap();
    assert_eq!(produced.instance.dim(), 2);

    let direct = vasreach(&["reach", f.to_str().unwrap()]);
    let via = vasreach(&["reach", "--mode", "geo2d", f.to_str().unwrap()]);
    assert_eq!(stdout(&direct).lines().next(), stdout(&via).lines().next());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn family_members_go_to_numbered_files() {
    let dir = std::env::temp_dir().join(format!("vasreach-family-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("fam.vass");
    let f = corpus().join("nonwide.vas");
    let o = vasreach(&[
        "transform",
        "--reduction",
        "decompose-nonwide",
        f.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let first = load(&dir.join("fam-1.vass")).unwrap();
    assert_eq!(first.instance.dim(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes_follow_error_classes() {
    let dir = std::env::temp_dir().join(format!("vasreach-codes-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.vass");
    std::fs::write(&bad, "dim 1\nkind vas\ninit * 0\n").unwrap();
    let o = vasreach(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("target required"));

    let f = corpus().join("plane4.vas");
    let o = vasreach(&["transform", "--reduction", "make-projective", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));

    let o = vasreach(&["reach", "--budget-norm", "2", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).starts_with("INCONCLUSIVE"));

    let o = vasreach(&["verify", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pump_directions() {
    let f = corpus().join("ladder.vass");
    let out = stdout(&vasreach(&["pump", "--direction", "fwd", f.to_str().unwrap()]));
    assert!(out.starts_with("PUMPABLE at low(0,0)"), "{out}");
    let out = stdout(&vasreach(&[
        "pump",
        "--direction",
        "fwd",
        corpus().join("swap.vass").to_str().unwrap(),
    ]));
    assert!(out.starts_with("NOT_PUMPABLE"), "{out}");
}

#[test]
fn generated_subset_sum_is_decided_by_reach() {
    let dir = std::env::temp_dir().join(format!("vasreach-ss-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (set, target, expected) in [("3,5,7", "8", "REACHABLE"), ("4,6", "5", "UNREACHABLE_WITHIN_BUDGET")] {
        let out = dir.join("ss.vass");
        vasreach(&[
            "gen",
            "subsetsum",
            "--set",
            set,
            "--target",
            target,
            "-o",
            out.to_str().unwrap(),
        ]);
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.contains("# expected: "));
        let o = vasreach(&[
            "reach",
            "--budget-len",
            "200",
            "--budget-norm",
            "20",
            out.to_str().unwrap(),
        ]);
        assert!(stdout(&o).starts_with(expected), "{set} → {target}: {}", stdout(&o));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn lenset_prints_lengths() {
    let f = corpus().join("counter.vass");
    let out = stdout(&vasreach(&["oracle", "lenset", "--L", "5", f.to_str().unwrap()]));
    assert_eq!(out.trim(), "LENSET L=5 {3}");
}

#[test]
fn verify_runs_a_single_suite_as_json() {
    let o = vasreach(&["verify", "--suite", "subset-sum", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["schema"], "vasreach.verify/1");
    assert_eq!(r["criteria"][0]["id"], 11);
    assert_eq!(r["criteria"][0]["passed"], true);
}
