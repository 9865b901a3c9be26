//! Command-line surface. Every command writes its report to `out` and
//! returns the process exit code; errors map to codes via [`CliError`].

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;
use vasreach::geometry::{collinearity, cycle_space, cycle_space_pair, is_projective, is_wide, CollinearSign};
use vasreach::oracle::{len_set, reach_bfs, ReachOutcome, SearchBudget};
use vasreach::pumping::{find_pump_certificate, Direction};
use vasreach::reductions::{self as red, Produced, ReductionOutput, Relation};
use vasreach::{Encoding, ReachInstance, System, Vass};

use crate::format::{self, Document};
use crate::{suites, CliError};

#[derive(Debug, Parser)]
#[command(
    name = "vasreach",
    version,
    about = "Reachability tools for vector addition systems with states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cycle-space dimensions, wideness, projectiveness and collinearity.
    Analyze {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Apply a reduction and write the produced instance(s).
    Transform(TransformArgs),
    /// Decide reachability by bounded search.
    Reach(ReachArgs),
    /// Look for a pumping cycle at the initial (fwd) or target (bwd) configuration.
    Pump {
        input: PathBuf,
        #[arg(long, value_enum)]
        direction: PumpDirection,
        #[arg(long, default_value_t = 200_000)]
        max_states: usize,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run the acceptance suites.
    Verify {
        /// Suite name or criterion number; repeatable. All suites by default.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long, default_value_t = suites::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Reduction {
    RemoveFixedCoordinates,
    DecomposeNonwide,
    EncodeBoundedCoordinates,
    ConcatTwoEncodings,
    EliminateNegativeCollinear,
    #[value(name = "geo2d-to-2vass")]
    Geo2dTo2vass,
    MakeProjective,
    PadToProjective,
    #[value(name = "geo2vas-to-4vass")]
    Geo2vasTo4vass,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    reduction: Reduction,
    /// Coordinates for encode-bounded-coordinates, comma separated.
    #[arg(long, value_delimiter = ',')]
    coords: Vec<usize>,
    /// First coordinate block for concat-two-encodings.
    #[arg(long, value_delimiter = ',')]
    first: Vec<usize>,
    /// Second coordinate block for concat-two-encodings.
    #[arg(long, value_delimiter = ',')]
    second: Vec<usize>,
    #[arg(long)]
    bound: Option<BigInt>,
    /// Family size cap for decompose-nonwide.
    #[arg(long, default_value_t = 500)]
    cap: usize,
    #[arg(long, default_value_t = red::DEFAULT_SHIFT_CAP)]
    shift_cap: usize,
    /// Output file; families are written to `<stem>-<k>.vass`.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReachMode {
    Bfs,
    Poly4vas,
    Geo2d,
}

#[derive(Debug, Args)]
pub struct ReachArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = ReachMode::Bfs)]
    mode: ReachMode,
    #[arg(long, default_value_t = 20)]
    budget_len: usize,
    #[arg(long, default_value_t = 12)]
    budget_norm: u64,
    #[arg(long, default_value_t = 2_000_000)]
    budget_states: usize,
    /// poly4vas length bound: coefficient · size^exponent.
    #[arg(long, default_value_t = 64)]
    coefficient: u64,
    #[arg(long, default_value_t = 6)]
    exponent: u32,
    #[arg(long, default_value_t = red::DEFAULT_SHIFT_CAP)]
    shift_cap: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PumpDirection {
    Fwd,
    Bwd,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// A VASS reaching its target iff a subset of --set sums to --target.
    Subsetsum {
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u64>,
        #[arg(long)]
        target: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Lengths ≤ L of runs from init to target.
    Lenset {
        input: PathBuf,
        #[arg(long = "L", short = 'L')]
        horizon: usize,
        #[arg(long, default_value_t = 64)]
        budget_norm: u64,
        #[arg(long, default_value_t = 2_000_000)]
        budget_states: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Norm cap used when a computed bound does not fit the search engine.
const NORM_CEILING: u64 = 1 << 40;

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut text = String::new();
    let code = match cli.command {
        Command::Analyze { input, json } => analyze(&load(&input)?, json, &mut text)?,
        Command::Transform(args) => transform(&args, &mut text)?,
        Command::Reach(args) => reach(&args, &mut text)?,
        Command::Pump {
            input,
            direction,
            max_states,
        } => pump(&load(&input)?, direction, max_states, &mut text)?,
        Command::Gen(GenCommand::Subsetsum { set, target, output }) => gen_subset_sum(&set, target, output, &mut text)?,
        Command::Oracle(OracleCommand::Lenset {
            input,
            horizon,
            budget_norm,
            budget_states,
            json,
        }) => {
            let mut budget = SearchBudget::new(horizon, budget_norm);
            budget.max_states_expanded = budget_states;
            lenset(&load(&input)?, horizon, &budget, json, &mut text)?
        }
        Command::Verify { suite, seed, json } => verify(&suite, seed, json, &mut text)?,
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Io(e.to_string()))?;
    Ok(code)
}

pub fn load(path: &FsPath) -> Result<Document, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &FsPath, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn print_json(value: &impl Serialize, out: &mut String) {
    out.push_str(&serde_json::to_string_pretty(value).expect("serializable"));
    out.push('\n');
}

#[derive(Serialize)]
struct CollinearEntry {
    i: usize,
    j: usize,
    alpha: String,
    sign: &'static str,
}

#[derive(Serialize)]
struct AnalyzeReport {
    schema: &'static str,
    kind: &'static str,
    dim: usize,
    states: usize,
    transitions: usize,
    encoding: &'static str,
    size: String,
    dim_cyc: usize,
    dim_com: usize,
    /// Decided for VAS and sequential VAS only.
    wide: Option<bool>,
    /// Only meaningful for a two-dimensional cycle space.
    projective: Option<bool>,
    collinear_pairs: Vec<CollinearEntry>,
    fixed_coordinates: Vec<usize>,
}

fn encoding_name(e: Encoding) -> &'static str {
    match e {
        Encoding::Unary => "unary",
        Encoding::Binary => "binary",
    }
}

pub fn analyze(doc: &Document, json: bool, out: &mut String) -> Result<i32, CliError> {
    let inst = &doc.instance;
    let v = inst.vass();
    let info = cycle_space(v);
    let projective = if info.dim_cyc == 2 {
        cycle_space_pair(&info).map(|(a, b)| is_projective(&a, &b).is_some())
    } else {
        None
    };
    // A sequential VAS is judged by its base; bridges fire once.
    let effects_of = match inst.system() {
        System::Sequential(seq) => Vass::vas(seq.dim(), seq.base().to_vec()).map_err(vasreach::Error::from)?,
        System::Vass(v) => v.clone(),
    };
    let col = collinearity(&effects_of);
    let report = AnalyzeReport {
        schema: "vasreach.analyze/1",
        kind: format::Kind::of(inst).as_str(),
        dim: inst.dim(),
        states: v.states().len(),
        transitions: v.transitions().len(),
        encoding: encoding_name(doc.encoding),
        size: inst.size_under(doc.encoding).to_string(),
        dim_cyc: info.dim_cyc,
        dim_com: info.dim_com,
        wide: match inst.system() {
            System::Vass(v) if !v.is_vas() => None,
            sys => Some(is_wide(sys)?),
        },
        projective,
        collinear_pairs: col
            .pairs
            .iter()
            .map(|(&(i, j), p)| CollinearEntry {
                i,
                j,
                alpha: p.alpha.to_string(),
                sign: match p.sign {
                    CollinearSign::Positive => "positive",
                    CollinearSign::Negative => "negative",
                },
            })
            .collect(),
        fixed_coordinates: col.fixed.clone(),
    };
    if json {
        print_json(&report, out);
        return Ok(0);
    }
    let r = &report;
    let _ = writeln!(
        out,
        "kind        {} (dim {}, {} states, {} transitions)",
        r.kind, r.dim, r.states, r.transitions
    );
    let _ = writeln!(out, "size        {} ({})", r.size, r.encoding);
    let _ = writeln!(out, "dim_cyc     {}", r.dim_cyc);
    let _ = writeln!(out, "dim_com     {}", r.dim_com);
    let _ = writeln!(
        out,
        "wide        {}",
        r.wide.map_or("n/a".to_string(), |w| w.to_string())
    );
    let _ = writeln!(
        out,
        "projective  {}",
        r.projective.map_or("n/a".to_string(), |p| p.to_string())
    );
    let pairs: Vec<String> = r
        .collinear_pairs
        .iter()
        .map(|p| format!("({},{}) alpha={} {}", p.i, p.j, p.alpha, p.sign))
        .collect();
    let _ = writeln!(
        out,
        "collinear   {}",
        if pairs.is_empty() {
            "none".into()
        } else {
            pairs.join(", ")
        }
    );
    let _ = writeln!(out, "fixed       {:?}", r.fixed_coordinates);
    Ok(0)
}

fn need_bound(args: &TransformArgs) -> Result<&BigInt, CliError> {
    args.bound
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("--bound is required for {:?}", args.reduction)))
}

pub fn apply(args: &TransformArgs, inst: &ReachInstance) -> Result<ReductionOutput, CliError> {
    Ok(match args.reduction {
        Reduction::RemoveFixedCoordinates => red::remove_fixed_coordinates(inst)?,
        Reduction::DecomposeNonwide => red::decompose_nonwide(inst, args.cap)?,
        Reduction::EncodeBoundedCoordinates => red::encode_bounded_coordinates(inst, &args.coords, need_bound(args)?)?,
        Reduction::ConcatTwoEncodings => red::concat_two_encodings(inst, &args.first, &args.second, need_bound(args)?)?,
        Reduction::EliminateNegativeCollinear => red::eliminate_negative_collinear(inst)?,
        Reduction::Geo2dTo2vass => red::geo2d_to_2vass(inst, args.shift_cap)?,
        Reduction::MakeProjective => red::make_projective(inst)?,
        Reduction::PadToProjective => red::pad_to_projective(inst)?,
        Reduction::Geo2vasTo4vass => red::geo2vas_to_4vass(inst)?,
    })
}

fn header(r: &ReductionOutput) -> Vec<String> {
    vec![
        format!("provenance: {}", r.provenance),
        format!("relation: {}", r.relation),
    ]
}

fn member_path(base: &FsPath, k: usize) -> PathBuf {
    let stem = base
        .file_stem()
        .map_or("out".into(), |s| s.to_string_lossy().into_owned());
    base.with_file_name(format!("{stem}-{k}.vass"))
}

pub fn transform(args: &TransformArgs, out: &mut String) -> Result<i32, CliError> {
    let doc = load(&args.input)?;
    let r = apply(args, &doc.instance)?;
    let mut docs: Vec<(String, Option<PathBuf>)> = Vec::new();
    match &r.produced {
        Produced::Instance(i) => {
            docs.push((format::serialize(i, doc.encoding, &header(&r)), args.output.clone()));
        }
        Produced::Unreachable { reason } => {
            let mut comments = header(&r);
            comments.push(format!("unreachable: {reason}"));
            let i = red::unreachable_instance(doc.instance.dim());
            docs.push((format::serialize(&i, doc.encoding, &comments), args.output.clone()));
        }
        Produced::Family(f) => {
            let (members, truncated) = f.clone().collect_all();
            for (k, m) in members.iter().enumerate() {
                let mut comments = header(&r);
                comments.push(format!(
                    "member {} of {}{}",
                    k + 1,
                    members.len(),
                    if truncated { " (truncated)" } else { "" }
                ));
                docs.push((
                    format::serialize(m, doc.encoding, &comments),
                    args.output.as_deref().map(|o| member_path(o, k + 1)),
                ));
            }
            if members.is_empty() {
                let _ = writeln!(out, "# {}\n# relation: {}\n# empty family", r.provenance, r.relation);
            }
        }
    }
    for (text, path) in docs {
        match path {
            Some(p) => {
                write_file(&p, &text)?;
                let _ = writeln!(out, "wrote {}", p.display());
            }
            None => out.push_str(&text),
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct ReachReport {
    schema: &'static str,
    mode: &'static str,
    verdict: &'static str,
    len: Option<usize>,
    witness: Option<Vec<usize>>,
    exhaustive: Option<bool>,
    reason: Option<String>,
    max_len: String,
    max_norm: u64,
    /// Witness refers to the transformed system (geo2d mode).
    transformed: bool,
}

fn to_usize_or_max(x: &BigInt) -> usize {
    x.to_usize().unwrap_or(usize::MAX)
}

pub fn reach(args: &ReachArgs, out: &mut String) -> Result<i32, CliError> {
    let doc = load(&args.input)?;
    let inst = &doc.instance;
    let mut scale = 1;
    let mut target_inst = inst.clone();
    let (max_len_big, max_norm) = match args.mode {
        ReachMode::Bfs => (BigInt::from(args.budget_len), args.budget_norm),
        ReachMode::Poly4vas => {
            if inst.dim() > 4 {
                return Err(
                    vasreach::Error::Precondition(format!("poly4vas needs dimension ≤ 4, got {}", inst.dim())).into(),
                );
            }
            let size = inst.size_under(doc.encoding);
            let len = BigInt::from(args.coefficient) * num_traits::pow(size, args.exponent as usize);
            let norm = inst.source().vector.norm() + &len * inst.vass().norm();
            (len, norm.to_u64().unwrap_or(NORM_CEILING).min(NORM_CEILING))
        }
        ReachMode::Geo2d => {
            let r = red::geo2d_to_2vass(inst, args.shift_cap)?;
            let Relation::LenScaled(k) = r.relation else {
                return Err(vasreach::Error::Internal(format!("unexpected relation {}", r.relation)).into());
            };
            scale = k;
            match r.produced {
                Produced::Instance(i) => target_inst = i,
                _ => {
                    let report = ReachReport {
                        schema: "vasreach.reach/1",
                        mode: "geo2d",
                        verdict: "UNREACHABLE",
                        len: None,
                        witness: None,
                        exhaustive: Some(true),
                        reason: Some("the reduction proved the target unreachable".into()),
                        max_len: args.budget_len.to_string(),
                        max_norm: args.budget_norm,
                        transformed: true,
                    };
                    return render_reach(&report, args.json, out);
                }
            }
            (BigInt::from(args.budget_len.saturating_mul(k)), args.budget_norm)
        }
    };
    let mut budget = SearchBudget::new(to_usize_or_max(&max_len_big), max_norm);
    budget.max_states_expanded = args.budget_states;
    let outcome = reach_bfs(target_inst.vass(), target_inst.source(), target_inst.target(), &budget)?;
    let mode = match args.mode {
        ReachMode::Bfs => "bfs",
        ReachMode::Poly4vas => "poly4vas",
        ReachMode::Geo2d => "geo2d",
    };
    let mut report = ReachReport {
        schema: "vasreach.reach/1",
        mode,
        verdict: "",
        len: None,
        witness: None,
        exhaustive: None,
        reason: None,
        max_len: max_len_big.to_string(),
        max_norm,
        transformed: args.mode == ReachMode::Geo2d,
    };
    match outcome {
        ReachOutcome::Reachable { len, witness } => {
            report.verdict = "REACHABLE";
            report.len = Some(len / scale);
            report.witness = Some(witness.0);
        }
        ReachOutcome::UnreachableWithinBudget { exhaustive } => {
            report.verdict = "UNREACHABLE_WITHIN_BUDGET";
            report.exhaustive = Some(exhaustive);
        }
        ReachOutcome::Inconclusive { reason } => {
            report.verdict = "INCONCLUSIVE";
            report.reason = Some(reason);
        }
    }
    render_reach(&report, args.json, out)
}

fn render_reach(r: &ReachReport, json: bool, out: &mut String) -> Result<i32, CliError> {
    if json {
        print_json(r, out);
    } else {
        match r.len {
            Some(len) => {
                let _ = writeln!(out, "{} {len}", r.verdict);
            }
            None => {
                let _ = writeln!(out, "{}", r.verdict);
            }
        }
        if let Some(w) = &r.witness {
            let w: Vec<String> = w.iter().map(usize::to_string).collect();
            let _ = writeln!(
                out,
                "witness{} {}",
                if r.transformed { " (2-VASS transitions)" } else { "" },
                w.join(" ")
            );
        }
        if let Some(e) = r.exhaustive {
            let _ = writeln!(out, "exhaustive {e}");
        }
        if let Some(reason) = &r.reason {
            let _ = writeln!(out, "reason {reason}");
        }
        let _ = writeln!(out, "budget len={} norm={}", r.max_len, r.max_norm);
    }
    Ok(if r.verdict == "INCONCLUSIVE" { 4 } else { 0 })
}

pub fn pump(doc: &Document, direction: PumpDirection, max_states: usize, out: &mut String) -> Result<i32, CliError> {
    let inst = &doc.instance;
    let v = inst.vass();
    let (dir, config) = match direction {
        PumpDirection::Fwd => (Direction::Forward, inst.source()),
        PumpDirection::Bwd => (Direction::Backward, inst.target()),
    };
    match find_pump_certificate(v, config, dir, max_states)? {
        Some(cert) => {
            let path = cert.forward_path();
            let effect = v.effect(&path).map_err(vasreach::Error::from)?;
            let idx: Vec<String> = path.0.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "PUMPABLE at {config}");
            let _ = writeln!(out, "cycle {}", idx.join(" "));
            let _ = writeln!(out, "effect {effect}");
        }
        None => {
            let _ = writeln!(out, "NOT_PUMPABLE at {config}");
        }
    }
    Ok(0)
}

pub fn gen_subset_sum(set: &[u64], target: u64, output: Option<PathBuf>, out: &mut String) -> Result<i32, CliError> {
    let (inst, expected) = red::subset_sum_instance(set, target)?;
    let set_text: Vec<String> = set.iter().map(u64::to_string).collect();
    let comments = vec![
        format!("subset-sum set={} target={target}", set_text.join(",")),
        format!("expected: {}", if expected { "reachable" } else { "unreachable" }),
    ];
    let text = format::serialize(&inst, Encoding::Binary, &comments);
    match output {
        Some(p) => {
            write_file(&p, &text)?;
            let _ = writeln!(out, "wrote {}", p.display());
        }
        None => out.push_str(&text),
    }
    Ok(0)
}

pub fn lenset(
    doc: &Document,
    horizon: usize,
    budget: &SearchBudget,
    json: bool,
    out: &mut String,
) -> Result<i32, CliError> {
    let inst = &doc.instance;
    let l = len_set(inst.vass(), inst.source(), inst.target(), horizon, budget)?;
    let lengths: Vec<usize> = l.lengths.iter().copied().collect();
    if json {
        print_json(
            &json!({"schema": "vasreach.lenset/1", "horizon": horizon, "lengths": lengths, "inconclusive": l.inconclusive}),
            out,
        );
    } else {
        let shown: Vec<String> = lengths.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "LENSET L={horizon} {{{}}}", shown.join(", "));
        if l.inconclusive {
            let _ = writeln!(out, "INCONCLUSIVE the norm cap or state budget may hide runs");
        }
    }
    Ok(if l.inconclusive { 4 } else { 0 })
}

pub fn verify(only: &[String], seed: u64, json: bool, out: &mut String) -> Result<i32, CliError> {
    let results = suites::run(only, seed).map_err(CliError::Usage)?;
    let passed = results.iter().all(|r| r.passed);
    if json {
        print_json(
            &json!({"schema": "vasreach.verify/1", "seed": seed, "passed": passed, "criteria": results}),
            out,
        );
    } else {
        for r in &results {
            let _ = writeln!(out, "{}", r.line());
        }
        let failed = results.iter().filter(|r| !r.passed).count();
        let _ = writeln!(
            out,
            "{} of {} criteria passed (seed {seed})",
            results.len() - failed,
            results.len()
        );
    }
    Ok(if passed { 0 } else { 1 })
}
