//! `tcreal`: decide, build and verify temporally connected realizations.

mod input;
mod report;

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tcreal_core::verify::{
    check_certificate, check_proper, check_simple, check_tc, enumerate_sequences,
    enumerate_sequences_capped, oracle_tc_realizable_sequence, OracleCaps, Violation,
};
use tcreal_core::{
    check_tc_realizable, realize_tc, DegreeSequence, LabeledMultigraph, Mode, Realization,
    TcOutcome, TemporalLabeling,
};

use input::read_sequences;
use report::RunReport;

/// Bad input: exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

/// A construction or its self-check failed: exit code 3.
#[derive(Debug)]
struct InternalError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::fmt::Display for InternalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}
impl std::error::Error for InternalError {}

const EXIT_NO: u8 = 1;

#[derive(Parser)]
#[command(
    name = "tcreal",
    version,
    about = "Temporally connected realizations of degree sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide realizability of each input sequence.
    Check(CheckArgs),
    /// Build a realization with its certificate and labeling.
    Build(BuildArgs),
    /// Check that a graph file carries a proper, simple, temporally connected labeling.
    Verify(VerifyArgs),
    /// Compare the decision procedure against brute force on all small sequences.
    Oracle(OracleArgs),
    /// Time construct+label on a family of growing sequences.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Simple,
    Multi,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Simple => Mode::Simple,
            ModeArg::Multi => Mode::Multi,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Args)]
struct SequenceInput {
    /// Degree sequence, e.g. `3 3 3 3` or `3,3,3,3`. Read from --input or stdin when absent.
    sequence: Vec<String>,
    /// File with one sequence per line.
    #[arg(long, short)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "simple")]
    mode: ModeArg,
    /// Reserved. The constructions are deterministic and ignore it.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    seq: SequenceInput,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    seq: SequenceInput,
    /// `json` is the graph file, `dot` a Graphviz rendering, `text` only the report.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the graph here instead of stdout; the report then goes to stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Skip the self-check of the built graph.
    #[arg(long)]
    no_verify: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph file in the JSON format written by `build`; `-` or absent reads stdin.
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct OracleArgs {
    /// Largest sequence length to sweep (at most 6 simple, 5 multi).
    #[arg(long = "n", default_value_t = 5)]
    n: usize,
    #[arg(long, value_enum, default_value = "simple")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// 4,...,4,3,3
    FoursThrees,
    /// 4,...,4,2,2,2
    FoursTwos,
    /// n-3,3,...,3
    HubThrees,
}

impl Family {
    fn sequence(self, n: usize) -> Vec<u32> {
        match self {
            Family::FoursThrees => [vec![4; n - 2], vec![3, 3]].concat(),
            Family::FoursTwos => [vec![4; n - 3], vec![2, 2, 2]].concat(),
            Family::HubThrees => [vec![n as u32 - 3], vec![3; n - 1]].concat(),
        }
    }
}

#[derive(Args)]
struct BenchArgs {
    /// Largest size; the run also times n/4 and n/2.
    #[arg(long = "n", default_value_t = 400_000)]
    n: usize,
    #[arg(long, value_enum, default_value = "fours-threes")]
    family: Family,
    /// Timed rounds per size; the minimum is reported.
    #[arg(long, default_value_t = 5)]
    rounds: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Build(a) => cmd_build(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            // Input and I/O problems are 2; only broken invariants are 3.
            ExitCode::from(if e.is::<InternalError>() { 3 } else { 2 })
        }
    }
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn cmd_check(a: CheckArgs) -> Result<u8> {
    if a.format == Format::Dot {
        bail!(InputError("check has no dot output".into()));
    }
    let mode = a.seq.mode.into();
    let mut code = 0;
    for line in read_sequences(&a.seq.sequence, a.seq.input.as_deref())? {
        let start = Instant::now();
        let decision = check_tc_realizable(&line.seq, mode);
        let report = RunReport::new(line.raw, decision, millis(start.elapsed()));
        print_report(&report, a.format)?;
        if !decision.realizable {
            code = EXIT_NO;
        }
    }
    Ok(code)
}

fn print_report(report: &RunReport, format: Format) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string(report)?),
        _ => println!("{report}"),
    }
    Ok(())
}

/// Self-check after a build: graph invariants, certificate and labeling.
fn self_check(r: &Realization) -> Result<(), String> {
    r.graph.validate_report()?;
    check_certificate(&r.graph, &r.certificate)?;
    check_labeling(&r.graph, &r.labeling).map_err(|v| v.to_string())
}

fn check_labeling(g: &LabeledMultigraph, lab: &TemporalLabeling) -> Result<(), Violation> {
    check_simple(g, lab)?;
    check_proper(g, lab)?;
    check_tc(g, lab)
}

fn cmd_build(a: BuildArgs) -> Result<u8> {
    let lines = read_sequences(&a.seq.sequence, a.seq.input.as_deref())?;
    let [line] = <[_; 1]>::try_from(lines)
        .map_err(|l| InputError(format!("build takes one sequence, got {}", l.len())))?;
    let mode = a.seq.mode.into();
    let start = Instant::now();
    let outcome = realize_tc(&line.seq, mode).map_err(|e| InternalError(e.to_string()))?;
    let elapsed = millis(start.elapsed());
    let r = match outcome {
        TcOutcome::NotRealizable(decision) => {
            print_report(
                &RunReport::new(line.raw, decision, elapsed),
                report_format(a.format),
            )?;
            return Ok(EXIT_NO);
        }
        TcOutcome::Realized(r) => r,
    };
    let verified = if a.no_verify {
        None
    } else {
        if let Err(msg) = self_check(&r) {
            return Err(InternalError(format!("built graph fails verification: {msg}")).into());
        }
        Some(true)
    };
    let report = RunReport::new(line.raw, r.decision, elapsed).with_output(&r, verified);
    let central = r.certificate.central_cycle;
    let artifact = match a.format {
        Format::Json => Some(r.graph.to_json(central) + "\n"),
        Format::Dot => Some(r.graph.to_dot(central)),
        Format::Text => None,
    };
    match (artifact, &a.out) {
        (Some(text), Some(path)) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            println!("{report}");
        }
        (Some(text), None) => print!("{text}"),
        (None, _) => println!("{report}"),
    }
    Ok(0)
}

/// Not-realizable builds have no artifact, so json means a JSON report.
fn report_format(f: Format) -> Format {
    if f == Format::Dot {
        Format::Text
    } else {
        f
    }
}

fn read_graph_text(file: Option<&Path>) -> Result<String> {
    match file {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .map_err(|e| InputError(format!("cannot read {}: {e}", p.display())).into()),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| InputError(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    ok: bool,
    n: usize,
    m: usize,
    max_label: u32,
    violation: Option<String>,
}

fn cmd_verify(a: VerifyArgs) -> Result<u8> {
    let text = read_graph_text(a.file.as_deref())?;
    let (g, _) = LabeledMultigraph::from_json(&text)
        .map_err(|e| InputError(format!("malformed graph file: {e}")))?;
    let lab = TemporalLabeling::from_graph(&g);
    let violation = check_labeling(&g, &lab).err().map(|v| v.to_string());
    let report = VerifyReport {
        ok: violation.is_none(),
        n: g.vertex_count(),
        m: g.edge_count(),
        max_label: lab.max_label(),
        violation,
    };
    match a.format {
        Format::Json => println!("{}", serde_json::to_string(&report)?),
        _ => match &report.violation {
            None => println!(
                "ok: n={} m={} max_label={}: proper, simple and temporally connected",
                report.n, report.m, report.max_label
            ),
            Some(v) => println!("violation: {v}"),
        },
    }
    Ok(if report.ok { 0 } else { EXIT_NO })
}

#[derive(Serialize)]
struct Disagreement {
    sequence: Vec<u32>,
    decision: bool,
    oracle: bool,
}

fn cmd_oracle(a: OracleArgs) -> Result<u8> {
    let mode: Mode = a.mode.into();
    // Multigraph sweeps also cap the edge count, which keeps the brute force finite.
    let (cap, caps) = match mode {
        Mode::Simple => (
            6,
            OracleCaps {
                max_n: 6,
                max_m: 15,
            },
        ),
        Mode::Multi => (5, OracleCaps { max_n: 5, max_m: 8 }),
    };
    if a.n > cap {
        bail!(InputError(format!(
            "--n {} exceeds the {mode} oracle cap of {cap}",
            a.n
        )));
    }
    let seqs: Vec<DegreeSequence> = (0..=a.n)
        .flat_map(|n| match mode {
            Mode::Simple => enumerate_sequences(n, mode),
            Mode::Multi => enumerate_sequences_capped(n, mode, caps.max_m as u32, caps.max_m),
        })
        .collect();
    let mut bad = Vec::new();
    for d in &seqs {
        let decision = check_tc_realizable(d, mode).realizable;
        let oracle = oracle_tc_realizable_sequence(d, mode, caps)
            .map_err(|e| InternalError(e.to_string()))?;
        if decision != oracle {
            bad.push(Disagreement {
                sequence: d.entries(),
                decision,
                oracle,
            });
        }
    }
    bad.sort_by(|x, y| x.sequence.cmp(&y.sequence));
    match a.format {
        Format::Json => println!(
            "{}",
            serde_json::json!({ "mode": mode, "n": a.n, "sequences": seqs.len(), "disagreements": bad })
        ),
        _ => {
            for b in &bad {
                println!(
                    "disagreement: {:?} decision={} oracle={}",
                    b.sequence, b.decision, b.oracle
                );
            }
            if bad.is_empty() {
                println!(
                    "all sequences agree ({} sequences, n <= {}, {mode})",
                    seqs.len(),
                    a.n
                );
            }
        }
    }
    Ok(if bad.is_empty() { 0 } else { EXIT_NO })
}

fn cmd_bench(a: BenchArgs) -> Result<u8> {
    if a.n < 16 || a.rounds == 0 {
        bail!(InputError("bench needs --n >= 16 and --rounds >= 1".into()));
    }
    let sizes = [a.n / 4, a.n / 2, a.n];
    let seqs: Vec<DegreeSequence> = sizes
        .iter()
        .map(|&n| DegreeSequence::normalize(&a.family.sequence(n)))
        .collect();
    let mut best = [Duration::MAX; 3];
    for _ in 0..a.rounds {
        for (slot, d) in best.iter_mut().zip(&seqs) {
            let start = Instant::now();
            match realize_tc(d, Mode::Simple).map_err(|e| InternalError(e.to_string()))? {
                TcOutcome::Realized(_) => *slot = (*slot).min(start.elapsed()),
                TcOutcome::NotRealizable(dec) => {
                    return Err(
                        InternalError(format!("family not realizable: {}", dec.reason)).into(),
                    )
                }
            }
        }
    }
    for (i, (&n, t)) in sizes.iter().zip(best).enumerate() {
        let ratio = if i == 0 {
            String::new()
        } else {
            format!("  x{:.2}", t.as_secs_f64() / best[i - 1].as_secs_f64())
        };
        println!(
            "n={n:>9}  {:>9.2} ms  {:>6.0} ns/vertex{ratio}",
            millis(t),
            t.as_nanos() as f64 / n as f64
        );
    }
    Ok(0)
}
