//! `whq`: check, synthesize and classify weak Hopf (co)quasigroups stored as
//! JSON structure-constant files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use whq_core::dsl::{eval_expr, parse_expr};
use whq_core::galois::check_prop27;
use whq_core::projections::check_projection_identities;
use whq_core::report::{all_hold, Check};
use whq_core::splitting::{check_intertwining, check_lemma_diagrams, omega_family, OmegaFamily};
use whq_core::structure::{from_json, perturb, to_json, Example, Target};
use whq_core::synthesis::{matrix_strings, AntipodeResult};
use whq_core::{classify, dual_synthesis, dualize, synthesize_antipode, validate_premises, verify_axioms};
use whq_core::{Error, Mode, WeakStructure};

#[derive(Parser)]
#[command(name = "whq", version, about = "Exact checks and antipode synthesis for weak Hopf (co)quasigroups")]
struct Cli {
    /// Worker threads for the identity suites (default: all cores).
    #[arg(long, env = "WHQ_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity suites on a structure file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Build the antipode from the fusion morphisms.
    Synthesize {
        file: PathBuf,
        /// Write the structure with the synthesized antipode.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide which kind of structure the file holds.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Write the transposed structure.
    Dualize {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a morphism expression, or compare two.
    Eval {
        file: PathBuf,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        equals: Option<String>,
    },
    /// Write a bundled example.
    Example {
        #[arg(value_enum)]
        kind: ExampleKind,
        /// Which group, for `group`.
        #[arg(long, value_enum, default_value = "z2")]
        name: GroupName,
        #[arg(long)]
        out: PathBuf,
    },
    /// Add one to a seed-chosen structure constant.
    Perturb {
        file: PathBuf,
        #[arg(long)]
        target: Target,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Premises,
    Projections,
    Omega,
    Prop27,
    Axioms,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleKind {
    Group,
    GroupoidPair,
    SteinerFano,
    SteinerAg3,
    Trivial,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupName {
    Z2,
    Z3,
    S3,
}

/// Failures split by exit code.
enum Failure {
    /// Exit 1: the input was read but a mathematical check failed.
    Math(String),
    /// Exit 2: bad usage, unreadable input or an I/O error.
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        Failure::Usage(e)
    }
}

type Outcome = Result<(), Failure>;

/// println! that stops quietly once stdout is closed.
macro_rules! out {
    ($($t:tt)*) => {
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0)
        }
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check { file, suite, json } => check(&load(&file)?, suite, json.as_deref()),
        Command::Synthesize { file, out } => synthesize(&load(&file)?, out.as_deref()),
        Command::Classify { file, json } => run_classify(&load(&file)?, json.as_deref()),
        Command::Dualize { file, out } => save(&out, &dualize(&load(&file)?)),
        Command::Eval { file, expr, equals } => eval(&load(&file)?, &expr, equals.as_deref()),
        Command::Example { kind, name, out } => {
            let ex = match (kind, name) {
                (ExampleKind::Group, GroupName::Z2) => Example::Z2,
                (ExampleKind::Group, GroupName::Z3) => Example::Z3,
                (ExampleKind::Group, GroupName::S3) => Example::S3,
                (ExampleKind::GroupoidPair, _) => Example::PairGroupoid,
                (ExampleKind::SteinerFano, _) => Example::SteinerFano,
                (ExampleKind::SteinerAg3, _) => Example::SteinerAffine,
                (ExampleKind::Trivial, _) => Example::Trivial,
            };
            save(&out, &ex.build())
        }
        Command::Perturb { file, target, seed, out } => {
            let (s, p) = perturb(&load(&file)?, target, seed).map_err(anyhow::Error::from)?;
            out!("{:?} entry ({}, {}): {} -> {}", p.target, p.row, p.col, p.old, p.new);
            save(&out, &s)
        }
    }
}

fn load(path: &Path) -> Result<WeakStructure, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(from_json(&text).with_context(|| format!("loading {}", path.display()))?)
}

fn save(path: &Path, s: &WeakStructure) -> Outcome {
    fs::write(path, to_json(s)).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn write_json(path: &Path, v: &Value) -> Outcome {
    let text = serde_json::to_string_pretty(v).map_err(anyhow::Error::from)? + "\n";
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Core errors that mean "the mathematics does not work out" rather than
/// "the request was malformed".
fn math_or_usage(e: Error) -> Failure {
    match e {
        Error::PremiseFailure(_)
        | Error::CrossCheckMismatch(_)
        | Error::MonoidAxiomFailure(_)
        | Error::ModuleLawFailure(_)
        | Error::NotIdempotent => Failure::Math(e.to_string()),
        other => Failure::Usage(other.into()),
    }
}

struct SuiteReport {
    name: &'static str,
    lines: Vec<Check>,
    notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str, lines: Vec<Check>) -> SuiteReport {
        SuiteReport { name, lines, notes: Vec::new() }
    }

    fn json(&self) -> Value {
        json!({ "lines": self.lines, "notes": self.notes, "passed": all_hold(&self.lines) })
    }
}

/// The structure the quasigroup-side suites run on.
fn quasigroup_view(s: &WeakStructure) -> (WeakStructure, Option<String>) {
    match s.mode() {
        Mode::Quasigroup => (s.clone(), None),
        Mode::Coquasigroup => (dualize(s), Some("run on the dual structure".to_string())),
    }
}

fn run_suite(s: &WeakStructure, suite: Suite) -> Result<SuiteReport, Failure> {
    let core = |r: whq_core::Result<SuiteReport>| r.map_err(math_or_usage);
    match suite {
        Suite::Premises => core((|| {
            let r = validate_premises(s)?;
            let mut out = SuiteReport::new("premises", r.lines);
            out.notes.push(format!("mode {:?}, {}", r.mode, r.braiding).to_lowercase());
            Ok(out)
        })()),
        Suite::Projections => core((|| {
            let (view, note) = quasigroup_view(s);
            let mut out = SuiteReport::new("projections", check_projection_identities(&view)?);
            out.notes.extend(note);
            Ok(out)
        })()),
        Suite::Omega => {
            let (view, note) = quasigroup_view(s);
            let result = (|| {
                let fam = omega_family(&view)?;
                let mut lines = Vec::new();
                for (side, index) in OmegaFamily::ORDER {
                    let split = fam.split(side, index);
                    let id = format!("omega-{}{index}", side.name());
                    lines.push(Check::new(format!("{id}-idempotent"), split.nabla.is_idempotent()?));
                    lines.push(Check::new(format!("{id}-splits"), split.check()?));
                }
                lines.extend(check_intertwining(&view, &fam)?);
                let diagrams = check_lemma_diagrams(&view)?;
                lines.extend(diagrams.lines);
                let mut out = SuiteReport::new("omega", lines);
                out.notes.extend(note);
                out.notes.extend(diagrams.notes);
                out.notes.extend(diagrams.ranks.iter().map(|(k, r)| format!("rank {k} = {r}")));
                Ok(out)
            })();
            core(result)
        }
        Suite::Prop27 => core((|| {
            let (view, note) = quasigroup_view(s);
            let r = check_prop27(&view)?;
            let mut out = SuiteReport::new("prop27", r.lines());
            out.notes.extend(note);
            out.notes.extend(r.notes);
            out.notes.extend(
                r.equivalences.iter().map(|e| format!("{}: predicate {}, condition {}", e.id, e.predicate, e.condition)),
            );
            Ok(out)
        })()),
        Suite::Axioms => {
            if !s.has_lambda() {
                return Err(Failure::Usage(anyhow!("the structure carries no antipode; run `synthesize` first")));
            }
            core((|| {
                let r = verify_axioms(s)?;
                let mut out = SuiteReport::new("axioms", r.lines);
                out.notes.extend(r.notes);
                Ok(out)
            })())
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn check(s: &WeakStructure, suite: Suite, json_out: Option<&Path>) -> Outcome {
    let suites = match suite {
        Suite::All => {
            let mut v = vec![Suite::Premises, Suite::Projections, Suite::Omega, Suite::Prop27];
            if s.has_lambda() {
                v.push(Suite::Axioms);
            }
            v
        }
        one => vec![one],
    };
    let mut reports = Vec::new();
    for suite in suites {
        match run_suite(s, suite) {
            Ok(r) => reports.push(r),
            // A suite that cannot run because the premises fail is itself a
            // failed line; the premise suite names which ones.
            Err(Failure::Math(msg)) => {
                let mut r = SuiteReport::new(suite_name(suite), vec![Check::new("runnable", false)]);
                r.notes.push(msg);
                reports.push(r);
            }
            Err(e) => return Err(e),
        }
    }
    let (mut total, mut passed) = (0, 0);
    for r in &reports {
        out!("[{}]", r.name);
        for line in &r.lines {
            out!("  {} {}", if line.holds { "PASS" } else { "FAIL" }, line.id);
        }
        for note in &r.notes {
            out!("  note: {note}");
        }
        total += r.lines.len();
        passed += r.lines.iter().filter(|c| c.holds).count();
    }
    out!("{passed}/{total} lines pass");
    if !s.has_lambda() && suite == Suite::All {
        out!("note: no antipode stored; axioms suite skipped");
    }
    if let Some(path) = json_out {
        let suites: serde_json::Map<String, Value> = reports.iter().map(|r| (r.name.to_string(), r.json())).collect();
        write_json(path, &json!({ "mode": s.mode(), "suites": suites, "passed": passed == total }))?;
    }
    match passed == total {
        true => Ok(()),
        false => Err(Failure::Math(format!("{} line(s) fail", total - passed))),
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Premises => "premises",
        Suite::Projections => "projections",
        Suite::Omega => "omega",
        Suite::Prop27 => "prop27",
        Suite::Axioms => "axioms",
        Suite::All => "all",
    }
}

fn print_antipode(r: &AntipodeResult) {
    out!("status: {}", r.status);
    for c in &r.evidence {
        out!("  {} {}", if c.holds { "PASS" } else { "FAIL" }, c.id);
    }
    for n in &r.notes {
        out!("  note: {n}");
    }
    if let Some(l) = &r.lambda {
        out!("lambda:");
        print_matrix(&matrix_strings(l.matrix()));
    }
}

fn print_matrix(rows: &[Vec<String>]) {
    for row in rows {
        out!("  [{}]", row.join(", "));
    }
}

fn synthesize(s: &WeakStructure, out: Option<&Path>) -> Outcome {
    let result = match s.mode() {
        Mode::Quasigroup => synthesize_antipode(s),
        Mode::Coquasigroup => dual_synthesis(s),
    }
    .map_err(math_or_usage)?;
    print_antipode(&result);
    let Some(lambda) = result.lambda.clone().filter(|_| result.status.is_synthesized()) else {
        return Err(Failure::Math(format!("no antipode: {}", result.status)));
    };
    if let Some(path) = out {
        save(path, &s.with_lambda(lambda).map_err(anyhow::Error::from)?)?;
    }
    Ok(())
}

fn run_classify(s: &WeakStructure, json_out: Option<&Path>) -> Outcome {
    let c = classify(s).map_err(math_or_usage)?;
    out!("verdict: {}", c.verdict);
    out!("dual verdict: {}", c.dual_verdict);
    let f = c.flags;
    out!(
        "flags: associative={} coassociative={} eps_multiplicative={} delta_unital={} pi_trivial={}",
        f.associative, f.coassociative, f.eps_multiplicative, f.delta_unital, f.pi_trivial
    );
    for e in &c.evidence {
        out!("  {} {}", if e.holds { "PASS" } else { "FAIL" }, e.id);
    }
    if let Some(a) = &c.antipode {
        out!("antipode: {}", a.status);
    }
    if let Some(path) = json_out {
        write_json(path, &c.to_json())?;
    }
    match c.verdict {
        whq_core::Verdict::NotRecognized(why) => Err(Failure::Math(format!("not recognized: {why}"))),
        _ => Ok(()),
    }
}

fn eval(s: &WeakStructure, expr: &str, equals: Option<&str>) -> Outcome {
    let value = |text: &str| -> Result<whq_core::Mor, Failure> {
        let ast = parse_expr(text).with_context(|| format!("parsing {text:?}"))?;
        Ok(eval_expr(s, &ast).with_context(|| format!("evaluating {text:?}"))?)
    };
    let lhs = value(expr)?;
    match equals {
        None => {
            out!("H^{} -> H^{}", lhs.src(), lhs.dst());
            print_matrix(&matrix_strings(lhs.matrix()));
            Ok(())
        }
        Some(other) => {
            let rhs = value(other)?;
            if lhs.src() != rhs.src() || lhs.dst() != rhs.dst() {
                return Err(Failure::Usage(anyhow!(
                    "types differ: H^{} -> H^{} vs H^{} -> H^{}",
                    lhs.src(),
                    lhs.dst(),
                    rhs.src(),
                    rhs.dst()
                )));
            }
            match lhs == rhs {
                true => {
                    out!("equal");
                    Ok(())
                }
                false => Err(Failure::Math("not equal".into())),
            }
        }
    }
}
