//! Thin command-line wrapper over the library: evaluate formulas on model
//! files, run named reproductions, derive bounds from knowledge bases,
//! search for counterexamples, and canonicalize formula text.
//!
//! Exit codes are a stable contract: 0 success, 1 failed reproduction or
//! counterexample found, 2 usage error, 3 file or format error.

use std::fmt::{self, Write as _};
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use statfol::deduction::{check_soundness, derive, parse_fact, parse_kb, DeriveOutcome};
use statfol::model::{load_model, Assignment, FiniteModel};
use statfol::parser::{parse, parse_term, render, render_term};
use statfol::threevalued::{eval3, eval_term3, P1Value};
use statfol::twovalued::{eval2, eval_term};
use statfol::verifier::{
    repro, search_counterexample, ReproName, ReproReport, SearchMode, SearchProperty, SearchSpace,
    DEFAULT_ENUMERATION_CAP,
};
use statfol::{ParseError, Rational};

const EXIT_FOUND: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_FILE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "statfol",
    version,
    about = "Exact proportion-based probability over finite first-order models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula or probability term on a model file.
    Eval(EvalArgs),
    /// Run a named reproduction (or `all`) and report its claims.
    Repro(ReproArgs),
    /// Derive a goal bound from a knowledge base by forward chaining.
    Derive(DeriveArgs),
    /// Search a model space for a counterexample to a property.
    Search(SearchArgs),
    /// Parse a formula and print its canonical rendering.
    Parse(ParseArgs),
}

/// Output format; the environment variable supplies the default only.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable text.
    Text,
    /// JSON, the same encoding as model files.
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum Semantics {
    /// Classical two-valued evaluation.
    #[value(name = "2v")]
    Two,
    /// Three-valued evaluation with the conditional connective.
    #[value(name = "3v")]
    Three,
}

#[derive(clap::Args)]
struct EvalArgs {
    /// Model file to evaluate against.
    #[arg(long, value_name = "PATH")]
    model: PathBuf,
    /// Formula or probability term, inline.
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    formula: Option<String>,
    /// File holding the formula or probability term.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Which semantics to evaluate under.
    #[arg(long, value_enum, default_value_t = Semantics::Two)]
    semantics: Semantics,
    /// Also print an approximate decimal value for rationals.
    #[arg(long)]
    decimal: bool,
    #[arg(long, value_enum, env = "STATFOL_FORMAT", default_value_t = Format::Text)]
    format: Format,
}

#[derive(clap::Args)]
struct ReproArgs {
    /// Reproduction name, or `all`.
    name: String,
    #[arg(long, value_enum, env = "STATFOL_FORMAT", default_value_t = Format::Text)]
    format: Format,
}

#[derive(clap::Args)]
struct DeriveArgs {
    /// Knowledge base file, one fact per line.
    #[arg(long, value_name = "PATH")]
    kb: PathBuf,
    /// Goal fact, e.g. "BOUND [X4(x)]_{x} >= 19/20".
    #[arg(long)]
    goal: String,
    /// Maximum number of derived facts to accept before giving up.
    #[arg(long, default_value_t = 256)]
    budget: usize,
    /// Model file; annotate every step with premise and conclusion truth.
    #[arg(long, value_name = "PATH")]
    check_model: Option<PathBuf>,
    #[arg(long, value_enum, env = "STATFOL_FORMAT", default_value_t = Format::Text)]
    format: Format,
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Property to refute: theorem3_violation, theorem4_stated_bound,
    /// contraposition_3v, or p1_additivity.
    #[arg(long)]
    property: String,
    /// Largest domain size to explore.
    #[arg(long, default_value_t = 3)]
    max_domain: usize,
    /// Let tuples take the undefined value.
    #[arg(long = "allow-u")]
    allow_u: bool,
    /// Enumerate every model in the space.
    #[arg(long, required_unless_present = "random", conflicts_with = "random")]
    exhaustive: bool,
    /// Sample seeded random models instead of enumerating.
    #[arg(long)]
    random: bool,
    /// Seed for random mode.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of models to sample in random mode.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Enumeration cap for exhaustive mode.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    #[arg(long, value_enum, env = "STATFOL_FORMAT", default_value_t = Format::Text)]
    format: Format,
}

#[derive(clap::Args)]
struct ParseArgs {
    /// Formula or probability term to canonicalize.
    #[arg(long)]
    formula: String,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn file(message: impl fmt::Display) -> Failure {
        Failure {
            code: EXIT_FILE,
            message: message.to_string(),
        }
    }

    fn usage(message: impl fmt::Display) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((output, code)) => {
            // Tolerate a reader that stopped consuming, e.g. `statfol ... | head`.
            let stdout = io::stdout();
            let _ = stdout.lock().write_all(output.as_bytes());
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(String, u8), Failure> {
    match command {
        Command::Eval(args) => cmd_eval(args),
        Command::Repro(args) => cmd_repro(args),
        Command::Derive(args) => cmd_derive(args),
        Command::Search(args) => cmd_search(args),
        Command::Parse(args) => cmd_parse(args),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::file(format!("{}: {e}", path.display())))
}

fn load_model_file(path: &Path) -> Result<FiniteModel, Failure> {
    load_model(&read_file(path)?).map_err(|e| Failure::file(format!("{}: {e}", path.display())))
}

/// Point at the offending range of a one-line input.
fn diagnostic(text: &str, err: &ParseError) -> String {
    let start = err.span.start.min(text.len());
    let end = err.span.end.clamp(start + 1, text.len().max(start + 1));
    let prefix = text[..start].chars().count();
    let width = text.get(start..end).map_or(1, |s| s.chars().count().max(1));
    format!(
        "{err}\n  | {text}\n  | {}{}",
        " ".repeat(prefix),
        "^".repeat(width)
    )
}

enum Parsed {
    Formula(statfol::Formula),
    Term(statfol::ProbTerm),
}

/// Accept either a formula or a bare probability term, reporting the error
/// that got further when both parses fail.
fn parse_input(text: &str) -> Result<Parsed, Failure> {
    match parse(text) {
        Ok(f) => Ok(Parsed::Formula(f)),
        Err(fe) => match parse_term(text) {
            Ok(t) => Ok(Parsed::Term(t)),
            Err(te) => {
                let best = if te.span.start > fe.span.start {
                    te
                } else {
                    fe
                };
                Err(Failure::file(diagnostic(text, &best)))
            }
        },
    }
}

fn rational_text(value: &Rational, decimal: bool) -> String {
    if decimal {
        format!("{value} ({} approx)", value.to_f64())
    } else {
        value.to_string()
    }
}

fn to_pretty(doc: &impl serde::Serialize) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("serializable document");
    text.push('\n');
    text
}

fn cmd_eval(args: EvalArgs) -> Result<(String, u8), Failure> {
    let m = load_model_file(&args.model)?;
    let source = match (&args.formula, &args.file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => read_file(path)?,
        (None, None) => unreachable!("clap enforces one source"),
    };
    let text = source.trim();
    let env = Assignment::new();

    let (value, approx) = match parse_input(text)? {
        Parsed::Formula(f) => match args.semantics {
            Semantics::Two => {
                let v = eval2(&m, &env, &f).map_err(Failure::file)?;
                (if v { "true" } else { "false" }.to_string(), None)
            }
            Semantics::Three => {
                let v = eval3(&m, &env, &f).map_err(Failure::file)?;
                (v.to_string(), None)
            }
        },
        Parsed::Term(t) => match args.semantics {
            Semantics::Two => {
                let v = eval_term(&m, &env, &t).map_err(Failure::file)?;
                (rational_text(&v, args.decimal), Some(v.to_f64()))
            }
            Semantics::Three => match eval_term3(&m, &env, &t).map_err(Failure::file)? {
                P1Value::Defined(v) => (rational_text(&v, args.decimal), Some(v.to_f64())),
                P1Value::Undefined => ("UNDEFINED".to_string(), None),
            },
        },
    };

    let output = match args.format {
        Format::Text => format!("{value}\n"),
        Format::Structured => {
            let mut doc = json!({ "input": text, "value": value });
            if let (true, Some(a)) = (args.decimal, approx) {
                doc["approx"] = json!(a);
            }
            to_pretty(&doc)
        }
    };
    Ok((output, 0))
}

fn cmd_repro(args: ReproArgs) -> Result<(String, u8), Failure> {
    let reports: Vec<ReproReport> = if args.name == "all" {
        ReproName::ALL.into_iter().map(repro).collect()
    } else {
        let name: ReproName = args.name.parse().map_err(Failure::usage)?;
        vec![repro(name)]
    };
    let all_pass = reports.iter().all(|r| r.pass);

    let output = match args.format {
        Format::Text => {
            let texts: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
            let mut out = texts.join("\n\n");
            if args.name == "all" {
                write!(
                    out,
                    "\n\nall reproductions: {}",
                    if all_pass { "PASS" } else { "FAIL" }
                )
                .expect("write to string");
            }
            out.push('\n');
            out
        }
        Format::Structured => {
            if reports.len() == 1 {
                to_pretty(&reports[0])
            } else {
                to_pretty(&reports)
            }
        }
    };
    Ok((output, if all_pass { 0 } else { EXIT_FOUND }))
}

fn cmd_derive(args: DeriveArgs) -> Result<(String, u8), Failure> {
    let kb_text = read_file(&args.kb)?;
    let kb =
        parse_kb(&kb_text).map_err(|e| Failure::file(format!("{}: {e}", args.kb.display())))?;
    let goal = parse_fact(&args.goal).map_err(|e| Failure::file(diagnostic(&args.goal, &e)))?;
    let outcome = derive(&kb, &goal, args.budget);

    let derivation = match &outcome {
        DeriveOutcome::Found(d) => d,
        DeriveOutcome::NotFound { explored } => {
            let output = match args.format {
                Format::Text => format!(
                    "goal: {goal}\nNOT FOUND ({explored} facts explored within budget {})\n",
                    args.budget
                ),
                Format::Structured => to_pretty(&json!({
                    "goal": goal.to_string(),
                    "found": false,
                    "explored": explored,
                    "budget": args.budget,
                })),
            };
            return Ok((output, 0));
        }
    };

    let soundness = match &args.check_model {
        Some(path) => {
            let m = load_model_file(path)?;
            Some(check_soundness(derivation, &m).map_err(Failure::file)?)
        }
        None => None,
    };

    let output = match args.format {
        Format::Text => {
            let mut out = format!(
                "goal: {goal}\nderived in {} steps:\n",
                derivation.steps.len()
            );
            for (i, step) in derivation.steps.iter().enumerate() {
                writeln!(out, "{}. {}", i + 1, step.rule).expect("write to string");
                for (j, premise) in step.premises.iter().enumerate() {
                    let note = soundness
                        .as_ref()
                        .map(|s| truth_note(s.steps[i].premises[j].1))
                        .unwrap_or_default();
                    writeln!(out, "   from:  {premise}{note}").expect("write to string");
                }
                let note = soundness
                    .as_ref()
                    .map(|s| truth_note(s.steps[i].conclusion.1))
                    .unwrap_or_default();
                writeln!(out, "   gives: {}{note}", step.conclusion).expect("write to string");
            }
            if let Some(s) = &soundness {
                writeln!(
                    out,
                    "every step locally sound on the model: {}",
                    if s.all_locally_sound { "yes" } else { "no" }
                )
                .expect("write to string");
            }
            out
        }
        Format::Structured => {
            let steps: Vec<serde_json::Value> = derivation
                .steps
                .iter()
                .enumerate()
                .map(|(i, step)| {
                    let mut doc = json!({
                        "rule": step.rule.to_string(),
                        "premises": step.premises.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        "conclusion": step.conclusion.to_string(),
                    });
                    if let Some(s) = &soundness {
                        doc["premises_true"] = json!(s.steps[i]
                            .premises
                            .iter()
                            .map(|(_, t)| *t)
                            .collect::<Vec<_>>());
                        doc["conclusion_true"] = json!(s.steps[i].conclusion.1);
                        doc["locally_sound"] = json!(s.steps[i].locally_sound);
                    }
                    doc
                })
                .collect();
            let mut doc = json!({
                "goal": goal.to_string(),
                "found": true,
                "steps": steps,
            });
            if let Some(s) = &soundness {
                doc["all_locally_sound"] = json!(s.all_locally_sound);
            }
            to_pretty(&doc)
        }
    };
    Ok((output, 0))
}

fn truth_note(truth: bool) -> String {
    format!("   [{} on model]", if truth { "true" } else { "false" })
}

fn cmd_search(args: SearchArgs) -> Result<(String, u8), Failure> {
    let property: SearchProperty = args.property.parse().map_err(Failure::usage)?;
    let space = SearchSpace {
        max_domain: args.max_domain,
        allow_undef: args.allow_u,
    };
    let mode = if args.random {
        SearchMode::Random {
            seed: args.seed,
            trials: args.trials,
        }
    } else {
        SearchMode::Exhaustive { cap: args.cap }
    };
    let outcome = search_counterexample(property, &space, &mode).map_err(|e| match e {
        statfol::ModelError::Budget { .. } => Failure::usage(e),
        other => Failure::file(other),
    })?;

    let output = match args.format {
        Format::Text => format!("{outcome}\n"),
        Format::Structured => to_pretty(&outcome),
    };
    Ok((output, if outcome.found() { EXIT_FOUND } else { 0 }))
}

fn cmd_parse(args: ParseArgs) -> Result<(String, u8), Failure> {
    let text = args.formula.trim();
    let canonical = match parse_input(text)? {
        Parsed::Formula(f) => {
            let canonical = render(&f);
            if parse(&canonical).as_ref() != Ok(&f) {
                return Err(Failure::file(format!(
                    "canonical form `{canonical}` does not re-parse to the same tree"
                )));
            }
            canonical
        }
        Parsed::Term(t) => {
            let canonical = render_term(&t);
            if parse_term(&canonical).as_ref() != Ok(&t) {
                return Err(Failure::file(format!(
                    "canonical form `{canonical}` does not re-parse to the same term"
                )));
            }
            canonical
        }
    };
    Ok((format!("{canonical}\n"), 0))
}
