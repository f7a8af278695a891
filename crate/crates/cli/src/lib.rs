//! File format, DOT export and the `sfa` command-line tool.

pub mod dot;
pub mod format;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sfa_core::oracle;
use sfa_core::{ops, transforms, AlgebraBinding, Letter, OpCounters, ProductMode, Sfa, Valuation};

pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("{}{line}:{column}: {message}", prefix(file))]
    Parse {
        file: Option<String>,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}{message}", prefix(file))]
    Semantic {
        file: Option<String>,
        message: String,
    },
    #[error("{0}")]
    Core(#[from] sfa_core::Error),
    #[error("bad word: {0}")]
    Word(String),
}

fn prefix(file: &Option<String>) -> String {
    file.as_ref().map(|f| format!("{f}:")).unwrap_or_default()
}

impl CliError {
    pub(crate) fn in_file(self, path: &Path) -> Self {
        let name = Some(path.display().to_string());
        match self {
            CliError::Parse {
                line,
                column,
                message,
                ..
            } => CliError::Parse {
                file: name,
                line,
                column,
                message,
            },
            CliError::Semantic { message, .. } => CliError::Semantic {
                file: name,
                message,
            },
            CliError::Core(e) => CliError::Semantic {
                file: name,
                message: e.to_string(),
            },
            other => other,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sfa",
    version,
    about = "Symbolic finite automata over interval and propositional algebras"
)]
pub struct Cli {
    /// Print the report as JSON
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Unary {
    pub file: PathBuf,
    /// Write the resulting automaton here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Binary {
    pub a: PathBuf,
    pub b: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check structural invariants (exit 1 if any is violated)
    Validate {
        file: PathBuf,
    },
    /// Size triple and structural properties
    Metrics {
        file: PathBuf,
    },
    Neat(Unary),
    Normalize(Unary),
    Feasible(Unary),
    Complete(Unary),
    Determinize(Unary),
    Minimize(Unary),
    Complement(Unary),
    Intersect(Binary),
    /// Union of two deterministic, complete automata
    Union(Binary),
    /// Canonical minimal neat form (interval algebra)
    CanonNeat(Unary),
    /// Canonical minimal normalized form (interval algebra)
    CanonNorm(Unary),
    /// Membership of a word (exit 1 if rejected)
    Member {
        file: PathBuf,
        /// Comma-separated letters: integers, or bitstrings with proposition 0 first
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Language emptiness (exit 1 if nonempty)
    Empty {
        file: PathBuf,
        /// Skip satisfiability checks on traversed transitions
        #[arg(long)]
        assume_feasible: bool,
    },
    /// L(a) ⊆ L(b) (exit 1 if not)
    Include {
        a: PathBuf,
        b: PathBuf,
    },
    /// L(a) = L(b) (exit 1 if not)
    Equiv {
        a: PathBuf,
        b: PathBuf,
    },
    /// Graphviz export
    Dot(Unary),
    /// Brute-force oracle, for troubleshooting
    #[command(subcommand)]
    Debug(DebugCommand),
}

#[derive(Debug, Subcommand)]
pub enum DebugCommand {
    /// Explicit DFA over a finite alphabet
    Concretize {
        file: PathBuf,
        /// Comma-separated letters; defaults to the endpoint window or all valuations
        #[arg(long, allow_hyphen_values = true)]
        alphabet: Option<String>,
    },
    /// Language equality decided on explicit DFAs (exit 1 if different)
    OracleEqual { a: PathBuf, b: PathBuf },
}

/// What a command produced besides its report.
enum Outcome {
    Decision(bool, Value),
    Artifact(Sfa),
    Text(String),
    Info(Value),
}

/// Runs one command. The report goes to `out`, except that an automaton or
/// DOT text printed to `out` (no `--out`) pushes the report to `err`.
/// Returns the exit status: 0 on success or a true decision, 1 for a false
/// decision, 2 on errors.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let (op, inputs, target) = plan(&cli.command)?;
    let mut cx = OpCounters::default();
    let start = Instant::now();
    let outcome = apply(&cli.command, &inputs, &mut cx)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;

    let mut report = Report::new(op, &inputs, cx, ms);
    let io = |p: &Path, e| CliError::Io(p.display().to_string(), e);
    let mut code = 0;
    let mut report_to_err = false;
    match outcome {
        Outcome::Decision(holds, result) => {
            report.result = result;
            code = if holds { 0 } else { 1 };
        }
        Outcome::Info(result) => report.result = result,
        Outcome::Artifact(sfa) => {
            report.output = Some(sfa.size_triple().into());
            let text = format::emit_sfa(&sfa);
            report_to_err = emit(target, &text, out, &mut report).map_err(|(p, e)| io(&p, e))?;
        }
        Outcome::Text(text) => {
            report_to_err = emit(target, &text, out, &mut report).map_err(|(p, e)| io(&p, e))?;
        }
    }
    let sink: &mut dyn Write = if report_to_err { err } else { out };
    let rendered = if cli.json {
        report.to_json()
    } else {
        report.to_text()
    };
    sink.write_all(rendered.as_bytes())
        .map_err(|e| CliError::Io("<output>".into(), e))?;
    Ok(code)
}

/// Writes `text` to the target file (result = its path) or to `out`; true if
/// it went to `out`.
fn emit(
    target: Option<&Path>,
    text: &str,
    out: &mut dyn Write,
    report: &mut Report,
) -> Result<bool, (PathBuf, std::io::Error)> {
    match target {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| (path.to_path_buf(), e))?;
            report.result = Value::String(path.display().to_string());
            Ok(false)
        }
        None => {
            out.write_all(text.as_bytes())
                .map_err(|e| (PathBuf::from("<output>"), e))?;
            Ok(true)
        }
    }
}

type Plan<'a> = (&'static str, Vec<Sfa>, Option<&'a Path>);

fn unary<'a>(op: &'static str, u: &'a Unary) -> Result<Plan<'a>, CliError> {
    Ok((op, vec![format::read_sfa(&u.file)?], u.out.as_deref()))
}

fn binary<'a>(op: &'static str, b: &'a Binary) -> Result<Plan<'a>, CliError> {
    Ok((
        op,
        vec![format::read_sfa(&b.a)?, format::read_sfa(&b.b)?],
        b.out.as_deref(),
    ))
}

/// Operation name, parsed inputs and output path of a command.
fn plan(cmd: &Command) -> Result<Plan<'_>, CliError> {
    let read = |p: &PathBuf| format::read_sfa(p);
    match cmd {
        Command::Validate { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| CliError::Io(file.display().to_string(), e))?;
            let (sfa, _) = format::parse_unchecked(&text).map_err(|e| e.in_file(file))?;
            Ok(("validate", vec![sfa], None))
        }
        Command::Metrics { file } => Ok(("metrics", vec![read(file)?], None)),
        Command::Neat(u) => unary("neat", u),
        Command::Normalize(u) => unary("normalize", u),
        Command::Feasible(u) => unary("feasible", u),
        Command::Complete(u) => unary("complete", u),
        Command::Determinize(u) => unary("determinize", u),
        Command::Minimize(u) => unary("minimize", u),
        Command::Complement(u) => unary("complement", u),
        Command::Intersect(b) => binary("intersect", b),
        Command::Union(b) => binary("union", b),
        Command::CanonNeat(u) => unary("canon-neat", u),
        Command::CanonNorm(u) => unary("canon-norm", u),
        Command::Member { file, .. } => Ok(("member", vec![read(file)?], None)),
        Command::Empty { file, .. } => Ok(("empty", vec![read(file)?], None)),
        Command::Include { a, b } => Ok(("include", vec![read(a)?, read(b)?], None)),
        Command::Equiv { a, b } => Ok(("equiv", vec![read(a)?, read(b)?], None)),
        Command::Dot(u) => unary("dot", u),
        Command::Debug(DebugCommand::Concretize { file, .. }) => {
            Ok(("debug concretize", vec![read(file)?], None))
        }
        Command::Debug(DebugCommand::OracleEqual { a, b }) => {
            Ok(("debug oracle-equal", vec![read(a)?, read(b)?], None))
        }
    }
}

fn apply(cmd: &Command, inputs: &[Sfa], cx: &mut OpCounters) -> Result<Outcome, CliError> {
    let a = &inputs[0];
    let b = inputs.get(1);
    let artifact = Outcome::Artifact;
    Ok(match cmd {
        Command::Validate { .. } => {
            let violations: Vec<String> = a.validate().iter().map(|v| v.to_string()).collect();
            Outcome::Decision(violations.is_empty(), json!(violations))
        }
        Command::Metrics { .. } => {
            let size = a.size_triple();
            Outcome::Info(json!({
                "n": size.n,
                "m": size.m,
                "l": size.l,
                "deterministic": a.is_deterministic(cx),
                "complete": a.is_complete(cx),
                "neat": a.is_neat(),
                "normalized": a.is_normalized(),
                "feasible": a.is_feasible(cx),
            }))
        }
        Command::Neat(_) => artifact(transforms::to_neat(a, cx)),
        Command::Normalize(_) => artifact(transforms::to_normalized(a, cx)),
        Command::Feasible(_) => artifact(transforms::to_feasible(a, cx)),
        Command::Complete(_) => artifact(transforms::complete(a, cx)),
        Command::Determinize(_) => artifact(ops::determinize(a, cx)),
        Command::Minimize(_) => artifact(ops::minimize(a, cx)?),
        Command::Complement(_) => artifact(ops::complement(a, cx)?),
        Command::Intersect(_) => artifact(ops::product(a, b.unwrap(), ProductMode::Intersect, cx)?),
        Command::Union(_) => artifact(ops::product(a, b.unwrap(), ProductMode::Union, cx)?),
        Command::CanonNeat(_) => artifact(transforms::canonical_minimal_neat(a, cx)?),
        Command::CanonNorm(_) => artifact(transforms::canonical_minimal_normalized(a, cx)?),
        Command::Member { word, .. } => {
            let w = parse_letters(a.binding(), word)?;
            let holds = a.accepts(&w)?;
            Outcome::Decision(holds, json!(holds))
        }
        Command::Empty {
            assume_feasible, ..
        } => {
            let holds = ops::is_empty(a, *assume_feasible, cx);
            Outcome::Decision(holds, json!(holds))
        }
        Command::Include { .. } => {
            let holds = ops::includes(a, b.unwrap(), cx)?;
            Outcome::Decision(holds, json!(holds))
        }
        Command::Equiv { .. } => {
            let holds = ops::equivalent(a, b.unwrap(), cx)?;
            Outcome::Decision(holds, json!(holds))
        }
        Command::Dot(_) => Outcome::Text(dot::export_dot(a)),
        Command::Debug(DebugCommand::Concretize { alphabet, .. }) => {
            let alphabet = match alphabet {
                Some(text) => parse_letters(a.binding(), text)?,
                None => oracle::default_alphabet(&[a]),
            };
            let dfa = oracle::concretize(a, &alphabet)?;
            Outcome::Info(json!({
                "alphabet": alphabet.len(),
                "states": dfa.state_count(),
                "minimal_states": dfa.minimal_state_count(),
                "empty": dfa.is_empty(),
            }))
        }
        Command::Debug(DebugCommand::OracleEqual { .. }) => {
            let b = b.unwrap();
            let alphabet = oracle::default_alphabet(&[a, b]);
            let holds = oracle::oracle_equal(a, b, &alphabet)?;
            Outcome::Decision(holds, json!(holds))
        }
    })
}

/// Parses comma-separated letters; the empty string is the empty word.
pub fn parse_letters(binding: &AlgebraBinding, text: &str) -> Result<Vec<Letter>, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|item| {
            let item = item.trim();
            match binding {
                AlgebraBinding::Interval => item
                    .parse::<i64>()
                    .map(Letter::Int)
                    .map_err(|_| CliError::Word(format!("{item:?} is not an integer"))),
                AlgebraBinding::Propositional(props) => {
                    let bits: Option<Vec<bool>> = item
                        .chars()
                        .map(|c| match c {
                            '0' => Some(false),
                            '1' => Some(true),
                            _ => None,
                        })
                        .collect();
                    match bits {
                        Some(bits) if bits.len() == props.len() => {
                            Ok(Letter::Valuation(Valuation::from_bits(&bits)))
                        }
                        _ => Err(CliError::Word(format!(
                            "{item:?} is not a bitstring of length {}",
                            props.len()
                        ))),
                    }
                }
            }
        })
        .collect()
}
