//! Command-line front-end: argument handling, dispatch and exit codes.

pub mod format;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use propforget::forget::{forget_cnf, forget_dnf, ForgetOptions};
use propforget::fragments::classify;
use propforget::prime::{prime_implicants, prime_implicates, prime_implicates_dnf};
use propforget::reasoning::{decide, defines, snc, strongest_definition, weakest_definition, wsc, TaskKind};
use propforget::{Atom, AtomSet, CnfTheory, DnfTheory, Limits, Vocabulary};
use serde_json::{json, Value};
use thiserror::Error;

use crate::format::{InputDocument, Payload, SourceFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Report Horn, Krom, renamable Horn, q-Horn and double Horn membership.
    Classify,
    /// Forget the atoms given by --forget.
    Forget,
    /// Prime implicates.
    Pi,
    /// Prime implicants.
    Ip,
    /// Decide a forgetting task (--task); two-theory tasks read Π then Σ.
    Check,
    /// Strongest necessary condition of --target over --over.
    Snc,
    /// Weakest sufficient condition of --target over --over.
    Wsc,
    /// Whether the theory defines --target in terms of --over.
    Define,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "propforget", version, about = "Forgetting in propositional CNF theories")]
pub struct Cli {
    pub command: Command,
    /// Input files in named-text or DIMACS format; `-` reads stdin.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Comma-separated atoms to forget, in elimination order.
    #[arg(short = 'f', long = "forget", value_delimiter = ',')]
    pub forget: Vec<String>,
    /// var-ind, var-weak, var-strong, var-match, var-ent or var-eq
    #[arg(long)]
    pub task: Option<String>,
    /// Atom for snc, wsc and define
    #[arg(long)]
    pub target: Option<String>,
    /// Comma-separated vocabulary for snc, wsc and define.
    #[arg(long, value_delimiter = ',')]
    pub over: Vec<String>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// Read each line as a term of a DNF.
    #[arg(long)]
    pub dnf: bool,
    /// Drop resolvents already entailed by the current theory while forgetting
    #[arg(long)]
    pub prune_entailed: bool,
    /// Remove subsumed clauses from a forgetting result.
    #[arg(long)]
    pub minimize: bool,
    /// Largest atom count for model enumeration.
    #[arg(long)]
    pub max_atoms: Option<usize>,
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: format::ParseError,
    },
    #[error(transparent)]
    Core(#[from] propforget::Error),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_resource_limit() => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Rendered output plus the exit code it implies.
struct Outcome {
    text: String,
    json: Value,
    code: i32,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, code: EXIT_OK }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn std::io::Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut docs = Vec::with_capacity(cli.files.len());
    for path in &cli.files {
        let text = match read_input(path, stdin) {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return EXIT_USAGE;
            }
        };
        match format::parse(&text, cli.dnf) {
            Ok(doc) => {
                for w in &doc.warnings {
                    let _ = writeln!(err, "warning: {}: {w}", path.display());
                }
                docs.push(doc);
            }
            Err(source) => {
                let _ = writeln!(err, "error: {}", Failure::Parse {
                    path: path.display().to_string(),
                    source,
                });
                return EXIT_USAGE;
            }
        }
    }
    match execute(&cli, docs) {
        Ok(outcome) => {
            let _ = match cli.format {
                OutputFormat::Text => out.write_all(outcome.text.as_bytes()),
                OutputFormat::Json => writeln!(out, "{}", outcome.json),
            };
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_input(path: &PathBuf, stdin: &mut dyn std::io::Read) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

/// Merges a second document into the first one's vocabulary.
fn merge(base: &mut Vocabulary, other: &InputDocument) -> Result<CnfTheory, Failure> {
    let Payload::Cnf(theory) = &other.payload else {
        return Err(usage("expected a CNF theory"));
    };
    Ok(theory
        .iter()
        .map(|c| {
            propforget::Clause::new(
                c.iter()
                    .map(|l| propforget::Literal::new(base.intern(&other.vocabulary.name(l.atom())), l.is_positive())),
            )
            .expect("renaming atoms by name keeps clauses non-tautological")
        })
        .collect())
}

fn intern_all(vocab: &mut Vocabulary, names: &[String]) -> AtomSet {
    names.iter().map(|n| vocab.intern(n.trim())).collect()
}

fn target_atom(vocab: &mut Vocabulary, cli: &Cli) -> Result<Atom, Failure> {
    let name = cli.target.as_deref().ok_or_else(|| usage("--target is required"))?;
    Ok(vocab.intern(name))
}

fn cnf_outcome(vocab: &Vocabulary, theory: &CnfTheory, source: SourceFormat) -> Outcome {
    let text = match source {
        SourceFormat::Dimacs => format::cnf_to_dimacs(vocab, theory),
        SourceFormat::NamedText => format::cnf_to_text(vocab, theory),
    };
    Outcome::ok(text, format::cnf_json(vocab, theory))
}

fn dnf_outcome(vocab: &Vocabulary, dnf: &DnfTheory) -> Outcome {
    Outcome::ok(format::dnf_to_text(vocab, dnf), format::dnf_json(vocab, dnf))
}

fn only_cnf(doc: &InputDocument, command: &str) -> Result<CnfTheory, Failure> {
    match &doc.payload {
        Payload::Cnf(t) => Ok(t.clone()),
        Payload::Dnf(_) => Err(usage(format!("{command} needs CNF input"))),
    }
}

fn execute(cli: &Cli, mut docs: Vec<InputDocument>) -> Result<Outcome, Failure> {
    let limits = Limits {
        max_model_atoms: cli.max_atoms.unwrap_or(Limits::default().max_model_atoms),
        ..Limits::default()
    };
    let expected_files = match cli.command {
        Command::Check => {
            let task: TaskKind = cli
                .task
                .as_deref()
                .ok_or_else(|| usage("--task is required for check"))?
                .parse()
                .map_err(usage)?;
            if task.needs_second_theory() { 2 } else { 1 }
        }
        _ => 1,
    };
    if docs.len() != expected_files {
        return Err(usage(format!("expected {expected_files} input file(s), got {}", docs.len())));
    }
    let rest = docs.split_off(1);
    let InputDocument {
        source,
        mut vocabulary,
        payload,
        ..
    } = docs.pop().expect("one document");
    let doc_source = source;
    let command_name = format!("{:?}", cli.command).to_lowercase();
    let cnf = |payload: &Payload| match payload {
        Payload::Cnf(t) => Ok(t.clone()),
        Payload::Dnf(_) => Err(usage(format!("{command_name} needs CNF input"))),
    };

    match cli.command {
        Command::Classify => {
            let theory = cnf(&payload)?;
            let report = classify(&theory, &limits);
            Ok(Outcome::ok(
                format::report_text(&vocabulary, &report),
                format::report_json(&vocabulary, &report),
            ))
        }
        Command::Forget => {
            let mut order: Vec<Atom> = Vec::new();
            for name in &cli.forget {
                let a = vocabulary.intern(name.trim());
                if !order.contains(&a) {
                    order.push(a);
                }
            }
            let atoms: AtomSet = order.iter().copied().collect();
            match &payload {
                Payload::Dnf(d) => Ok(dnf_outcome(&vocabulary, &forget_dnf(d, &atoms))),
                Payload::Cnf(t) => {
                    let opts = ForgetOptions {
                        prune_entailed: cli.prune_entailed,
                        minimize_subsumed: cli.minimize,
                        atom_order: Some(order),
                    };
                    let result = forget_cnf(t, &atoms, &opts)?;
                    Ok(cnf_outcome(&vocabulary, &result, doc_source))
                }
            }
        }
        Command::Pi => match &payload {
            Payload::Cnf(t) => Ok(cnf_outcome(&vocabulary, &prime_implicates(t), doc_source)),
            Payload::Dnf(d) => Ok(cnf_outcome(&vocabulary, &prime_implicates_dnf(d, &limits)?, doc_source)),
        },
        Command::Ip => {
            let implicants = match &payload {
                Payload::Cnf(t) => prime_implicants(t, &limits)?,
                Payload::Dnf(d) => prime_implicates(&d.negate()).negate(),
            };
            Ok(dnf_outcome(&vocabulary, &implicants))
        }
        Command::Check => {
            let task: TaskKind = cli.task.as_deref().expect("checked above").parse().map_err(usage)?;
            let pi = cnf(&payload)?;
            let sigma = match rest.first() {
                Some(doc) => {
                    only_cnf(doc, "check")?;
                    Some(merge(&mut vocabulary, doc)?)
                }
                None => None,
            };
            let atoms = intern_all(&mut vocabulary, &cli.forget);
            let verdict = decide(task, &pi, sigma.as_ref(), &atoms)?;
            Ok(Outcome {
                text: format::verdict_text(&vocabulary, &verdict),
                json: format::verdict_json(&vocabulary, &verdict),
                code: if verdict.answer { EXIT_OK } else { EXIT_FALSE },
            })
        }
        Command::Snc | Command::Wsc | Command::Define => {
            let theory = cnf(&payload)?;
            let target = target_atom(&mut vocabulary, cli)?;
            let over = intern_all(&mut vocabulary, &cli.over);
            match cli.command {
                Command::Snc => Ok(cnf_outcome(&vocabulary, &snc(&theory, target, &over)?, doc_source)),
                Command::Wsc => Ok(dnf_outcome(&vocabulary, &wsc(&theory, target, &over)?)),
                _ => define_outcome(&vocabulary, &theory, target, &over),
            }
        }
    }
}

fn define_outcome(vocab: &Vocabulary, theory: &CnfTheory, target: Atom, over: &AtomSet) -> Result<Outcome, Failure> {
    let verdict = defines(theory, target, over)?;
    let mut text = format::verdict_text(vocab, &verdict);
    let mut json = format::verdict_json(vocab, &verdict);
    if verdict.answer {
        let strongest = strongest_definition(theory, target, over)?.expect("definable");
        let weakest = weakest_definition(theory, target, over)?.expect("definable");
        text.push_str("strongest:\n");
        text.push_str(&format::cnf_to_text(vocab, &strongest));
        text.push_str("weakest:\n");
        text.push_str(&format::dnf_to_text(vocab, &weakest));
        json["strongest"] = format::cnf_json(vocab, &strongest);
        json["weakest"] = format::dnf_json(vocab, &weakest);
    } else {
        json["strongest"] = json!(null);
        json["weakest"] = json!(null);
    }
    Ok(Outcome {
        text,
        json,
        code: if verdict.answer { EXIT_OK } else { EXIT_FALSE },
    })
}
