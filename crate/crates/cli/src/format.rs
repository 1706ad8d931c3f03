//! Input parsing and output rendering for the two theory formats.

use std::fmt::Write as _;

use propforget::fragments::FragmentReport;
use propforget::reasoning::{Certificate, Premise, Verdict};
use propforget::{Atom, AtomSet, Clause, CnfTheory, DnfTheory, Interpretation, Literal, Term, Vocabulary};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

/// Token for the empty clause in named text.
pub const EMPTY_CLAUSE: &str = "_|_";
/// Token for the empty term in named text (only meaningful with `--dnf`).
pub const EMPTY_TERM: &str = "<T>";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceFormat {
    NamedText,
    Dimacs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Cnf(CnfTheory),
    Dnf(DnfTheory),
}

#[derive(Debug, Clone)]
pub struct InputDocument {
    pub source: SourceFormat,
    pub vocabulary: Vocabulary,
    pub payload: Payload,
    pub warnings: Vec<String>,
}

impl InputDocument {
    pub fn is_dnf(&self) -> bool {
        matches!(self.payload, Payload::Dnf(_))
    }

    /// The payload as sorted literal-name lists, independent of atom ids.
    pub fn canonical(&self) -> Vec<Vec<String>> {
        match &self.payload {
            Payload::Cnf(t) => canonical_names(&self.vocabulary, t.iter().map(Clause::literals)),
            Payload::Dnf(d) => canonical_names(&self.vocabulary, d.iter().map(Term::literals)),
        }
    }
}

fn canonical_names<'a>(vocab: &Vocabulary, sets: impl Iterator<Item = &'a [Literal]>) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = sets
        .map(|lits| {
            let mut names = vocab.literal_names(lits);
            names.sort();
            names
        })
        .collect();
    out.sort();
    out
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut column = 0;
    let mut start = None;
    let mut out = Vec::new();
    for (i, c) in line.char_indices() {
        column += 1;
        if c.is_whitespace() {
            if let Some((col, s)) = start.take() {
                out.push((col, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some((column, i));
        }
    }
    if let Some((col, s)) = start {
        out.push((col, &line[s..]));
    }
    out.into_iter()
}

/// Detects DIMACS by a `p cnf` header among the leading non-comment lines.
pub fn looks_like_dimacs(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('c') && !l.starts_with('#'))
        .is_some_and(|l| {
            let parts: Vec<&str> = l.split_whitespace().collect();
            matches!(parts.as_slice(), ["p", "cnf", n, m] if n.parse::<usize>().is_ok() && m.parse::<usize>().is_ok())
        })
}

pub fn parse(text: &str, dnf: bool) -> Result<InputDocument, ParseError> {
    if looks_like_dimacs(text) {
        if dnf {
            return Err(ParseError::new(1, 1, "DIMACS input cannot be read as DNF"));
        }
        parse_dimacs(text)
    } else {
        parse_named_text(text, dnf)
    }
}

pub fn parse_named_text(text: &str, dnf: bool) -> Result<InputDocument, ParseError> {
    let mut vocabulary = Vocabulary::new();
    let mut warnings = Vec::new();
    let mut cnf = CnfTheory::new();
    let mut terms = DnfTheory::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<(usize, &str)> = tokens(raw).collect();
        if line == EMPTY_CLAUSE || line == EMPTY_TERM {
            match (line == EMPTY_TERM, dnf) {
                (false, false) => {
                    cnf.insert(Clause::empty());
                }
                (true, true) => {
                    terms.insert(Term::empty());
                }
                _ => return Err(ParseError::new(line_no, toks[0].0, format!("{line} is not allowed here"))),
            }
            continue;
        }
        let mut lits = Vec::with_capacity(toks.len());
        for (column, tok) in toks {
            let (positive, name) = match tok.strip_prefix(['-', '~']) {
                Some(rest) => (false, rest),
                None => (true, tok),
            };
            if !is_identifier(name) {
                return Err(ParseError::new(line_no, column, format!("malformed literal {tok:?}")));
            }
            lits.push(Literal::new(vocabulary.intern(name), positive));
        }
        if dnf {
            match Term::new(lits) {
                Some(t) => {
                    terms.insert(t);
                }
                None => {
                    return Err(ParseError::new(line_no, 1, "term contains a complementary pair"));
                }
            }
        } else {
            match Clause::new(lits) {
                Some(c) => {
                    cnf.insert(c);
                }
                None => warnings.push(format!("line {line_no}: tautology dropped")),
            }
        }
    }
    Ok(InputDocument {
        source: SourceFormat::NamedText,
        vocabulary,
        payload: if dnf { Payload::Dnf(terms) } else { Payload::Cnf(cnf) },
        warnings,
    })
}

pub fn parse_dimacs(text: &str) -> Result<InputDocument, ParseError> {
    let mut vocabulary = Vocabulary::new();
    let mut warnings = Vec::new();
    let mut theory = CnfTheory::new();
    let mut header: Option<(usize, usize)> = None;
    let mut current: Vec<Literal> = Vec::new();
    let mut current_start = (0, 0);
    let mut runs = 0usize;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::new(line_no, 1, "duplicate header"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", n, m] => n.parse().ok().zip(m.parse().ok()),
                _ => None,
            };
            let (n, m) = parsed.ok_or_else(|| ParseError::new(line_no, 1, "malformed header, expected `p cnf <vars> <clauses>`"))?;
            for i in 1..=n {
                vocabulary.intern(&format!("x{i}"));
            }
            header = Some((n, m));
            continue;
        }
        let Some((nvars, _)) = header else {
            return Err(ParseError::new(line_no, 1, "clause before `p cnf` header"));
        };
        for (column, tok) in tokens(raw) {
            let value: i64 = tok
                .parse()
                .map_err(|_| ParseError::new(line_no, column, format!("malformed literal {tok:?}")))?;
            if value == 0 {
                if current.is_empty() {
                    return Err(ParseError::new(line_no, column, "zero-length clause"));
                }
                runs += 1;
                match Clause::new(current.drain(..)) {
                    Some(c) => {
                        theory.insert(c);
                    }
                    None => warnings.push(format!("line {}: tautology dropped", current_start.0)),
                }
                continue;
            }
            let index = value.unsigned_abs() as usize;
            if index > nvars {
                return Err(ParseError::new(line_no, column, format!("literal {value} exceeds {nvars} variables")));
            }
            if current.is_empty() {
                current_start = (line_no, column);
            }
            current.push(Literal::new(Atom::new(index as u32 - 1), value > 0));
        }
    }
    let Some((_, nclauses)) = header else {
        return Err(ParseError::new(last_line.max(1), 1, "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(ParseError::new(current_start.0, current_start.1, "clause not terminated by 0"));
    }
    if runs != nclauses {
        warnings.push(format!("header declares {nclauses} clauses, found {runs}"));
    }
    Ok(InputDocument {
        source: SourceFormat::Dimacs,
        vocabulary,
        payload: Payload::Cnf(theory),
        warnings,
    })
}

fn line_of(vocab: &Vocabulary, lits: &[Literal], empty: &str) -> String {
    if lits.is_empty() {
        empty.to_owned()
    } else {
        vocab.literal_names(lits).join(" ")
    }
}

pub fn cnf_to_text(vocab: &Vocabulary, theory: &CnfTheory) -> String {
    theory
        .iter()
        .map(|c| line_of(vocab, c.literals(), EMPTY_CLAUSE) + "\n")
        .collect()
}

pub fn dnf_to_text(vocab: &Vocabulary, dnf: &DnfTheory) -> String {
    dnf.iter()
        .map(|t| line_of(vocab, t.literals(), EMPTY_TERM) + "\n")
        .collect()
}

/// DIMACS numbering is `id + 1`; the header covers every interned atom.
pub fn cnf_to_dimacs(vocab: &Vocabulary, theory: &CnfTheory) -> String {
    let nvars = theory
        .signature()
        .iter()
        .map(|a| a.index() + 1)
        .max()
        .unwrap_or(0)
        .max(vocab.len());
    let mut out = format!("p cnf {nvars} {}\n", theory.len());
    for clause in theory {
        for lit in clause.iter() {
            let n = lit.atom().index() as i64 + 1;
            let _ = write!(out, "{} ", if lit.is_positive() { n } else { -n });
        }
        out.push_str("0\n");
    }
    out
}

fn lits_json(vocab: &Vocabulary, lits: &[Literal]) -> Value {
    json!(vocab.literal_names(lits))
}

pub fn cnf_json(vocab: &Vocabulary, theory: &CnfTheory) -> Value {
    json!({ "clauses": theory.iter().map(|c| lits_json(vocab, c.literals())).collect::<Vec<_>>() })
}

pub fn dnf_json(vocab: &Vocabulary, dnf: &DnfTheory) -> Value {
    json!({ "terms": dnf.iter().map(|t| lits_json(vocab, t.literals())).collect::<Vec<_>>() })
}

fn atoms_text(vocab: &Vocabulary, atoms: &AtomSet) -> String {
    format!("{{{}}}", vocab.atom_names(atoms).join(", "))
}

fn premise_name(p: Premise) -> &'static str {
    match p {
        Premise::Pi => "pi",
        Premise::ForgetPi => "forget_pi",
        Premise::ForgetSigma => "forget_sigma",
    }
}

fn premise_text(p: Premise) -> &'static str {
    match p {
        Premise::Pi => "Pi",
        Premise::ForgetPi => "forget(Pi, V)",
        Premise::ForgetSigma => "forget(Sigma, V)",
    }
}

fn model_text(vocab: &Vocabulary, model: &Interpretation) -> String {
    atoms_text(vocab, model.atoms())
}

pub fn verdict_text(vocab: &Vocabulary, verdict: &Verdict) -> String {
    let mut out = format!("{}\n", verdict.answer);
    match &verdict.certificate {
        None => {}
        Some(Certificate::Countermodel(m)) => {
            let _ = writeln!(out, "countermodel: {}", model_text(vocab, m));
        }
        Some(Certificate::WitnessClause { clause, premise }) => {
            let _ = writeln!(
                out,
                "witness clause: {} (not entailed by {})",
                line_of(vocab, clause.literals(), EMPTY_CLAUSE),
                premise_text(*premise)
            );
        }
    }
    out
}

pub fn verdict_json(vocab: &Vocabulary, verdict: &Verdict) -> Value {
    let certificate = match &verdict.certificate {
        None => Value::Null,
        Some(Certificate::Countermodel(m)) => json!({ "countermodel": vocab.atom_names(m.atoms()) }),
        Some(Certificate::WitnessClause { clause, premise }) => json!({
            "witness_clause": lits_json(vocab, clause.literals()),
            "premise": premise_name(*premise),
        }),
    };
    json!({ "answer": verdict.answer, "certificate": certificate })
}

#[derive(Serialize)]
struct QHornJson {
    renaming: Vec<String>,
    q: Vec<String>,
    h: Vec<String>,
}

#[derive(Serialize)]
struct ReportJson {
    horn: bool,
    krom: bool,
    renamable_horn: Option<Vec<String>>,
    q_horn: Option<QHornJson>,
    double_horn: Option<bool>,
}

pub fn report_json(vocab: &Vocabulary, report: &FragmentReport) -> Value {
    let r = ReportJson {
        horn: report.horn,
        krom: report.krom,
        renamable_horn: report.renamable_horn.as_ref().map(|v| vocab.atom_names(v)),
        q_horn: report.q_horn.as_ref().map(|w| QHornJson {
            renaming: vocab.atom_names(&w.renaming),
            q: vocab.atom_names(&w.partition.q),
            h: vocab.atom_names(&w.partition.h),
        }),
        double_horn: report.double_horn,
    };
    serde_json::to_value(r).expect("plain data")
}

pub fn report_text(vocab: &Vocabulary, report: &FragmentReport) -> String {
    let renamable = report
        .renamable_horn
        .as_ref()
        .map_or_else(|| "no".to_owned(), |v| format!("yes, renaming {}", atoms_text(vocab, v)));
    let q_horn = report.q_horn.as_ref().map_or_else(
        || "no".to_owned(),
        |w| {
            format!(
                "yes, renaming {} Q {} H {}",
                atoms_text(vocab, &w.renaming),
                atoms_text(vocab, &w.partition.q),
                atoms_text(vocab, &w.partition.h)
            )
        },
    );
    let double = match report.double_horn {
        Some(b) => b.to_string(),
        None => "skipped (model guard)".to_owned(),
    };
    format!(
        "horn: {}\nkrom: {}\nrenamable horn: {renamable}\nq-horn: {q_horn}\ndouble horn: {double}\n",
        report.horn, report.krom
    )
}
