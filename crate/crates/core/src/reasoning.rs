//! Decision problems over forgetting, and the condition/definability layer.
//!
//! Every two-level question is answered by computing the inner forgetting
//! result explicitly and then running clause-wise entailment checks, so
//! negative answers always come with a certificate.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::forget::{forget_cnf, ForgetOptions};
use crate::logic::{Atom, AtomSet, Clause, CnfTheory, DnfTheory, Interpretation, Truth};
use crate::models::{Compiled, Evaluate, Universe};
use crate::sat::{countermodel, solve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TaskKind {
    /// `forget(Π, V) ≡ Π`
    VarInd,
    /// `Π ⊨ forget(Σ, V)`
    VarWeak,
    /// `forget(Σ, V) ⊨ Π`
    VarStrong,
    /// `forget(Σ, V) ≡ Π`
    VarMatch,
    /// `forget(Π, V) ⊨ forget(Σ, V)`
    VarEnt,
    /// `forget(Π, V) ≡ forget(Σ, V)`
    VarEq,
}

impl TaskKind {
    pub const ALL: [TaskKind; 6] = [
        TaskKind::VarInd,
        TaskKind::VarWeak,
        TaskKind::VarStrong,
        TaskKind::VarMatch,
        TaskKind::VarEnt,
        TaskKind::VarEq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TaskKind::VarInd => "var-ind",
            TaskKind::VarWeak => "var-weak",
            TaskKind::VarStrong => "var-strong",
            TaskKind::VarMatch => "var-match",
            TaskKind::VarEnt => "var-ent",
            TaskKind::VarEq => "var-eq",
        }
    }

    pub fn needs_second_theory(self) -> bool {
        self != TaskKind::VarInd
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TaskKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        TaskKind::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown task {s:?}"))
    }
}

/// Which formula failed to entail a witness clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Premise {
    Pi,
    ForgetPi,
    ForgetSigma,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// An interpretation separating the two sides.
    Countermodel(Interpretation),
    /// `premise ⊭ clause`.
    WitnessClause { clause: Clause, premise: Premise },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: bool,
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn yes() -> Self {
        Verdict {
            answer: true,
            certificate: None,
        }
    }

    pub fn no(certificate: Certificate) -> Self {
        Verdict {
            answer: false,
            certificate: Some(certificate),
        }
    }

    fn from_countermodel(found: Option<Interpretation>) -> Self {
        found.map_or_else(Verdict::yes, |m| Verdict::no(Certificate::Countermodel(m)))
    }
}

fn forget(theory: &CnfTheory, atoms: &AtomSet) -> CnfTheory {
    forget_cnf(theory, atoms, &ForgetOptions::minimized()).expect("default order is valid")
}

/// `forget(·, V) ⊨ c` for a `V`-free left side: the `V`-literals of `c`
/// can be dropped first.
fn forgotten_entails(forgotten: &CnfTheory, clause: &Clause, atoms: &AtomSet) -> bool {
    countermodel(forgotten, &clause.without_atoms(atoms)).is_none()
}

fn check_forgotten_entails(forgotten: &CnfTheory, theory: &CnfTheory, atoms: &AtomSet, premise: Premise) -> Option<Certificate> {
    theory
        .iter()
        .find(|c| !forgotten_entails(forgotten, c, atoms))
        .map(|c| Certificate::WitnessClause {
            clause: c.clone(),
            premise,
        })
}

fn check_entails(theory: &CnfTheory, consequences: &CnfTheory, premise: Premise) -> Option<Certificate> {
    consequences
        .iter()
        .find(|c| countermodel(theory, c).is_some())
        .map(|c| Certificate::WitnessClause {
            clause: c.clone(),
            premise,
        })
}

fn verdict(failure: Option<Certificate>) -> Verdict {
    failure.map_or_else(Verdict::yes, Verdict::no)
}

/// Decides one of the six forgetting problems.
pub fn decide(task: TaskKind, pi: &CnfTheory, sigma: Option<&CnfTheory>, atoms: &AtomSet) -> Result<Verdict> {
    if task == TaskKind::VarInd {
        let f_pi = forget(pi, atoms);
        return Ok(verdict(check_forgotten_entails(&f_pi, pi, atoms, Premise::ForgetPi)));
    }
    let sigma = sigma.ok_or(Error::MissingTheory(task.name()))?;
    let f_sigma = forget(sigma, atoms);
    let weak = || check_entails(pi, &f_sigma, Premise::Pi);
    let strong = || check_forgotten_entails(&f_sigma, pi, atoms, Premise::ForgetSigma);
    let failure = match task {
        TaskKind::VarInd => unreachable!(),
        TaskKind::VarWeak => weak(),
        TaskKind::VarStrong => strong(),
        TaskKind::VarMatch => weak().or_else(strong),
        // forget(Π, V) ⊨ f iff Π ⊨ f for V-free f
        TaskKind::VarEnt => check_entails(pi, &f_sigma, Premise::ForgetPi),
        TaskKind::VarEq => {
            let f_pi = forget(pi, atoms);
            check_entails(pi, &f_sigma, Premise::ForgetPi)
                .or_else(|| check_entails(sigma, &f_pi, Premise::ForgetSigma))
        }
    };
    Ok(verdict(failure))
}

fn remaining_atoms(theory: &CnfTheory, target: Atom, vocabulary: &AtomSet) -> Result<AtomSet> {
    if vocabulary.contains(&target) {
        return Err(Error::TargetInVocabulary(target));
    }
    Ok(theory
        .signature()
        .iter()
        .copied()
        .filter(|a| *a != target && !vocabulary.contains(a))
        .collect())
}

/// Strongest necessary condition of `target` on `vocabulary` under
/// `theory`: `Forget(T[q/⊤], V')` with `V' = Var(T) ∖ (V ∪ {q})`.
pub fn snc(theory: &CnfTheory, target: Atom, vocabulary: &AtomSet) -> Result<CnfTheory> {
    let elim = remaining_atoms(theory, target, vocabulary)?;
    Ok(forget(&theory.substitute(target, Truth::True), &elim))
}

/// Weakest sufficient condition: `¬Forget(T[q/⊥], V')`, as a DNF.
pub fn wsc(theory: &CnfTheory, target: Atom, vocabulary: &AtomSet) -> Result<DnfTheory> {
    let elim = remaining_atoms(theory, target, vocabulary)?;
    Ok(forget(&theory.substitute(target, Truth::False), &elim)
        .negate()
        .minimize())
}

/// A condition formula, in either normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    Cnf(CnfTheory),
    Dnf(DnfTheory),
}

impl Condition {
    pub fn signature(&self) -> &AtomSet {
        match self {
            Condition::Cnf(c) => c.signature(),
            Condition::Dnf(d) => d.signature(),
        }
    }
}

impl Evaluate for Condition {
    fn signature(&self) -> &AtomSet {
        Condition::signature(self)
    }

    fn holds(&self, model: &Interpretation) -> bool {
        match self {
            Condition::Cnf(c) => c.is_satisfied_by(model),
            Condition::Dnf(d) => d.is_satisfied_by(model),
        }
    }

    fn compile(&self, universe: &Universe) -> Compiled {
        match self {
            Condition::Cnf(c) => c.compile(universe),
            Condition::Dnf(d) => d.compile(universe),
        }
    }
}

fn units(literals: impl IntoIterator<Item = crate::logic::Literal>) -> CnfTheory {
    literals.into_iter().map(Clause::unit).collect()
}

/// A model of `background ∧ a ∧ ¬b`, if any.
fn implication_countermodel(background: &CnfTheory, a: &Condition, b: &Condition) -> Option<Interpretation> {
    // each disjunct of `a` as a CNF
    let premises: Vec<CnfTheory> = match a {
        Condition::Cnf(c) => vec![background.union(c)],
        Condition::Dnf(d) => d.iter().map(|t| background.union(&units(t.iter()))).collect(),
    };
    match b {
        Condition::Cnf(c) => premises
            .iter()
            .find_map(|p| c.iter().find_map(|clause| countermodel(p, clause))),
        Condition::Dnf(d) => {
            let negated = d.negate();
            premises
                .iter()
                .find_map(|p| solve(&p.union(&negated)).into_model())
        }
    }
}

/// An interpretation satisfying exactly one side under `background`.
fn equivalence_countermodel(background: &CnfTheory, a: &Condition, b: &Condition) -> Option<Interpretation> {
    implication_countermodel(background, a, b).or_else(|| implication_countermodel(background, b, a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionKind {
    Necessary,
    Sufficient,
    Snc,
    Wsc,
}

impl FromStr for ConditionKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "necessary" => Ok(ConditionKind::Necessary),
            "sufficient" => Ok(ConditionKind::Sufficient),
            "snc" => Ok(ConditionKind::Snc),
            "wsc" => Ok(ConditionKind::Wsc),
            _ => Err(format!("unknown condition kind {s:?}")),
        }
    }
}

/// Whether `phi` is a necessary / sufficient / strongest necessary /
/// weakest sufficient condition of `target` on `vocabulary` under `theory`.
pub fn check_condition(
    kind: ConditionKind,
    phi: &Condition,
    theory: &CnfTheory,
    target: Atom,
    vocabulary: &AtomSet,
) -> Result<Verdict> {
    if vocabulary.contains(&target) {
        return Err(Error::TargetInVocabulary(target));
    }
    if let Some(&a) = phi.signature().iter().find(|a| !vocabulary.contains(a)) {
        return Err(Error::ConditionOutsideVocabulary(a));
    }
    let target_true = Condition::Cnf(units([target.pos()]));
    let found = match kind {
        ConditionKind::Necessary => implication_countermodel(theory, &target_true, phi),
        ConditionKind::Sufficient => implication_countermodel(theory, phi, &target_true),
        ConditionKind::Snc => {
            let s = Condition::Cnf(snc(theory, target, vocabulary)?);
            equivalence_countermodel(&CnfTheory::new(), phi, &s)
        }
        ConditionKind::Wsc => {
            let w = Condition::Dnf(wsc(theory, target, vocabulary)?);
            equivalence_countermodel(&CnfTheory::new(), phi, &w)
        }
    };
    Ok(Verdict::from_countermodel(found))
}

/// Whether `theory` defines `target` in terms of `over`: the strongest
/// necessary condition must also be sufficient.
pub fn defines(theory: &CnfTheory, target: Atom, over: &AtomSet) -> Result<Verdict> {
    let s = snc(theory, target, over)?;
    let premise = theory.union(&s).with_negated_clause(&Clause::unit(target.pos()));
    Ok(Verdict::from_countermodel(solve(&premise).into_model()))
}

/// The strongest definition, when `target` is definable.
pub fn strongest_definition(theory: &CnfTheory, target: Atom, over: &AtomSet) -> Result<Option<CnfTheory>> {
    if !defines(theory, target, over)?.answer {
        return Ok(None);
    }
    snc(theory, target, over).map(Some)
}

/// The weakest definition, when `target` is definable.
pub fn weakest_definition(theory: &CnfTheory, target: Atom, over: &AtomSet) -> Result<Option<DnfTheory>> {
    if !defines(theory, target, over)?.answer {
        return Ok(None);
    }
    wsc(theory, target, over).map(Some)
}
