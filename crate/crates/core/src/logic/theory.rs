use std::collections::{BTreeSet, HashSet};
use std::fmt;

use super::{Atom, AtomSet, Clause, Interpretation, Literal, Term, Truth};

/// Keeps the members that no other member subsumes.
///
/// Short members are tested by looking up each proper subset in a hash set,
/// long ones by a scan over the kept members, whichever is cheaper.
fn minimal_by<T: Ord + Clone>(items: impl IntoIterator<Item = T>, lits: impl Fn(&T) -> &[Literal]) -> BTreeSet<T> {
    let mut sorted: Vec<T> = items.into_iter().collect();
    sorted.sort_by_key(|t| lits(t).len());
    let mut kept: Vec<T> = Vec::with_capacity(sorted.len());
    let mut index: HashSet<Vec<Literal>> = HashSet::new();
    for item in sorted {
        let own = lits(&item);
        let subsumed = if own.len() < 20 && (1usize << own.len()) <= kept.len() {
            (0u32..(1 << own.len()) - 1).any(|mask| {
                let subset: Vec<Literal> = own
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &l)| l)
                    .collect();
                index.contains(&subset)
            })
        } else {
            kept.iter().any(|k| is_subset(lits(k), own))
        };
        if !subsumed {
            index.insert(own.to_vec());
            kept.push(item);
        }
    }
    kept.into_iter().collect()
}

fn is_subset(small: &[Literal], large: &[Literal]) -> bool {
    let mut it = large.iter();
    small.iter().all(|s| it.any(|l| l == s))
}

/// A conjunction of clauses. The empty theory is ⊤; any theory holding the
/// empty clause is ⊥.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CnfTheory {
    clauses: BTreeSet<Clause>,
    signature: AtomSet,
}

impl CnfTheory {
    pub fn new() -> Self {
        Self::default()
    }

    /// The canonical contradiction `{⊥}`.
    pub fn falsum() -> Self {
        Self::from_iter([Clause::empty()])
    }

    pub fn insert(&mut self, clause: Clause) -> bool {
        self.signature.extend(clause.atoms());
        self.clauses.insert(clause)
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.clauses.contains(clause)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> + '_ {
        self.clauses.iter()
    }

    pub fn clauses(&self) -> &BTreeSet<Clause> {
        &self.clauses
    }

    pub fn into_clauses(self) -> BTreeSet<Clause> {
        self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    /// No clauses at all, i.e. the theory is ⊤.
    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.first().is_some_and(Clause::is_empty)
    }

    /// `Var(Σ)`.
    pub fn signature(&self) -> &AtomSet {
        &self.signature
    }

    pub fn mentions(&self, atom: Atom) -> bool {
        self.signature.contains(&atom)
    }

    pub fn is_satisfied_by(&self, model: &Interpretation) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by(model))
    }

    /// `ren(Σ, V)`.
    pub fn rename(&self, atoms: &AtomSet) -> Self {
        self.clauses.iter().map(|c| c.rename(atoms)).collect()
    }

    /// `Σ[p/⊤]` or `Σ[p/⊥]`, simplified back to clause form.
    pub fn substitute(&self, atom: Atom, value: Truth) -> Self {
        let satisfied = Literal::new(atom, value.as_bool());
        let falsified = satisfied.complement();
        self.clauses
            .iter()
            .filter(|c| !c.contains(satisfied))
            .map(|c| c.without_literal(falsified))
            .collect()
    }

    pub fn union(&self, other: &CnfTheory) -> Self {
        let mut out = self.clone();
        out.extend(other.iter().cloned());
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&Clause) -> bool) -> Self {
        self.clauses.iter().filter(|c| keep(c)).cloned().collect()
    }

    /// Drops every clause subsumed by another member.
    pub fn minimize(&self) -> Self {
        let kept = minimal_by(self.clauses.iter().cloned(), Clause::literals);
        kept.into_iter().collect()
    }

    /// The DNF of `¬Σ`.
    pub fn negate(&self) -> DnfTheory {
        self.clauses.iter().map(Clause::negate).collect()
    }

    /// Adds the unit clauses of `¬c`.
    pub fn with_negated_clause(&self, clause: &Clause) -> Self {
        let mut out = self.clone();
        out.extend(clause.iter().map(|l| Clause::unit(l.complement())));
        out
    }

    pub fn max_clause_len(&self) -> usize {
        self.clauses.iter().map(Clause::len).max().unwrap_or(0)
    }
}

impl FromIterator<Clause> for CnfTheory {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        let mut theory = CnfTheory::new();
        theory.extend(iter);
        theory
    }
}

impl Extend<Clause> for CnfTheory {
    fn extend<I: IntoIterator<Item = Clause>>(&mut self, iter: I) {
        for clause in iter {
            self.insert(clause);
        }
    }
}

impl<'a> IntoIterator for &'a CnfTheory {
    type Item = &'a Clause;
    type IntoIter = std::collections::btree_set::Iter<'a, Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

impl fmt::Display for CnfTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("⊤");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∧ ")?;
            }
            write!(f, "({c})")?;
        }
        Ok(())
    }
}

/// A disjunction of terms. The empty DNF is ⊥; a DNF holding the empty
/// term is ⊤.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DnfTheory {
    terms: BTreeSet<Term>,
    signature: AtomSet,
}

impl DnfTheory {
    pub fn new() -> Self {
        Self::default()
    }

    /// The canonical tautology `{⊤}`.
    pub fn verum() -> Self {
        Self::from_iter([Term::empty()])
    }

    pub fn insert(&mut self, term: Term) -> bool {
        self.signature.extend(term.atoms());
        self.terms.insert(term)
    }

    pub fn contains(&self, term: &Term) -> bool {
        self.terms.contains(term)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Term> + '_ {
        self.terms.iter()
    }

    pub fn terms(&self) -> &BTreeSet<Term> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No terms at all, i.e. the formula is ⊥.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_empty_term(&self) -> bool {
        self.terms.first().is_some_and(Term::is_empty)
    }

    pub fn signature(&self) -> &AtomSet {
        &self.signature
    }

    pub fn is_satisfied_by(&self, model: &Interpretation) -> bool {
        self.terms.iter().any(|t| t.is_satisfied_by(model))
    }

    pub fn rename(&self, atoms: &AtomSet) -> Self {
        self.terms.iter().map(|t| t.rename(atoms)).collect()
    }

    /// Drops every term that another member subsumes (as a literal set).
    pub fn minimize(&self) -> Self {
        let kept = minimal_by(self.terms.iter().cloned(), Term::literals);
        kept.into_iter().collect()
    }

    /// The CNF of `¬Δ`.
    pub fn negate(&self) -> CnfTheory {
        self.terms.iter().map(Term::negate).collect()
    }
}

impl FromIterator<Term> for DnfTheory {
    fn from_iter<I: IntoIterator<Item = Term>>(iter: I) -> Self {
        let mut theory = DnfTheory::new();
        theory.extend(iter);
        theory
    }
}

impl Extend<Term> for DnfTheory {
    fn extend<I: IntoIterator<Item = Term>>(&mut self, iter: I) {
        for term in iter {
            self.insert(term);
        }
    }
}

impl<'a> IntoIterator for &'a DnfTheory {
    type Item = &'a Term;
    type IntoIter = std::collections::btree_set::Iter<'a, Term>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl fmt::Display for DnfTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("⊥");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∨ ")?;
            }
            write!(f, "({t})")?;
        }
        Ok(())
    }
}
