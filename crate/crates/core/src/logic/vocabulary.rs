use std::collections::HashMap;

use super::{Atom, AtomSet, Clause, CnfTheory, DnfTheory, Literal, Term};

/// Interns atom names to dense ids.
///
/// Ids are handed out in first-seen order and never reused, so atom order
/// (and with it the canonical literal order) follows declaration order.
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    names: Vec<String>,
    ids: HashMap<String, Atom>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(&atom) = self.ids.get(name) {
            return atom;
        }
        let atom = Atom::new(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), atom);
        atom
    }

    pub fn get(&self, name: &str) -> Option<Atom> {
        self.ids.get(name).copied()
    }

    /// The atom's name, or its `x<id>` rendering when it was never interned.
    pub fn name(&self, atom: Atom) -> String {
        self.names
            .get(atom.index())
            .cloned()
            .unwrap_or_else(|| atom.to_string())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn all_atoms(&self) -> impl Iterator<Item = Atom> {
        (0..self.names.len() as u32).map(Atom::new)
    }

    /// `p` or `-p`.
    pub fn literal_name(&self, literal: Literal) -> String {
        if literal.is_positive() {
            self.name(literal.atom())
        } else {
            format!("-{}", self.name(literal.atom()))
        }
    }

    pub fn literal_names(&self, literals: &[Literal]) -> Vec<String> {
        literals.iter().map(|&l| self.literal_name(l)).collect()
    }

    pub fn atom_names(&self, atoms: &AtomSet) -> Vec<String> {
        atoms.iter().map(|&a| self.name(a)).collect()
    }

    // Fixture builders. Tokens are whitespace-separated names with an
    // optional `-` or `~` prefix; they panic on an empty token.

    pub fn atom(&mut self, name: &str) -> Atom {
        self.intern(name)
    }

    pub fn atoms(&mut self, names: &[&str]) -> AtomSet {
        names.iter().map(|n| self.intern(n)).collect()
    }

    pub fn lit(&mut self, token: &str) -> Literal {
        let (positive, name) = match token.strip_prefix(['-', '~']) {
            Some(rest) => (false, rest),
            None => (true, token),
        };
        assert!(!name.is_empty(), "empty literal token");
        Literal::new(self.intern(name), positive)
    }

    /// `None` for a tautologous clause.
    pub fn clause(&mut self, text: &str) -> Option<Clause> {
        let lits: Vec<Literal> = text.split_whitespace().map(|t| self.lit(t)).collect();
        Clause::new(lits)
    }

    /// `None` for a contradictory term.
    pub fn term(&mut self, text: &str) -> Option<Term> {
        let lits: Vec<Literal> = text.split_whitespace().map(|t| self.lit(t)).collect();
        Term::new(lits)
    }

    pub fn cnf(&mut self, clauses: &[&str]) -> CnfTheory {
        clauses.iter().filter_map(|c| self.clause(c)).collect()
    }

    pub fn dnf(&mut self, terms: &[&str]) -> DnfTheory {
        terms.iter().filter_map(|t| self.term(t)).collect()
    }
}
