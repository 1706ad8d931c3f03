use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Atom, AtomSet, Interpretation, Literal};

/// Sorts, deduplicates, and rejects complementary pairs.
fn canonical(literals: impl IntoIterator<Item = Literal>) -> Option<Vec<Literal>> {
    let mut lits: Vec<Literal> = literals.into_iter().collect();
    lits.sort_unstable();
    lits.dedup();
    // complementary literals are adjacent in the canonical order
    if lits.windows(2).any(|w| w[0].atom() == w[1].atom()) {
        return None;
    }
    Some(lits)
}

fn is_subset(small: &[Literal], large: &[Literal]) -> bool {
    if small.len() > large.len() {
        return false;
    }
    let mut rest = large.iter();
    'outer: for lit in small {
        for other in rest.by_ref() {
            match other.cmp(lit) {
                Ordering::Less => continue,
                Ordering::Equal => continue 'outer,
                Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Atoms occurring with opposite signs in the two sorted literal runs.
fn clashing_atoms(a: &[Literal], b: &[Literal]) -> Vec<Atom> {
    let (mut i, mut j) = (0, 0);
    let mut clashes = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].atom().cmp(&b[j].atom()) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                if a[i].is_positive() != b[j].is_positive() {
                    clashes.push(a[i].atom());
                }
                i += 1;
                j += 1;
            }
        }
    }
    clashes
}

/// Union of two sorted runs with every literal over `pivot` removed.
fn merge_without(a: &[Literal], b: &[Literal], pivot: Atom) -> Vec<Literal> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Less => {
                    i += 1;
                    *x
                }
                Ordering::Greater => {
                    j += 1;
                    *y
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    *x
                }
            },
            (Some(x), None) => {
                i += 1;
                *x
            }
            (None, Some(y)) => {
                j += 1;
                *y
            }
            (None, None) => unreachable!(),
        };
        if next.atom() != pivot {
            out.push(next);
        }
    }
    out
}

macro_rules! literal_set {
    ($name:ident, $dual:ident, $empty:literal, $joiner:literal) => {
        impl $name {
            /// Builds the canonical form, or `None` when the literals contain a
            /// complementary pair.
            pub fn new(literals: impl IntoIterator<Item = Literal>) -> Option<Self> {
                canonical(literals).map(|lits| $name { lits })
            }

            pub fn empty() -> Self {
                $name { lits: Vec::new() }
            }

            pub fn unit(literal: Literal) -> Self {
                $name {
                    lits: vec![literal],
                }
            }

            pub fn literals(&self) -> &[Literal] {
                &self.lits
            }

            pub fn iter(&self) -> impl Iterator<Item = Literal> + '_ {
                self.lits.iter().copied()
            }

            pub fn len(&self) -> usize {
                self.lits.len()
            }

            pub fn is_empty(&self) -> bool {
                self.lits.is_empty()
            }

            pub fn contains(&self, literal: Literal) -> bool {
                self.lits.binary_search(&literal).is_ok()
            }

            pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
                self.lits.iter().map(|l| l.atom())
            }

            pub fn mentions(&self, atom: Atom) -> bool {
                self.contains(atom.pos()) || self.contains(atom.neg())
            }

            pub fn mentions_any(&self, atoms: &AtomSet) -> bool {
                self.atoms().any(|a| atoms.contains(&a))
            }

            pub fn positive_atoms(&self) -> impl Iterator<Item = Atom> + '_ {
                self.lits.iter().filter(|l| l.is_positive()).map(|l| l.atom())
            }

            pub fn negative_atoms(&self) -> impl Iterator<Item = Atom> + '_ {
                self.lits.iter().filter(|l| l.is_negative()).map(|l| l.atom())
            }

            pub fn positive_count(&self) -> usize {
                self.lits.iter().filter(|l| l.is_positive()).count()
            }

            /// Literal containment: `self ⊆ other`.
            pub fn subsumes(&self, other: &Self) -> bool {
                is_subset(&self.lits, &other.lits)
            }

            /// Flips the polarity of every literal whose atom is in `atoms`.
            pub fn rename(&self, atoms: &AtomSet) -> Self {
                let mut lits: Vec<Literal> = self.lits.iter().map(|l| l.rename(atoms)).collect();
                lits.sort_unstable();
                $name { lits }
            }

            /// Drops every literal whose atom is in `atoms`.
            pub fn without_atoms(&self, atoms: &AtomSet) -> Self {
                $name {
                    lits: self
                        .lits
                        .iter()
                        .copied()
                        .filter(|l| !atoms.contains(&l.atom()))
                        .collect(),
                }
            }

            pub fn without_literal(&self, literal: Literal) -> Self {
                $name {
                    lits: self.lits.iter().copied().filter(|&l| l != literal).collect(),
                }
            }

            /// Adds a literal; `None` if its complement is already present.
            pub fn with_literal(&self, literal: Literal) -> Option<Self> {
                if self.contains(literal.complement()) {
                    return None;
                }
                let mut lits = self.lits.clone();
                if let Err(at) = lits.binary_search(&literal) {
                    lits.insert(at, literal);
                }
                Some($name { lits })
            }

            /// Complements every literal (De Morgan).
            pub fn negate(&self) -> $dual {
                $dual {
                    lits: self.lits.iter().map(|l| l.complement()).collect(),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.lits.is_empty() {
                    return f.write_str($empty);
                }
                for (i, lit) in self.lits.iter().enumerate() {
                    if i > 0 {
                        f.write_str($joiner)?;
                    }
                    write!(f, "{lit}")?;
                }
                Ok(())
            }
        }
    };
}

/// A disjunction of literals in canonical order. The empty clause is false.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Clause {
    lits: Vec<Literal>,
}

/// A conjunction of literals in canonical order. The empty term is true.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Term {
    lits: Vec<Literal>,
}

literal_set!(Clause, Term, "⊥", " ∨ ");
literal_set!(Term, Clause, "⊤", " ∧ ");

impl Clause {
    /// The resolvent of two clauses, if they are resolvable.
    ///
    /// Exactly one clashing atom is required: with two or more, every
    /// candidate resolvent still contains a complementary pair.
    pub fn resolve(&self, other: &Clause) -> Option<Clause> {
        let clashes = clashing_atoms(&self.lits, &other.lits);
        match clashes.as_slice() {
            [pivot] => Some(Clause {
                lits: merge_without(&self.lits, &other.lits, *pivot),
            }),
            _ => None,
        }
    }

    /// Resolvent on a given pivot, where `self` holds the positive literal.
    pub fn resolve_on(&self, other: &Clause, pivot: Atom) -> Option<Clause> {
        if !self.contains(pivot.pos()) || !other.contains(pivot.neg()) {
            return None;
        }
        self.resolve(other)
    }

    pub fn is_satisfied_by(&self, model: &Interpretation) -> bool {
        self.lits.iter().any(|l| l.is_true_in(model))
    }

    pub fn is_horn(&self) -> bool {
        self.positive_count() <= 1
    }
}

impl Term {
    pub fn is_satisfied_by(&self, model: &Interpretation) -> bool {
        self.lits.iter().all(|l| l.is_true_in(model))
    }

    /// Consensus of two terms (the dual of resolution).
    pub fn consensus(&self, other: &Term) -> Option<Term> {
        self.negate().resolve(&other.negate()).map(|c| c.negate())
    }
}
