//! Propositional data model.

mod clause;
mod interpretation;
mod theory;
mod vocabulary;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Not;

use serde::{Deserialize, Serialize};

pub use clause::{Clause, Term};
pub use interpretation::Interpretation;
pub use theory::{CnfTheory, DnfTheory};
pub use vocabulary::Vocabulary;

/// A propositional atom, identified by a dense id handed out by a
/// [`Vocabulary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom(u32);

impl Atom {
    pub const fn new(id: u32) -> Self {
        Atom(id)
    }

    pub const fn id(self) -> u32 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub fn pos(self) -> Literal {
        Literal::pos(self)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Literal {
        Literal::neg(self)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

pub type AtomSet = BTreeSet<Atom>;

/// A signed atom.
///
/// The derived order compares the atom first and puts the negative literal
/// before the positive one; clauses and terms keep their literals in this
/// order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    atom: Atom,
    positive: bool,
}

impl Literal {
    pub const fn new(atom: Atom, positive: bool) -> Self {
        Literal { atom, positive }
    }

    pub const fn pos(atom: Atom) -> Self {
        Literal::new(atom, true)
    }

    pub const fn neg(atom: Atom) -> Self {
        Literal::new(atom, false)
    }

    pub const fn atom(self) -> Atom {
        self.atom
    }

    pub const fn is_positive(self) -> bool {
        self.positive
    }

    pub const fn is_negative(self) -> bool {
        !self.positive
    }

    pub const fn complement(self) -> Self {
        Literal::new(self.atom, !self.positive)
    }

    /// Flips the polarity when the atom is in `atoms`.
    pub fn rename(self, atoms: &AtomSet) -> Self {
        if atoms.contains(&self.atom) {
            self.complement()
        } else {
            self
        }
    }

    /// Truth value under the interpretation that makes exactly `model` true.
    pub fn is_true_in(self, model: &Interpretation) -> bool {
        model.contains(self.atom) == self.positive
    }

    /// Dense code `2 * atom + positive`, handy for array-indexed graphs.
    pub const fn code(self) -> usize {
        2 * self.atom.index() + self.positive as usize
    }

    pub fn from_code(code: usize) -> Self {
        Literal::new(Atom::new((code / 2) as u32), code % 2 == 1)
    }
}

impl Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        self.complement()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "-{}", self.atom)
        }
    }
}

/// A truth constant used by substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
}

impl Truth {
    pub fn as_bool(self) -> bool {
        matches!(self, Truth::True)
    }
}

impl From<bool> for Truth {
    fn from(value: bool) -> Self {
        if value {
            Truth::True
        } else {
            Truth::False
        }
    }
}
