use serde::{Deserialize, Serialize};

use super::{Atom, AtomSet};

/// The set of atoms assigned true; every other atom is false.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interpretation {
    atoms: AtomSet,
}

impl Interpretation {
    pub fn new(atoms: AtomSet) -> Self {
        Interpretation { atoms }
    }

    pub fn atoms(&self) -> &AtomSet {
        &self.atoms
    }

    pub fn into_atoms(self) -> AtomSet {
        self.atoms
    }

    pub fn contains(&self, atom: Atom) -> bool {
        self.atoms.contains(&atom)
    }

    pub fn insert(&mut self, atom: Atom) -> bool {
        self.atoms.insert(atom)
    }

    pub fn remove(&mut self, atom: Atom) -> bool {
        self.atoms.remove(&atom)
    }

    /// `self ÷ atoms`: the symmetric difference.
    pub fn flip(&self, atoms: &AtomSet) -> Self {
        Interpretation {
            atoms: self.atoms.symmetric_difference(atoms).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &Interpretation) -> Self {
        Interpretation {
            atoms: self.atoms.intersection(&other.atoms).copied().collect(),
        }
    }

    /// Agreement outside `atoms`.
    pub fn bisimilar(&self, other: &Interpretation, atoms: &AtomSet) -> bool {
        self.atoms
            .symmetric_difference(&other.atoms)
            .all(|a| atoms.contains(a))
    }

    pub fn restrict(&self, universe: &AtomSet) -> Self {
        Interpretation {
            atoms: self.atoms.intersection(universe).copied().collect(),
        }
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Interpretation {
            atoms: iter.into_iter().collect(),
        }
    }
}
