//! Brute-force semantics over an explicit, small universe of atoms.
//!
//! Interpretations are enumerated as bitmasks over the universe (atom `i` of
//! the sorted universe is bit `i`). Everything here is exponential and is
//! guarded by [`Limits::max_model_atoms`].

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::{Atom, AtomSet, Clause, CnfTheory, DnfTheory, Interpretation, Term};

/// Size guards for the exponential oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest universe [`enumerate_models`] and friends will enumerate.
    pub max_model_atoms: usize,
    /// Largest forgotten set expanded by Shannon substitution.
    pub max_expansion_atoms: usize,
    /// Largest intermediate CNF/DNF produced by distribution.
    pub max_distribution_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_model_atoms: 20,
            max_expansion_atoms: 10,
            max_distribution_size: 1 << 16,
        }
    }
}

/// Absolute cap imposed by the `u64` masks.
const MASK_BITS: usize = 40;

/// A formula that can be evaluated on interpretation bitmasks.
pub trait Evaluate {
    fn signature(&self) -> &AtomSet;
    fn holds(&self, model: &Interpretation) -> bool;
    #[doc(hidden)]
    fn compile(&self, universe: &Universe) -> Compiled;
}

#[doc(hidden)]
#[derive(Debug, Clone, Copy)]
pub struct LitMasks {
    pos: u64,
    neg: u64,
    /// Set when atoms outside the universe already decide the member.
    fixed: Option<bool>,
}

#[doc(hidden)]
#[derive(Debug, Clone)]
pub enum Compiled {
    Cnf(Vec<LitMasks>),
    Dnf(Vec<LitMasks>),
    AnyOf(Vec<Compiled>),
}

impl Compiled {
    fn eval(&self, x: u64) -> bool {
        match self {
            Compiled::Cnf(clauses) => clauses.iter().all(|c| match c.fixed {
                Some(v) => v,
                None => x & c.pos != 0 || !x & c.neg != 0,
            }),
            Compiled::Dnf(terms) => terms.iter().any(|t| match t.fixed {
                Some(v) => v,
                None => x & t.pos == t.pos && x & t.neg == 0,
            }),
            Compiled::AnyOf(parts) => parts.iter().any(|p| p.eval(x)),
        }
    }
}

/// A sorted universe with bit positions.
#[derive(Debug, Clone)]
pub struct Universe {
    atoms: Vec<Atom>,
}

impl Universe {
    pub fn new(atoms: &AtomSet, limits: &Limits) -> Result<Self> {
        let cap = limits.max_model_atoms.min(MASK_BITS);
        if atoms.len() > cap {
            return Err(Error::limit("model enumeration atoms", atoms.len(), cap));
        }
        Ok(Universe {
            atoms: atoms.iter().copied().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn size(&self) -> u64 {
        1u64 << self.atoms.len()
    }

    fn bit(&self, atom: Atom) -> Option<u64> {
        self.atoms.binary_search(&atom).ok().map(|i| 1u64 << i)
    }

    pub fn mask_of(&self, atoms: &AtomSet) -> u64 {
        atoms.iter().filter_map(|&a| self.bit(a)).fold(0, |m, b| m | b)
    }

    pub fn interpretation(&self, mask: u64) -> Interpretation {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a)
            .collect()
    }

    pub fn encode(&self, model: &Interpretation) -> u64 {
        self.mask_of(model.atoms())
    }

    fn clause_masks(&self, clause: &Clause) -> LitMasks {
        let mut m = LitMasks {
            pos: 0,
            neg: 0,
            fixed: None,
        };
        for lit in clause.iter() {
            match (self.bit(lit.atom()), lit.is_positive()) {
                (Some(b), true) => m.pos |= b,
                (Some(b), false) => m.neg |= b,
                // outside atoms are false, so a negative literal is true
                (None, false) => m.fixed = Some(true),
                (None, true) => {}
            }
        }
        if m.fixed.is_none() && m.pos == 0 && m.neg == 0 {
            m.fixed = Some(false);
        }
        m
    }

    fn term_masks(&self, term: &Term) -> LitMasks {
        let mut m = LitMasks {
            pos: 0,
            neg: 0,
            fixed: None,
        };
        for lit in term.iter() {
            match (self.bit(lit.atom()), lit.is_positive()) {
                (Some(b), true) => m.pos |= b,
                (Some(b), false) => m.neg |= b,
                (None, true) => m.fixed = Some(false),
                (None, false) => {}
            }
        }
        m
    }
}

impl Evaluate for CnfTheory {
    fn signature(&self) -> &AtomSet {
        CnfTheory::signature(self)
    }

    fn holds(&self, model: &Interpretation) -> bool {
        self.is_satisfied_by(model)
    }

    fn compile(&self, universe: &Universe) -> Compiled {
        Compiled::Cnf(self.iter().map(|c| universe.clause_masks(c)).collect())
    }
}

impl Evaluate for DnfTheory {
    fn signature(&self) -> &AtomSet {
        DnfTheory::signature(self)
    }

    fn holds(&self, model: &Interpretation) -> bool {
        self.is_satisfied_by(model)
    }

    fn compile(&self, universe: &Universe) -> Compiled {
        Compiled::Dnf(self.iter().map(|t| universe.term_masks(t)).collect())
    }
}

/// Truth table of a formula over a universe.
#[derive(Debug, Clone)]
pub struct ModelTable {
    universe: Universe,
    table: Vec<bool>,
}

impl ModelTable {
    pub fn build<F: Evaluate + ?Sized>(formula: &F, universe: &AtomSet, limits: &Limits) -> Result<Self> {
        let universe = Universe::new(universe, limits)?;
        let compiled = formula.compile(&universe);
        let table = (0..universe.size()).map(|x| compiled.eval(x)).collect();
        Ok(ModelTable { universe, table })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn is_model(&self, mask: u64) -> bool {
        self.table[mask as usize]
    }

    pub fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i as u64)
    }

    pub fn count(&self) -> usize {
        self.table.iter().filter(|&&m| m).count()
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn interpretations(&self) -> BTreeSet<Interpretation> {
        self.masks().map(|m| self.universe.interpretation(m)).collect()
    }

    /// `Mod ⇑ V`: every interpretation agreeing with some model outside `atoms`.
    pub fn extend(&self, atoms: &AtomSet) -> ModelTable {
        let free = self.universe.mask_of(atoms);
        let mut table = self.table.clone();
        // close under flipping each free bit independently
        for i in 0..self.universe.len() {
            let bit = 1u64 << i;
            if free & bit == 0 {
                continue;
            }
            for x in 0..self.universe.size() {
                if x & bit == 0 {
                    let either = table[x as usize] || table[(x | bit) as usize];
                    table[x as usize] = either;
                    table[(x | bit) as usize] = either;
                }
            }
        }
        ModelTable {
            universe: self.universe.clone(),
            table,
        }
    }

    /// Every model of `self` is a model of `other` (same universe).
    pub fn implies(&self, other: &ModelTable) -> bool {
        self.table.iter().zip(&other.table).all(|(&a, &b)| !a || b)
    }

    pub fn first_difference(&self, other: &ModelTable) -> Option<Interpretation> {
        self.table
            .iter()
            .zip(&other.table)
            .position(|(a, b)| a != b)
            .map(|i| self.universe.interpretation(i as u64))
    }
}

impl PartialEq for ModelTable {
    fn eq(&self, other: &Self) -> bool {
        self.universe.atoms == other.universe.atoms && self.table == other.table
    }
}

/// `Mod(Σ)` over `universe`, with atoms outside the universe held false.
pub fn enumerate_models<F: Evaluate + ?Sized>(
    formula: &F,
    universe: &AtomSet,
    limits: &Limits,
) -> Result<BTreeSet<Interpretation>> {
    Ok(ModelTable::build(formula, universe, limits)?.interpretations())
}

/// Model-set equality over the union of both signatures.
pub fn equivalent<A, B>(a: &A, b: &B, limits: &Limits) -> Result<bool>
where
    A: Evaluate + ?Sized,
    B: Evaluate + ?Sized,
{
    let universe: AtomSet = a.signature().union(b.signature()).copied().collect();
    Ok(ModelTable::build(a, &universe, limits)? == ModelTable::build(b, &universe, limits)?)
}

/// `Mod(a) ⊆ Mod(b)` over the union of both signatures.
pub fn entails<A, B>(a: &A, b: &B, limits: &Limits) -> Result<bool>
where
    A: Evaluate + ?Sized,
    B: Evaluate + ?Sized,
{
    let universe: AtomSet = a.signature().union(b.signature()).copied().collect();
    Ok(ModelTable::build(a, &universe, limits)?.implies(&ModelTable::build(b, &universe, limits)?))
}

/// `Mod ⇑ V` for an explicit model set.
pub fn extend_models(models: &BTreeSet<Interpretation>, atoms: &AtomSet, universe: &AtomSet) -> BTreeSet<Interpretation> {
    let free: Vec<Atom> = atoms.intersection(universe).copied().collect();
    let mut out = BTreeSet::new();
    for model in models {
        let base = Interpretation::new(model.atoms().difference(atoms).copied().collect());
        for bits in 0u64..(1 << free.len()) {
            let mut m = base.clone();
            for (i, &a) in free.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    m.insert(a);
                }
            }
            out.insert(m);
        }
    }
    out
}
