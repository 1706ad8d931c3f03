//! Forgetting a set of atoms from a theory.
//!
//! [`forget_cnf`] is the production route: atoms are eliminated one at a
//! time by strong unfolding, i.e. every clause with the positive literal is
//! replaced by its resolvents against the clauses with the negative literal,
//! and the latter are then dropped. The remaining routes compute the same
//! result (up to equivalence) in independent ways and serve as oracles:
//! filtering prime implicates, Shannon expansion, and extending the model
//! set.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fragments::is_krom;
use crate::logic::{Atom, AtomSet, Clause, CnfTheory, DnfTheory, Interpretation, Truth};
use crate::models::{Compiled, Evaluate, Limits, ModelTable, Universe};
use crate::prime::prime_implicates;
use crate::sat::{entails, implication_graph, two_sat};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ForgetOptions {
    /// Skip a resolvent already entailed by the clauses collected so far.
    pub prune_entailed: bool,
    /// Remove subsumed clauses from the final result.
    pub minimize_subsumed: bool,
    /// Elimination order; ascending atom id when absent.
    pub atom_order: Option<Vec<Atom>>,
}

impl ForgetOptions {
    pub fn minimized() -> Self {
        ForgetOptions {
            minimize_subsumed: true,
            ..Self::default()
        }
    }
}

/// Clauses not mentioning `atom`, plus resolvents of each clause holding
/// `atom` positively against each clause holding it negatively. The
/// negative side itself is dropped.
fn unfold_step(theory: &CnfTheory, atom: Atom, prune_entailed: bool) -> CnfTheory {
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    let mut out = CnfTheory::new();
    for clause in theory {
        if clause.contains(atom.pos()) {
            positive.push(clause);
        } else if clause.contains(atom.neg()) {
            negative.push(clause);
        } else {
            out.insert(clause.clone());
        }
    }
    for c in &positive {
        for d in &negative {
            let Some(r) = c.resolve_on(d, atom) else {
                continue;
            };
            if prune_entailed && !out.contains(&r) && entails(&out, &r) {
                continue;
            }
            out.insert(r);
        }
    }
    out
}

/// Strong unfolding of `theory` with respect to `atom`. No subsumption is
/// applied.
pub fn strong_unfold(theory: &CnfTheory, atom: Atom) -> CnfTheory {
    unfold_step(theory, atom, false)
}

fn elimination_order(atoms: &AtomSet, opts: &ForgetOptions) -> Result<Vec<Atom>> {
    match &opts.atom_order {
        None => Ok(atoms.iter().copied().collect()),
        Some(order) => {
            let as_set: AtomSet = order.iter().copied().collect();
            if as_set.len() != order.len() || &as_set != atoms {
                return Err(Error::BadAtomOrder);
            }
            Ok(order.clone())
        }
    }
}

/// `Forget(Π, V)` by iterated strong unfolding.
///
/// Clauses disjoint from `V` are set aside up front and restored at the
/// end; atoms of `V` that do not occur are skipped.
pub fn forget_cnf(theory: &CnfTheory, atoms: &AtomSet, opts: &ForgetOptions) -> Result<CnfTheory> {
    let order = elimination_order(atoms, opts)?;
    let (mut work, set_aside): (CnfTheory, CnfTheory) = {
        let (touching, rest): (Vec<&Clause>, Vec<&Clause>) =
            theory.iter().partition(|c| c.mentions_any(atoms));
        (
            touching.into_iter().cloned().collect(),
            rest.into_iter().cloned().collect(),
        )
    };
    for atom in order {
        if work.mentions(atom) {
            work = unfold_step(&work, atom, opts.prune_entailed);
        }
    }
    work.extend(set_aside.into_clauses());
    Ok(if opts.minimize_subsumed {
        work.minimize()
    } else {
        work
    })
}

/// The prime implicates of `Σ` that avoid `V`.
pub fn forget_via_pi(theory: &CnfTheory, atoms: &AtomSet) -> CnfTheory {
    prime_implicates(theory).filter(|c| !c.mentions_any(atoms))
}

/// Forgetting in a DNF: delete the `V`-literals of every term.
pub fn forget_dnf(dnf: &DnfTheory, atoms: &AtomSet) -> DnfTheory {
    let stripped: DnfTheory = dnf.iter().map(|t| t.without_atoms(atoms)).collect();
    if stripped.has_empty_term() {
        return DnfTheory::verum();
    }
    stripped.minimize()
}

/// A disjunction of CNF theories, as produced by Shannon expansion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CnfDisjunction {
    disjuncts: Vec<CnfTheory>,
    signature: AtomSet,
}

impl CnfDisjunction {
    pub fn new(disjuncts: Vec<CnfTheory>) -> Self {
        let signature = disjuncts
            .iter()
            .flat_map(|d| d.signature().iter().copied())
            .collect();
        CnfDisjunction {
            disjuncts,
            signature,
        }
    }

    pub fn disjuncts(&self) -> &[CnfTheory] {
        &self.disjuncts
    }

    pub fn len(&self) -> usize {
        self.disjuncts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disjuncts.is_empty()
    }
}

impl Evaluate for CnfDisjunction {
    fn signature(&self) -> &AtomSet {
        &self.signature
    }

    fn holds(&self, model: &Interpretation) -> bool {
        self.disjuncts.iter().any(|d| d.is_satisfied_by(model))
    }

    fn compile(&self, universe: &Universe) -> Compiled {
        Compiled::AnyOf(self.disjuncts.iter().map(|d| d.compile(universe)).collect())
    }
}

/// `Forget(φ, {p}) = φ[p/⊤] ∨ φ[p/⊥]`, iterated over `V`: `2^|V|` disjuncts.
pub fn forget_substitution(theory: &CnfTheory, atoms: &AtomSet, limits: &Limits) -> Result<CnfDisjunction> {
    if atoms.len() > limits.max_expansion_atoms {
        return Err(Error::limit(
            "substitution expansion atoms",
            atoms.len(),
            limits.max_expansion_atoms,
        ));
    }
    let mut disjuncts = vec![theory.clone()];
    for &atom in atoms {
        disjuncts = disjuncts
            .iter()
            .flat_map(|d| [d.substitute(atom, Truth::True), d.substitute(atom, Truth::False)])
            .collect();
    }
    Ok(CnfDisjunction::new(disjuncts))
}

/// `Mod(Σ) ⇑ V` over `universe`.
pub fn forget_models_oracle(
    theory: &CnfTheory,
    atoms: &AtomSet,
    universe: &AtomSet,
    limits: &Limits,
) -> Result<BTreeSet<Interpretation>> {
    Ok(ModelTable::build(theory, universe, limits)?.extend(atoms).interpretations())
}

/// Literals reachable from `start` in the implication graph, as a bitset over
/// literal codes.
fn reachable(adj: &[Vec<usize>], start: usize) -> Vec<u64> {
    let mut seen = vec![0u64; adj.len().div_ceil(64)];
    let mut stack = vec![start];
    seen[start / 64] |= 1 << (start % 64);
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if seen[w / 64] >> (w % 64) & 1 == 0 {
                seen[w / 64] |= 1 << (w % 64);
                stack.push(w);
            }
        }
    }
    seen
}

fn has_bit(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

/// Forgetting in a Krom theory: all clauses of at most two literals over
/// `Var(Σ) ∖ V` that `Σ` entails, subsumption-minimal.
///
/// For satisfiable 2-CNF, `Σ ⊨ l1 ∨ l2` iff `l2` is reachable from `¬l1`
/// in the implication graph, and `Σ ⊨ l` iff `l` is reachable from `¬l`;
/// one search per literal answers every candidate.
pub fn forget_krom(theory: &CnfTheory, atoms: &AtomSet) -> Result<CnfTheory> {
    if let Some(bad) = theory.iter().find(|c| c.len() > 2) {
        return Err(Error::NotKrom(bad.clone()));
    }
    debug_assert!(is_krom(theory));
    if !two_sat(theory)?.is_sat() {
        return Ok(CnfTheory::falsum());
    }
    let kept: Vec<Atom> = theory.signature().difference(atoms).copied().collect();
    let n = theory.signature().last().map_or(0, |a| a.index() + 1);
    let adj = implication_graph(theory, n);

    // literals over kept atoms, in canonical order
    let literals: Vec<_> = kept.iter().flat_map(|&a| [a.neg(), a.pos()]).collect();
    let from_complement: Vec<Vec<u64>> = literals
        .iter()
        .map(|l| reachable(&adj, l.complement().code()))
        .collect();
    let unit: Vec<bool> = literals
        .iter()
        .zip(&from_complement)
        .map(|(l, reach)| has_bit(reach, l.code()))
        .collect();

    let mut out = CnfTheory::new();
    for (i, &l1) in literals.iter().enumerate() {
        if unit[i] {
            out.insert(Clause::unit(l1));
            continue;
        }
        for (j, &l2) in literals.iter().enumerate().skip(i + 1) {
            if unit[j] || l2.atom() == l1.atom() {
                continue;
            }
            if has_bit(&from_complement[i], l2.code()) {
                out.insert(Clause::new([l1, l2]).expect("distinct atoms"));
            }
        }
    }
    Ok(out)
}
