//! Random theory generators and brute-force semantics that only use the
//! clause/term evaluation primitives.
#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use propforget::{Atom, AtomSet, Clause, CnfTheory, Interpretation, Literal};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn atoms(n: usize) -> Vec<Atom> {
    (0..n as u32).map(Atom::new).collect()
}

pub fn atom_set(n: usize) -> AtomSet {
    atoms(n).into_iter().collect()
}

pub fn random_clause(rng: &mut StdRng, n_atoms: usize, width: usize) -> Clause {
    let mut pool = atoms(n_atoms);
    pool.shuffle(rng);
    let lits: Vec<Literal> = pool
        .into_iter()
        .take(width.min(n_atoms))
        .map(|a| Literal::new(a, rng.gen_bool(0.5)))
        .collect();
    Clause::new(lits).expect("distinct atoms")
}

/// Clause widths are uniform in `1..=max_width`.
pub fn random_cnf(rng: &mut StdRng, n_atoms: usize, n_clauses: usize, max_width: usize) -> CnfTheory {
    (0..n_clauses)
        .map(|_| {
            let w = rng.gen_range(1..=max_width);
            random_clause(rng, n_atoms, w)
        })
        .collect()
}

/// Horn clauses: at most one positive literal.
pub fn random_horn(rng: &mut StdRng, n_atoms: usize, n_clauses: usize, max_width: usize) -> CnfTheory {
    (0..n_clauses)
        .map(|_| {
            let w = rng.gen_range(1..=max_width);
            let c = random_clause(rng, n_atoms, w);
            let head = if rng.gen_bool(0.7) { c.iter().next() } else { None };
            Clause::new(c.iter().map(|l| Literal::new(l.atom(), Some(l) == head))).unwrap()
        })
        .collect()
}

pub fn random_subset(rng: &mut StdRng, n_atoms: usize, max: usize) -> AtomSet {
    let mut pool = atoms(n_atoms);
    pool.shuffle(rng);
    let k = rng.gen_range(0..=max.min(n_atoms));
    pool.into_iter().take(k).collect()
}

pub fn all_interpretations(universe: &AtomSet) -> Vec<Interpretation> {
    let atoms: Vec<Atom> = universe.iter().copied().collect();
    (0u64..1 << atoms.len())
        .map(|bits| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &a)| a)
                .collect()
        })
        .collect()
}

pub fn brute_models(theory: &CnfTheory, universe: &AtomSet) -> BTreeSet<Interpretation> {
    all_interpretations(universe)
        .into_iter()
        .filter(|m| theory.is_satisfied_by(m))
        .collect()
}

pub fn brute_models_of(holds: impl Fn(&Interpretation) -> bool, universe: &AtomSet) -> BTreeSet<Interpretation> {
    all_interpretations(universe).into_iter().filter(|m| holds(m)).collect()
}

/// `Mod(Σ) ⇑ V` by direct definition: interpretations agreeing with some
/// model outside `V`.
pub fn brute_extension(theory: &CnfTheory, forgotten: &AtomSet, universe: &AtomSet) -> BTreeSet<Interpretation> {
    let models = brute_models(theory, universe);
    all_interpretations(universe)
        .into_iter()
        .filter(|m| models.iter().any(|n| m.bisimilar(n, forgotten)))
        .collect()
}

pub fn brute_entails(theory: &CnfTheory, clause: &Clause, universe: &AtomSet) -> bool {
    brute_models(theory, universe)
        .iter()
        .all(|m| clause.is_satisfied_by(m))
}

pub fn brute_equivalent(a: &CnfTheory, b: &CnfTheory, universe: &AtomSet) -> bool {
    brute_models(a, universe) == brute_models(b, universe)
}

pub fn union_sig(a: &CnfTheory, b: &CnfTheory) -> AtomSet {
    a.signature().union(b.signature()).copied().collect()
}

/// Every clause over `universe` with at most `max_len` literals.
pub fn all_clauses(universe: &AtomSet, max_len: usize) -> Vec<Clause> {
    let atoms: Vec<Atom> = universe.iter().copied().collect();
    let mut out = vec![Clause::empty()];
    let mut frontier = vec![(Clause::empty(), 0usize)];
    while let Some((c, start)) = frontier.pop() {
        if c.len() == max_len {
            continue;
        }
        for (i, &a) in atoms.iter().enumerate().skip(start) {
            for lit in [a.neg(), a.pos()] {
                let next = c.with_literal(lit).unwrap();
                out.push(next.clone());
                frontier.push((next, i + 1));
            }
        }
    }
    out
}

/// The parameterised Horn family whose forgetting has `2^n` prime clauses:
/// `p ∨ ¬q1 ∨ … ∨ ¬qn` plus `qi ∨ ¬ri` and `qi ∨ ¬ri'` for each `i`.
pub struct Blowup {
    pub theory: CnfTheory,
    pub p: Atom,
    pub q: Vec<Atom>,
    pub r: Vec<Atom>,
    pub r_prime: Vec<Atom>,
}

pub fn blowup_family(n: usize) -> Blowup {
    let mut vocab = propforget::Vocabulary::new();
    let p = vocab.intern("p");
    let q: Vec<Atom> = (1..=n).map(|i| vocab.intern(&format!("q{i}"))).collect();
    let r: Vec<Atom> = (1..=n).map(|i| vocab.intern(&format!("r{i}"))).collect();
    let r_prime: Vec<Atom> = (1..=n).map(|i| vocab.intern(&format!("r{i}'"))).collect();
    let mut theory = CnfTheory::new();
    theory.insert(Clause::new(std::iter::once(p.pos()).chain(q.iter().map(|a| a.neg()))).unwrap());
    for i in 0..n {
        theory.insert(Clause::new([q[i].pos(), r[i].neg()]).unwrap());
        theory.insert(Clause::new([q[i].pos(), r_prime[i].neg()]).unwrap());
    }
    Blowup {
        theory,
        p,
        q,
        r,
        r_prime,
    }
}

/// The `2^n` clauses `(⋁_{i∈I} ¬ri) ∨ (⋁_{j∉I} ¬rj') ∨ p`.
pub fn blowup_expected(b: &Blowup) -> CnfTheory {
    let n = b.q.len();
    (0u32..1 << n)
        .map(|set| {
            let lits = (0..n)
                .map(|i| if set >> i & 1 == 1 { b.r[i].neg() } else { b.r_prime[i].neg() })
                .chain(std::iter::once(b.p.pos()));
            Clause::new(lits).unwrap()
        })
        .collect()
}

pub fn clause_strategy(n_atoms: usize, max_width: usize) -> impl Strategy<Value = Clause> {
    let ids: Vec<u32> = (0..n_atoms as u32).collect();
    prop::sample::subsequence(ids, 1..=max_width.min(n_atoms))
        .prop_flat_map(|ids| {
            let k = ids.len();
            (Just(ids), prop::collection::vec(any::<bool>(), k))
        })
        .prop_map(|(ids, signs)| {
            Clause::new(ids.into_iter().zip(signs).map(|(a, s)| Literal::new(Atom::new(a), s))).unwrap()
        })
}

pub fn cnf_strategy(n_atoms: usize, max_clauses: usize, max_width: usize) -> impl Strategy<Value = CnfTheory> {
    prop::collection::vec(clause_strategy(n_atoms, max_width), 0..=max_clauses).prop_map(CnfTheory::from_iter)
}

pub fn atoms_strategy(n_atoms: usize, max: usize) -> impl Strategy<Value = AtomSet> {
    let ids: Vec<u32> = (0..n_atoms as u32).collect();
    prop::sample::subsequence(ids, 0..=max.min(n_atoms)).prop_map(|ids| ids.into_iter().map(Atom::new).collect())
}

/// The three QH conditions, straight from the definition.
pub fn brute_qh_clause(clause: &Clause, q: &AtomSet, h: &AtomSet) -> bool {
    let in_q = clause.iter().filter(|l| q.contains(&l.atom())).count();
    let pos_h = clause
        .iter()
        .filter(|l| l.is_positive() && h.contains(&l.atom()))
        .count();
    in_q <= 2 && pos_h <= 1 && (pos_h != 1 || in_q == 0)
}

/// Exhaustive q-Horn test: each atom is in `Q`, in `H` unrenamed, or in `H`
/// renamed (renaming a `Q` atom changes nothing).
pub fn brute_q_horn(theory: &CnfTheory) -> bool {
    let vars: Vec<Atom> = theory.signature().iter().copied().collect();
    let total = 3u64.pow(vars.len() as u32);
    (0..total).any(|mut code| {
        let (mut q, mut h, mut renaming) = (AtomSet::new(), AtomSet::new(), AtomSet::new());
        for &a in &vars {
            match code % 3 {
                0 => {
                    q.insert(a);
                }
                1 => {
                    h.insert(a);
                }
                _ => {
                    h.insert(a);
                    renaming.insert(a);
                }
            }
            code /= 3;
        }
        theory.rename(&renaming).iter().all(|c| brute_qh_clause(c, &q, &h))
    })
}

pub fn brute_renamable_horn(theory: &CnfTheory) -> bool {
    let vars: Vec<Atom> = theory.signature().iter().copied().collect();
    (0u64..1 << vars.len()).any(|bits| {
        let renaming: AtomSet = vars
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &a)| a)
            .collect();
        theory
            .rename(&renaming)
            .iter()
            .all(|c| c.iter().filter(|l| l.is_positive()).count() <= 1)
    })
}

pub fn closed_under_intersection(set: &BTreeSet<Interpretation>) -> bool {
    set.iter()
        .all(|a| set.iter().all(|b| set.contains(&a.intersection(b))))
}

/// Double Horn: both the models and the non-models are closed under
/// intersection over `universe`.
pub fn brute_double_horn(theory: &CnfTheory, universe: &AtomSet) -> bool {
    let models = brute_models(theory, universe);
    let others: BTreeSet<Interpretation> = all_interpretations(universe)
        .into_iter()
        .filter(|m| !models.contains(m))
        .collect();
    closed_under_intersection(&models) && closed_under_intersection(&others)
}

/// A theory with a known QH witness: clauses are drawn to satisfy the
/// partition and then renamed by `renaming`.
pub fn random_q_horn(rng: &mut StdRng, n_atoms: usize, n_clauses: usize) -> (CnfTheory, AtomSet, AtomSet, AtomSet) {
    let all = atoms(n_atoms);
    let (mut q, mut h, mut renaming) = (AtomSet::new(), AtomSet::new(), AtomSet::new());
    for &a in &all {
        if rng.gen_bool(0.4) {
            q.insert(a);
        } else {
            h.insert(a);
        }
        if rng.gen_bool(0.5) {
            renaming.insert(a);
        }
    }
    let mut theory = CnfTheory::new();
    while theory.len() < n_clauses {
        let w = rng.gen_range(1..=4);
        let c = random_clause(rng, n_atoms, w);
        if brute_qh_clause(&c, &q, &h) {
            theory.insert(c.rename(&renaming));
        }
    }
    (theory, q, h, renaming)
}
