//! Satisfiability and entailment.
//!
//! Three deciders share the [`SatResult`] currency: linear-time unit
//! propagation for Horn theories, implication-graph SCCs for Krom theories,
//! and a small deterministic DPLL for everything else. [`solve`] picks the
//! cheapest applicable one.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::logic::{Atom, Clause, CnfTheory, Interpretation, Literal};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Sat(Interpretation),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }

    pub fn model(&self) -> Option<&Interpretation> {
        match self {
            SatResult::Sat(m) => Some(m),
            SatResult::Unsat => None,
        }
    }

    pub fn into_model(self) -> Option<Interpretation> {
        match self {
            SatResult::Sat(m) => Some(m),
            SatResult::Unsat => None,
        }
    }
}

fn atom_bound(theory: &CnfTheory) -> usize {
    theory.signature().last().map_or(0, |a| a.index() + 1)
}

/// Least-model unit propagation for Horn theories.
pub fn horn_sat(theory: &CnfTheory) -> Result<SatResult> {
    if let Some(bad) = theory.iter().find(|c| !c.is_horn()) {
        return Err(Error::NotHorn(bad.clone()));
    }
    let n = atom_bound(theory);
    let clauses: Vec<&Clause> = theory.iter().collect();
    let mut pending: Vec<usize> = clauses.iter().map(|c| c.len() - c.positive_count()).collect();
    let mut body_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in clauses.iter().enumerate() {
        for a in c.negative_atoms() {
            body_of[a.index()].push(i);
        }
    }

    let mut truth = vec![false; n];
    let mut queue: VecDeque<usize> = (0..clauses.len()).filter(|&i| pending[i] == 0).collect();
    while let Some(i) = queue.pop_front() {
        let Some(head) = clauses[i].positive_atoms().next() else {
            return Ok(SatResult::Unsat);
        };
        if std::mem::replace(&mut truth[head.index()], true) {
            continue;
        }
        for &j in &body_of[head.index()] {
            pending[j] -= 1;
            if pending[j] == 0 {
                queue.push_back(j);
            }
        }
    }
    let model = (0..n).filter(|&i| truth[i]).map(|i| Atom::new(i as u32)).collect();
    Ok(SatResult::Sat(model))
}

/// Iterative Tarjan; component ids come out in reverse topological order.
pub(crate) fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut comp = vec![UNSEEN; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if *edge == 0 && index[v] == UNSEEN {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(*edge) {
                *edge += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                while let Some(w) = stack.pop() {
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Implication graph over literal codes: clause `a ∨ b` gives `¬a → b` and
/// `¬b → a`; a unit `a` gives `¬a → a`.
pub(crate) fn implication_graph(theory: &CnfTheory, n_atoms: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); 2 * n_atoms];
    for c in theory {
        match c.literals() {
            [a] => adj[a.complement().code()].push(a.code()),
            [a, b] => {
                adj[a.complement().code()].push(b.code());
                adj[b.complement().code()].push(a.code());
            }
            _ => {}
        }
    }
    adj
}

/// 2-SAT by strongly connected components of the implication graph.
pub fn two_sat(theory: &CnfTheory) -> Result<SatResult> {
    if let Some(bad) = theory.iter().find(|c| c.len() > 2) {
        return Err(Error::NotKrom(bad.clone()));
    }
    if theory.has_empty_clause() {
        return Ok(SatResult::Unsat);
    }
    let n = atom_bound(theory);
    let comp = strongly_connected_components(&implication_graph(theory, n));
    let mut model = Interpretation::default();
    for &atom in theory.signature() {
        let (t, f) = (comp[atom.pos().code()], comp[atom.neg().code()]);
        if t == f {
            return Ok(SatResult::Unsat);
        }
        // Tarjan numbers sinks first; pick the literal nearer the sink
        if t < f {
            model.insert(atom);
        }
    }
    Ok(SatResult::Sat(model))
}

struct Dpll<'a> {
    clauses: Vec<&'a [Literal]>,
}

impl Dpll<'_> {
    fn value(assign: &[Option<bool>], lit: Literal) -> Option<bool> {
        assign[lit.atom().index()].map(|v| v == lit.is_positive())
    }

    /// Unit propagation and pure-literal elimination to a fixpoint.
    /// Returns `false` on conflict.
    fn simplify(&self, assign: &mut [Option<bool>]) -> bool {
        loop {
            let mut changed = false;
            for clause in &self.clauses {
                let mut unassigned = None;
                let mut open = 0;
                let mut satisfied = false;
                for &lit in clause.iter() {
                    match Self::value(assign, lit) {
                        Some(true) => {
                            satisfied = true;
                            break;
                        }
                        Some(false) => {}
                        None => {
                            open += 1;
                            unassigned = Some(lit);
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (open, unassigned) {
                    (0, _) => return false,
                    (1, Some(lit)) => {
                        assign[lit.atom().index()] = Some(lit.is_positive());
                        changed = true;
                    }
                    _ => {}
                }
            }
            if changed {
                continue;
            }

            // polarity seen per atom among open clauses: bit 0 negative, bit 1 positive
            let mut seen = vec![0u8; assign.len()];
            for clause in &self.clauses {
                if clause.iter().any(|&l| Self::value(assign, l) == Some(true)) {
                    continue;
                }
                for &lit in clause.iter() {
                    if assign[lit.atom().index()].is_none() {
                        seen[lit.atom().index()] |= 1 << lit.is_positive() as u8;
                    }
                }
            }
            for (i, &polarity) in seen.iter().enumerate() {
                if polarity == 1 || polarity == 2 {
                    assign[i] = Some(polarity == 2);
                    changed = true;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn branch_atom(&self, assign: &[Option<bool>]) -> Option<usize> {
        self.clauses
            .iter()
            .filter(|c| !c.iter().any(|&l| Self::value(assign, l) == Some(true)))
            .flat_map(|c| c.iter())
            .map(|l| l.atom().index())
            .filter(|&i| assign[i].is_none())
            .min()
    }

    fn search(&self, assign: &mut Vec<Option<bool>>) -> bool {
        if !self.simplify(assign) {
            return false;
        }
        let Some(atom) = self.branch_atom(assign) else {
            return true;
        };
        for value in [true, false] {
            let mut trial = assign.clone();
            trial[atom] = Some(value);
            if self.search(&mut trial) {
                *assign = trial;
                return true;
            }
        }
        false
    }
}

/// Complete DPLL: lowest open atom first, true branch first.
pub fn dpll_sat(theory: &CnfTheory) -> SatResult {
    let solver = Dpll {
        clauses: theory.iter().map(Clause::literals).collect(),
    };
    let mut assign = vec![None; atom_bound(theory)];
    if !solver.search(&mut assign) {
        return SatResult::Unsat;
    }
    let model = assign
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == Some(true))
        .map(|(i, _)| Atom::new(i as u32))
        .collect();
    SatResult::Sat(model)
}

/// Fragment-aware dispatch: Horn, then Krom, then DPLL.
pub fn solve(theory: &CnfTheory) -> SatResult {
    if theory.iter().all(Clause::is_horn) {
        horn_sat(theory).expect("Horn precondition checked")
    } else if theory.max_clause_len() <= 2 {
        two_sat(theory).expect("Krom precondition checked")
    } else {
        dpll_sat(theory)
    }
}

pub fn is_satisfiable(theory: &CnfTheory) -> bool {
    solve(theory).is_sat()
}

/// A model of `Σ ∧ ¬c`, if one exists.
pub fn countermodel(theory: &CnfTheory, clause: &Clause) -> Option<Interpretation> {
    solve(&theory.with_negated_clause(clause)).into_model()
}

/// `Σ ⊨ c`.
pub fn entails(theory: &CnfTheory, clause: &Clause) -> bool {
    countermodel(theory, clause).is_none()
}

/// `Σ ⊨ Π`, clause by clause; returns the first clause of `Π` not entailed.
pub fn first_unentailed<'a>(theory: &CnfTheory, other: &'a CnfTheory) -> Option<&'a Clause> {
    other.iter().find(|c| !entails(theory, c))
}
