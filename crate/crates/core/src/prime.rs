//! Prime implicates by resolution saturation, prime implicants by duality.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::{Clause, CnfTheory, DnfTheory};
use crate::models::Limits;

fn subsumed_by_any<'a>(clause: &Clause, mut pool: impl Iterator<Item = &'a Clause>) -> bool {
    pool.any(|s| s.subsumes(clause))
}

/// `PI(Σ)`: saturate under resolution, deleting subsumed clauses between
/// rounds. Each round resolves the clauses added by the previous round
/// against the whole current set.
pub fn prime_implicates(theory: &CnfTheory) -> CnfTheory {
    let start = theory.minimize();
    if start.has_empty_clause() {
        return CnfTheory::falsum();
    }
    let mut current: BTreeSet<Clause> = start.into_clauses();
    let mut frontier: Vec<Clause> = current.iter().cloned().collect();

    while !frontier.is_empty() {
        let mut fresh: BTreeSet<Clause> = BTreeSet::new();
        for a in &frontier {
            if !current.contains(a) {
                continue;
            }
            for b in &current {
                let Some(r) = a.resolve(b) else { continue };
                if !subsumed_by_any(&r, current.iter()) {
                    fresh.insert(r);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        let fresh = CnfTheory::from_iter(fresh).minimize();
        if fresh.has_empty_clause() {
            return CnfTheory::falsum();
        }
        current.retain(|c| !subsumed_by_any(c, fresh.iter()));
        frontier = fresh.iter().cloned().collect();
        current.extend(fresh.into_clauses());
    }
    current.into_iter().collect()
}

/// CNF of a DNF by distribution, minimising after every term.
pub fn dnf_to_cnf(dnf: &DnfTheory, limits: &Limits) -> Result<CnfTheory> {
    let mut acc = CnfTheory::falsum();
    for term in dnf {
        let mut next = CnfTheory::new();
        for clause in &acc {
            next.extend(term.iter().filter_map(|l| clause.with_literal(l)));
        }
        acc = next.minimize();
        if acc.len() > limits.max_distribution_size {
            return Err(Error::limit(
                "clauses produced by distribution",
                acc.len(),
                limits.max_distribution_size,
            ));
        }
    }
    Ok(acc)
}

/// CNF-to-DNF distribution, the dual of [`dnf_to_cnf`].
pub fn cnf_to_dnf(cnf: &CnfTheory, limits: &Limits) -> Result<DnfTheory> {
    Ok(dnf_to_cnf(&cnf.negate(), limits)?.negate())
}

/// Prime implicates of a DNF.
pub fn prime_implicates_dnf(dnf: &DnfTheory, limits: &Limits) -> Result<CnfTheory> {
    Ok(prime_implicates(&dnf_to_cnf(dnf, limits)?))
}

/// `IP(Σ)`: `t` is a prime implicant of `Σ` iff `¬t` is a prime implicate
/// of `¬Σ`.
pub fn prime_implicants(theory: &CnfTheory, limits: &Limits) -> Result<DnfTheory> {
    Ok(prime_implicates_dnf(&theory.negate(), limits)?.negate())
}
