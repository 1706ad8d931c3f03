//! Fragment recognition with checkable witnesses.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::logic::{Atom, AtomSet, Clause, CnfTheory};
use crate::models::{Limits, ModelTable};
use crate::sat::{two_sat, SatResult};

/// A split of the variables into a quadratic part `Q` and a Horn part `H`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QhPartition {
    pub q: AtomSet,
    pub h: AtomSet,
}

/// A q-Horn renaming together with the partition it admits.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QHornWitness {
    pub renaming: AtomSet,
    pub partition: QhPartition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentReport {
    pub horn: bool,
    pub krom: bool,
    pub renamable_horn: Option<AtomSet>,
    pub q_horn: Option<QHornWitness>,
    /// `None` when the model-based check was skipped by the size guard.
    pub double_horn: Option<bool>,
}

pub fn is_horn(theory: &CnfTheory) -> bool {
    theory.iter().all(Clause::is_horn)
}

pub fn is_krom(theory: &CnfTheory) -> bool {
    theory.iter().all(|c| c.len() <= 2)
}

/// A set `V` with `ren(Σ, V)` Horn, or `None` when no such set exists.
///
/// Selector `s_x` true means `x ∈ V`. A literal is positive after renaming
/// iff it is positive and unrenamed or negative and renamed, so forbidding
/// two positives among `l1, l2` is the binary clause `l1 ∨ l2` read over
/// selectors. The 2-SAT model is the renaming.
pub fn renamable_horn_witness(theory: &CnfTheory) -> Option<AtomSet> {
    if is_horn(theory) {
        return Some(AtomSet::new());
    }
    let mut selectors = CnfTheory::new();
    for clause in theory {
        let lits = clause.literals();
        for (i, &a) in lits.iter().enumerate() {
            for &b in &lits[i + 1..] {
                selectors.insert(Clause::new([a, b]).expect("distinct atoms"));
            }
        }
    }
    match two_sat(&selectors).expect("selector clauses are binary") {
        SatResult::Unsat => None,
        SatResult::Sat(model) => {
            let renaming = model.into_atoms();
            debug_assert!(is_horn(&theory.rename(&renaming)));
            Some(renaming)
        }
    }
}

/// Checks the three per-clause conditions of a QH-partition.
pub fn qh_partition_check(theory: &CnfTheory, part: &QhPartition) -> Result<bool> {
    if let Some(&a) = part.q.intersection(&part.h).next() {
        return Err(Error::OverlappingPartition(a));
    }
    if let Some(&a) = theory
        .signature()
        .iter()
        .find(|a| !part.q.contains(a) && !part.h.contains(a))
    {
        return Err(Error::UncoveredAtom(a));
    }
    Ok(theory.iter().all(|c| clause_fits(c, part)))
}

fn clause_fits(clause: &Clause, part: &QhPartition) -> bool {
    let in_q = clause.atoms().filter(|a| part.q.contains(a)).count();
    let pos_h = clause.positive_atoms().filter(|a| part.h.contains(a)).count();
    in_q <= 2 && pos_h <= 1 && (pos_h == 0 || in_q == 0)
}

// Weights are doubled so the domain {0, 1/2, 1} becomes {0, 1, 2} and every
// clause must keep its literal weights summing to at most 2.
const ZERO: u8 = 0;
const HALF: u8 = 1;
const ONE: u8 = 2;
const VALUE_ORDER: [u8; 3] = [HALF, ONE, ZERO];
const FULL_DOMAIN: u8 = 0b111;

fn weight(value: u8, positive: bool) -> u8 {
    if positive {
        value
    } else {
        2 - value
    }
}

struct QHornSearch {
    clauses: Vec<Vec<(usize, bool)>>,
    occurs: Vec<Vec<usize>>,
}

impl QHornSearch {
    fn new(theory: &CnfTheory, atoms: &[Atom]) -> Self {
        let index: HashMap<Atom, usize> = atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let clauses: Vec<Vec<(usize, bool)>> = theory
            .iter()
            .map(|c| c.iter().map(|l| (index[&l.atom()], l.is_positive())).collect())
            .collect();
        let mut occurs = vec![Vec::new(); atoms.len()];
        for (ci, c) in clauses.iter().enumerate() {
            for &(v, _) in c {
                occurs[v].push(ci);
            }
        }
        QHornSearch { clauses, occurs }
    }

    /// Narrows domains of the unassigned variables in clauses touching `var`.
    fn propagate(&self, var: usize, values: &[Option<u8>], domains: &mut [u8]) -> bool {
        for &ci in &self.occurs[var] {
            let clause = &self.clauses[ci];
            let used: u8 = clause
                .iter()
                .filter_map(|&(v, pos)| values[v].map(|x| weight(x, pos)))
                .sum();
            if used > 2 {
                return false;
            }
            let slack = 2 - used;
            for &(v, pos) in clause {
                if values[v].is_some() {
                    continue;
                }
                for x in [ZERO, HALF, ONE] {
                    if weight(x, pos) > slack {
                        domains[v] &= !(1 << x);
                    }
                }
                if domains[v] == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn search(&self, values: &mut Vec<Option<u8>>, domains: &[u8]) -> bool {
        // smallest remaining domain first, lowest index on ties
        let Some(var) = (0..values.len())
            .filter(|&v| values[v].is_none())
            .min_by_key(|&v| (domains[v].count_ones(), v))
        else {
            return true;
        };
        for x in VALUE_ORDER {
            if domains[var] & (1 << x) == 0 {
                continue;
            }
            values[var] = Some(x);
            let mut narrowed = domains.to_vec();
            narrowed[var] = 1 << x;
            if self.propagate(var, values, &mut narrowed) && self.search(values, &narrowed) {
                return true;
            }
            values[var] = None;
        }
        false
    }
}

/// A q-Horn renaming and partition, found by exact search for a weighting
/// `α: Var(Σ) → {0, 1/2, 1}` with every clause's literal weights summing to
/// at most 1 (`w(x) = α(x)`, `w(¬x) = 1 − α(x)`).
pub fn q_horn_witness(theory: &CnfTheory) -> Option<QHornWitness> {
    let atoms: Vec<Atom> = theory.signature().iter().copied().collect();
    let search = QHornSearch::new(theory, &atoms);
    let mut values = vec![None; atoms.len()];
    let domains = vec![FULL_DOMAIN; atoms.len()];
    if !search.search(&mut values, &domains) {
        return None;
    }

    let mut witness = QHornWitness::default();
    for (&atom, value) in atoms.iter().zip(&values) {
        match value.expect("complete assignment") {
            HALF => {
                witness.partition.q.insert(atom);
            }
            v => {
                if v == ZERO {
                    witness.renaming.insert(atom);
                }
                witness.partition.h.insert(atom);
            }
        }
    }
    let verified = qh_partition_check(&theory.rename(&witness.renaming), &witness.partition);
    debug_assert_eq!(verified, Ok(true));
    verified.ok().filter(|&ok| ok).map(|_| witness)
}

/// Superset-AND transform: `acc[x]` becomes the intersection of all members
/// that contain `x` (all ones when there are none). A family is closed under
/// intersection iff every `x` equal to its own such intersection is a member.
fn closed_under_intersection(members: &[bool], bits: usize) -> bool {
    let mut acc: Vec<u64> = members
        .iter()
        .enumerate()
        .map(|(x, &m)| if m { x as u64 } else { u64::MAX })
        .collect();
    for i in 0..bits {
        let bit = 1usize << i;
        for x in 0..acc.len() {
            if x & bit == 0 {
                acc[x] &= acc[x | bit];
            }
        }
    }
    acc.iter()
        .enumerate()
        .all(|(x, &meet)| meet != x as u64 || members[x])
}

/// Model-based double Horn test over `Var(Σ)`.
pub fn is_double_horn(theory: &CnfTheory, limits: &Limits) -> Result<bool> {
    let table = ModelTable::build(theory, theory.signature(), limits)?;
    let bits = table.universe().len();
    let complement: Vec<bool> = table.table().iter().map(|&m| !m).collect();
    Ok(closed_under_intersection(table.table(), bits) && closed_under_intersection(&complement, bits))
}

pub fn classify(theory: &CnfTheory, limits: &Limits) -> FragmentReport {
    let horn = is_horn(theory);
    let krom = is_krom(theory);
    let renamable_horn = renamable_horn_witness(theory);
    let q_horn = if krom {
        Some(QHornWitness {
            renaming: AtomSet::new(),
            partition: QhPartition {
                q: theory.signature().clone(),
                h: AtomSet::new(),
            },
        })
    } else if let Some(v) = &renamable_horn {
        Some(QHornWitness {
            renaming: v.clone(),
            partition: QhPartition {
                q: AtomSet::new(),
                h: theory.signature().clone(),
            },
        })
    } else {
        q_horn_witness(theory)
    };
    FragmentReport {
        horn,
        krom,
        renamable_horn,
        q_horn,
        double_horn: is_double_horn(theory, limits).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Vocabulary;

    #[test]
    fn horn_examples() {
        let mut v = Vocabulary::new();
        assert!(is_horn(&v.cnf(&["-p -r", "-q r", "-s r", "-t"])));
        assert!(!is_horn(&v.cnf(&["p q", "-p -q", "p -q"])));
        assert!(is_horn(&CnfTheory::new()));
    }

    #[test]
    fn krom_examples() {
        let mut v = Vocabulary::new();
        assert!(is_krom(&v.cnf(&["p1 p2", "-p1 p3", "-p2 -p3", "-q"])));
        assert!(!is_krom(&v.cnf(&["p q r"])));
        assert!(is_krom(&CnfTheory::new()));
    }

    #[test]
    fn renamable_examples() {
        let mut v = Vocabulary::new();
        // {p} is the only Horn renaming of this one
        let t = v.cnf(&["p q", "-p -q", "p -q"]);
        assert_eq!(renamable_horn_witness(&t), Some(v.atoms(&["p"])));
        for names in [&[][..], &["q"], &["p", "q"]] {
            assert!(!is_horn(&t.rename(&v.atoms(names))));
        }
        assert_eq!(renamable_horn_witness(&v.cnf(&["a b c", "-a -b -c"])), None);
        let horn = v.cnf(&["-a b", "-b -c"]);
        assert_eq!(renamable_horn_witness(&horn), Some(AtomSet::new()));
        let pq = v.cnf(&["p q"]);
        let w = renamable_horn_witness(&pq).unwrap();
        assert!(w == v.atoms(&["p"]) || w == v.atoms(&["q"]) || w == v.atoms(&["p", "q"]));
        assert!(is_horn(&pq.rename(&w)));
    }

    #[test]
    fn qh_partition_examples() {
        let mut v = Vocabulary::new();
        let krom = v.cnf(&["p1 p2", "-p1 p3", "-p2 -p3", "-q"]);
        let part = QhPartition {
            q: krom.signature().clone(),
            h: AtomSet::new(),
        };
        assert_eq!(qh_partition_check(&krom, &part), Ok(true));

        let horn = v.cnf(&["-p -r", "-q r", "-s r", "-t"]);
        let part = QhPartition {
            q: AtomSet::new(),
            h: horn.signature().clone(),
        };
        assert_eq!(qh_partition_check(&horn, &part), Ok(true));

        let abc = v.cnf(&["a b c"]);
        let part = QhPartition {
            q: v.atoms(&["a", "b", "c"]),
            h: AtomSet::new(),
        };
        assert_eq!(qh_partition_check(&abc, &part), Ok(false));
    }

    #[test]
    fn qh_partition_errors() {
        let mut v = Vocabulary::new();
        let t = v.cnf(&["a b"]);
        let part = QhPartition {
            q: v.atoms(&["a"]),
            h: AtomSet::new(),
        };
        assert_eq!(qh_partition_check(&t, &part), Err(Error::UncoveredAtom(v.atom("b"))));
        let part = QhPartition {
            q: v.atoms(&["a", "b"]),
            h: v.atoms(&["b"]),
        };
        assert_eq!(qh_partition_check(&t, &part), Err(Error::OverlappingPartition(v.atom("b"))));
    }

    #[test]
    fn q_horn_examples() {
        let mut v = Vocabulary::new();
        let pi = v.cnf(&["p q r", "p q -r", "-p -q r", "-p -q -r", "p -q"]);
        assert_eq!(q_horn_witness(&pi), None);

        let krom = v.cnf(&["p1 p2", "-p1 p3", "-p2 -p3", "-q"]);
        let w = q_horn_witness(&krom).unwrap();
        assert_eq!(w.partition.q, *krom.signature());
        assert!(w.partition.h.is_empty());

        let horn = v.cnf(&["-a -b c", "-c d", "-d"]);
        let w = q_horn_witness(&horn).unwrap();
        assert_eq!(qh_partition_check(&horn.rename(&w.renaming), &w.partition), Ok(true));
    }

    #[test]
    fn mixed_q_horn() {
        // binary clauses over {a, b}, a long Horn clause over {c, d, e}
        let mut v = Vocabulary::new();
        let t = v.cnf(&["a b", "-a -b", "-c -d e", "-e c"]);
        assert!(renamable_horn_witness(&t).is_some() || q_horn_witness(&t).is_some());
        let w = q_horn_witness(&t).unwrap();
        assert_eq!(qh_partition_check(&t.rename(&w.renaming), &w.partition), Ok(true));
    }

    #[test]
    fn double_horn_examples() {
        let mut v = Vocabulary::new();
        let l = Limits::default();
        assert_eq!(is_double_horn(&v.cnf(&["-p q"]), &l), Ok(true));
        assert_eq!(is_double_horn(&v.cnf(&["-p r", "-q r"]), &l), Ok(false));
        assert_eq!(is_double_horn(&v.cnf(&["-p"]), &l), Ok(true));
        assert_eq!(is_double_horn(&CnfTheory::new(), &l), Ok(true));
    }

    #[test]
    fn closure_transform_matches_pairwise() {
        // every family over 3 bits
        for family in 0u32..256 {
            let members: Vec<bool> = (0..8).map(|x| family >> x & 1 == 1).collect();
            let pairwise = (0..8).all(|a| {
                (0..8).all(|b| !(members[a] && members[b]) || members[a & b])
            });
            assert_eq!(closed_under_intersection(&members, 3), pairwise, "family {family:08b}");
        }
    }

    #[test]
    fn classify_report_chain() {
        let mut v = Vocabulary::new();
        let r = classify(&v.cnf(&["-a b", "-b"]), &Limits::default());
        assert!(r.horn && r.krom);
        assert_eq!(r.renamable_horn, Some(AtomSet::new()));
        assert!(r.q_horn.is_some());
        assert!(r.double_horn.is_some());
    }
}
