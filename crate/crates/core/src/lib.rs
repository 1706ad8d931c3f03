//! Forgetting in propositional CNF theories.
//!
//! The crate is organised bottom-up:
//!
//! * [`logic`] holds the data model (atoms, literals, clauses, terms,
//!   theories, interpretations) together with resolution, subsumption,
//!   renaming and substitution.
//! * [`models`] is the brute-force semantic oracle.
//! * [`prime`] computes prime implicates and implicants.
//! * [`sat`] decides satisfiability and entailment with fragment-aware
//!   dispatch (Horn, 2-SAT, DPLL).
//! * [`fragments`] classifies theories into Horn, Krom, renamable Horn,
//!   q-Horn and double Horn, returning witnesses.
//! * [`forget`] implements forgetting by strong unfolding, plus the
//!   prime-implicate, substitution and model-extension cross-check routes.
//! * [`reasoning`] builds the decision problems, strongest necessary and
//!   weakest sufficient conditions, and definability on top.

pub mod error;
pub mod forget;
pub mod fragments;
pub mod logic;
pub mod models;
pub mod prime;
pub mod reasoning;
pub mod sat;

pub use error::{Error, Result};
pub use logic::{
    Atom, AtomSet, Clause, CnfTheory, DnfTheory, Interpretation, Literal, Term, Truth, Vocabulary,
};
pub use models::Limits;
