use thiserror::Error;

use crate::logic::{Atom, Clause};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A guarded computation would exceed its configured size bound.
    #[error("resource limit exceeded: {what} needs {requested}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("clause {0} is not Horn")]
    NotHorn(Clause),

    #[error("clause {0} has more than two literals")]
    NotKrom(Clause),

    #[error("atom {0} is not covered by the partition")]
    UncoveredAtom(Atom),

    #[error("partition is not disjoint: atom {0} is in both Q and H")]
    OverlappingPartition(Atom),

    #[error("atom order is not a permutation of the forgotten set")]
    BadAtomOrder,

    #[error("target atom {0} must not belong to the vocabulary")]
    TargetInVocabulary(Atom),

    #[error("condition mentions atom {0} outside the vocabulary")]
    ConditionOutsideVocabulary(Atom),

    #[error("task {0} requires a second theory")]
    MissingTheory(&'static str),
}

impl Error {
    pub(crate) fn limit(what: &'static str, requested: usize, limit: usize) -> Self {
        Error::ResourceLimit {
            what,
            requested,
            limit,
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
