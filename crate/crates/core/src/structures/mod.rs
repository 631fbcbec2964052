//! Buds, ferns and junior caterpillars over a coloured graph.
//!
//! Each structure stores what the search found (including a witness colour
//! for every bud) but the validators never trust stored data: they recompute
//! every clause against the coloured graph. Clauses are checked in a fixed
//! order (structure, connectivity, bud bound, compatibility, adjacency
//! pattern) and the first failure is reported.

mod bud;
mod fern;
mod junior;

pub use bud::{is_alpha_bud, is_colour_compatible, Bud};
pub use fern::{grows_on, validate_fern, Fern, FernNode};
pub use junior::{validate_junior, JuniorCaterpillar};

use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    Structure,
    Connectivity,
    BudBound,
    Compatibility,
    PathInduced,
    AntiAdjacency,
    ParentChild,
    Neighbourhood,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Structure => "structure",
            Clause::Connectivity => "connectivity",
            Clause::BudBound => "bud bound",
            Clause::Compatibility => "colour compatibility",
            Clause::PathInduced => "induced path",
            Clause::AntiAdjacency => "anti-adjacency",
            Clause::ParentChild => "parent-child adjacency",
            Clause::Neighbourhood => "neighbourhood",
        })
    }
}

/// First violated clause of a validator, with a human-readable detail.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{clause}: {detail}")]
pub struct Violation {
    pub clause: Clause,
    pub detail: String,
}

impl Violation {
    pub(crate) fn new(clause: Clause, detail: impl Into<String>) -> Self {
        Violation { clause, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("an α-bud must be nonempty")]
    EmptyBud,
    #[error("vertex {0} outside the host graph")]
    OutOfRange(usize),
}
