//! The constructive steps: growing induced paths, growing buds and attaching
//! legs, turning a deep fern into a junior caterpillar, and the recursive
//! junior-caterpillar search.
//!
//! Every step that the underlying argument closes by contradiction ("else
//! there is a large anti-adjacent pair") is a runtime branch here that
//! returns that pair as a certificate.

mod fern2cat;
mod legs;
mod path;
mod search;

pub use fern2cat::fern_to_junior;
pub use legs::{attach_legs, grow_bud, BudRecord, LegsFound};
pub use path::{path_grow, PathGrowResult};
pub use search::{junior_search, LevelParams, SearchState};

use crate::oracle::Certificate;
use thiserror::Error;

/// Either a certificate harvested on the way, or the requested structure.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Pair(Certificate),
    Found(T),
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(x) => Some(x),
            Outcome::Pair(_) => None,
        }
    }

    pub fn pair(self) -> Option<Certificate> {
        match self {
            Outcome::Pair(c) => Some(c),
            Outcome::Found(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgoError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("colouring is not clean enough: {0}")]
    NotClean(String),
    #[error("only {available} classes survive, {needed} needed for the next level")]
    TooFewClasses { needed: usize, available: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
