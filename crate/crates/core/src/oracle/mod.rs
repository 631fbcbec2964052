//! Ground truth: induced-subgraph search, brute-force pair search and the
//! certificate verifier that every emitted result passes through.

mod certificate;
mod pairs;
mod search;

pub use certificate::{verify_certificate, Certificate, CertificateKind, Embedding, Verdict};
pub use pairs::{max_anti_pair_bruteforce, BRUTE_FORCE_PAIR_MAX_N};
pub use search::{find_induced, find_induced_budgeted, find_induced_naive, SearchOutcome, NAIVE_SEARCH_MAX_HOST};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph on {n} vertices exceeds the exhaustive-search cap of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("malformed certificate: {0}")]
    Malformed(String),
}
