//! Ground-truth engines: bounded breadth-first reachability and length sets,
//! Karp–Miller coverability, simple-cycle enumeration, subset-sum brute force.
//!
//! Searches run on machine integers. Every vector is bounded by the norm
//! budget plus one step, so arithmetic is checked once at compile time.

mod bfs;
mod compiled;
mod cycles;
mod karp_miller;
mod subset;

pub use bfs::{explore, len_set, reach_bfs, Exploration, LenSet, ReachOutcome, SearchBudget};
pub use cycles::{enumerate_simple_cycles, SimpleCycles};
pub use karp_miller::{cover_witness, coverable};
pub use subset::subset_sum_bruteforce;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("value {0} is too large for the search engine")]
    Overflow(String),
    #[error("subset-sum brute force is limited to {limit} items, got {got}")]
    Guard { limit: usize, got: usize },
    #[error("coverability tree exceeded {0} nodes")]
    NodeLimit(usize),
    #[error(transparent)]
    Model(#[from] crate::model::ModelError),
}

impl From<OracleError> for crate::Error {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Model(m) => crate::Error::Model(m),
            OracleError::NodeLimit(n) => crate::Error::Capacity {
                what: "coverability tree".into(),
                cap: n,
            },
            other => crate::Error::SearchLimit(other.to_string()),
        }
    }
}
