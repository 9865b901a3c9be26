//! Reachability machinery for vector addition systems with states: exact
//! semantics, cycle-space geometry, pumping, reductions between systems,
//! and brute-force oracles to check them against.

pub mod geometry;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod pumping;
pub mod reductions;
pub mod vector;

pub use model::{
    Configuration, Encoding, ModelError, Path, ReachInstance, Run, Semantics, SequentialTransition, SequentialVas,
    StateId, System, Transition, Vass, VAS_STATE,
};
pub use vector::IntVector;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("capacity exceeded: {what} (cap {cap})")]
    Capacity { what: String, cap: usize },
    #[error("infeasible lift: {0}")]
    InfeasibleLift(String),
    #[error("search limit reached: {0}")]
    SearchLimit(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
