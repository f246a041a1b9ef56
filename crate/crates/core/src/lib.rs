//! Finite graphs of groups with cusps, the moves on them
//! (contraction, slides, stabilization, amalgamification), branch
//! point counting, generating-system certificates, and the graph
//! constructions realizing cyclic-by-pasted covers.

pub mod branch;
pub mod construct;
pub mod gog;
pub mod group;
pub mod io;
pub mod perm;
pub mod presentation;
pub mod ret;
pub mod snf;

pub use gog::{End, GraphOfGroups, Mono, Signature};
pub use group::FiniteGroup;
pub use perm::Perm;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input or broken type invariant.
    #[error("validation: {0}")]
    Validation(String),
    /// A move whose precondition fails on the given data.
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    /// Internally contradictory data discovered mid-computation.
    #[error("inconsistent: {0}")]
    Inconsistent(String),
    /// A structural precondition (stability, tree shape, ...) fails.
    #[error("structural: {0}")]
    Structural(String),
    /// A configured resource cap was exceeded.
    #[error("resource: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
