//! Matrix ground truth for twisted group algebras `C*(G, σ)` of finite groups.
//!
//! Every quantity is computed from the matrices `λ_σ(g)` on `ℓ²(G)` with
//! floating point linear algebra, independently of the exact procedures in
//! `kleppner-core`.

mod algebra;
mod linalg;
mod report;
mod trace;

pub use algebra::{Monomial, TwistedAlgebra, DEFAULT_THETA, MAX_ORDER};
pub use linalg::{GUARD_HIGH, GUARD_LOW, RANK_THRESHOLD};
pub use report::{carey_moran_instances, OracleReport};
pub use trace::{ExpansionForm, TraceVector};

use kleppner_core::error::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("group of order {order} exceeds the oracle cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("cocycle has a formal parameter and no numeric value was supplied")]
    MissingThetaValue,
    #[error("invalid trace: {0}")]
    InvalidTrace(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type Result<T> = std::result::Result<T, OracleError>;
