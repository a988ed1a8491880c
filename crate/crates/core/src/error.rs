use alloc::string::String;

use crate::circle::CircleError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("element {element} does not belong to {group}")]
    FamilyMismatch { group: String, element: String },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("unsupported quotient: {0}")]
    UnsupportedQuotient(String),
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("unsupported subgroup: {0}")]
    UnsupportedSubgroup(String),
    #[error("elements do not commute")]
    NotCommuting,
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("the image of the cocycle generates an infinite subgroup of the circle")]
    InfiniteDSigma,
    #[error("operation requires a finite group")]
    InfiniteGroup,
    #[error("group of order {order} exceeds the cap of {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Circle(#[from] CircleError),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
