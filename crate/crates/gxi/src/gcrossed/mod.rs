//! Grading, strict group action and crossed braiding.

mod check;
mod group;
mod structure;

pub use crate::report::CheckReport;
pub use group::FiniteGroup;
pub use structure::GCrossed;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GCrossedError {
    #[error("invalid group: {0}")]
    Group(String),
    #[error("unknown group element {0:?}")]
    UnknownElement(String),
    #[error("malformed G-crossed data: {0}")]
    Malformed(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("object is not homogeneous: {0}")]
    NotHomogeneous(String),
}
