//! Fusion rings, F-symbols, and morphisms in fusion-tree bases.

mod category;
mod morph;
mod obj;
mod ring;
mod standard;

pub use category::SkeletalCategory;
pub use morph::Mor;
pub use obj::{Obj, Word};
pub use ring::FusionRing;
pub use standard::StandardSolution;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("malformed fusion data: {0}")]
    Malformed(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}
