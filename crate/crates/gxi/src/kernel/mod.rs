//! Exact cyclotomic scalars, an approximate complex mode, and dense linear algebra.

mod approx;
mod cyclo;
mod field;
mod mat;

pub use approx::Approx;
pub use cyclo::{cyclotomic_polynomial, euler_phi, Scalar, DEFAULT_MAX_CONDUCTOR};
pub use field::Field;
pub use mat::{solve_linear, Echelon, Mat, Solution};

pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("conductor {needed} exceeds the configured bound {bound}")]
    ConductorOverflow { needed: u32, bound: u32 },
    #[error("conductor must be positive, got {0}")]
    BadConductor(u32),
    #[error("cannot lift conductor {from} to {to}")]
    BadLift { from: u32, to: u32 },
    #[error("conductor {conductor} needs {expected} coefficients, got {got}")]
    CoeffLength {
        conductor: u32,
        expected: usize,
        got: usize,
    },
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("inconsistent linear system: no solution")]
    NoSolution,
}

/// Maps exact data into a working field.
pub trait FromScalar: Field {
    fn from_scalar(s: &Scalar, tol: f64) -> Self;
}

impl FromScalar for Scalar {
    fn from_scalar(s: &Scalar, _tol: f64) -> Self {
        s.clone()
    }
}

impl FromScalar for Approx {
    fn from_scalar(s: &Scalar, tol: f64) -> Self {
        Approx::new(s.to_c64(), tol)
    }
}
