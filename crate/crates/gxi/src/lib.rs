//! Exact engine for skeletal braided G-crossed fusion categories, Q-systems
//! with equivariant structure, and twisted α-induction.

pub mod catalog;
pub mod fusion;
pub mod gcrossed;
pub mod induction;
pub mod io;
pub mod kernel;
pub mod qsystem;
pub mod report;

pub use report::{Check, CheckReport, Status};
