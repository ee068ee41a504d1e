//! Multiparameter Fuss-Catalan series solutions of algebraic equations.
//!
//! The crate evaluates Fuss-Catalan numbers and their generating functions,
//! turns a polynomial plus a pivot pair into convergent series for its roots,
//! and decides with exact discriminants where those series converge absolutely.

pub mod algebraic;
pub mod casebook;
pub mod convergence;
pub mod cplx;
pub mod discriminant;
pub mod domain;
mod error;
pub mod fc;
pub mod multipoly;

pub use error::{FcError, Result};
pub use num_complex::Complex64;
