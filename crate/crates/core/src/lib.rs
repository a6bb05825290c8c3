//! Exact computer algebra for the rank-two complex reflection groups
//! G(m,p,2): invariants, irreducible representations, higher Specht
//! polynomials, matrix factorizations of the discriminant and their
//! classification up to graded equivalence.

pub mod classify;
pub mod cyclotomic;
pub mod decompose;
pub mod error;
pub mod frame;
pub mod grammar;
pub mod group;
pub mod linalg;
pub mod matfac;
pub mod rep;
pub mod report;
pub mod sigma;
pub mod specht;
pub mod xypoly;

pub use error::{Error, ExactError, Result};
