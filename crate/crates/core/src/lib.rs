//! Exact computation of Q-rational systems of discrete residues of rational
//! functions, with applications to rational summability, serial summability,
//! differential creative telescoping, and Galois groups of difference
//! equations.
//!
//! Everything is computed in exact rational arithmetic. The pipeline is
//! factorization-free: it needs only polynomial gcds, resultants, integer
//! root extraction, and linear algebra over Q and Z.

pub mod dispersion;
pub mod error;
pub mod galois;
pub mod hermite;
pub mod linalg;
pub mod qpoly;
pub mod ratfun;
pub mod reduce;
pub mod residues;
pub mod telescope;

pub use error::{Error, Result};
pub use qpoly::{Poly, Rat};
pub use ratfun::RatFun;
