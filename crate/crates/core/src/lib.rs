//! Exact workbench for the nonpositive parts of the five exceptional simple
//! Lie superalgebras of vector fields: E(4,4), E(5,10), E(3,6), E(3,8) and
//! E(1,6).
//!
//! The crate builds each algebra from a concrete realization (matrices,
//! divergence-free vector fields with closed 2-forms, contact polynomials),
//! checks the structural invariants of a graded Lie superalgebra, and
//! classifies the even maps `σ` that satisfy the Hom-Jacobi identity and
//! multiplicativity. All arithmetic is over the rationals.

pub mod algebra;
pub mod builders;
pub mod error;
pub mod format;
pub mod linalg;
pub mod parity;
pub mod rational;
pub mod replay;
pub mod solver;
pub mod superpoly;

pub use algebra::{AlgebraElement, BasisElement, GradedSuperalgebra};
pub use builders::{build, AlgebraId};
pub use error::{Error, Result};
pub use parity::Parity;
pub use rational::Rational;
