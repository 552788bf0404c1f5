//! Exact linear algebra for minor summation formulae.
//!
//! Determinants and Pfaffians over integers, rationals and sparse
//! multivariate polynomials; evaluators and two-sided checkers for
//! determinant/Pfaffian factorisation identities; skew Schur functions; and
//! counting of non-intersecting lattice paths with free endpoints.

pub mod combinat;
pub mod identities;
pub mod matrix;
pub mod paths;
pub mod ring;
pub mod symfun;

pub use combinat::{IndexSet, Partition, PerfectMatching};
pub use identities::{IdentityError, IdentityId, IdentityReport};
pub use matrix::{Matrix, MatrixError, Structured};
pub use ring::{RingError, RingTag, Scalar};
