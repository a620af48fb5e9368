//! Exact computations in the q-deformed stuffle Hopf algebra over the
//! alphabet `Y = {y_1, y_2, ...}` with coefficients in `ℚ[q]`.
//!
//! The crate provides words and noncommutative polynomials, the q-stuffle
//! product and its dual coproduct, the Eulerian projector `π_1` and its
//! adjoint, and the pair of dual bases `{Π_w}` and `{Σ_w}` built from Lyndon
//! words, together with the checks relating them.

pub mod bases;
pub mod coeff;
pub mod error;
pub mod eulerian;
pub mod lyndon;
pub mod ncpoly;
pub mod ops;
pub mod render;
pub mod report;
pub mod words;

pub use bases::{BasisKind, GradedBasis, Pbw};
pub use coeff::{QCoefficient, Rational};
pub use error::Error;
pub use ncpoly::{NCPolynomial, Tensor2Polynomial};
pub use ops::StuffleAlgebra;
pub use report::Report;
pub use words::{Letter, Word};
