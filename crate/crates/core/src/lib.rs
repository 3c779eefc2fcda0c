//! Exact umbral calculus for Lévy processes.
//!
//! Umbrae are moment sequences with exact rational (or polynomial) entries.
//! On top of them the crate builds time-space harmonic polynomial bases,
//! classical polynomial families, Kailath–Segall polynomials and their
//! multivariate analogues.

pub mod combinatorics;
pub mod error;
pub mod families;
pub mod kailath_segall;
pub mod multivar;
pub mod poly;
pub mod series;
pub mod tsh;
pub mod umbra;

pub use error::{Result, UmbralError};
pub use poly::{rat, ratio, Monomial, Poly, Rational, Var};
pub use series::Series;
pub use umbra::{DotFactor, LevyTriplet, Umbra};
