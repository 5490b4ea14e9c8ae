//! Growth-theoretic and formal invariants of exponential polynomials and
//! good models at an irregular singular point of the complex line.
//!
//! The library is organized around six areas:
//!
//! - [`exppoly`]: exact exponential polynomials φ ∈ z^{-1/l}ℚ(i)[z^{-1/l}]
//!   and their basic invariants;
//! - [`growth`]: support arcs, Stokes directions, sector verdicts, and
//!   constructive comparison witnesses for exp(φ);
//! - [`puiseux`]: truncated power series, the normalization η(z) = zσ(z)
//!   with φ(η(z)) = z^{-n}, and level-curve branch tracing;
//! - [`models`]: good models, Hom dimensions, and isomorphism deciders for
//!   tempered-solution data;
//! - [`oracle`]: seeded numeric sampling and growth-exponent fitting, the
//!   independent cross-check for every analytic verdict;
//! - [`region`]: the semianalytic test regions shared by the above.

pub mod angle;
pub mod bigfloat;
pub mod error;
pub mod exppoly;
pub mod num;
pub mod parse;
pub mod poly;
pub mod puiseux;
pub mod radical;
pub mod series;

pub use error::{Error, Result};
