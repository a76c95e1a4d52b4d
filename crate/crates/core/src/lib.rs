//! Exact arithmetic for truncated formal power series, the Riordan near
//! algebra of pairs `(mu ; sigma)` under the ⋊ product, the formal calculus
//! Φ on its ideal, the associated Cauchy-product algebra, and Riordan matrix
//! generation.
//!
//! Everything is computed over arbitrary-precision rationals; each series
//! carries its own truncation order and mixed-precision operations are
//! rejected rather than coerced.

pub mod calculus;
pub mod cauchy;
pub mod checks;
pub mod error;
pub mod matrix;
pub mod parse;
pub mod rational;
pub mod riordan;
pub mod series;

pub use calculus::{binomial, phi_apply, rtimes_binomial_power, term_bound};
pub use cauchy::CauchyElement;
pub use error::{Error, Result};
pub use matrix::{to_matrix, Correspondence, RiordanMatrix};
pub use parse::{parse_pair, parse_series};
pub use rational::{Field, Rational};
pub use riordan::RiordanElement;
pub use series::{Series, Valuation};
