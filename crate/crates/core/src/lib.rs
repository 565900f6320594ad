//! Computational toolkit for the equation sigma(n+1) = k * sigma(n):
//! solution search and density series, truncated additive functions with
//! their error-set decomposition, an exact CRT probability model with Lévy
//! concentration functions, divisor-partition classifiers, and the
//! conditional linear-form solution family for k = 2.

pub mod arith;
pub mod classifiers;
pub mod log_rational;
pub mod prob;
pub mod schinzel;
pub mod serde_util;
pub mod solutions;
pub mod truncation;

pub use log_rational::{BigRatio, LogRational};
