//! Exact generating-function toolkit for ternary trees counted by nodes and
//! middle edges.
//!
//! * [`algebra`]: reduced rationals, truncated bivariate power series and
//!   the `sqrt(t)` extension ring.
//! * [`combinatorics`]: binomials and closed-form counts.
//! * [`trees`]: exhaustive enumeration, the brute-force oracle.
//! * [`gf`]: the cubic, its roots, reversion, `Xi` and the factorization.
//! * [`cli`]: the batch command-line surface.

pub mod algebra;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod gf;
pub mod trees;

pub use error::{Error, Result};
