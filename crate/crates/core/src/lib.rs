//! Dimensions of the graded pieces of the invariant algebra of n-ary forms,
//! and truncated Poincare series, computed in exact arbitrary-precision
//! arithmetic.
//!
//! For the space of n-ary forms of degree `d`, the homogeneous invariants of
//! degree `k` form a finite-dimensional vector space; this crate computes its
//! dimension `nu(n, d, k)` and the truncated generating function
//! `P(t) = sum_k nu(n, d, k) t^k`.
//!
//! The computation runs as a signed sum over the Weyl group orbit of the
//! half-sum of positive roots: each orbit term contributes a vector-partition
//! count extracted as a coefficient of a truncated multivariate product. Two
//! independent counting backends are provided (a dynamic-programming
//! coefficient extraction and a brute-force lattice enumeration), plus a
//! classical restricted-partition cross-check for the binary case.
//!
//! Module map:
//! - [`weyl`] — weight coordinates for the root system A_{n-1}, the signed
//!   orbit of rho, dominant representatives, and the rational coordinate
//!   shift used for coefficient extraction.
//! - [`counting`] — the solution counts `c(d, k, mu)`: index sets, target
//!   vectors, and both counting backends.
//! - [`poincare`] — assembly of `nu` and [`poincare::SeriesTruncation`],
//!   and the independent binary-case formula.
//! - [`cli`] — the command-line front end (`dim`, `series`, `orbit`,
//!   `check`) with plain/LaTeX/JSON output and an optional result cache.
//!
//! All counts are exact: `BigUint`/`BigInt` end to end, no floating point.

pub mod cli;
pub mod counting;
pub mod error;
pub mod poincare;
pub mod weyl;

pub use error::{Error, Result};

/// Resource caps for the computation paths that can blow up (factorial orbit
/// size, DP table volume, brute-force search tree).
///
/// Every cap is a hard error when exceeded, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest accepted rank n; the signed orbit has n! elements.
    pub max_rank: usize,
    /// Largest accepted DP table size, in cells.
    pub max_dp_cells: u64,
    /// Largest accepted brute-force search tree, in visited nodes.
    pub max_bruteforce_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rank: 8,
            max_dp_cells: 10_000_000,
            max_bruteforce_nodes: 50_000_000,
        }
    }
}
