//! Dimensions nu(n, d, k) of the degree-k piece of the invariant algebra of
//! n-ary forms of degree d, and truncated Poincare series built from them.
//!
//! The dimension is the signed sum, over the aggregated orbit of rho under
//! the symmetric group, of the solution counts from [`crate::counting`]:
//!
//! ```text
//! nu(n, d, k) = sum_mu  m(mu) * c(d, k, mu)
//! ```
//!
//! with integer multiplicities m(mu) from [`crate::weyl::aggregate_orbit`].
//! A strictly negative sum cannot come from a dimension and is reported as
//! an internal-inconsistency error rather than silently clamped.

use num::bigint::{BigInt, BigUint, Sign};
use num::{One, Zero};
use rayon::prelude::*;

use crate::counting::{self, Backend};
use crate::error::{Error, Result};
use crate::weyl;
use crate::Limits;

/// The coefficients nu(n, d, 0), ..., nu(n, d, max_degree) of the Poincare
/// series of the invariant algebra, truncated after `max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTruncation {
    n: usize,
    d: u32,
    coefficients: Vec<BigUint>,
}

impl SeriesTruncation {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn max_degree(&self) -> u32 {
        (self.coefficients.len() - 1) as u32
    }

    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: u32) -> Option<&BigUint> {
        self.coefficients.get(k as usize)
    }
}

fn validate(n: usize, d: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    if d < 1 {
        return Err(Error::InvalidParameter(format!(
            "form degree d must be at least 1, got {d}"
        )));
    }
    Ok(())
}

/// nu(n, d, k) with default backend and limits.
pub fn nu(n: usize, d: u32, k: u32) -> Result<BigUint> {
    nu_with(n, d, k, Backend::Dp, &Limits::default())
}

/// nu(n, d, k): the number of linearly independent degree-k invariants.
///
/// Short-circuits: the empty product gives nu = 1 at k = 0, and nu = 0
/// whenever n does not divide k*d (no target vector is integral then).
pub fn nu_with(n: usize, d: u32, k: u32, backend: Backend, limits: &Limits) -> Result<BigUint> {
    validate(n, d)?;
    if k == 0 {
        return Ok(BigUint::one());
    }
    if (u64::from(k) * u64::from(d)) % (n as u64) != 0 {
        return Ok(BigUint::zero());
    }
    let sum = nu_alternating_sum(n, d, k, backend, limits)?;
    match sum.sign() {
        Sign::Minus => Err(Error::NegativeDimension {
            n,
            d,
            k,
            value: sum.to_string(),
        }),
        _ => Ok(sum.magnitude().clone()),
    }
}

/// The raw signed sum over the aggregated orbit, with no short-circuits.
///
/// Exposed so the structural identities (value 1 at k = 0, value 0 whenever
/// n does not divide k*d) can be tested against the sum itself.
pub fn nu_alternating_sum(
    n: usize,
    d: u32,
    k: u32,
    backend: Backend,
    limits: &Limits,
) -> Result<BigInt> {
    validate(n, d)?;
    let mut acc = BigInt::zero();
    for term in weyl::aggregate_orbit(n, limits)? {
        let count = counting::c(d, k, &term.dominant, backend, limits)?;
        acc += BigInt::from(term.multiplicity) * BigInt::from(count);
    }
    Ok(acc)
}

/// Truncated Poincare series with default backend and limits.
pub fn series_truncated(n: usize, d: u32, max_degree: u32) -> Result<SeriesTruncation> {
    series_truncated_with(n, d, max_degree, Backend::Dp, &Limits::default())
}

/// All coefficients nu(n, d, k) for k = 0..=max_degree.
///
/// Coefficients are independent and are computed in parallel; the result
/// (including which error wins if several degrees fail) is deterministic,
/// errors being reported for the smallest failing k.
pub fn series_truncated_with(
    n: usize,
    d: u32,
    max_degree: u32,
    backend: Backend,
    limits: &Limits,
) -> Result<SeriesTruncation> {
    validate(n, d)?;
    // warm the aggregated-orbit cache before fanning out
    weyl::aggregate_orbit(n, limits)?;
    let results: Vec<Result<BigUint>> = (0..=max_degree)
        .into_par_iter()
        .map(|k| nu_with(n, d, k, backend, limits))
        .collect();
    let coefficients = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SeriesTruncation {
        n,
        d,
        coefficients,
    })
}

/// Independent check for binary forms (n = 2): nu(2, d, k) equals the number
/// of partitions with at most k parts, each part at most d, of (dk)/2, minus
/// the same count for (dk)/2 - 1. Zero when dk is odd.
///
/// This classical count shares no code with the orbit/counting pipeline.
pub fn sylvester_cayley_binary(d: u32, k: u32) -> BigUint {
    let dk = u64::from(d) * u64::from(k);
    if dk % 2 != 0 {
        return BigUint::zero();
    }
    let half = dk / 2;
    let first = bounded_partitions(half, d, k);
    if half == 0 {
        return first;
    }
    let second = bounded_partitions(half - 1, d, k);
    // the difference is a dimension, hence never negative
    first - second
}

/// Partitions of `total` into at most `max_parts` parts, each at most
/// `max_part`.
fn bounded_partitions(total: u64, max_part: u32, max_parts: u32) -> BigUint {
    let total = total as usize;
    // table[p][t]: partitions of t into exactly p parts from 1..=max_part,
    // filled one part size at a time
    let parts = max_parts as usize;
    let mut table = vec![vec![BigUint::zero(); total + 1]; parts + 1];
    table[0][0] = BigUint::one();
    for part in 1..=max_part as usize {
        for p in 1..=parts {
            for t in part..=total {
                let add = table[p - 1][t - part].clone();
                if !add.is_zero() {
                    table[p][t] += add;
                }
            }
        }
    }
    let mut acc = BigUint::zero();
    for row in table.iter().take(parts + 1) {
        acc += &row[total];
    }
    acc
}
