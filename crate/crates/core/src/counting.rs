//! Solution counts c(d, k, mu): the number of ways to pick a size-k multiset
//! of exponent vectors from the index set { i in Z+^(n-1) : |i| <= d } whose
//! coordinatewise sum hits a prescribed target vector.
//!
//! Two backends compute the same number:
//! - [`count_solutions_dp`] extracts the coefficient from the truncated
//!   product `prod_eta 1/(1 - t q^eta)` one factor at a time, keeping only
//!   counts inside the target box;
//! - [`count_solutions_bruteforce`] enumerates assignments directly with
//!   feasibility pruning, and serves as the independent oracle.
//!
//! All counts are arbitrary-precision.

use num::bigint::BigUint;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::weyl::Weight;
use crate::Limits;

/// Hard guard on materialized index sets; far beyond any practical query.
const MAX_INDEX_SET: u128 = 100_000_000;

/// A monomial exponent vector i in Z+^(n-1) with |i| <= d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentIndex {
    exponents: Vec<u32>,
}

impl ExponentIndex {
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Total degree |i|.
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// The required column sums (one per coordinate) together with the required
/// multiset size k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetVector {
    targets: Vec<u64>,
    cardinality: u64,
}

impl TargetVector {
    pub fn new(targets: Vec<u64>, cardinality: u64) -> Result<Self> {
        if targets.is_empty() {
            return Err(Error::InvalidRank(1));
        }
        Ok(TargetVector {
            targets,
            cardinality,
        })
    }

    pub fn targets(&self) -> &[u64] {
        &self.targets
    }

    /// Required multiset size |alpha| = k.
    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    pub fn rank(&self) -> usize {
        self.targets.len() + 1
    }
}

/// Which counting backend to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Dp,
    BruteForce,
}

/// All lattice points of the simplex |i| <= d in Z+^(n-1), ordered by total
/// degree and lexicographically within each degree. Size is C(d+n-1, n-1).
pub fn index_set(n: usize, d: u32) -> Result<Vec<ExponentIndex>> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    if d < 1 {
        return Err(Error::InvalidParameter(format!(
            "form degree d must be at least 1, got {d}"
        )));
    }
    let size = simplex_size(n, d)?;

    let m = n - 1;
    let mut out = Vec::with_capacity(size as usize);
    let mut point = vec![0u32; m];
    for degree in 0..=d {
        push_compositions(degree, 0, &mut point, &mut out);
    }
    debug_assert_eq!(out.len() as u128, size);
    Ok(out)
}

/// C(d+n-1, n-1), with an overflow-safe cap check.
fn simplex_size(n: usize, d: u32) -> Result<u128> {
    let m = (n - 1) as u128;
    let mut size: u128 = 1;
    for j in 1..=m {
        size = size
            .checked_mul(d as u128 + j)
            .map(|v| v / j)
            .filter(|&v| v <= MAX_INDEX_SET)
            .ok_or(Error::ResourceLimit {
                what: "index set size",
                required: u128::MAX,
                cap: MAX_INDEX_SET,
            })?;
    }
    Ok(size)
}

/// Fill coordinates `pos..` with every composition of `remaining`, smallest
/// leading entries first, allowing slack (total may be less than requested
/// only through the caller's degree loop — here the sum is exact).
fn push_compositions(
    remaining: u32,
    pos: usize,
    point: &mut Vec<u32>,
    out: &mut Vec<ExponentIndex>,
) {
    if pos == point.len() - 1 {
        point[pos] = remaining;
        out.push(ExponentIndex {
            exponents: point.clone(),
        });
        return;
    }
    for value in 0..=remaining {
        point[pos] = value;
        push_compositions(remaining - value, pos + 1, point, out);
    }
}

/// Resolve (d, k, mu) into the required column sums: target_i = kd/n - mu'_i.
///
/// Returns `None` when any target is non-integral or negative; the count is
/// zero by definition then, and this is an ordinary outcome, not an error.
pub fn targets(d: u32, k: u32, mu: &Weight) -> Option<TargetVector> {
    let n = mu.rank() as i128;
    let kd = i128::from(k) * i128::from(d);
    let scaled = mu.mu_prime_scaled(); // n * mu'
    let mut out = Vec::with_capacity(scaled.len());
    for s in scaled {
        // target = (kd - n*mu') / n, exact or infeasible
        let numerator = kd - i128::from(s);
        if numerator < 0 || numerator % n != 0 {
            return None;
        }
        out.push((numerator / n) as u64);
    }
    Some(TargetVector {
        targets: out,
        cardinality: u64::from(k),
    })
}

/// Exhaustive enumeration of all assignments alpha: index set -> Z+ with
/// |alpha| = k and the prescribed column sums. Independent oracle for
/// [`count_solutions_dp`].
///
/// Monomials are consumed highest degree first so the constant monomial,
/// which only absorbs leftover cardinality, comes last. Branches are cut as
/// soon as the remaining budget cannot cover a remaining target.
pub fn count_solutions_bruteforce(
    d: u32,
    tv: &TargetVector,
    limits: &Limits,
) -> Result<BigUint> {
    let monos = index_set(tv.rank(), d)?;
    if monos.len() > 100_000 {
        return Err(Error::ResourceLimit {
            what: "brute-force index set",
            required: monos.len() as u128,
            cap: 100_000,
        });
    }
    let order: Vec<&ExponentIndex> = monos.iter().rev().collect();
    let m = tv.targets.len();

    // suffix_max[pos][s]: largest exponent in coordinate s from position pos on
    let mut suffix_max = vec![vec![0u64; m]];
    for mono in order.iter().rev() {
        let previous = suffix_max.last().expect("seeded with one row");
        let row: Vec<u64> = previous
            .iter()
            .zip(mono.exponents())
            .map(|(&acc, &e)| acc.max(u64::from(e)))
            .collect();
        suffix_max.push(row);
    }
    suffix_max.reverse();

    let mut state = SearchState {
        order: &order,
        suffix_max: &suffix_max,
        nodes: 0,
        cap: limits.max_bruteforce_nodes,
        count: 0,
    };
    let mut remaining = tv.targets.clone();
    state.descend(0, tv.cardinality, &mut remaining)?;
    Ok(BigUint::from(state.count))
}

struct SearchState<'a> {
    order: &'a [&'a ExponentIndex],
    suffix_max: &'a [Vec<u64>],
    nodes: u64,
    cap: u64,
    count: u64,
}

impl SearchState<'_> {
    fn descend(&mut self, pos: usize, rem_k: u64, rem_targets: &mut [u64]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::ResourceLimit {
                what: "brute-force search nodes",
                required: u128::from(self.nodes),
                cap: u128::from(self.cap),
            });
        }
        if pos == self.order.len() {
            if rem_k == 0 && rem_targets.iter().all(|&t| t == 0) {
                self.count += 1;
            }
            return Ok(());
        }
        // remaining budget must be able to cover every remaining target
        for (&target, &cover) in rem_targets.iter().zip(&self.suffix_max[pos]) {
            if target > rem_k.saturating_mul(cover) {
                return Ok(());
            }
        }
        let eta = self.order[pos].exponents();
        if eta.iter().all(|&e| e == 0) {
            // the constant monomial absorbs all leftover cardinality
            return self.descend(pos + 1, 0, rem_targets);
        }
        let mut max_mult = rem_k;
        for (s, &e) in eta.iter().enumerate() {
            if e > 0 {
                max_mult = max_mult.min(rem_targets[s] / u64::from(e));
            }
        }
        for mult in 0..=max_mult {
            if mult > 0 {
                for (s, &e) in eta.iter().enumerate() {
                    rem_targets[s] -= u64::from(e);
                }
            }
            self.descend(pos + 1, rem_k - mult, rem_targets)?;
        }
        // restore targets for the caller
        for (s, &e) in eta.iter().enumerate() {
            rem_targets[s] += max_mult * u64::from(e);
        }
        Ok(())
    }
}

/// Coefficient extraction from the truncated product
/// `prod_{|eta| <= d} 1/(1 - t q^eta)`: the count is the coefficient of
/// t^k q^targets.
///
/// Factors are folded in one monomial at a time over a table indexed by
/// (degree in t) x (flattened partial sum inside the target box); nothing
/// outside the box is ever stored.
pub fn count_solutions_dp(d: u32, tv: &TargetVector, limits: &Limits) -> Result<BigUint> {
    let monos = index_set(tv.rank(), d)?;
    let k = tv.cardinality;

    let mut box_size: u128 = 1;
    for &t in &tv.targets {
        box_size = box_size
            .checked_mul(t as u128 + 1)
            .ok_or(Error::ResourceLimit {
                what: "DP table cells",
                required: u128::MAX,
                cap: u128::from(limits.max_dp_cells),
            })?;
    }
    let cells = box_size
        .checked_mul(k as u128 + 1)
        .ok_or(Error::ResourceLimit {
            what: "DP table cells",
            required: u128::MAX,
            cap: u128::from(limits.max_dp_cells),
        })?;
    if cells > u128::from(limits.max_dp_cells) {
        return Err(Error::ResourceLimit {
            what: "DP table cells",
            required: cells,
            cap: u128::from(limits.max_dp_cells),
        });
    }

    let box_size = box_size as usize;
    let m = tv.targets.len();
    let mut strides = vec![1usize; m];
    for s in (0..m - 1).rev() {
        strides[s] = strides[s + 1] * (tv.targets[s + 1] as usize + 1);
    }

    let mut table = vec![BigUint::zero(); cells as usize];
    table[0] = BigUint::one(); // empty multiset: t^0 q^0

    for mono in &monos {
        let eta = mono.exponents();
        if eta
            .iter()
            .zip(&tv.targets)
            .any(|(&e, &t)| u64::from(e) > t)
        {
            continue; // can never be used inside the box
        }
        let delta: usize = eta
            .iter()
            .zip(&strides)
            .map(|(&e, &st)| e as usize * st)
            .sum();
        let lows: Vec<u64> = eta.iter().map(|&e| u64::from(e)).collect();
        for j in 1..=k as usize {
            // layer j reads layer j-1, which already includes uses of this
            // monomial: that is what makes the factor geometric in t
            let (lower, upper) = table.split_at_mut(j * box_size);
            let src = &lower[(j - 1) * box_size..];
            let dst = &mut upper[..box_size];
            for_each_box_offset(&lows, &tv.targets, &strides, |offset| {
                let add = &src[offset - delta];
                if !add.is_zero() {
                    dst[offset] += add;
                }
            });
        }
    }
    Ok(table[k as usize * box_size + (box_size - 1)].clone())
}

/// Visit the flattened offsets of every point `lows <= w <= highs`
/// (componentwise), last coordinate fastest.
fn for_each_box_offset(
    lows: &[u64],
    highs: &[u64],
    strides: &[usize],
    mut visit: impl FnMut(usize),
) {
    let m = lows.len();
    let mut cur = lows.to_vec();
    let mut offset: usize = cur
        .iter()
        .zip(strides)
        .map(|(&c, &st)| c as usize * st)
        .sum();
    loop {
        visit(offset);
        let mut s = m;
        loop {
            if s == 0 {
                return;
            }
            s -= 1;
            if cur[s] < highs[s] {
                cur[s] += 1;
                offset += strides[s];
                break;
            }
            offset -= (cur[s] - lows[s]) as usize * strides[s];
            cur[s] = lows[s];
        }
    }
}

/// The count c(d, k, mu): zero when the targets are infeasible, otherwise
/// the backend's count on the resolved target vector.
pub fn c(d: u32, k: u32, mu: &Weight, backend: Backend, limits: &Limits) -> Result<BigUint> {
    if d < 1 {
        return Err(Error::InvalidParameter(format!(
            "form degree d must be at least 1, got {d}"
        )));
    }
    match targets(d, k, mu) {
        None => Ok(BigUint::zero()),
        Some(tv) => match backend {
            Backend::Dp => count_solutions_dp(d, &tv, limits),
            Backend::BruteForce => count_solutions_bruteforce(d, &tv, limits),
        },
    }
}
