//! Weight combinatorics for the root system A_{n-1}.
//!
//! Weights live in fundamental-weight coordinates (length n-1). The L-basis
//! view (length n, defined up to a common shift) makes the Weyl group action
//! concrete: it is the symmetric group S_n permuting L-entries. Everything
//! here stays in integers except [`RationalWeight`], whose denominators
//! divide n.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use itertools::Itertools;
use num::rational::Ratio;

use crate::error::{Error, Result};
use crate::Limits;

/// A weight in fundamental-weight coordinates for rank n = len + 1.
///
/// Entries may be negative; dominant weights have all entries >= 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    coords: Vec<i64>,
}

impl Weight {
    /// Wrap fundamental coordinates; the rank is `coords.len() + 1`.
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidRank(1));
        }
        Ok(Weight { coords })
    }

    /// The half-sum of positive roots: (1,1,...,1) of length n-1.
    pub fn rho(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        Ok(Weight {
            coords: vec![1; n - 1],
        })
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Rank n of the ambient root system A_{n-1}.
    pub fn rank(&self) -> usize {
        self.coords.len() + 1
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    /// Coordinates on the L-basis, normalized so the last entry is 0.
    ///
    /// The inverse of successive differencing: `v[i] - v[i+1] = coords[i]`.
    pub fn to_lvector(&self) -> LVector {
        let n = self.rank();
        let mut entries = vec![0i64; n];
        for i in (0..n - 1).rev() {
            entries[i] = entries[i + 1] + self.coords[i];
        }
        LVector { entries }
    }

    /// The unique dominant weight on this weight's Weyl orbit.
    ///
    /// Sorting the L-vector descending realizes the orbit representative
    /// directly; no reflection chains are needed.
    pub fn dominant_representative(&self) -> Weight {
        let mut v = self.to_lvector();
        v.entries.sort_unstable_by(|a, b| b.cmp(a));
        v.to_weight()
    }

    /// The rational coordinate shift mu' used for coefficient extraction:
    ///
    /// `mu'_i = sum_{s=i}^{n-2} mu_s - (1/n) (sum_{s=1}^{n-2} s*mu_s - mu_{n-1})`
    ///
    /// for i = 1..n-1 (1-based). Entries may be negative or non-integral,
    /// but n * mu'_i is always an integer.
    pub fn mu_prime(&self) -> RationalWeight {
        let n = self.rank() as i64;
        let coords = self
            .mu_prime_scaled()
            .into_iter()
            .map(|num| Ratio::new(num, n))
            .collect();
        RationalWeight { coords }
    }

    /// n * mu' as an integer vector; avoids rationals on the counting path.
    pub(crate) fn mu_prime_scaled(&self) -> Vec<i64> {
        let n = self.rank() as i64;
        let mu = &self.coords;
        let len = mu.len();
        // shared term: sum_{s=1}^{n-2} s*mu_s - mu_{n-1}, 1-based indices
        let shared: i64 = mu[..len - 1]
            .iter()
            .enumerate()
            .map(|(idx, &m)| (idx as i64 + 1) * m)
            .sum::<i64>()
            - mu[len - 1];
        let mut suffix = 0i64; // sum_{s=i}^{n-2} mu_s
        let mut scaled = vec![0i64; len];
        for i in (0..len).rev() {
            if i < len - 1 {
                suffix += mu[i];
            }
            scaled[i] = n * suffix - shared;
        }
        scaled
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords.iter().join(","))
    }
}

/// Coordinates on the L-basis, length n, meaningful up to a common shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LVector {
    entries: Vec<i64>,
}

impl LVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidRank(entries.len()));
        }
        Ok(LVector { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Successive differences; the shift ambiguity cancels.
    pub fn to_weight(&self) -> Weight {
        let coords = self
            .entries
            .windows(2)
            .map(|w| w[0] - w[1])
            .collect();
        Weight { coords }
    }
}

/// One element of the signed orbit: the weight rho - s(rho) together with
/// the sign of the Weyl group element s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedWeight {
    pub weight: Weight,
    pub sign: i8,
}

/// A dominant weight with the net signed multiplicity it picked up when the
/// orbit was grouped by dominant representative. Zero multiplicities are
/// dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedDominantTerm {
    pub dominant: Weight,
    pub multiplicity: i64,
}

/// Exact-rational weight coordinates; denominators divide the rank n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalWeight {
    coords: Vec<Ratio<i64>>,
}

impl RationalWeight {
    pub fn coords(&self) -> &[Ratio<i64>] {
        &self.coords
    }
}

fn permutation_sign(perm: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All n! terms rho - s(rho) with sign sgn(s), one per permutation of the
/// L-vector of rho, in lexicographic permutation order.
pub fn signed_orbit_rho(n: usize, limits: &Limits) -> Result<Vec<SignedWeight>> {
    let rho = Weight::rho(n)?;
    if n > limits.max_rank {
        return Err(Error::ResourceLimit {
            what: "orbit rank",
            required: n as u128,
            cap: limits.max_rank as u128,
        });
    }
    let rho_l = rho.to_lvector();
    let entries = rho_l.entries();
    let mut orbit = Vec::new();
    for perm in (0..n).permutations(n) {
        let permuted: Vec<i64> = perm.iter().map(|&p| entries[p]).collect();
        let diff: Vec<i64> = entries
            .iter()
            .zip(&permuted)
            .map(|(a, b)| a - b)
            .collect();
        orbit.push(SignedWeight {
            weight: LVector { entries: diff }.to_weight(),
            sign: permutation_sign(&perm),
        });
    }
    Ok(orbit)
}

/// The signed orbit grouped by dominant representative, multiplicities
/// summed, zeros dropped, sorted lexicographically by dominant coordinates.
///
/// This is the term list the alternating dimension sum iterates over; it is
/// computed once per rank and memoized.
pub fn aggregate_orbit(n: usize, limits: &Limits) -> Result<Vec<SignedDominantTerm>> {
    static CACHE: Mutex<Option<HashMap<usize, Vec<SignedDominantTerm>>>> = Mutex::new(None);

    if let Some(cached) = CACHE
        .lock()
        .unwrap()
        .as_ref()
        .and_then(|map| map.get(&n))
    {
        return Ok(cached.clone());
    }

    let mut grouped: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for term in signed_orbit_rho(n, limits)? {
        let dominant = term.weight.dominant_representative();
        *grouped.entry(dominant.coords).or_insert(0) += i64::from(term.sign);
    }
    let terms: Vec<SignedDominantTerm> = grouped
        .into_iter()
        .filter(|&(_, m)| m != 0)
        .map(|(coords, multiplicity)| SignedDominantTerm {
            dominant: Weight { coords },
            multiplicity,
        })
        .collect();

    CACHE
        .lock()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(n, terms.clone());
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(coords: &[i64]) -> Weight {
        Weight::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn rho_fixtures() {
        assert_eq!(Weight::rho(3).unwrap(), w(&[1, 1]));
        assert_eq!(Weight::rho(2).unwrap(), w(&[1]));
        assert_eq!(Weight::rho(5).unwrap(), w(&[1, 1, 1, 1]));
        assert_eq!(Weight::rho(1).unwrap_err(), Error::InvalidRank(1));
        assert_eq!(Weight::rho(0).unwrap_err(), Error::InvalidRank(0));
    }

    #[test]
    fn lvector_conversion() {
        assert_eq!(w(&[1, 1]).to_lvector().entries(), &[2, 1, 0]);
        assert_eq!(w(&[2]).to_lvector().entries(), &[2, 0]);
        assert_eq!(w(&[-1, 2]).to_lvector().entries(), &[1, 2, 0]);

        assert_eq!(LVector::new(vec![2, 1, 0]).unwrap().to_weight(), w(&[1, 1]));
        // differences ignore a common shift
        assert_eq!(LVector::new(vec![5, 4, 3]).unwrap().to_weight(), w(&[1, 1]));
        assert_eq!(LVector::new(vec![0, 0]).unwrap().to_weight(), w(&[0]));
        assert!(LVector::new(vec![7]).is_err());
    }

    #[test]
    fn dominant_representative_fixtures() {
        assert_eq!(w(&[2, -1]).dominant_representative(), w(&[1, 1]));
        assert_eq!(w(&[-1, 2]).dominant_representative(), w(&[1, 1]));
        assert_eq!(w(&[2, 2]).dominant_representative(), w(&[2, 2]));
    }

    #[test]
    fn signed_orbit_rank_two() {
        let orbit = signed_orbit_rho(2, &Limits::default()).unwrap();
        assert_eq!(orbit.len(), 2);
        assert!(orbit.contains(&SignedWeight {
            weight: w(&[0]),
            sign: 1
        }));
        assert!(orbit.contains(&SignedWeight {
            weight: w(&[2]),
            sign: -1
        }));
    }

    #[test]
    fn signed_orbit_rank_three() {
        let orbit = signed_orbit_rho(3, &Limits::default()).unwrap();
        assert_eq!(orbit.len(), 6);
        let expected = [
            (vec![0, 0], 1),
            (vec![2, -1], -1),
            (vec![-1, 2], -1),
            (vec![2, 2], -1),
            (vec![0, 3], 1),
            (vec![3, 0], 1),
        ];
        for (coords, sign) in expected {
            assert!(
                orbit.iter().any(|t| t.weight.coords() == coords && i64::from(t.sign) == sign),
                "missing orbit term {:?} with sign {}",
                coords,
                sign
            );
        }
    }

    #[test]
    fn orbit_identity_term_is_zero() {
        for n in 2..=5 {
            let orbit = signed_orbit_rho(n, &Limits::default()).unwrap();
            // lexicographic permutation order puts the identity first
            assert_eq!(orbit[0].weight.coords(), vec![0i64; n - 1].as_slice());
            assert_eq!(orbit[0].sign, 1);
        }
    }

    #[test]
    fn orbit_rank_cap() {
        let err = signed_orbit_rho(9, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
        // the cap is configurable
        let relaxed = Limits {
            max_rank: 9,
            ..Limits::default()
        };
        assert_eq!(signed_orbit_rho(9, &relaxed).unwrap().len(), 362880);
    }

    #[test]
    fn aggregate_rank_three_matches_hand_computation() {
        let terms = aggregate_orbit(3, &Limits::default()).unwrap();
        let expected = [
            (vec![0i64, 0], 1i64),
            (vec![0, 3], 1),
            (vec![1, 1], -2),
            (vec![2, 2], -1),
            (vec![3, 0], 1),
        ];
        assert_eq!(terms.len(), expected.len());
        for (term, (coords, mult)) in terms.iter().zip(expected.iter()) {
            assert_eq!(term.dominant.coords(), coords.as_slice());
            assert_eq!(term.multiplicity, *mult);
        }
    }

    #[test]
    fn aggregate_rank_two() {
        let terms = aggregate_orbit(2, &Limits::default()).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].dominant, w(&[0]));
        assert_eq!(terms[0].multiplicity, 1);
        assert_eq!(terms[1].dominant, w(&[2]));
        assert_eq!(terms[1].multiplicity, -1);
    }

    #[test]
    fn aggregate_multiplicities_sum_to_zero() {
        for n in 2..=6 {
            let terms = aggregate_orbit(n, &Limits::default()).unwrap();
            let total: i64 = terms.iter().map(|t| t.multiplicity).sum();
            assert_eq!(total, 0, "n = {n}");
            assert!(terms.iter().all(|t| t.multiplicity != 0));
            assert!(terms.iter().all(|t| t.dominant.is_dominant()));
        }
    }

    #[test]
    fn mu_prime_hand_checked_values() {
        let cases = [
            (vec![0i64, 0], (0, 0)),
            (vec![1, 1], (1, 0)),
            (vec![2, 2], (2, 0)),
            (vec![0, 3], (1, 1)),
            (vec![3, 0], (2, -1)),
        ];
        for (mu, (a, b)) in cases {
            let prime = w(&mu).mu_prime();
            assert_eq!(
                prime.coords(),
                &[Ratio::from_integer(a), Ratio::from_integer(b)],
                "mu = {:?}",
                mu
            );
        }
        // n=2: mu' = mu/2
        assert_eq!(w(&[2]).mu_prime().coords(), &[Ratio::from_integer(1)]);
        assert_eq!(w(&[3]).mu_prime().coords(), &[Ratio::new(3, 2)]);
    }

    #[test]
    fn mu_prime_rank_three_closed_form() {
        // (mu1, mu2)' = ((2 mu1 + mu2)/3, (mu2 - mu1)/3)
        for mu1 in -6i64..=6 {
            for mu2 in -6i64..=6 {
                let prime = w(&[mu1, mu2]).mu_prime();
                assert_eq!(prime.coords()[0], Ratio::new(2 * mu1 + mu2, 3));
                assert_eq!(prime.coords()[1], Ratio::new(mu2 - mu1, 3));
            }
        }
    }

    #[test]
    fn display_matches_orbit_notation() {
        assert_eq!(w(&[0, 3]).to_string(), "(0,3)");
        assert_eq!(w(&[2]).to_string(), "(2)");
        assert_eq!(w(&[1, -2, 3]).to_string(), "(1,-2,3)");
    }

    mod properties {
        use super::*;
        use proptest::collection::vec;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn weight_to_lvector_round_trips(coords in vec(-50i64..=50, 1..6)) {
                let weight = Weight::new(coords.clone()).unwrap();
                let round_tripped = weight.to_lvector().to_weight();
                prop_assert_eq!(round_tripped.coords(), &coords[..]);
            }

            #[test]
            fn dominant_representative_is_dominant_and_idempotent(
                coords in vec(-20i64..=20, 1..6),
            ) {
                let dominant = Weight::new(coords).unwrap().dominant_representative();
                prop_assert!(dominant.is_dominant());
                prop_assert_eq!(&dominant.dominant_representative(), &dominant);
            }

            #[test]
            fn dominant_representative_ignores_lvector_order(
                (original, shuffled) in vec(-20i64..=20, 2..6)
                    .prop_flat_map(|v| (Just(v.clone()), Just(v).prop_shuffle())),
            ) {
                let a = LVector::new(original).unwrap().to_weight();
                let b = LVector::new(shuffled).unwrap().to_weight();
                prop_assert_eq!(
                    a.dominant_representative(),
                    b.dominant_representative()
                );
            }

            #[test]
            fn scaled_mu_prime_is_n_times_the_rational_one(
                coords in vec(-30i64..=30, 1..6),
            ) {
                let weight = Weight::new(coords).unwrap();
                let n = weight.rank() as i64;
                let scaled = weight.mu_prime_scaled();
                let rational = weight.mu_prime();
                for (s, r) in scaled.iter().zip(rational.coords()) {
                    prop_assert_eq!(Ratio::from_integer(*s), r * n);
                }
            }
        }
    }
}
