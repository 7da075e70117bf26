//! Exact multivariate negative hypergeometric distribution.
//!
//! Model: `W` indistinguishable draws-with-repetition are distributed among
//! `k` groups of classes with sizes `n₁, …, n_k` (total `N = Σn_i`); the
//! outcome is the composition `(v₁, …, v_k)` of `W` recording how many draws
//! land in each group.  The probability mass function is a ratio of multiset
//! coefficients,
//!
//! ```text
//! P(v₁, …, v_k) = ⟨⟨n₁, v₁⟩⟩ ⋯ ⟨⟨n_k, v_k⟩⟩ / ⟨⟨N, W⟩⟩,
//! ```
//!
//! and the expectation of each group count has the closed form
//! `E[v_j] = n_j·⟨⟨N+1, W−1⟩⟩ / ⟨⟨N, W⟩⟩`.
//!
//! Everything here is exact rational arithmetic — no floating point.  The
//! invariants (normalization sums to exactly 1, closed-form expectation
//! equals the exhaustive sum, `Σ_j E[v_j] = W`) hold as identities, not
//! approximations, and the test suite checks them that way.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::binom::multiset;
use crate::error::CalcError;
use crate::identities::CompositionVisitor;

/// Parameters of the distribution: positive group sizes and the number of
/// draws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NHGParams {
    group_sizes: Vec<u64>,
    draws: u64,
}

impl NHGParams {
    /// Validates that there is at least one group and every group size is
    /// positive.
    pub fn new(group_sizes: Vec<u64>, draws: u64) -> Result<Self, CalcError> {
        if group_sizes.is_empty() {
            return Err(CalcError::Domain("at least one group is required".into()));
        }
        if let Some(pos) = group_sizes.iter().position(|&n| n == 0) {
            return Err(CalcError::Domain(format!(
                "group sizes must be positive; group {} is 0",
                pos + 1
            )));
        }
        Ok(NHGParams { group_sizes, draws })
    }

    /// Group sizes `n₁, …, n_k`.
    pub fn group_sizes(&self) -> &[u64] {
        &self.group_sizes
    }

    /// Number of groups `k`.
    pub fn group_count(&self) -> usize {
        self.group_sizes.len()
    }

    /// Total number of classes `N = Σ n_i`.
    pub fn total_size(&self) -> u64 {
        self.group_sizes.iter().sum()
    }

    /// Number of draws `W`.
    pub fn draws(&self) -> u64 {
        self.draws
    }
}

/// An exact probability: a reduced rational in `[0, 1]` with positive
/// denominator.  Displays as `num/den`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactProbability {
    value: BigRational,
}

impl ExactProbability {
    fn from_rational(value: BigRational) -> Self {
        debug_assert!(!value.is_negative(), "probability below 0: {value}");
        debug_assert!(value <= BigRational::one(), "probability above 1: {value}");
        ExactProbability { value }
    }

    /// Reduced numerator.
    pub fn numerator(&self) -> &BigInt {
        self.value.numer()
    }

    /// Reduced (positive) denominator.
    pub fn denominator(&self) -> &BigInt {
        self.value.denom()
    }

    /// The probability as an exact rational.
    pub fn as_rational(&self) -> &BigRational {
        &self.value
    }
}

impl fmt::Display for ExactProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.value))
    }
}

/// Formats a rational as `num/den` with the denominator always explicit.
pub fn format_rational(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Probability of drawing exactly the composition `v₁, …, v_k`:
/// `Π ⟨⟨n_i, v_i⟩⟩ / ⟨⟨N, W⟩⟩`, reduced.
///
/// Errors when `v` has the wrong number of groups or its sum is not `W`.
pub fn nhg_pmf(params: &NHGParams, counts: &[u64]) -> Result<ExactProbability, CalcError> {
    if counts.len() != params.group_count() {
        return Err(CalcError::Domain(format!(
            "expected {} group counts, got {}",
            params.group_count(),
            counts.len()
        )));
    }
    let got: u64 = counts.iter().sum();
    if got != params.draws() {
        return Err(CalcError::CompositionMismatch { got, expected: params.draws() });
    }
    let mut numerator = BigInt::one();
    for (&n, &v) in params.group_sizes().iter().zip(counts) {
        numerator *= multiset(n as i64, v as i64);
    }
    let denominator = multiset(params.total_size() as i64, params.draws() as i64);
    Ok(ExactProbability::from_rational(BigRational::new(numerator, denominator)))
}

/// Sum of the pmf over every composition of `W` into `k` non-negative
/// counts.  A correct distribution returns exactly 1.
pub fn nhg_normalization(params: &NHGParams) -> ExactProbability {
    let mut numerator_sum = BigInt::zero();
    let mut compositions =
        CompositionVisitor::new(params.draws() as i64, params.group_count(), 0);
    while let Some(counts) = compositions.next_composition() {
        let mut term = BigInt::one();
        for (&n, &v) in params.group_sizes().iter().zip(counts) {
            term *= multiset(n as i64, v);
        }
        numerator_sum += term;
    }
    let denominator = multiset(params.total_size() as i64, params.draws() as i64);
    ExactProbability::from_rational(BigRational::new(numerator_sum, denominator))
}

/// Closed-form expectation of the `group`-th count (1-based):
/// `E[v_j] = n_j·⟨⟨N+1, W−1⟩⟩ / ⟨⟨N, W⟩⟩` (0 when `W = 0`).
///
/// Expectations are rationals in `[0, W]`, not probabilities.
pub fn nhg_expectation(params: &NHGParams, group: usize) -> Result<BigRational, CalcError> {
    if group == 0 || group > params.group_count() {
        return Err(CalcError::Domain(format!(
            "group index {group} out of range 1..={}",
            params.group_count()
        )));
    }
    if params.draws() == 0 {
        return Ok(BigRational::zero());
    }
    let n_j = BigInt::from(params.group_sizes()[group - 1]);
    let numerator =
        n_j * multiset(params.total_size() as i64 + 1, params.draws() as i64 - 1);
    let denominator = multiset(params.total_size() as i64, params.draws() as i64);
    Ok(BigRational::new(numerator, denominator))
}

/// Expectation of the `group`-th count (1-based) by direct summation of
/// `v_j·pmf` over every composition — the oracle the closed form is checked
/// against.
pub fn nhg_expectation_exhaustive(
    params: &NHGParams,
    group: usize,
) -> Result<BigRational, CalcError> {
    if group == 0 || group > params.group_count() {
        return Err(CalcError::Domain(format!(
            "group index {group} out of range 1..={}",
            params.group_count()
        )));
    }
    let mut numerator_sum = BigInt::zero();
    let mut compositions =
        CompositionVisitor::new(params.draws() as i64, params.group_count(), 0);
    while let Some(counts) = compositions.next_composition() {
        let mut term = BigInt::from(counts[group - 1]);
        for (&n, &v) in params.group_sizes().iter().zip(counts) {
            term *= multiset(n as i64, v);
        }
        numerator_sum += term;
    }
    let denominator = multiset(params.total_size() as i64, params.draws() as i64);
    Ok(BigRational::new(numerator_sum, denominator))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every group-size composition with `N ≤ n_max` and `k ≤ k_max`.
    fn all_group_vectors(n_max: u64, k_max: usize) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for total in 1..=n_max {
            for k in 1..=k_max.min(total as usize) {
                let mut comp = CompositionVisitor::new(total as i64, k, 1);
                while let Some(parts) = comp.next_composition() {
                    out.push(parts.iter().map(|&p| p as u64).collect());
                }
            }
        }
        out
    }

    #[test]
    fn params_validation() {
        assert!(NHGParams::new(vec![], 3).is_err());
        assert!(NHGParams::new(vec![2, 0, 1], 3).is_err());
        let p = NHGParams::new(vec![2, 3, 1], 4).unwrap();
        assert_eq!(p.group_count(), 3);
        assert_eq!(p.total_size(), 6);
        assert_eq!(p.draws(), 4);
    }

    #[test]
    fn pmf_hand_example() {
        // Two singleton groups, two draws: ⟨⟨1,1⟩⟩²/⟨⟨2,2⟩⟩ = 1/3.
        let p = NHGParams::new(vec![1, 1], 2).unwrap();
        let prob = nhg_pmf(&p, &[1, 1]).unwrap();
        assert_eq!(prob.to_string(), "1/3");
        assert_eq!(prob.numerator(), &BigInt::from(1));
        assert_eq!(prob.denominator(), &BigInt::from(3));
    }

    #[test]
    fn pmf_degenerate_cases() {
        // No draws: the empty composition has probability 1.
        let p = NHGParams::new(vec![2, 3], 0).unwrap();
        assert_eq!(nhg_pmf(&p, &[0, 0]).unwrap().to_string(), "1/1");
        // One group: all draws land there with probability 1.
        let p = NHGParams::new(vec![4], 5).unwrap();
        assert_eq!(nhg_pmf(&p, &[5]).unwrap().to_string(), "1/1");
    }

    #[test]
    fn pmf_rejects_bad_compositions() {
        let p = NHGParams::new(vec![2, 3], 4).unwrap();
        match nhg_pmf(&p, &[1, 2]) {
            Err(CalcError::CompositionMismatch { got: 3, expected: 4 }) => {}
            other => panic!("expected composition mismatch, got {other:?}"),
        }
        assert!(nhg_pmf(&p, &[4]).is_err());
    }

    #[test]
    fn normalization_hand_examples() {
        let p = NHGParams::new(vec![1, 1], 2).unwrap();
        assert_eq!(nhg_normalization(&p).to_string(), "1/1");
        let p = NHGParams::new(vec![2, 3, 1], 4).unwrap();
        assert_eq!(nhg_normalization(&p).to_string(), "1/1");
    }

    #[test]
    fn normalization_sweep_is_exactly_one() {
        for sizes in all_group_vectors(8, 4) {
            for w in 0..=8 {
                let p = NHGParams::new(sizes.clone(), w).unwrap();
                let z = nhg_normalization(&p);
                assert!(z.as_rational().is_one(), "sizes {sizes:?} W={w}: {z}");
            }
        }
    }

    #[test]
    fn expectation_hand_example() {
        // Symmetric two-group case: each group expects half the draws.
        let p = NHGParams::new(vec![1, 1], 2).unwrap();
        let e = nhg_expectation(&p, 1).unwrap();
        assert_eq!(e, BigRational::one());
    }

    #[test]
    fn expectation_zero_draws() {
        let p = NHGParams::new(vec![3, 2], 0).unwrap();
        assert!(nhg_expectation(&p, 2).unwrap().is_zero());
        assert!(nhg_expectation_exhaustive(&p, 2).unwrap().is_zero());
    }

    #[test]
    fn expectation_rejects_bad_group_index() {
        let p = NHGParams::new(vec![3, 2], 1).unwrap();
        assert!(nhg_expectation(&p, 0).is_err());
        assert!(nhg_expectation(&p, 3).is_err());
    }

    #[test]
    fn closed_form_matches_exhaustive_sum() {
        let p = NHGParams::new(vec![2, 3], 3).unwrap();
        for j in 1..=2 {
            assert_eq!(
                nhg_expectation(&p, j).unwrap(),
                nhg_expectation_exhaustive(&p, j).unwrap()
            );
        }
        for sizes in all_group_vectors(6, 3) {
            for w in 0..=6 {
                let p = NHGParams::new(sizes.clone(), w).unwrap();
                for j in 1..=p.group_count() {
                    assert_eq!(
                        nhg_expectation(&p, j).unwrap(),
                        nhg_expectation_exhaustive(&p, j).unwrap(),
                        "sizes {sizes:?} W={w} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn expectations_sum_to_draw_count() {
        for sizes in all_group_vectors(6, 3) {
            for w in 0..=6 {
                let p = NHGParams::new(sizes.clone(), w).unwrap();
                let total: BigRational = (1..=p.group_count())
                    .map(|j| nhg_expectation(&p, j).unwrap())
                    .sum();
                assert_eq!(total, BigRational::from(BigInt::from(w)), "sizes {sizes:?} W={w}");
            }
        }
    }

    #[test]
    fn marginal_coefficient_extraction_matches_closed_form() {
        // The generating-function route to the expectation: summing
        // w·⟨⟨n, w⟩⟩·⟨⟨N−n, W−w⟩⟩ over the marginal count w of one group
        // must produce n·⟨⟨N+1, W−1⟩⟩ (x·d/dx applied to the product of the
        // group series, coefficient of x^W).
        for n in 1i64..=6 {
            for rest in 0i64..=6 {
                let total = n + rest;
                for w_total in 0i64..=8 {
                    let mut sum = BigInt::zero();
                    for w in 0..=w_total {
                        sum += BigInt::from(w)
                            * multiset(n, w)
                            * multiset(rest, w_total - w);
                    }
                    let closed = BigInt::from(n) * multiset(total + 1, w_total - 1);
                    assert_eq!(sum, closed, "n={n} rest={rest} W={w_total}");
                }
            }
        }
    }
}
