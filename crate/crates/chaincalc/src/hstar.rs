//! h*-vectors: conversions to and from the chain basis, rational-function
//! expansions, Möbius-transform polynomials, and structural checks.
//!
//! For a poset on |X| points with non-strict order series Σ b_i·x/(1−x)^(i+1),
//! the h*-vector (h*_0, …, h*_{|X|}) is defined by rewriting that series as
//! x·h*(x)/(1−x)^(|X|+1), i.e. h*(x) = Σ_i b_i·(1−x)^(|X|−i).
//!
//! Invariants:
//! - An [`HStarVector`] always stores exactly size+1 coefficients h*_0..h*_size.
//! - Vectors derived from series-parallel posets satisfy h*_0 = 1 and
//!   h*_size = 0; `hstar_to_chain` requires the latter.

use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;
use std::str::FromStr;

use crate::binom::binom;
use crate::error::CalcError;
use crate::series::{ChainSeries, NonStrictSeries};

/// Coefficient vector (h*_0, …, h*_{size}) of x·h*(x)/(1−x)^(size+1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HStarVector {
    coeffs: Vec<BigInt>,
}

impl HStarVector {
    /// Build from the full coefficient list h*_0..h*_size (so `size` is
    /// `coeffs.len() - 1`). Errors on an empty list.
    pub fn from_coeffs<I, C>(coeffs: I) -> Result<Self, CalcError>
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        if coeffs.is_empty() {
            return Err(CalcError::Domain(
                "h*-vector needs at least the h*_0 entry".to_string(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// The declared poset size |X|.
    pub fn size(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// Coefficient h*_j (zero beyond the stored range).
    pub fn coeff(&self, j: u32) -> BigInt {
        self.coeffs
            .get(j as usize)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// All coefficients h*_0..h*_size.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }
}

/// Convert a strict chain-basis series at a declared size into its h*-vector:
/// h*_j = Σ_i (−1)^(size−i+j) · c_i · C(size−i, j).
/// Errors when size is smaller than the largest nonzero index.
pub fn chain_to_hstar(c: &ChainSeries, size: u32) -> Result<HStarVector, CalcError> {
    let plus = c.reciprocity(size)?;
    Ok(nonstrict_to_hstar(&plus))
}

/// The h*-vector of a non-strict series at its declared size:
/// h*_j = (−1)^j · Σ_i b_i · C(size−i, j).
pub fn nonstrict_to_hstar(b: &NonStrictSeries) -> HStarVector {
    let size = b.size();
    let coeffs = (0..=size as i64)
        .map(|j| {
            let sum: BigInt = b
                .iter()
                .map(|(&i, bi)| bi * binom(size as i64 - i as i64, j))
                .sum();
            if j % 2 == 0 {
                sum
            } else {
                -sum
            }
        })
        .collect();
    HStarVector { coeffs }
}

/// Invert [`chain_to_hstar`]: c_i = Σ_j h*_j · C(j, size−i).
/// Requires h*_size = 0; otherwise no chain-basis series with max index
/// ≤ size produces this vector, and a not-representable error is returned.
pub fn hstar_to_chain(h: &HStarVector) -> Result<ChainSeries, CalcError> {
    let size = h.size();
    let top = h.coeff(size);
    if !top.is_zero() {
        return Err(CalcError::NotRepresentable {
            top: top.to_string(),
        });
    }
    Ok(ChainSeries::from_terms((0..=size).map(|i| {
        let ci: BigInt = h
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, hj)| hj * binom(j as i64, (size - i) as i64))
            .sum();
        (i, ci)
    })))
}

/// Expansion of x·h*(x)/(1−x)^(size+1) through degree `n_max`: entry n is
/// Σ_j h*_j · C(n−1−j+size, size) over j ≤ n−1 (entry 0 is always 0).
pub fn ehrhart_expansion(h: &HStarVector, n_max: u32) -> Vec<BigInt> {
    let size = h.size() as i64;
    (0..=n_max as i64)
        .map(|n| {
            h.coeffs
                .iter()
                .enumerate()
                .take_while(|(j, _)| (*j as i64) <= n - 1)
                .map(|(j, hj)| hj * binom(n - 1 - j as i64 + size, size))
                .sum()
        })
        .collect()
}

/// Integer polynomial in y, stored as ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct YPolynomial {
    coeffs: Vec<BigInt>,
}

impl YPolynomial {
    fn add_term(&mut self, power: usize, value: BigInt) {
        if value.is_zero() {
            return;
        }
        if self.coeffs.len() <= power {
            self.coeffs.resize_with(power + 1, BigInt::zero);
        }
        self.coeffs[power] += value;
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Coefficient of y^power (ascending order).
    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Ascending coefficient list, trailing zeros stripped.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Evaluate at an integer point.
    pub fn eval(&self, y: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * y + c)
    }
}

impl fmt::Display for YPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*y^{power}")?;
            first = false;
        }
        Ok(())
    }
}

/// Möbius-transform polynomial of a strict series under y = 1/(1−x):
/// z[n] ↦ Σ_{k=0}^{n} C(n,k)·(−1)^k·y^(n−k+1) (that is, y·(y−1)^n),
/// extended linearly.
pub fn moebius_polynomial(f: &ChainSeries) -> YPolynomial {
    let mut poly = YPolynomial::default();
    for (&n, a) in f.iter() {
        for k in 0..=n {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            poly.add_term(
                (n - k + 1) as usize,
                a * binom(n as i64, k as i64) * BigInt::from(sign),
            );
        }
    }
    poly
}

/// Möbius-transform polynomial of a non-strict series:
/// w[n] ↦ y^(n+1) − y^n, extended linearly.
pub fn moebius_polynomial_nonstrict(g: &NonStrictSeries) -> YPolynomial {
    let mut poly = YPolynomial::default();
    for (&n, b) in g.iter() {
        poly.add_term((n + 1) as usize, b.clone());
        poly.add_term(n as usize, -b);
    }
    poly
}

/// One evaluated chain-constraint sum S_j = Σ_i (−1)^j · h*_i · C(i, j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSum {
    pub j: u32,
    pub value: BigInt,
}

/// Report of the constraint sums for 0 < j < size; all vanish when the
/// vector comes from a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintReport {
    pub sums: Vec<ConstraintSum>,
    pub all_vanish: bool,
}

/// Evaluate S_j = Σ_i (−1)^j · h*_i · C(i, j) for every 0 < j < size and
/// report which vanish. Vacuously satisfied for size ≤ 1.
pub fn chain_hstar_constraints(h: &HStarVector) -> ConstraintReport {
    let sums: Vec<ConstraintSum> = (1..h.size())
        .map(|j| {
            let sum: BigInt = h
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, hi)| hi * binom(i as i64, j as i64))
                .sum();
            ConstraintSum {
                j,
                value: if j % 2 == 0 { sum } else { -sum },
            }
        })
        .collect();
    let all_vanish = sums.iter().all(|s| s.value.is_zero());
    ConstraintReport { sums, all_vanish }
}

// ---------------------------------------------------------------------------
// Textual form: `(1,2,0,0,0,0)` — parenthesized, comma-separated, ascending.
// ---------------------------------------------------------------------------

impl fmt::Display for HStarVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for HStarVector {
    type Err = CalcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(trimmed);
        let coeffs = inner
            .split(',')
            .map(|part| {
                part.trim().parse::<BigInt>().map_err(|_| CalcError::Syntax {
                    position: 0,
                    message: format!("invalid h* entry {:?}", part.trim()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hv(coeffs: &[i64]) -> HStarVector {
        HStarVector::from_coeffs(coeffs.iter().copied()).unwrap()
    }

    fn cs(terms: &[(u32, i64)]) -> ChainSeries {
        ChainSeries::from_terms(terms.iter().copied())
    }

    #[test]
    fn chain_to_hstar_examples() {
        assert_eq!(
            chain_to_hstar(&cs(&[(4, 2), (5, 3)]), 5).unwrap(),
            hv(&[1, 2, 0, 0, 0, 0])
        );
        assert_eq!(
            chain_to_hstar(&ChainSeries::basis(4), 4).unwrap(),
            hv(&[1, 0, 0, 0, 0])
        );
        assert_eq!(
            chain_to_hstar(&cs(&[(1, 1), (2, 2)]), 2).unwrap(),
            hv(&[1, 1, 0])
        );
        assert!(chain_to_hstar(&cs(&[(4, 2), (5, 3)]), 4).is_err());
    }

    #[test]
    fn hstar_to_chain_examples_and_round_trip() {
        assert_eq!(
            hstar_to_chain(&hv(&[1, 2, 0, 0, 0, 0])).unwrap(),
            cs(&[(4, 2), (5, 3)])
        );
        assert_eq!(
            hstar_to_chain(&hv(&[1, 0, 0, 0, 0])).unwrap(),
            ChainSeries::basis(4)
        );
        assert_eq!(hstar_to_chain(&hv(&[1, 1, 0])).unwrap(), cs(&[(1, 1), (2, 2)]));
        assert!(matches!(
            hstar_to_chain(&hv(&[1, 1])),
            Err(CalcError::NotRepresentable { .. })
        ));
        for (series, size) in [
            (cs(&[(4, 2), (5, 3)]), 5),
            (cs(&[(1, 1), (2, 2)]), 2),
            (cs(&[(3, 1), (4, 2)]), 4),
            (cs(&[(2, 5), (3, -1), (4, 7)]), 6),
        ] {
            let h = chain_to_hstar(&series, size).unwrap();
            // Round trip holds whenever the vector is representable.
            if h.coeff(h.size()).is_zero() {
                assert_eq!(hstar_to_chain(&h).unwrap(), series);
                assert_eq!(chain_to_hstar(&hstar_to_chain(&h).unwrap(), size).unwrap(), h);
            }
        }
    }

    #[test]
    fn top_coefficient_is_hstar_sum() {
        let f = cs(&[(3, 1), (4, 2)]);
        let h = chain_to_hstar(&f, 4).unwrap();
        let total: BigInt = h.coeffs().iter().sum();
        assert_eq!(total, f.coeff(4));
    }

    #[test]
    fn ehrhart_expansion_examples() {
        // Matches the non-strict counts of the series the vector came from.
        assert_eq!(
            ehrhart_expansion(&hv(&[1, 2, 0, 0, 0, 0]), 4),
            [0, 1, 8, 33, 98].map(BigInt::from).to_vec()
        );
        assert_eq!(
            ehrhart_expansion(&hv(&[1]), 3),
            [0, 1, 1, 1].map(BigInt::from).to_vec()
        );
        assert_eq!(
            ehrhart_expansion(&hv(&[1, 1, 0]), 4),
            [0, 1, 4, 9, 16].map(BigInt::from).to_vec()
        );
    }

    #[test]
    fn ehrhart_expansion_matches_nonstrict_expand() {
        for (series, size) in [
            (cs(&[(4, 2), (5, 3)]), 5u32),
            (cs(&[(1, 1), (2, 2)]), 2),
            (cs(&[(2, 5), (3, 1), (4, 7)]), 5),
        ] {
            let h = chain_to_hstar(&series, size).unwrap();
            let plus = series.reciprocity(size).unwrap();
            assert_eq!(ehrhart_expansion(&h, 10), plus.expand(10));
        }
    }

    #[test]
    fn moebius_polynomial_examples() {
        // w[2] ↦ y³ − y²
        let p = moebius_polynomial_nonstrict(&NonStrictSeries::basis(2));
        assert_eq!(p.coeffs(), &[0, 0, -1, 1].map(BigInt::from));
        // z[1] ↦ y² − y
        let q = moebius_polynomial(&ChainSeries::basis(1));
        assert_eq!(q.coeffs(), &[0, -1, 1].map(BigInt::from));
        // z[0] ↦ y
        let u = moebius_polynomial(&ChainSeries::unit());
        assert_eq!(u.coeffs(), &[0, 1].map(BigInt::from));
        assert_eq!(q.to_string(), "-1*y^1 + 1*y^2");
    }

    #[test]
    fn moebius_polynomial_structure() {
        // z[n] ↦ y·(y−1)^n, so the strict polynomial at y = 1 is exactly the
        // z[0] coefficient; every non-strict basis image vanishes at y = 1.
        let f = cs(&[(0, 7), (3, 1), (4, 2)]);
        let p = moebius_polynomial(&f);
        assert_eq!(p.eval(&BigInt::from(1)), BigInt::from(7));
        let g = NonStrictSeries::from_terms([(1u32, 4i64), (3, -2)], 3);
        let q = moebius_polynomial_nonstrict(&g);
        assert_eq!(q.eval(&BigInt::from(1)), BigInt::zero());
        // z[2] ↦ y³ − 2y² + y, explicitly.
        assert_eq!(
            moebius_polynomial(&ChainSeries::basis(2)).coeffs(),
            &[0, 1, -2, 1].map(BigInt::from)
        );
    }

    #[test]
    fn constraint_sums() {
        // Chain(4): h* = (1,0,0,0,0); all sums vanish.
        let chain = chain_to_hstar(&ChainSeries::basis(4), 4).unwrap();
        let report = chain_hstar_constraints(&chain);
        assert!(report.all_vanish);
        assert_eq!(report.sums.len(), 3);

        // D(⟨2⟩): j = 1 gives −2.
        let report = chain_hstar_constraints(&hv(&[1, 2, 0, 0, 0, 0]));
        assert!(!report.all_vanish);
        assert_eq!(report.sums[0].j, 1);
        assert_eq!(report.sums[0].value, BigInt::from(-2));

        // Size-0 vector: vacuous.
        let report = chain_hstar_constraints(&hv(&[1]));
        assert!(report.all_vanish);
        assert!(report.sums.is_empty());
    }

    #[test]
    fn text_round_trip() {
        let h = hv(&[1, 2, 0, 0, 0, 0]);
        assert_eq!(h.to_string(), "(1,2,0,0,0,0)");
        assert_eq!("(1,2,0,0,0,0)".parse::<HStarVector>().unwrap(), h);
        assert_eq!("1, 2, 0, 0, 0, 0".parse::<HStarVector>().unwrap(), h);
        assert_eq!("(1,-2)".parse::<HStarVector>().unwrap(), hv(&[1, -2]));
        assert!("(1,x)".parse::<HStarVector>().is_err());
        assert!("()".parse::<HStarVector>().is_err());
    }
}
