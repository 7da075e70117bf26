//! Order series in the chain basis and their algebra.
//!
//! [`ChainSeries`] is a finite integer combination of z[i] = xⁱ/(1−x)^(i+1)
//! (strict order series); [`NonStrictSeries`] of w[i] = x/(1−x)^(i+1)
//! (non-strict order series, which also remember the poset size |X| used by
//! the reciprocity involution).
//!
//! Invariants:
//! - Coefficient maps never store zero values (enforced on every insertion).
//! - Index 0 is admitted in both bases: z[0] = 1/(1−x) is the `star` unit,
//!   w[0] = x/(1−x) the `star_plus` unit; series evaluated from nonempty
//!   posets have min nonzero index ≥ 1.
//! - All operations are pure; values are freely shared between threads.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::binom::{binom, binom_gen};
use crate::error::CalcError;

/// Strict order series: finite sum Σ a_i · xⁱ/(1−x)^(i+1).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChainSeries {
    coeffs: BTreeMap<u32, BigInt>,
}

/// Non-strict order series: finite sum Σ b_i · x/(1−x)^(i+1), plus the poset
/// cardinality |X| the reciprocity involution is taken at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonStrictSeries {
    coeffs: BTreeMap<u32, BigInt>,
    size: u32,
}

fn add_into(map: &mut BTreeMap<u32, BigInt>, index: u32, value: BigInt) {
    if value.is_zero() {
        return;
    }
    let entry = map.entry(index).or_insert_with(BigInt::zero);
    *entry += value;
    if entry.is_zero() {
        map.remove(&index);
    }
}

impl ChainSeries {
    /// The zero series.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The `star` unit z[0] = 1/(1−x) (series of the empty poset).
    pub fn unit() -> Self {
        Self::basis(0)
    }

    /// The basis element z[i].
    pub fn basis(i: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, BigInt::one());
        Self { coeffs }
    }

    /// Build from (index, coefficient) pairs; repeated indices accumulate,
    /// zero totals are dropped.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut coeffs = BTreeMap::new();
        for (i, c) in terms {
            add_into(&mut coeffs, i, c.into());
        }
        Self { coeffs }
    }

    /// Coefficient a_i (zero when absent).
    pub fn coeff(&self, i: u32) -> BigInt {
        self.coeffs.get(&i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in ascending index order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&u32, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest index with nonzero coefficient.
    pub fn min_index(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// Largest index with nonzero coefficient.
    pub fn max_index(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Number of nonzero coefficients.
    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (&i, c) in &other.coeffs {
            add_into(&mut coeffs, i, c.clone());
        }
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&i, c)| (i, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&i, c)| (i, c * factor))
                .collect(),
        }
    }

    /// Concatenation product: bilinear extension of z[n] * z[m] = z[n+m].
    /// Commutative and associative with unit z[0]; as rational functions this
    /// is f · (1−x) · g.
    pub fn star(&self, other: &Self) -> Self {
        let mut coeffs = BTreeMap::new();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                add_into(&mut coeffs, i + j, a * b);
            }
        }
        Self { coeffs }
    }

    /// Hadamard (coefficient-wise) product: bilinear extension of
    /// z[k] ⊙ z[m] = Σ_{n=0..k} C(m+n, k)·C(k, n)·z[m+n].
    pub fn hadamard(&self, other: &Self) -> Self {
        let mut coeffs = BTreeMap::new();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                // Sum over the smaller index; the formula is symmetric in (i, j).
                let (k, m) = if i <= j { (i, j) } else { (j, i) };
                let ab = a * b;
                for n in 0..=k {
                    let weight =
                        binom((m + n) as i64, k as i64) * binom(k as i64, n as i64);
                    add_into(&mut coeffs, m + n, weight * &ab);
                }
            }
        }
        Self { coeffs }
    }

    /// Handle operation on series: linear extension of
    /// D(z[n]) = n·z[n+2] + (n+1)·z[n+3].
    /// Equals z[1] * (z[1] ⊙ f) * z[1] and, on expansions, x³/(1−x)² · df/dx.
    pub fn dee(&self) -> Self {
        let mut coeffs = BTreeMap::new();
        for (&n, a) in &self.coeffs {
            add_into(&mut coeffs, n + 2, BigInt::from(n) * a);
            add_into(&mut coeffs, n + 3, BigInt::from(n + 1) * a);
        }
        Self { coeffs }
    }

    /// Reciprocity involution at a declared poset size |X|:
    /// b_i = (−1)^(size+i) · a_i. Errors when size is smaller than the
    /// largest nonzero index (no poset of that size has this series).
    pub fn reciprocity(&self, size: u32) -> Result<NonStrictSeries, CalcError> {
        if let Some(max) = self.max_index() {
            if size < max {
                return Err(CalcError::InvalidSize {
                    size,
                    max_index: max,
                });
            }
        }
        Ok(NonStrictSeries {
            coeffs: signflip(&self.coeffs, size),
            size,
        })
    }

    /// Power-series expansion: entry m (for m = 0..N) is Σ_i a_i · C(m, i).
    pub fn expand(&self, n_max: u32) -> Vec<BigInt> {
        (0..=n_max as i64)
            .map(|m| {
                self.coeffs
                    .iter()
                    .map(|(&i, a)| a * binom(m, i as i64))
                    .sum()
            })
            .collect()
    }

    /// Strict order polynomial value Ω(n) = Σ_i a_i · C(n, i), valid at any
    /// integer n via the generalized binomial.
    pub fn omega_eval(&self, n: i64) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&i, a)| a * binom_gen(n, i as i64))
            .sum()
    }

    /// Σ_u (−1)^(k−u) · a_u where k is the largest nonzero index; equals 1
    /// for the series of every series-parallel poset.
    pub fn alternating_sum(&self) -> BigInt {
        let Some(k) = self.max_index() else {
            return BigInt::zero();
        };
        self.coeffs
            .iter()
            .map(|(&u, a)| if (k - u) % 2 == 0 { a.clone() } else { -a })
            .sum()
    }
}

/// b_i = (−1)^(size+i) · a_i; its own inverse at the same size.
fn signflip(coeffs: &BTreeMap<u32, BigInt>, size: u32) -> BTreeMap<u32, BigInt> {
    coeffs
        .iter()
        .map(|(&i, c)| {
            let c = if (size + i) % 2 == 0 {
                c.clone()
            } else {
                -c
            };
            (i, c)
        })
        .collect()
}

impl NonStrictSeries {
    /// The zero series at a given size.
    pub fn zero(size: u32) -> Self {
        Self {
            coeffs: BTreeMap::new(),
            size,
        }
    }

    /// The `star_plus` unit: b_0 = 1 at size 0 (empty poset).
    pub fn unit() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, BigInt::one());
        Self { coeffs, size: 0 }
    }

    /// Basis element w[i] at its natural size i (the i-chain's series).
    pub fn basis(i: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, BigInt::one());
        Self { coeffs, size: i }
    }

    /// Build from (index, coefficient) pairs at an explicit size.
    pub fn from_terms<I, C>(terms: I, size: u32) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut coeffs = BTreeMap::new();
        for (i, c) in terms {
            add_into(&mut coeffs, i, c.into());
        }
        Self { coeffs, size }
    }

    /// Coefficient b_i (zero when absent).
    pub fn coeff(&self, i: u32) -> BigInt {
        self.coeffs.get(&i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in ascending index order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&u32, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_index(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// The poset cardinality |X| this series is declared at.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn add(&self, other: &Self) -> Result<Self, CalcError> {
        if self.size != other.size {
            return Err(CalcError::Domain(format!(
                "cannot add non-strict series of different sizes {} and {}",
                self.size, other.size
            )));
        }
        let mut coeffs = self.coeffs.clone();
        for (&i, c) in &other.coeffs {
            add_into(&mut coeffs, i, c.clone());
        }
        Ok(Self {
            coeffs,
            size: self.size,
        })
    }

    /// Concatenation product for non-strict series: bilinear extension of
    /// w[n] *⁺ w[m] = w[n+m]; sizes add. As rational functions this is
    /// f · (1−x)/x · g.
    pub fn star_plus(&self, other: &Self) -> Self {
        let mut coeffs = BTreeMap::new();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                add_into(&mut coeffs, i + j, a * b);
            }
        }
        Self {
            coeffs,
            size: self.size + other.size,
        }
    }

    /// Handle operation conjugated through reciprocity: flip to the strict
    /// basis, apply `dee`, flip back at size+3. The composite is independent
    /// of the declared size and equals the basis rule
    /// D⁺(w[i]) = −i·w[i+2] + (i+1)·w[i+3].
    pub fn dee_plus(&self) -> Self {
        let strict = ChainSeries {
            coeffs: signflip(&self.coeffs, self.size),
        };
        let deed = strict.dee();
        Self {
            coeffs: signflip(&deed.coeffs, self.size + 3),
            size: self.size + 3,
        }
    }

    /// The reciprocity involution back to the strict basis:
    /// a_i = (−1)^(size+i) · b_i. Applying [`ChainSeries::reciprocity`] at
    /// the same size returns the original series (the map is an involution).
    pub fn reciprocity(&self) -> ChainSeries {
        ChainSeries {
            coeffs: signflip(&self.coeffs, self.size),
        }
    }

    /// Power-series expansion: entry 0 is always 0 (every w[i] is divisible
    /// by x); entry m ≥ 1 is Σ_i b_i · C(m+i−1, i).
    pub fn expand(&self, n_max: u32) -> Vec<BigInt> {
        (0..=n_max as i64)
            .map(|m| {
                if m == 0 {
                    return BigInt::zero();
                }
                self.coeffs
                    .iter()
                    .map(|(&i, b)| b * binom(m + i as i64 - 1, i as i64))
                    .sum()
            })
            .collect()
    }

    /// Non-strict order polynomial value Ω⁺(n) = Σ_i b_i · C(n+i−1, i),
    /// interpolated to any integer n via the generalized binomial.
    /// (At n = 0 this is the polynomial value, not the expansion entry,
    /// which is 0 by the x-divisibility of the basis.)
    pub fn omega_plus_eval(&self, n: i64) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&i, b)| b * binom_gen(n + i as i64 - 1, i as i64))
            .sum()
    }
}

// ---------------------------------------------------------------------------
// Textual form: `a0*z[i0] + a1*z[i1] + ...` ascending, `w` for non-strict.
// Printing always writes the coefficient (`1*z[3]`, `-2*w[4]`); parsing is
// lenient about omitted unit coefficients and whitespace. Zero prints as `0`.
// ---------------------------------------------------------------------------

fn fmt_series(
    f: &mut fmt::Formatter<'_>,
    coeffs: &BTreeMap<u32, BigInt>,
    basis: char,
) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs {
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "{c}*{basis}[{i}]")?;
        first = false;
    }
    Ok(())
}

impl fmt::Display for ChainSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_series(f, &self.coeffs, 'z')
    }
}

impl fmt::Display for NonStrictSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_series(f, &self.coeffs, 'w')
    }
}

/// Parse `a*B[i] + ...` with basis letter `basis`; accepts omitted unit
/// coefficients (`z[3]`, `-z[3]`), `-` as a term separator, and arbitrary
/// whitespace. `0` parses to the empty map.
fn parse_series_text(text: &str, basis: char) -> Result<BTreeMap<u32, BigInt>, CalcError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let err = |pos: usize, message: &str| CalcError::Syntax {
        position: pos,
        message: message.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if pos >= bytes.len() {
        return Err(err(pos, "empty series"));
    }
    // Bare zero.
    if bytes[pos] == b'0' {
        let mut after = pos + 1;
        skip_ws(&mut after);
        if after == bytes.len() {
            return Ok(BTreeMap::new());
        }
    }

    let mut coeffs = BTreeMap::new();
    let mut term_sign = BigInt::one();
    loop {
        skip_ws(&mut pos);
        // Optional sign on the coefficient itself.
        let mut sign = term_sign.clone();
        if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
            skip_ws(&mut pos);
        }
        // Digits (optional; absent means coefficient 1).
        let digit_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let mut coeff = if pos > digit_start {
            text[digit_start..pos]
                .parse::<BigInt>()
                .map_err(|_| err(digit_start, "invalid coefficient"))?
        } else {
            BigInt::one()
        };
        coeff *= sign;
        skip_ws(&mut pos);
        if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
            skip_ws(&mut pos);
        } else if pos > digit_start && pos < bytes.len() && bytes[pos] != basis as u8 {
            return Err(err(pos, "expected '*' between coefficient and basis"));
        }
        if pos >= bytes.len() || bytes[pos] != basis as u8 {
            return Err(err(pos, &format!("expected basis letter '{basis}'")));
        }
        pos += 1;
        skip_ws(&mut pos);
        if pos >= bytes.len() || bytes[pos] != b'[' {
            return Err(err(pos, "expected '['"));
        }
        pos += 1;
        skip_ws(&mut pos);
        let idx_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == idx_start {
            return Err(err(pos, "expected basis index"));
        }
        let index: u32 = text[idx_start..pos]
            .parse()
            .map_err(|_| err(idx_start, "basis index out of range"))?;
        skip_ws(&mut pos);
        if pos >= bytes.len() || bytes[pos] != b']' {
            return Err(err(pos, "expected ']'"));
        }
        pos += 1;
        add_into(&mut coeffs, index, coeff);

        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        match bytes[pos] {
            b'+' => {
                term_sign = BigInt::one();
                pos += 1;
            }
            b'-' => {
                // `-` doubles as separator-with-sign; leave it for the next
                // term's sign scan.
                term_sign = BigInt::one();
            }
            _ => return Err(err(pos, "expected '+' or '-' between terms")),
        }
    }
    Ok(coeffs)
}

impl FromStr for ChainSeries {
    type Err = CalcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Self {
            coeffs: parse_series_text(s, 'z')?,
        })
    }
}

impl FromStr for NonStrictSeries {
    /// The textual form carries no size; the declared size is set to the
    /// largest nonzero index (exact for every poset-derived series, where
    /// max index = |X|). Use [`NonStrictSeries::from_terms`] for other sizes.
    type Err = CalcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = parse_series_text(s, 'w')?;
        let size = coeffs.keys().next_back().copied().unwrap_or(0);
        Ok(Self { coeffs, size })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(terms: &[(u32, i64)]) -> ChainSeries {
        ChainSeries::from_terms(terms.iter().copied())
    }

    #[test]
    fn star_basis_rule_and_unit() {
        assert_eq!(
            ChainSeries::basis(2).star(&ChainSeries::basis(3)),
            ChainSeries::basis(5)
        );
        let f = cs(&[(1, 1), (2, 2)]);
        assert_eq!(ChainSeries::unit().star(&f), f);
        // (z[1]+2z[2]) * z[1] = z[2]+2z[3]
        assert_eq!(f.star(&ChainSeries::basis(1)), cs(&[(2, 1), (3, 2)]));
    }

    #[test]
    fn hadamard_examples() {
        let z1 = ChainSeries::basis(1);
        let z2 = ChainSeries::basis(2);
        assert_eq!(z1.hadamard(&z1), cs(&[(1, 1), (2, 2)]));
        assert_eq!(z1.hadamard(&z2), cs(&[(2, 2), (3, 3)]));
        assert_eq!(z2.hadamard(&z1), cs(&[(2, 2), (3, 3)]));
        let g = cs(&[(1, 3), (4, 7)]);
        assert_eq!(ChainSeries::unit().hadamard(&g), g);
    }

    #[test]
    fn hadamard_is_pointwise_product_of_expansions() {
        let f = cs(&[(1, 2), (3, 1)]);
        let g = cs(&[(2, 5), (4, 3)]);
        let h = f.hadamard(&g);
        let (ef, eg, eh) = (f.expand(12), g.expand(12), h.expand(12));
        for m in 0..=12 {
            assert_eq!(eh[m], &ef[m] * &eg[m], "degree {m}");
        }
    }

    #[test]
    fn dee_examples() {
        assert_eq!(ChainSeries::basis(1).dee(), cs(&[(3, 1), (4, 2)]));
        assert_eq!(ChainSeries::basis(2).dee(), cs(&[(4, 2), (5, 3)]));
        assert_eq!(ChainSeries::basis(3).dee(), cs(&[(5, 3), (6, 4)]));
        assert_eq!(ChainSeries::unit().dee(), ChainSeries::basis(3));
    }

    #[test]
    fn dee_equals_sandwich_form() {
        // D(f) = z[1] * (z[1] ⊙ f) * z[1]
        for f in [
            ChainSeries::basis(1),
            ChainSeries::basis(4),
            cs(&[(1, 2), (2, 3), (5, 1)]),
        ] {
            let z1 = ChainSeries::basis(1);
            let sandwich = z1.star(&z1.hadamard(&f)).star(&z1);
            assert_eq!(f.dee(), sandwich);
        }
    }

    #[test]
    fn expand_examples() {
        let d1 = cs(&[(3, 1), (4, 2)]);
        assert_eq!(
            d1.expand(4),
            [0, 0, 0, 1, 6].map(BigInt::from).to_vec()
        );
        assert_eq!(
            ChainSeries::basis(1).expand(3),
            [0, 1, 2, 3].map(BigInt::from).to_vec()
        );
        assert_eq!(
            NonStrictSeries::basis(2).expand(4),
            [0, 1, 3, 6, 10].map(BigInt::from).to_vec()
        );
    }

    #[test]
    fn omega_eval_examples() {
        assert_eq!(ChainSeries::basis(2).omega_eval(3), BigInt::from(3));
        assert_eq!(cs(&[(1, 1), (2, 2)]).omega_eval(3), BigInt::from(9));
        assert_eq!(cs(&[(4, 2), (5, 3)]).omega_eval(5), BigInt::from(13));
    }

    #[test]
    fn reciprocity_example_and_involution() {
        let f = cs(&[(4, 2), (5, 3)]);
        let plus = f.reciprocity(5).unwrap();
        assert_eq!(plus.coeff(4), BigInt::from(-2));
        assert_eq!(plus.coeff(5), BigInt::from(3));
        assert_eq!(plus.size(), 5);
        assert_eq!(plus.reciprocity(), f);

        // z[n] at size n maps to +w[n].
        let zn = ChainSeries::basis(6).reciprocity(6).unwrap();
        assert_eq!(zn.coeff(6), BigInt::one());

        assert!(matches!(
            cs(&[(4, 2), (5, 3)]).reciprocity(4),
            Err(CalcError::InvalidSize { size: 4, max_index: 5 })
        ));
    }

    #[test]
    fn reciprocity_interchanges_products() {
        let f = cs(&[(1, 1), (2, 2)]);
        let g = cs(&[(2, 1), (3, 1)]);
        let (sf, sg) = (2u32, 3u32);
        let lhs = f.star(&g).reciprocity(sf + sg).unwrap();
        let rhs = f
            .reciprocity(sf)
            .unwrap()
            .star_plus(&g.reciprocity(sg).unwrap());
        assert_eq!(lhs, rhs);

        let lhs_d = f.dee().reciprocity(sf + 3).unwrap();
        let rhs_d = f.reciprocity(sf).unwrap().dee_plus();
        assert_eq!(lhs_d, rhs_d);
    }

    #[test]
    fn star_plus_basis_rule_and_unit() {
        let a = NonStrictSeries::basis(2);
        let b = NonStrictSeries::basis(3);
        let p = a.star_plus(&b);
        assert_eq!(p, NonStrictSeries::basis(5));
        assert_eq!(p.size(), 5);
        let f = NonStrictSeries::from_terms([(3u32, -1i64), (4, 2)], 4);
        assert_eq!(NonStrictSeries::unit().star_plus(&f), f);
    }

    #[test]
    fn dee_plus_examples_and_basis_rule() {
        // D⁺(w[2]) = -2·w[4] + 3·w[5]
        let d = NonStrictSeries::basis(2).dee_plus();
        assert_eq!(d, NonStrictSeries::from_terms([(4, -2), (5, 3)], 5));
        // Basis rule at any declared size: D⁺(w[i]) = −i·w[i+2] + (i+1)·w[i+3].
        for size in [3u32, 7, 12] {
            for i in 0..=3u32 {
                let f = NonStrictSeries::from_terms([(i, 1)], size);
                let expect = NonStrictSeries::from_terms(
                    [(i + 2, -(i as i64)), (i + 3, i as i64 + 1)],
                    size + 3,
                );
                assert_eq!(f.dee_plus(), expect);
            }
        }
        assert!(NonStrictSeries::zero(4).dee_plus().is_zero());
    }

    /// Derivative oracle for both handle operations:
    /// expansion of x·r/(1−x)² · d/dx(f) where r = 2 for strict, 0 for
    /// non-strict, computed purely on expansion vectors.
    fn derivative_form(expansion: &[BigInt], extra_x: u32, n_max: usize) -> Vec<BigInt> {
        // d/dx then multiply by x^(1+extra_x)/(1−x)².
        // x^s/(1−x)² has coefficient (m−s+1) at degree m ≥ s.
        let s = 1 + extra_x as usize;
        (0..=n_max)
            .map(|m| {
                let mut acc = BigInt::zero();
                for j in s..=m {
                    // coefficient of derivative at degree m−j is (m−j+1)·c_{m−j+1}
                    let idx = m - j + 1;
                    if idx < expansion.len() {
                        acc += BigInt::from(m - j + 1) * &expansion[idx] * BigInt::from(j - s + 1);
                    }
                }
                acc
            })
            .collect()
    }

    #[test]
    fn dee_matches_derivative_form() {
        for f in [
            ChainSeries::basis(1),
            ChainSeries::basis(2),
            cs(&[(1, 2), (3, 5)]),
        ] {
            let expansion = f.expand(24);
            let expect = derivative_form(&expansion, 2, 20);
            assert_eq!(&f.dee().expand(20)[..], &expect[..]);
        }
        for g in [
            NonStrictSeries::basis(1),
            NonStrictSeries::basis(2),
            NonStrictSeries::from_terms([(1u32, 2i64), (3, 5)], 3),
        ] {
            let expansion = g.expand(24);
            let expect = derivative_form(&expansion, 0, 20);
            assert_eq!(&g.dee_plus().expand(20)[..], &expect[..]);
        }
    }

    #[test]
    fn alternating_sum_examples() {
        assert_eq!(cs(&[(3, 1), (4, 2)]).alternating_sum(), BigInt::one());
        assert_eq!(cs(&[(4, 2), (5, 3)]).alternating_sum(), BigInt::one());
        assert_eq!(cs(&[(3, 1), (4, 1)]).alternating_sum(), BigInt::zero());
        assert_eq!(ChainSeries::zero().alternating_sum(), BigInt::zero());
    }

    #[test]
    fn text_round_trip() {
        let f = cs(&[(4, 2), (5, 3)]);
        assert_eq!(f.to_string(), "2*z[4] + 3*z[5]");
        assert_eq!("2*z[4] + 3*z[5]".parse::<ChainSeries>().unwrap(), f);
        assert_eq!(" 2 * z[ 4 ]+3*z[5]".parse::<ChainSeries>().unwrap(), f);

        let d1 = cs(&[(3, 1), (4, 2)]);
        assert_eq!(d1.to_string(), "1*z[3] + 2*z[4]");
        assert_eq!("z[3] + 2*z[4]".parse::<ChainSeries>().unwrap(), d1);

        let w = NonStrictSeries::from_terms([(4, -2), (5, 3)], 5);
        assert_eq!(w.to_string(), "-2*w[4] + 3*w[5]");
        let parsed = w.to_string().parse::<NonStrictSeries>().unwrap();
        assert_eq!(parsed, w);
        assert_eq!(parsed.size(), 5);
        assert_eq!("1*w[3] - 2*w[4]".parse::<NonStrictSeries>().unwrap(),
            NonStrictSeries::from_terms([(3, 1), (4, -2)], 4));

        assert_eq!("0".parse::<ChainSeries>().unwrap(), ChainSeries::zero());
        assert_eq!(ChainSeries::zero().to_string(), "0");
        // Canceling terms collapse to zero.
        assert_eq!(
            "2*z[3] + -2*z[3]".parse::<ChainSeries>().unwrap(),
            ChainSeries::zero()
        );

        assert!("2*q[4]".parse::<ChainSeries>().is_err());
        assert!("2*w[4]".parse::<ChainSeries>().is_err());
        assert!("2*z[4] + ".parse::<ChainSeries>().is_err());
        assert!("".parse::<ChainSeries>().is_err());
    }
}
