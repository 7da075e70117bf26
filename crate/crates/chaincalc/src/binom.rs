//! Exact binomial, multiset, and multinomial coefficients.
//!
//! Two binomial conventions coexist deliberately:
//!
//! - [`binom`] is the combinatorial coefficient: 0 unless 0 ≤ k ≤ n. Identity
//!   sweeps and all counting code use this one.
//! - [`binom_gen`] allows any integer upper index (Pascal convention,
//!   C(n,k) = n(n−1)…(n−k+1)/k! for k ≥ 0), which is what polynomial
//!   interpolation and reciprocity checks at negative arguments need.
//!
//! The multiset coefficient ⟨⟨n,m⟩⟩ counts m-multisets from n types:
//! C(n+m−1, m), with ⟨⟨n,0⟩⟩ = 1 for every n and value 0 when n ≤ 0 < m.
//! Empty sums are 0 and empty products are 1 throughout the crate.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::sync::Mutex;

/// Pascal triangle cache for small arguments; rows are grown on demand.
/// Identity sweeps hit the same small coefficients millions of times.
static PASCAL: Lazy<Mutex<Vec<Vec<BigInt>>>> = Lazy::new(|| Mutex::new(vec![vec![BigInt::one()]]));

const PASCAL_MAX_N: i64 = 256;

/// C(n, k) with the combinatorial convention: 0 unless 0 ≤ k ≤ n.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    if n <= PASCAL_MAX_N {
        let mut table = PASCAL.lock().unwrap();
        while (table.len() as i64) <= n {
            let prev = table.last().unwrap();
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(BigInt::one());
            for w in prev.windows(2) {
                row.push(&w[0] + &w[1]);
            }
            row.push(BigInt::one());
            table.push(row);
        }
        return table[n as usize][k as usize].clone();
    }
    binom_product(n, k)
}

/// C(n, k) by the falling-factorial product; exact division at each step.
fn binom_product(n: i64, k: i64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// C(n, k) for any integer n (Pascal convention): k < 0 gives 0, otherwise
/// n(n−1)…(n−k+1)/k!. For negative n this equals (−1)^k·C(k−n−1, k).
pub fn binom_gen(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 {
        return binom(n, k);
    }
    let value = binom(k - n - 1, k);
    if k % 2 == 0 {
        value
    } else {
        -value
    }
}

/// Multiset coefficient ⟨⟨n, m⟩⟩: the number of m-multisets from n types.
/// ⟨⟨n,0⟩⟩ = 1 for every n; 0 when m < 0 or when n ≤ 0 < m.
pub fn multiset(n: i64, m: i64) -> BigInt {
    if m < 0 {
        return BigInt::zero();
    }
    if m == 0 {
        return BigInt::one();
    }
    if n <= 0 {
        return BigInt::zero();
    }
    binom(n + m - 1, m)
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    acc
}

/// Multinomial coefficient (Σparts)! / Π(parts_i!).
pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    let mut acc = factorial(total);
    for &p in parts {
        acc /= factorial(p);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binom_basic_values() {
        assert_eq!(binom(5, 2), b(10));
        assert_eq!(binom(0, 0), b(1));
        assert_eq!(binom(7, 0), b(1));
        assert_eq!(binom(7, 7), b(1));
        assert_eq!(binom(3, 5), b(0));
        assert_eq!(binom(-1, 0), b(0));
        assert_eq!(binom(4, -1), b(0));
    }

    #[test]
    fn binom_large_row_consistent_with_product() {
        assert_eq!(binom(300, 3), b(300 * 299 * 298 / 6));
        assert_eq!(binom(40, 20), "137846528820".parse::<BigInt>().unwrap());
    }

    #[test]
    fn binom_gen_negative_upper_index() {
        // C(-n, k) = (-1)^k C(n+k-1, k)
        assert_eq!(binom_gen(-3, 2), b(6));
        assert_eq!(binom_gen(-3, 3), b(-10));
        assert_eq!(binom_gen(-1, 5), b(-1));
        assert_eq!(binom_gen(-1, 0), b(1));
        assert_eq!(binom_gen(5, 2), b(10));
        assert_eq!(binom_gen(5, -2), b(0));
    }

    #[test]
    fn multiset_conventions() {
        assert_eq!(multiset(3, 2), b(6)); // C(4,2)
        assert_eq!(multiset(1, 7), b(1));
        assert_eq!(multiset(0, 0), b(1));
        assert_eq!(multiset(-4, 0), b(1));
        assert_eq!(multiset(0, 3), b(0));
        assert_eq!(multiset(-2, 3), b(0));
        assert_eq!(multiset(4, -1), b(0));
    }

    #[test]
    fn factorial_and_multinomial() {
        assert_eq!(factorial(0), b(1));
        assert_eq!(factorial(5), b(120));
        assert_eq!(multinomial(&[2, 1, 1]), b(12));
        assert_eq!(multinomial(&[]), b(1));
        assert_eq!(multinomial(&[3]), b(1));
    }

    #[test]
    fn pascal_symmetry_and_recurrence() {
        for n in 0..30 {
            for k in 0..=n {
                assert_eq!(binom(n, k), binom(n, n - k));
                if k > 0 {
                    assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
                }
            }
        }
    }
}
