//! Exact finite-sweep verifiers for a family of binomial-coefficient
//! identities.
//!
//! Every checker evaluates both sides of an identity with arbitrary-precision
//! integers over a finite parameter sweep and reports either a clean pass or
//! the first (lexicographically smallest) counterexample.  Nothing here is a
//! symbolic proof: the claim each report makes is only "verified exactly on
//! this range".
//!
//! Conventions used throughout (they make every sweep total):
//! - `C(a, b)` is 0 when `b < 0`, `a < 0`, or `b > a`.
//! - The multiset coefficient `⟨⟨n, m⟩⟩ = C(n+m-1, m)` is 1 when `m = 0` and
//!   0 when `m < 0` or `n ≤ 0 < m`.
//! - Empty sums are 0; empty products are 1.
//!
//! Each checker has a perturbed twin reachable through [`check_by_name`]:
//! with `perturb = true` every right-hand side is shifted by +1, so a healthy
//! checker must report a counterexample immediately.  That guards against a
//! sweep that silently compares nothing.

use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binom::{binom, multinomial, multiset};

/// A single failing instance of an identity: the swept parameter values and
/// the two sides that disagreed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Parameter name/value pairs, in sweep order.
    pub params: Vec<(&'static str, i64)>,
    /// Left-hand side at those parameters.
    pub lhs: BigInt,
    /// Right-hand side at those parameters (including any perturbation).
    pub rhs: BigInt,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, value)) in self.params.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{name}={value}")?;
        }
        write!(f, " lhs={} rhs={}", self.lhs, self.rhs)
    }
}

/// Outcome of one identity sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    /// Stable kebab-case identity name (see [`IDENTITY_NAMES`]).
    pub name: &'static str,
    /// Human-readable description of the swept ranges.
    pub ranges: String,
    /// True iff no instance in range disagreed.
    pub pass: bool,
    /// First counterexample in lexicographic sweep order, if any.
    pub counterexample: Option<Counterexample>,
    /// Number of instances evaluated (sweeps stop at the first failure).
    pub cases: u64,
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "pass {} cases={} sweep: {}", self.name, self.cases, self.ranges),
            Some(ce) => write!(f, "fail {} counterexample: {} cases={}", self.name, ce, self.cases),
        }
    }
}

/// Stable names accepted by [`check_by_name`] (and the CLI `verify`
/// subcommand), in default run order.
pub const IDENTITY_NAMES: [&str; 9] = [
    "structural-pc",
    "partition",
    "partition-multiset",
    "negative-vandermonde",
    "division-free",
    "multinomial-compression",
    "stirling-partition",
    "tail",
    "generalized-vandermonde",
];

/// Runs the named checker on its default (acceptance) ranges.  With
/// `perturb = true` every right-hand side is shifted by +1, so the report
/// must carry a counterexample; this exercises the harness's own
/// sensitivity.  Returns `None` for an unknown name.
pub fn check_by_name(name: &str, perturb: bool) -> Option<IdentityReport> {
    let report = match name {
        "structural-pc" => structural_pc(8, 8, perturb),
        "partition" => partition_identity(4, 8, 6, perturb),
        "partition-multiset" => partition_identity_multiset(4, 8, 6, perturb),
        "negative-vandermonde" => negative_vandermonde(4, 8, 16, perturb),
        "division-free" => division_free(20, perturb),
        "multinomial-compression" => multinomial_compression(20, 8, perturb),
        "stirling-partition" => stirling_partition(10, 5, perturb),
        "tail" => tail_identities(20, 8, 4, perturb),
        "generalized-vandermonde" => generalized_vandermonde(4, 6, perturb),
        _ => return None,
    };
    Some(report)
}

/// Runs every checker on its default ranges, in [`IDENTITY_NAMES`] order.
pub fn all_checks(perturb: bool) -> Vec<IdentityReport> {
    IDENTITY_NAMES
        .iter()
        .map(|name| check_by_name(name, perturb).expect("built-in name"))
        .collect()
}

/// Structural two-sum identity behind the chain-basis Hadamard compatibility
/// rule: for `s ≤ p+q` and `t ≤ s`,
///
/// ```text
/// C(p+q+t, s)·C(s, t) = S(s, t) − S(s−1, t−1)
/// S(σ, τ) = Σ_{a+c=σ} Σ_{n+r=τ, n≤a, r≤c} C(p+n, a)·C(a, n)·C(q+r, c)·C(c, r)
/// ```
///
/// The `t = 0` row is the classical Vandermonde convolution.
pub fn check_structural_pc(p_max: i64, q_max: i64) -> IdentityReport {
    structural_pc(p_max, q_max, false)
}

fn structural_pc(p_max: i64, q_max: i64, perturb: bool) -> IdentityReport {
    let mut sweep = Sweep::new(perturb);
    let _ = sweep_structural_pc(&mut sweep, p_max, q_max);
    sweep.into_report(
        "structural-pc",
        format!("p in 0..={p_max}, q in 0..={q_max}, s in 0..=p+q, t in 0..=s"),
    )
}

fn sweep_structural_pc(sweep: &mut Sweep, p_max: i64, q_max: i64) -> ControlFlow<()> {
    // S(σ, τ) as above; empty (0) when σ < 0 or τ < 0.
    let double_sum = |p: i64, q: i64, sigma: i64, tau: i64| -> BigInt {
        let mut acc = BigInt::zero();
        if sigma < 0 || tau < 0 {
            return acc;
        }
        for a in 0..=sigma {
            let c = sigma - a;
            for n in 0..=tau {
                let r = tau - n;
                if n > a || r > c {
                    continue;
                }
                acc += binom(p + n, a) * binom(a, n) * binom(q + r, c) * binom(c, r);
            }
        }
        acc
    };
    for p in 0..=p_max {
        for q in 0..=q_max {
            for s in 0..=p + q {
                for t in 0..=s {
                    let lhs = binom(p + q + t, s) * binom(s, t);
                    let rhs = double_sum(p, q, s, t) - double_sum(p, q, s - 1, t - 1);
                    sweep.check(&[("p", p), ("q", q), ("s", s), ("t", t)], lhs, rhs)?;
                }
            }
        }
    }
    ControlFlow::Continue(())
}

/// Partition identity: for every composition `n = n₁+…+n_k` with `n_i ≥ 0`
/// and every `m ≥ n+k−1`,
///
/// ```text
/// C(m, n) = Σ_{j=0}^{k−1} (−1)^j C(k−1, j) · Σ_{m₁+…+m_k = m−j, m_i ≥ n_i} Π C(m_i, n_i)
/// ```
///
/// `m` sweeps from the bound `n+k−1` up to `n+k−1+m_extra`.
pub fn check_partition_identity(k_max: usize, n_max: i64, m_extra: i64) -> IdentityReport {
    partition_identity(k_max, n_max, m_extra, false)
}

fn partition_identity(k_max: usize, n_max: i64, m_extra: i64, perturb: bool) -> IdentityReport {
    let mut sweep = Sweep::new(perturb);
    let _ = sweep_partition(&mut sweep, k_max, n_max, m_extra, false);
    sweep.into_report(
        "partition",
        format!(
            "k in 1..={k_max}, compositions of n in 0..={n_max} with n_i >= 0, \
             m in n+k-1..=n+k-1+{m_extra}"
        ),
    )
}

/// Multiset-coefficient form of the partition identity: for `n = Σn_i`
/// (`n_i ≥ 0`) and `v ≥ n+k−1`,
///
/// ```text
/// ⟨⟨v−k+1, n⟩⟩ = Σ_{j=0}^{k−1} (−1)^j C(k−1, j) · Σ_{v₁+…+v_k = v−j, v_i ≥ 1} Π ⟨⟨v_i, n_i⟩⟩
/// ```
///
/// The left side is read as 0 when `v−k+1 < 1` (that corner arises only at
/// `n = 0`, `v = k−1`, where the bare multiset coefficient would be
/// `⟨⟨0, 0⟩⟩ = 1` while the right side is an empty sum).
pub fn check_partition_identity_multiset(k_max: usize, n_max: i64, v_extra: i64) -> IdentityReport {
    partition_identity_multiset(k_max, n_max, v_extra, false)
}

fn partition_identity_multiset(
    k_max: usize,
    n_max: i64,
    v_extra: i64,
    perturb: bool,
) -> IdentityReport {
    let mut sweep = Sweep::new(perturb);
    let _ = sweep_partition(&mut sweep, k_max, n_max, v_extra, true);
    sweep.into_report(
        "partition-multiset",
        format!(
            "k in 1..={k_max}, compositions of n in 0..={n_max} with n_i >= 0, \
             v in n+k-1..=n+k-1+{v_extra} (lhs read as 0 when v-k+1 < 1)"
        ),
    )
}

/// Shared engine for the binomial and multiset partition identities; they
/// differ only in the factor evaluated per part and in the inner-sum part
/// floor (`m_i ≥ n_i` versus `v_i ≥ 1`).
fn sweep_partition(
    sweep: &mut Sweep,
    k_max: usize,
    n_max: i64,
    extra: i64,
    multiset_form: bool,
) -> ControlFlow<()> {
    for k in 1..=k_max {
        for n in 0..=n_max {
            let mut comp = CompositionVisitor::new(n, k, 0);
            while let Some(parts) = comp.next_composition() {
                let parts = parts.to_vec();
                for m in n + k as i64 - 1..=n + k as i64 - 1 + extra {
                    let lhs = if multiset_form {
                        if m - k as i64 + 1 >= 1 {
                            multiset(m - k as i64 + 1, n)
                        } else {
                            BigInt::zero()
                        }
                    } else {
                        binom(m, n)
                    };
                    let mut rhs = BigInt::zero();
                    for j in 0..k as i64 {
                        let inner = if multiset_form {
                            sum_over_compositions(m - j, k, 1, |vs| {
                                let mut term = BigInt::one();
                                for (vi, ni) in vs.iter().zip(&parts) {
                                    term *= multiset(*vi, *ni);
                                }
                                term
                            })
                        } else {
                            // m_i ≥ n_i: substitute m_i = n_i + e_i with e_i ≥ 0.
                            sum_over_compositions(m - j - n, k, 0, |es| {
                                let mut term = BigInt::one();
                                for (ei, ni) in es.iter().zip(&parts) {
                                    term *= binom(ni + ei, *ni);
                                }
                                term
                            })
                        };
                        let signed = binom(k as i64 - 1, j) * inner;
                        if j % 2 == 0 {
                            rhs += signed;
                        } else {
                            rhs -= signed;
                        }
                    }
                    let mut params = vec![("k", k as i64), ("n", n)];
                    push_part_params(&mut params, &parts);
                    params.push((if multiset_form { "v" } else { "m" }, m));
                    sweep.check(&params, lhs, rhs)?;
                }
            }
        }
    }
    ControlFlow::Continue(())
}

/// Negative-range Vandermonde convolution for multiset coefficients: for
/// every composition `n = n₁+…+n_k` with `n_i ≥ 1` and every `v ≥ k`,
///
/// ```text
/// ⟨⟨v−k+1, 2n−1⟩⟩ = Σ_{v₁+…+v_k = v, v_i ≥ 1} Π ⟨⟨v_i, 2n_i−1⟩⟩
/// ```
///
/// The all-ones composition specializes to the product form
/// `C(v+n−1, 2n−1) = Σ Π v_i` checked independently by
/// [`check_division_free`].  `v` sweeps from the bound `k` up to
/// `k + v_extra`.
pub fn check_negative_vandermonde(k_max: usize, n_max: i64, v_extra: i64) -> IdentityReport {
    negative_vandermonde(k_max, n_max, v_extra, false)
}

fn negative_vandermonde(k_max: usize, n_max: i64, v_extra: i64, perturb: bool) -> IdentityReport {
    let mut sweep = Sweep::new(perturb);
    let _ = sweep_negative_vandermonde(&mut sweep, k_max, n_max, v_extra);
    sweep.into_report(
        "negative-vandermonde",
        format!(
            "k in 1..={k_max}, compositions of n in k..={n_max} with n_i >= 1, \
             v in k..=k+{v_extra}"
        ),
    )
}

fn sweep_negative_vandermonde(
    sweep: &mut Sweep,
    k_max: usize,
    n_max: i64,
    v_extra: i64,
) -> ControlFlow<()> {
    for k in 1..=k_max {
        for n in k as i64..=n_max {
            let mut comp = CompositionVisitor::new(n, k, 1);
            while let Some(parts) = comp.next_composition() {
                let parts = parts.to_vec();
                for v in k as i64..=k as i64 + v_extra {
                    let lhs = multiset(v - k as i64 + 1, 2 * n - 1);
                    let rhs = sum_over_compositions(v, k, 1, |vs| {
                        let mut term = BigInt::one();
                        for (vi, ni) in vs.iter().zip(&parts) {
                            term *= multiset(*vi, 2 * ni - 1);
                        }
                        term
                    });
                    let mut params = vec![("k", k as i64), ("n", n)];
                    push_part_params(&mut params, &parts);
                    params.push(("v", v));
                    sweep.check(&params, lhs, rhs)?;
                }
            }
        }
    }
    ControlFlow::Continue(())
}

/// Division-free product formulas for binomial coefficients, three forms in
/// one sweep (the `form` parameter in a counterexample tells them apart):
///
/// 1. `C(v+n−1, 2n−1) = Σ_{v₁+…+v_n = v, v_i ≥ 1} Π v_i` for `v ≥ n`;
/// 2. the same identity re-parameterized: `C(m, 2n−1) = Σ_{Σv_i = m−(n−1)} Π v_i`
///    for `n ≤ (m+1)/2`;
/// 3. `C(m, n) = Σ_{j=0}^{n−1} (−1)^j C(n−1, j) Σ_{m₁+…+m_n = m−j, m_i ≥ 1} Π m_i`
///    for `m ≥ 2n−1`.
pub fn check_division_free(m_max: i64) -> IdentityReport {
    division_free(m_max, false)
}

fn division_free(m_max: i64, perturb: bool) -> IdentityReport {
    let mut sweep = Sweep::new(perturb);
    let _ = sweep_division_free(&mut sweep, m_max);
    sweep.into_report(
        "division-free",
        format!(
            "form 1: n in 1..={m_max}, v in n..={m_max}; \
             form 2: m in 0..={m_max}, n in 1..=(m+1)/2; \
             form 3: n in 1..=({m_max}+1)/2, m in 2n-1..={m_max}"
        ),
    )
}

/// Σ over compositions of `total` into `parts` positive integers of the
/// product of the parts, exactly.  Parts and their products stay far below
/// `i128` range for every sweep in this module.
fn sum_of_part_products(total: i64, parts: usize) -> BigInt {
    let mut acc = BigInt::zero();
    let mut comp = CompositionVisitor::new(total, parts, 1);
    while let Some(vs) = comp.next_composition() {
        let mut product: i128 = 1;
        for &v in vs {
            product *= v as i128;
        }
        acc += BigInt::from(product);
    }
    acc
}

fn sweep_division_free(sweep: &mut Sweep, m_max: i64) -> ControlFlow<()> {
    for n in 1..=m_max {
        for v in n..=m_max {
            let lhs = binom(v + n - 1, 2 * n - 1);
            let rhs = sum_of_part_products(v, n as usize);
            sweep.check(&[("form", 1), ("n", n), ("v", v)], lhs, rhs)?;
        }
    }
    for m in 0..=m_max {
        for n in 1..=(m + 1) / 2 {
            let lhs = binom(m, 2 * n - 1);
            let rhs = sum_of_part_products(m - (n - 1), n as usize);
            sweep.check(&[("form", 2), ("m", m), ("n", n)], lhs, rhs)?;
        }
    }
    for n in 1..=(m_max + 1) / 2 {
        for m in 2 * n - 1..=m_max {
            let lhs = binom(m, n);
            let mut rhs = BigInt::zero();
            for j in 0..n {
                let signed = binom(n - 1, j) * sum_of_part_products(m - j, n as usize);
                if j % 2 == 0 {
                    rhs += signed;
                } else {
                    rhs -= signed;
                }
            }
            sweep.check(&[("form", 3), ("n", n), ("m", m)], lhs, rhs)?;
        }
    }
    ControlFlow::Continue(())
}

/// Partition-compressed form of the product formula: grouping the
/// compositions of `v` into `n` positive parts by their underlying multiset
/// `{v₁, …, v_n}` (multiplicities `s₁, …, s_j` over the distinct values),
///
/// ```text
/// C(v+n−1, 2n−1) = Σ_partitions  n!/(s₁!…s_j!) · Π v_i
/// ```
///
/// Each instance is checked against the binomial closed form (`form` 1) and
/// against the uncompressed composition sum (`form` 2).
pub fn check_multinomial_compression(v_max: i64, n_max: i64) -> IdentityReport {
    multinomial_compression(v_max, n_max, false)
}

fn multinomial_compression(v_max: i64, n_max: i64, perturb: bool) -> IdentityReport {
    let mut sweep = Sweep::new(perturb);
    let _ = sweep_multinomial_compression(&mut sweep, v_max, n_max);
    sweep.into_report(
        "multinomial-compression",
        format!(
            "n in 1..={n_max}, v in n..={v_max}; \
             form 1 vs binomial closed form, form 2 vs uncompressed sum"
        ),
    )
}

fn sweep_multinomial_compression(sweep: &mut Sweep, v_max: i64, n_max: i64) -> ControlFlow<()> {
    for n in 1..=n_max {
        for v in n..=v_max {
            let mut compressed = BigInt::zero();
            let mut partitions = PartitionVisitor::new(v, n as usize);
            while let Some(parts) = partitions.next_partition() {
                // Multiplicities of the distinct values in the (nonincreasing)
                // partition, then the multinomial n!/(s₁!…s_j!).
                let mut mults: Vec<u64> = Vec::new();
                let mut product: i128 = 1;
                for (idx, &p) in parts.iter().enumerate() {
                    product *= p as i128;
                    if idx > 0 && parts[idx - 1] == p {
                        *mults.last_mut().expect("run started") += 1;
                    } else {
                        mults.push(1);
                    }
                }
                compressed += multinomial(&mults) * BigInt::from(product);
            }
            let closed_form = binom(v + n - 1, 2 * n - 1);
            sweep.check(&[("form", 1), ("n", n), ("v", v)], closed_form, compressed.clone())?;
            let uncompressed = sum_of_part_products(v, n as usize);
            sweep.check(&[("form", 2), ("n", n), ("v", v)], compressed, uncompressed)?;
        }
    }
    ControlFlow::Continue(())
}

/// Identities for `ñ(m, k)`, the number of weak compositions of `m` into
/// `k` parts, always computed here by direct enumeration:
///
/// 1. alternating collapse, for `m ≥ k−1`:
///    `1 = Σ_{j=0}^{k−1} (−1)^j C(k−1, j) · ñ(m−j, k)`;
/// 2. expansion over the number of nonempty parts, for every `m ≥ 0`:
///    `ñ(m, k) = Σ_{r=0}^{k} C(k, r) · comp(m, r)` where `comp(m, r)` counts
///    compositions of `m` into `r` **positive** parts (`comp(0, 0) = 1`),
///    also by direct enumeration.
pub fn check_stirling_partition(m_max: i64, k_max: usize) -> IdentityReport {
    stirling_partition(m_max, k_max, false)
}

fn stirling_partition(m_max: i64, k_max: usize, perturb: bool) -> IdentityReport {
    let mut sweep = Sweep::new(perturb);
    let _ = sweep_stirling_partition(&mut sweep, m_max, k_max);
    sweep.into_report(
        "stirling-partition",
        format!(
            "form 1: k in 1..={k_max}, m in k-1..={m_max}; \
             form 2: k in 1..={k_max}, m in 0..={m_max}"
        ),
    )
}

/// Number of ways to write `total` as an ordered sum of `parts` integers
/// each ≥ `min_part`, by direct enumeration.
fn count_compositions(total: i64, parts: usize, min_part: i64) -> BigInt {
    let mut count: u64 = 0;
    let mut comp = CompositionVisitor::new(total, parts, min_part);
    while comp.next_composition().is_some() {
        count += 1;
    }
    BigInt::from(count)
}

fn sweep_stirling_partition(sweep: &mut Sweep, m_max: i64, k_max: usize) -> ControlFlow<()> {
    for k in 1..=k_max {
        for m in k as i64 - 1..=m_max {
            let lhs = BigInt::one();
            let mut rhs = BigInt::zero();
            for j in 0..k as i64 {
                let signed = binom(k as i64 - 1, j) * count_compositions(m - j, k, 0);
                if j % 2 == 0 {
                    rhs += signed;
                } else {
                    rhs -= signed;
                }
            }
            sweep.check(&[("form", 1), ("k", k as i64), ("m", m)], lhs, rhs)?;
        }
    }
    for k in 1..=k_max {
        for m in 0..=m_max {
            let lhs = count_compositions(m, k, 0);
            let mut rhs = BigInt::zero();
            for r in 0..=k {
                rhs += binom(k as i64, r as i64) * count_compositions(m, r, 1);
            }
            sweep.check(&[("form", 2), ("k", k as i64), ("m", m)], lhs, rhs)?;
        }
    }
    ControlFlow::Continue(())
}

/// Tail identities tying the negative-range Vandermonde convolution back to
/// a single multiset (and finally binomial) coefficient.  Three forms:
///
/// 1. for every composition `n = n₁+…+n_k` (`n_i ≥ 1`) and `v ≥ 2n−1`:
///    `⟨⟨v−k+1, 2n−k⟩⟩ = Σ_j (−1)^j C(k−1, j) Σ_{Σv_i = v−j, v_i ≥ 1} Π ⟨⟨v_i, 2n_i−1⟩⟩`;
/// 2. collapsing the inner sums, for `v ≥ 2n+k−2`:
///    `⟨⟨v−k+1, 2n−k⟩⟩ = Σ_j (−1)^j C(k−1, j) ⟨⟨v−k+1−j, 2n−1⟩⟩`;
/// 3. the same in binomial form:
///    `C(v−2k+2n, 2n−k) = Σ_j (−1)^j C(k−1, j) C(v−k+2n−1−j, 2n−1)`.
pub fn check_tail_identities(v_max: i64, n_max: i64, k_max: usize) -> IdentityReport {
    tail_identities(v_max, n_max, k_max, false)
}

fn tail_identities(v_max: i64, n_max: i64, k_max: usize, perturb: bool) -> IdentityReport {
    let mut sweep = Sweep::new(perturb);
    let _ = sweep_tail_identities(&mut sweep, v_max, n_max, k_max);
    sweep.into_report(
        "tail",
        format!(
            "form 1: k in 1..={k_max}, compositions of n in k..={n_max} with n_i >= 1, \
             v in 2n-1..={v_max}; forms 2, 3: same k, n with v in 2n+k-2..={v_max}"
        ),
    )
}

fn sweep_tail_identities(sweep: &mut Sweep, v_max: i64, n_max: i64, k_max: usize) -> ControlFlow<()> {
    for k in 1..=k_max {
        for n in k as i64..=n_max {
            let mut comp = CompositionVisitor::new(n, k, 1);
            while let Some(parts) = comp.next_composition() {
                let parts = parts.to_vec();
                for v in 2 * n - 1..=v_max {
                    let lhs = multiset(v - k as i64 + 1, 2 * n - k as i64);
                    let mut rhs = BigInt::zero();
                    for j in 0..k as i64 {
                        let inner = sum_over_compositions(v - j, k, 1, |vs| {
                            let mut term = BigInt::one();
                            for (vi, ni) in vs.iter().zip(&parts) {
                                term *= multiset(*vi, 2 * ni - 1);
                            }
                            term
                        });
                        let signed = binom(k as i64 - 1, j) * inner;
                        if j % 2 == 0 {
                            rhs += signed;
                        } else {
                            rhs -= signed;
                        }
                    }
                    let mut params = vec![("form", 1), ("k", k as i64), ("n", n)];
                    push_part_params(&mut params, &parts);
                    params.push(("v", v));
                    sweep.check(&params, lhs, rhs)?;
                }
            }
        }
    }
    for k in 1..=k_max {
        for n in k as i64..=n_max {
            for v in 2 * n + k as i64 - 2..=v_max {
                let ki = k as i64;
                let lhs2 = multiset(v - ki + 1, 2 * n - ki);
                let mut rhs2 = BigInt::zero();
                let lhs3 = binom(v - 2 * ki + 2 * n, 2 * n - ki);
                let mut rhs3 = BigInt::zero();
                for j in 0..ki {
                    let s2 = binom(ki - 1, j) * multiset(v - ki + 1 - j, 2 * n - 1);
                    let s3 = binom(ki - 1, j) * binom(v - ki + 2 * n - 1 - j, 2 * n - 1);
                    if j % 2 == 0 {
                        rhs2 += s2;
                        rhs3 += s3;
                    } else {
                        rhs2 -= s2;
                        rhs3 -= s3;
                    }
                }
                sweep.check(&[("form", 2), ("k", ki), ("n", n), ("v", v)], lhs2, rhs2)?;
                sweep.check(&[("form", 3), ("k", ki), ("n", n), ("v", v)], lhs3, rhs3)?;
            }
        }
    }
    ControlFlow::Continue(())
}

/// Generalized Vandermonde sanity check:
/// `C(m₁+…+m_p, n) = Σ_{n₁+…+n_p = n, n_i ≥ 0} Π C(m_i, n_i)`.
///
/// Both sides are symmetric in the `m_i`, so only nondecreasing tuples are
/// swept; that covers every tuple up to permutation.
pub fn check_generalized_vandermonde(p_max: usize, m_max: i64) -> IdentityReport {
    generalized_vandermonde(p_max, m_max, false)
}

fn generalized_vandermonde(p_max: usize, m_max: i64, perturb: bool) -> IdentityReport {
    let mut sweep = Sweep::new(perturb);
    let _ = sweep_generalized_vandermonde(&mut sweep, p_max, m_max);
    sweep.into_report(
        "generalized-vandermonde",
        format!(
            "p in 1..={p_max}, nondecreasing m-tuples with m_i in 0..={m_max} \
             (covers all tuples by symmetry), n in 0..=m_1+...+m_p"
        ),
    )
}

fn sweep_generalized_vandermonde(sweep: &mut Sweep, p_max: usize, m_max: i64) -> ControlFlow<()> {
    // Parameter names for the m-tuple, mirroring `push_part_params`.
    const M_NAMES: [&str; MAX_TRACKED_PARTS] = ["m1", "m2", "m3", "m4", "m5", "m6", "m7", "m8"];
    assert!(p_max <= MAX_TRACKED_PARTS, "sweeps track at most {MAX_TRACKED_PARTS} tuple slots");
    for p in 1..=p_max {
        let mut tuple = vec![0i64; p];
        loop {
            let total: i64 = tuple.iter().sum();
            for n in 0..=total {
                let lhs = binom(total, n);
                let rhs = sum_over_compositions(n, p, 0, |ns| {
                    let mut term = BigInt::one();
                    for (mi, ni) in tuple.iter().zip(ns) {
                        term *= binom(*mi, *ni);
                    }
                    term
                });
                let mut params = vec![("p", p as i64)];
                for (idx, &mi) in tuple.iter().enumerate() {
                    params.push((M_NAMES[idx], mi));
                }
                params.push(("n", n));
                sweep.check(&params, lhs, rhs)?;
            }
            if !advance_nondecreasing(&mut tuple, m_max) {
                break;
            }
        }
    }
    ControlFlow::Continue(())
}

/// Advances a nondecreasing tuple with entries in `0..=max` to its
/// lexicographic successor; returns false when exhausted.
fn advance_nondecreasing(tuple: &mut [i64], max: i64) -> bool {
    for i in (0..tuple.len()).rev() {
        if tuple[i] < max {
            let next = tuple[i] + 1;
            for slot in tuple.iter_mut().skip(i) {
                *slot = next;
            }
            return true;
        }
    }
    false
}

const MAX_TRACKED_PARTS: usize = 8;
const PART_NAMES: [&str; MAX_TRACKED_PARTS] = ["n1", "n2", "n3", "n4", "n5", "n6", "n7", "n8"];

fn push_part_params(params: &mut Vec<(&'static str, i64)>, parts: &[i64]) {
    assert!(
        parts.len() <= MAX_TRACKED_PARTS,
        "sweeps track at most {MAX_TRACKED_PARTS} composition slots"
    );
    for (idx, &p) in parts.iter().enumerate() {
        params.push((PART_NAMES[idx], p));
    }
}

/// Running state of one sweep: perturbation flag, instance count, and the
/// first disagreement seen.  Instances are visited in lexicographic
/// parameter order, so the recorded counterexample is the smallest one.
struct Sweep {
    perturb: bool,
    cases: u64,
    counterexample: Option<Counterexample>,
}

impl Sweep {
    fn new(perturb: bool) -> Self {
        Sweep { perturb, cases: 0, counterexample: None }
    }

    /// Compares one instance; breaks the sweep on the first failure.
    fn check(
        &mut self,
        params: &[(&'static str, i64)],
        lhs: BigInt,
        mut rhs: BigInt,
    ) -> ControlFlow<()> {
        self.cases += 1;
        if self.perturb {
            rhs += 1;
        }
        if lhs == rhs {
            ControlFlow::Continue(())
        } else {
            self.counterexample = Some(Counterexample { params: params.to_vec(), lhs, rhs });
            ControlFlow::Break(())
        }
    }

    fn into_report(self, name: &'static str, ranges: String) -> IdentityReport {
        IdentityReport {
            name,
            ranges,
            pass: self.counterexample.is_none(),
            counterexample: self.counterexample,
            cases: self.cases,
        }
    }
}

/// Iterative enumerator of the ways to write `total` as an ordered sum of
/// `parts` integers each ≥ `min_part`, in lexicographic order.  Exposes an
/// internal buffer per step to avoid allocation in inner sums.
pub(crate) struct CompositionVisitor {
    total: i64,
    min_part: i64,
    buf: Vec<i64>,
    started: bool,
    done: bool,
}

impl CompositionVisitor {
    pub(crate) fn new(total: i64, parts: usize, min_part: i64) -> Self {
        CompositionVisitor { total, min_part, buf: vec![0; parts], started: false, done: false }
    }

    pub(crate) fn next_composition(&mut self) -> Option<&[i64]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            // Lexicographically first composition: all parts at the floor,
            // remainder in the last part.
            let parts = self.buf.len() as i64;
            if self.total < self.min_part * parts || (parts == 0 && self.total != 0) {
                self.done = true;
                return None;
            }
            for slot in self.buf.iter_mut() {
                *slot = self.min_part;
            }
            if let Some(last) = self.buf.last_mut() {
                *last = self.total - self.min_part * (parts - 1);
            }
            return Some(&self.buf);
        }
        // Successor: find the rightmost position (excluding the last slot)
        // that can absorb one unit from the tail, increment it, and reset
        // everything after it to the floor with the remainder at the end.
        let k = self.buf.len();
        if k <= 1 {
            self.done = true;
            return None;
        }
        let mut tail_sum = self.buf[k - 1];
        for i in (0..k - 1).rev() {
            if tail_sum > self.min_part * (k - 1 - i) as i64 {
                self.buf[i] += 1;
                for slot in &mut self.buf[i + 1..k - 1] {
                    *slot = self.min_part;
                }
                self.buf[k - 1] = tail_sum - 1 - self.min_part * (k - 2 - i) as i64;
                return Some(&self.buf);
            }
            tail_sum += self.buf[i];
        }
        self.done = true;
        None
    }
}

/// Σ of `term` over all compositions of `total` into `parts` integers each
/// ≥ `min_part`.
fn sum_over_compositions(
    total: i64,
    parts: usize,
    min_part: i64,
    mut term: impl FnMut(&[i64]) -> BigInt,
) -> BigInt {
    let mut acc = BigInt::zero();
    let mut comp = CompositionVisitor::new(total, parts, min_part);
    while let Some(c) = comp.next_composition() {
        acc += term(c);
    }
    acc
}

/// Iterative enumerator of partitions of `total` into exactly `parts`
/// positive parts, each emitted in nonincreasing order.
struct PartitionVisitor {
    total: i64,
    parts: usize,
    buf: Vec<i64>,
    started: bool,
    done: bool,
}

impl PartitionVisitor {
    fn new(total: i64, parts: usize) -> Self {
        PartitionVisitor { total, parts, buf: Vec::new(), started: false, done: false }
    }

    /// Fills `buf[from..]` greedily so that the suffix is the largest
    /// nonincreasing completion: the remainder goes as early as possible.
    fn complete_from(&mut self, from: usize, mut remaining: i64, mut cap: i64) -> bool {
        let slots = self.parts - from;
        if remaining < slots as i64 || (slots == 0 && remaining != 0) {
            return false;
        }
        self.buf.truncate(from);
        for slot in 0..slots {
            let left_after = (slots - slot - 1) as i64;
            let take = (remaining - left_after).min(cap);
            if take < 1 {
                return false;
            }
            self.buf.push(take);
            remaining -= take;
            cap = take;
        }
        remaining == 0
    }

    fn next_partition(&mut self) -> Option<&[i64]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.parts == 0 {
                self.done = true;
                return if self.total == 0 { Some(&self.buf) } else { None };
            }
            if !self.complete_from(0, self.total, i64::MAX) {
                self.done = true;
                return None;
            }
            return Some(&self.buf);
        }
        // Successor: scan from the right for a part that can be decreased
        // while still admitting a nonincreasing positive completion.  If the
        // completion is infeasible with cap `buf[i] - 1` it stays infeasible
        // for every smaller cap, so one attempt per position suffices.
        let mut suffix_sum = 0i64;
        for i in (0..self.parts).rev() {
            suffix_sum += self.buf[i];
            let candidate = self.buf[i] - 1;
            if candidate >= 1 && self.complete_from(i, suffix_sum, candidate) {
                return Some(&self.buf);
            }
        }
        self.done = true;
        None
    }
}
