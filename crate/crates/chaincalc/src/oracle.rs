//! Independent brute-force counters of strict and non-strict order-preserving
//! maps, used to validate the series algebra.
//!
//! The primary oracle enumerates the lattice of order ideals of a Hasse
//! digraph and counts maps into ⟨n⟩ as n-step ideal chains ∅ = J₀ ⊆ … ⊆ Jₙ = V
//! (arbitrary steps: non-strict maps; steps with antichain differences:
//! strict maps). A second-level oracle enumerates all n^|V| maps directly.
//!
//! Invariants:
//! - The ideal list always contains ∅ and the full vertex set, and every
//!   member is downward closed.
//! - Both oracle levels agree wherever both apply; the lattice level accepts
//!   posets up to 25 vertices, the direct level up to 12.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

use crate::binom::binom_gen;
use crate::error::CalcError;
use crate::poset::HasseDigraph;

/// Vertex cap of the ideal-lattice oracle.
pub const ORACLE_VERTEX_LIMIT: usize = 25;
/// Vertex cap of the direct-enumeration oracle.
pub const NAIVE_VERTEX_LIMIT: usize = 12;
/// Defensive cap on the number of ideals the lattice oracle will hold.
const IDEAL_COUNT_LIMIT: usize = 1 << 20;

/// The lattice of order ideals of one poset, with the two transfer relations
/// (plain inclusion; inclusion with antichain difference) precomputed as
/// per-target source lists.
pub struct IdealLattice {
    ideals: Vec<u32>,
    sources_nonstrict: Vec<Vec<u32>>,
    sources_strict: Vec<Vec<u32>>,
    empty_idx: usize,
    full_idx: usize,
}

impl IdealLattice {
    /// Enumerate all order ideals of `h` and precompute both transfer
    /// relations. Errors above [`ORACLE_VERTEX_LIMIT`] vertices.
    pub fn new(h: &HasseDigraph) -> Result<Self, CalcError> {
        let n = h.vertex_count();
        if n > ORACLE_VERTEX_LIMIT {
            return Err(CalcError::SizeLimit {
                vertices: n,
                limit: ORACLE_VERTEX_LIMIT,
            });
        }

        let mut lower_covers = vec![0u32; n];
        for &(a, b) in h.edges() {
            lower_covers[b as usize] |= 1 << a;
        }
        // Strict comparability mask per vertex (transitive closure, both
        // directions), for the antichain test on difference sets.
        let mut below = vec![0u32; n]; // all strictly smaller vertices
        // Repeated relaxation; n ≤ 25 keeps this trivial.
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in h.edges() {
                let new = below[b as usize] | below[a as usize] | (1 << a);
                if new != below[b as usize] {
                    below[b as usize] = new;
                    changed = true;
                }
            }
        }
        let mut comparable = vec![0u32; n];
        for v in 0..n {
            comparable[v] |= below[v];
            for w in 0..n {
                if below[w] >> v & 1 == 1 {
                    comparable[v] |= 1 << w;
                }
            }
        }

        // Breadth-first ideal enumeration: extend an ideal by any vertex
        // whose lower covers it already contains.
        let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
        let mut seen = BTreeSet::new();
        seen.insert(0u32);
        let mut frontier = vec![0u32];
        while let Some(ideal) = frontier.pop() {
            for v in 0..n {
                if ideal >> v & 1 == 0 && lower_covers[v] & !ideal == 0 {
                    let bigger = ideal | (1 << v);
                    if seen.insert(bigger) {
                        if seen.len() > IDEAL_COUNT_LIMIT {
                            return Err(CalcError::Domain(format!(
                                "ideal lattice exceeds {IDEAL_COUNT_LIMIT} members"
                            )));
                        }
                        frontier.push(bigger);
                    }
                }
            }
        }
        let ideals: Vec<u32> = seen.into_iter().collect();
        let empty_idx = ideals.binary_search(&0).expect("∅ is always an ideal");
        let full_idx = ideals
            .binary_search(&full)
            .expect("the full vertex set is always an ideal");

        let is_antichain = |mask: u32| -> bool {
            (0..n).all(|v| mask >> v & 1 == 0 || comparable[v] & mask == 0)
        };
        let mut sources_nonstrict = vec![Vec::new(); ideals.len()];
        let mut sources_strict = vec![Vec::new(); ideals.len()];
        for (j, &upper) in ideals.iter().enumerate() {
            for (i, &lower) in ideals.iter().enumerate() {
                if lower & !upper != 0 {
                    continue;
                }
                sources_nonstrict[j].push(i as u32);
                if is_antichain(upper & !lower) {
                    sources_strict[j].push(i as u32);
                }
            }
        }
        Ok(Self {
            ideals,
            sources_nonstrict,
            sources_strict,
            empty_idx,
            full_idx,
        })
    }

    pub fn ideal_count(&self) -> usize {
        self.ideals.len()
    }

    /// The ideals as vertex bitmasks, ascending.
    pub fn ideals(&self) -> &[u32] {
        &self.ideals
    }

    fn counts(&self, sources: &[Vec<u32>], n_max: u32) -> Vec<BigInt> {
        let mut state = vec![BigInt::zero(); self.ideals.len()];
        state[self.empty_idx] = BigInt::one();
        let mut out = Vec::with_capacity(n_max as usize + 1);
        out.push(state[self.full_idx].clone());
        for _ in 1..=n_max {
            let next: Vec<BigInt> = sources
                .iter()
                .map(|srcs| srcs.iter().map(|&i| &state[i as usize]).sum())
                .collect();
            state = next;
            out.push(state[self.full_idx].clone());
        }
        out
    }

    /// Non-strict map counts for n = 0..=n_max.
    pub fn counts_nonstrict(&self, n_max: u32) -> Vec<BigInt> {
        self.counts(&self.sources_nonstrict, n_max)
    }

    /// Strict map counts for n = 0..=n_max.
    pub fn counts_strict(&self, n_max: u32) -> Vec<BigInt> {
        self.counts(&self.sources_strict, n_max)
    }
}

/// Count strict order-preserving maps into ⟨n⟩ via the ideal lattice.
pub fn count_strict(h: &HasseDigraph, n: u32) -> Result<BigInt, CalcError> {
    Ok(IdealLattice::new(h)?.counts_strict(n).pop().expect("n+1 entries"))
}

/// Count non-strict order-preserving maps into ⟨n⟩ via the ideal lattice.
pub fn count_nonstrict(h: &HasseDigraph, n: u32) -> Result<BigInt, CalcError> {
    Ok(IdealLattice::new(h)?.counts_nonstrict(n).pop().expect("n+1 entries"))
}

fn count_naive(h: &HasseDigraph, n: u32, strict: bool) -> Result<BigInt, CalcError> {
    let v = h.vertex_count();
    if v > NAIVE_VERTEX_LIMIT {
        return Err(CalcError::SizeLimit {
            vertices: v,
            limit: NAIVE_VERTEX_LIMIT,
        });
    }
    if v == 0 {
        return Ok(BigInt::one());
    }
    if n == 0 {
        return Ok(BigInt::zero());
    }
    // Odometer over all n^v maps; covering edges suffice to check order
    // preservation because ≤ and < are transitive on the target chain.
    let mut digits = vec![0u32; v];
    let mut total: u64 = 0;
    loop {
        let ok = h.edges().iter().all(|&(a, b)| {
            let (fa, fb) = (digits[a as usize], digits[b as usize]);
            if strict {
                fa < fb
            } else {
                fa <= fb
            }
        });
        total += ok as u64;
        let mut pos = 0;
        loop {
            if pos == v {
                return Ok(BigInt::from(total));
            }
            digits[pos] += 1;
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Second-level oracle: enumerate all n^|V| maps directly (≤ 12 vertices).
pub fn count_strict_naive(h: &HasseDigraph, n: u32) -> Result<BigInt, CalcError> {
    count_naive(h, n, true)
}

/// Second-level oracle: enumerate all n^|V| maps directly (≤ 12 vertices).
pub fn count_nonstrict_naive(h: &HasseDigraph, n: u32) -> Result<BigInt, CalcError> {
    count_naive(h, n, false)
}

/// Evaluate at `x` the unique polynomial of degree < m through the points
/// (1, values[0]), …, (m, values[m−1]), by Newton forward differences:
/// p(x) = Σ_j Δʲp(1) · C(x−1, j). Exact for any integer x, including
/// negative arguments.
pub fn interpolate_at(values: &[BigInt], x: i64) -> BigInt {
    let mut diffs = values.to_vec();
    let mut result = BigInt::zero();
    let mut level = 0i64;
    while !diffs.is_empty() {
        result += &diffs[0] * binom_gen(x - 1, level);
        level += 1;
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::PosetExpr;

    fn hasse(text: &str) -> HasseDigraph {
        text.parse::<PosetExpr>().unwrap().hasse()
    }

    #[test]
    fn lattice_shape() {
        let chain = IdealLattice::new(&hasse("c4")).unwrap();
        assert_eq!(chain.ideal_count(), 5);
        let anti = IdealLattice::new(&hasse("u(1,1,1)")).unwrap();
        assert_eq!(anti.ideal_count(), 8);
        // ∅ and V present.
        assert_eq!(anti.ideals().first(), Some(&0));
        assert_eq!(anti.ideals().last(), Some(&0b111));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_strict(&hasse("c2"), 3).unwrap(), BigInt::from(3));
        assert_eq!(count_strict(&hasse("u(1,1)"), 3).unwrap(), BigInt::from(9));
        assert_eq!(count_strict(&hasse("d(c2)"), 5).unwrap(), BigInt::from(13));
        assert_eq!(count_nonstrict(&hasse("c2"), 3).unwrap(), BigInt::from(6));
        assert_eq!(count_strict(&hasse("c3"), 0).unwrap(), BigInt::zero());
    }

    #[test]
    fn matches_series_expansions() {
        for text in ["1", "c3", "u(1,1)", "u(c2,c3)", "d(1)", "d(c2)", "mu(1,d(c3))", "mu(1,u(1,1),1)"] {
            let e: PosetExpr = text.parse().unwrap();
            let lattice = IdealLattice::new(&e.hasse()).unwrap();
            assert_eq!(
                lattice.counts_strict(8),
                e.eval_strict().expand(8),
                "strict {text}"
            );
            assert_eq!(
                lattice.counts_nonstrict(8),
                e.eval_nonstrict().expand(8),
                "non-strict {text}"
            );
        }
    }

    #[test]
    fn oracle_levels_agree() {
        for text in ["c4", "u(1,1)", "d(c2)", "mu(1,u(1,c2))", "u(c2,c2)"] {
            let h = hasse(text);
            for n in 0..=5 {
                assert_eq!(
                    count_strict(&h, n).unwrap(),
                    count_strict_naive(&h, n).unwrap(),
                    "strict {text} at {n}"
                );
                assert_eq!(
                    count_nonstrict(&h, n).unwrap(),
                    count_nonstrict_naive(&h, n).unwrap(),
                    "non-strict {text} at {n}"
                );
            }
        }
    }

    #[test]
    fn naive_oracle_caps_vertices() {
        let h = hasse("c13");
        assert!(matches!(
            count_strict_naive(&h, 2),
            Err(CalcError::SizeLimit { vertices: 13, limit: 12 })
        ));
    }

    #[test]
    fn reciprocity_at_integer_points() {
        // Strict counts equal (−1)^|V| times the interpolated non-strict
        // polynomial at −n.
        for text in ["c3", "u(1,1)", "d(1)", "mu(c2,u(1,1))"] {
            let e: PosetExpr = text.parse().unwrap();
            let h = e.hasse();
            let v = h.vertex_count() as u32;
            let lattice = IdealLattice::new(&h).unwrap();
            let values = &lattice.counts_nonstrict(v + 1)[1..];
            for n in 1..=4i64 {
                let at_neg = interpolate_at(values, -n);
                let signed = if v % 2 == 0 { at_neg } else { -at_neg };
                assert_eq!(
                    signed,
                    count_strict(&h, n as u32).unwrap(),
                    "{text} at {n}"
                );
            }
        }
    }

    #[test]
    fn interpolation_reproduces_polynomials() {
        // Values of x² at x = 1..4.
        let squares: Vec<BigInt> = (1..=4).map(|x| BigInt::from(x * x)).collect();
        assert_eq!(interpolate_at(&squares, 7), BigInt::from(49));
        assert_eq!(interpolate_at(&squares, -3), BigInt::from(9));
        assert_eq!(interpolate_at(&squares, 0), BigInt::zero());
    }
}
