//! Shared helpers for the integration-test suite: deterministic
//! pseudorandom poset corpora and small enumeration utilities.
//!
//! Each integration-test target compiles this module separately and uses a
//! subset of it, so unused-item lints are suppressed here.
#![allow(dead_code)]

use chaincalc::poset::PosetExpr;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic corpus of handle words (built from points with
/// concatenation and the handle operation only), each with at most
/// `max_points` points.  Identical `(count, max_points, seed)` triples
/// produce identical corpora on every platform.
pub fn wixarika_corpus(count: usize, max_points: u32, seed: u64) -> Vec<PosetExpr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            // Bias toward larger budgets so deep handle nesting shows up.
            let a = rng.gen_range(1..=max_points);
            let b = rng.gen_range(1..=max_points);
            random_word(&mut rng, a.max(b), false)
        })
        .collect()
}

/// Deterministic corpus of series-parallel expressions (disjoint unions
/// allowed), each with at most `max_points` points.
pub fn sp_corpus(count: usize, max_points: u32, seed: u64) -> Vec<PosetExpr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = rng.gen_range(1..=max_points);
            let b = rng.gen_range(1..=max_points);
            random_word(&mut rng, a.max(b), true)
        })
        .collect()
}

/// Builds a random expression using at most `budget` points (always ≥ 1).
fn random_word(rng: &mut ChaCha8Rng, budget: u32, allow_union: bool) -> PosetExpr {
    let point = PosetExpr::chain(1).expect("point");
    if budget <= 1 {
        return point;
    }
    // Candidate shapes: 0 = point, 1 = chain, 2 = concatenation,
    // 3 = handle (needs 3 points + a child), 4 = union.
    let mut shapes = vec![0, 1, 2, 2];
    if budget >= 4 {
        shapes.extend([3, 3, 3]);
    }
    if allow_union {
        shapes.extend([4, 4]);
    }
    match shapes[rng.gen_range(0..shapes.len())] {
        0 => point,
        1 => PosetExpr::chain(rng.gen_range(2..=budget)).expect("chain"),
        2 => {
            let children = random_children(rng, budget, allow_union);
            PosetExpr::mu(children).expect("concatenation")
        }
        3 => PosetExpr::dee(random_word(rng, budget - 3, allow_union)),
        _ => {
            let children = random_children(rng, budget, allow_union);
            PosetExpr::union(children).expect("union")
        }
    }
}

/// Splits `budget ≥ 2` points across 2..=4 children, each getting ≥ 1.
fn random_children(rng: &mut ChaCha8Rng, budget: u32, allow_union: bool) -> Vec<PosetExpr> {
    let arity = rng.gen_range(2..=4u32.min(budget));
    let mut remaining = budget;
    let mut children = Vec::with_capacity(arity as usize);
    for slot in 0..arity {
        let left_after = arity - slot - 1;
        let hi = remaining - left_after;
        let share = if slot == arity - 1 { hi } else { rng.gen_range(1..=hi) };
        children.push(random_word(rng, share, allow_union));
        remaining -= share;
    }
    children
}

/// Every way to write `total` as an ordered sum of `parts` integers each
/// ≥ `min_part`, in lexicographic order.
pub fn compositions(total: u64, parts: usize, min_part: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(parts);
    fn rec(out: &mut Vec<Vec<u64>>, buf: &mut Vec<u64>, total: u64, parts: usize, min_part: u64) {
        if parts == 0 {
            if total == 0 {
                out.push(buf.clone());
            }
            return;
        }
        let reserve = min_part * (parts as u64 - 1);
        if total < min_part + reserve {
            return;
        }
        for x in min_part..=total - reserve {
            buf.push(x);
            rec(out, buf, total - x, parts - 1, min_part);
            buf.pop();
        }
    }
    rec(&mut out, &mut buf, total, parts, min_part);
    out
}
