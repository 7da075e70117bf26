//! Inverse search: given a chain-basis series, decide whether it is the
//! order series of a poset built from concatenation and the handle
//! operation (a Wixárika word), and enumerate all representing posets.
//!
//! The search derives the handle count d = k − i and concatenation
//! multiplicity m = i − 2d − 1 from the target's extreme indices, enumerates
//! all two-colored candidate words with those counts, filters them by an
//! extreme-term signature with a running divisibility prune, and confirms
//! survivors by full evaluation. A bounded general series-parallel mode
//! enumerates every canonical SP poset with exactly k points instead.
//!
//! Invariants:
//! - Every returned expression re-evaluates exactly to the input series.
//! - Class members are pairwise non-isomorphic and sorted by their printed
//!   form; the enumerations are deterministic, so results are reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::collections::HashMap;
use std::fmt;

use crate::error::CalcError;
use crate::hstar::chain_to_hstar;
use crate::poset::{isomorphic, HasseDigraph, PosetExpr, ISO_VERTEX_LIMIT};
use crate::series::ChainSeries;

/// Extreme terms of a series: lowest index and coefficient, highest index
/// and coefficient — the 4-tuple the candidate filter compares against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetSignature {
    pub low_coeff: BigInt,
    pub low_index: u32,
    pub high_coeff: BigInt,
    pub high_index: u32,
}

/// Search parameters derived from a feasible target series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetParams {
    pub low_index: u32,
    pub low_coeff: BigInt,
    pub high_index: u32,
    pub high_coeff: BigInt,
    /// Handle count d = high_index − low_index.
    pub dee_count: u32,
    /// Concatenation multiplicity m = low_index − 2d − 1.
    pub mu_multiplicity: u32,
}

/// Outcome of the structural feasibility screen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(TargetParams),
    /// The first violated condition, as a human-readable sentence.
    Infeasible(String),
}

/// Screen a series against the necessary conditions for being the order
/// series of a Wixárika word: positive coefficients, alternating sum 1,
/// m = i − 2d − 1 ≥ 0, and vanishing top h*-coefficient.
pub fn feasibility(f: &ChainSeries) -> Feasibility {
    let (Some(i), Some(k)) = (f.min_index(), f.max_index()) else {
        return Feasibility::Infeasible("the zero series represents no poset".to_string());
    };
    for (&u, a) in f.iter() {
        if !a.is_positive() {
            return Feasibility::Infeasible(format!(
                "coefficient at index {u} is {a}, not positive"
            ));
        }
    }
    let alt = f.alternating_sum();
    if !alt.is_one() {
        return Feasibility::Infeasible(format!("alternating sum is {alt}, not 1"));
    }
    let d = k - i;
    let m = i as i64 - 2 * d as i64 - 1;
    if m < 0 {
        return Feasibility::Infeasible(format!(
            "multiplicity m = i − 2d − 1 = {} − {} − 1 is negative",
            i,
            2 * d
        ));
    }
    match chain_to_hstar(f, k) {
        Ok(h) => {
            let top = h.coeff(k);
            if !top.is_zero() {
                return Feasibility::Infeasible(format!(
                    "top h*-coefficient is {top}, not 0"
                ));
            }
        }
        Err(e) => return Feasibility::Infeasible(e.to_string()),
    }
    Feasibility::Feasible(TargetParams {
        low_index: i,
        low_coeff: f.coeff(i),
        high_index: k,
        high_coeff: f.coeff(k),
        dee_count: d,
        mu_multiplicity: m as u32,
    })
}

/// A two-colored candidate word: corollas (arity ≥ 2, folded concatenation)
/// and unary handle nodes over point leaves. Corolla children are never
/// corollas themselves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CandidateWord {
    Leaf,
    Dee(Box<CandidateWord>),
    Corolla(Vec<CandidateWord>),
}

impl CandidateWord {
    /// Convert to a poset expression: all-leaf corollas become chains,
    /// mixed corollas concatenations.
    pub fn to_expr(&self) -> PosetExpr {
        match self {
            CandidateWord::Leaf => PosetExpr::Point,
            CandidateWord::Dee(w) => PosetExpr::dee(w.to_expr()),
            CandidateWord::Corolla(cs) => {
                if cs.iter().all(|c| matches!(c, CandidateWord::Leaf)) {
                    PosetExpr::chain(cs.len() as u32).expect("arity ≥ 2")
                } else {
                    PosetExpr::mu(cs.iter().map(Self::to_expr).collect()).expect("arity ≥ 2")
                }
            }
        }
    }
}

impl fmt::Display for CandidateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

/// Extreme-term signature of a word, with the trace of each handle input's
/// low index (depth-first order). The product of the trace equals the
/// word's low coefficient.
pub fn signature_eval(w: &CandidateWord) -> (TargetSignature, Vec<u32>) {
    fn fold(w: &CandidateWord, trace: &mut Vec<u32>) -> TargetSignature {
        match w {
            CandidateWord::Leaf => TargetSignature {
                low_coeff: BigInt::one(),
                low_index: 1,
                high_coeff: BigInt::one(),
                high_index: 1,
            },
            CandidateWord::Corolla(cs) => {
                let mut sig = TargetSignature {
                    low_coeff: BigInt::one(),
                    low_index: 0,
                    high_coeff: BigInt::one(),
                    high_index: 0,
                };
                for c in cs {
                    let s = fold(c, trace);
                    sig.low_coeff *= s.low_coeff;
                    sig.low_index += s.low_index;
                    sig.high_coeff *= s.high_coeff;
                    sig.high_index += s.high_index;
                }
                sig
            }
            CandidateWord::Dee(inner) => {
                let s = fold(inner, trace);
                trace.push(s.low_index);
                TargetSignature {
                    low_coeff: BigInt::from(s.low_index) * s.low_coeff,
                    low_index: s.low_index + 2,
                    high_coeff: (BigInt::from(s.high_index) + 1) * s.high_coeff,
                    high_index: s.high_index + 3,
                }
            }
        }
    }
    let mut trace = Vec::new();
    let sig = fold(w, &mut trace);
    (sig, trace)
}

/// Signature evaluation with the divisibility prune: the running product of
/// handle-input low indices must divide `target_low`; returns None as soon
/// as it does not (the word then cannot match the target).
fn signature_eval_pruned(w: &CandidateWord, target_low: &BigInt) -> Option<TargetSignature> {
    fn fold(
        w: &CandidateWord,
        target_low: &BigInt,
        product: &mut BigInt,
    ) -> Option<TargetSignature> {
        match w {
            CandidateWord::Leaf => Some(TargetSignature {
                low_coeff: BigInt::one(),
                low_index: 1,
                high_coeff: BigInt::one(),
                high_index: 1,
            }),
            CandidateWord::Corolla(cs) => {
                let mut sig = TargetSignature {
                    low_coeff: BigInt::one(),
                    low_index: 0,
                    high_coeff: BigInt::one(),
                    high_index: 0,
                };
                for c in cs {
                    let s = fold(c, target_low, product)?;
                    sig.low_coeff *= s.low_coeff;
                    sig.low_index += s.low_index;
                    sig.high_coeff *= s.high_coeff;
                    sig.high_index += s.high_index;
                }
                Some(sig)
            }
            CandidateWord::Dee(inner) => {
                let s = fold(inner, target_low, product)?;
                *product *= BigInt::from(s.low_index);
                if !target_low.is_multiple_of(product) {
                    return None;
                }
                Some(TargetSignature {
                    low_coeff: BigInt::from(s.low_index) * s.low_coeff,
                    low_index: s.low_index + 2,
                    high_coeff: (BigInt::from(s.high_index) + 1) * s.high_coeff,
                    high_index: s.high_index + 3,
                })
            }
        }
    }
    let mut product = BigInt::one();
    fold(w, target_low, &mut product)
}

/// All weak compositions of `total` into `parts` parts, lexicographic.
fn compositions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

struct WordEnumerator {
    memo: HashMap<(u32, u32), Vec<CandidateWord>>,
}

impl WordEnumerator {
    fn new() -> Self {
        Self {
            memo: HashMap::new(),
        }
    }

    /// All normalized words with exactly `d` handle nodes and total corolla
    /// multiplicity `m` (an arity-r corolla contributes r − 1).
    fn words(&mut self, d: u32, m: u32) -> Vec<CandidateWord> {
        if let Some(hit) = self.memo.get(&(d, m)) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if d == 0 && m == 0 {
            out.push(CandidateWord::Leaf);
        }
        if d >= 1 {
            for w in self.words(d - 1, m) {
                out.push(CandidateWord::Dee(Box::new(w)));
            }
        }
        // Corolla roots: arity r contributes r − 1 to m; children are leaves
        // or handle-rooted words, so a child with d_j = 0 must be a leaf with
        // m_j = 0.
        for r in 2..=m + 1 {
            let m_rest = m - (r - 1);
            for d_split in compositions(d, r) {
                for m_split in compositions(m_rest, r) {
                    let child_lists: Vec<Vec<CandidateWord>> = (0..r as usize)
                        .map(|j| self.child_words(d_split[j], m_split[j]))
                        .collect();
                    if child_lists.iter().any(Vec::is_empty) {
                        continue;
                    }
                    let mut stack: Vec<Vec<CandidateWord>> = vec![Vec::new()];
                    for list in &child_lists {
                        let mut next = Vec::with_capacity(stack.len() * list.len());
                        for prefix in &stack {
                            for item in list {
                                let mut assembled = prefix.clone();
                                assembled.push(item.clone());
                                next.push(assembled);
                            }
                        }
                        stack = next;
                    }
                    out.extend(stack.into_iter().map(CandidateWord::Corolla));
                }
            }
        }
        out.sort();
        self.memo.insert((d, m), out.clone());
        out
    }

    /// Words usable as corolla children: a leaf or a handle-rooted word.
    fn child_words(&mut self, d: u32, m: u32) -> Vec<CandidateWord> {
        if d == 0 {
            return if m == 0 {
                vec![CandidateWord::Leaf]
            } else {
                Vec::new()
            };
        }
        self.words(d - 1, m)
            .into_iter()
            .map(|w| CandidateWord::Dee(Box::new(w)))
            .collect()
    }
}

/// Exhaustive, duplicate-free, deterministically ordered enumeration of
/// candidate words with exactly `d` handle nodes and corolla multiplicity `m`.
pub fn enumerate_candidates(d: u32, m: u32) -> Vec<CandidateWord> {
    WordEnumerator::new().words(d, m)
}

/// A set of pairwise non-isomorphic posets sharing one order series.
#[derive(Clone, Debug)]
pub struct DoppelgangerClass {
    /// Members sorted by their printed form.
    pub members: Vec<PosetExpr>,
    /// Hasse digraph of the first member.
    pub representative: HasseDigraph,
}

/// Collapse maximal runs of ≥ 2 consecutive points in concatenations into
/// chains, recursively — print-level normalization of search output.
fn collapse_point_runs(e: &PosetExpr) -> PosetExpr {
    match e {
        PosetExpr::Point | PosetExpr::Chain(_) => e.clone(),
        PosetExpr::Dee(c) => PosetExpr::dee(collapse_point_runs(c)),
        PosetExpr::Union(cs) => {
            PosetExpr::union(cs.iter().map(collapse_point_runs).collect()).expect("arity kept")
        }
        PosetExpr::Mu(cs) => {
            let mut grouped: Vec<PosetExpr> = Vec::new();
            let mut run = 0u32;
            let flush = |grouped: &mut Vec<PosetExpr>, run: &mut u32| {
                match *run {
                    0 => {}
                    1 => grouped.push(PosetExpr::Point),
                    n => grouped.push(PosetExpr::Chain(n)),
                }
                *run = 0;
            };
            for c in cs {
                if matches!(c, PosetExpr::Point) {
                    run += 1;
                } else {
                    flush(&mut grouped, &mut run);
                    grouped.push(collapse_point_runs(c));
                }
            }
            flush(&mut grouped, &mut run);
            if grouped.len() == 1 {
                grouped.pop().expect("one element")
            } else {
                PosetExpr::Mu(grouped)
            }
        }
    }
}

/// Deduplicate expressions up to poset isomorphism and package them as a
/// class list (empty or a single class, since all share one series).
fn into_classes(mut exprs: Vec<PosetExpr>) -> Result<Vec<DoppelgangerClass>, CalcError> {
    exprs.sort_by_cached_key(|e| e.to_string());
    let mut members: Vec<PosetExpr> = Vec::new();
    let mut graphs: Vec<HasseDigraph> = Vec::new();
    for e in exprs {
        let h = e.hasse();
        let mut duplicate = false;
        for known in &graphs {
            if isomorphic(known, &h)? {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            members.push(e);
            graphs.push(h);
        }
    }
    if members.is_empty() {
        return Ok(Vec::new());
    }
    let representative = graphs.swap_remove(0);
    Ok(vec![DoppelgangerClass {
        members,
        representative,
    }])
}

/// Find every poset expressible as a Wixárika word whose strict order series
/// equals `f` exactly, grouped into at most one Doppelgänger class.
/// Errors with the feasibility report when the screen rejects `f`.
pub fn solve(f: &ChainSeries) -> Result<Vec<DoppelgangerClass>, CalcError> {
    let params = match feasibility(f) {
        Feasibility::Feasible(p) => p,
        Feasibility::Infeasible(reason) => return Err(CalcError::Infeasible { report: reason }),
    };
    if params.high_index as usize > ISO_VERTEX_LIMIT {
        return Err(CalcError::SizeLimit {
            vertices: params.high_index as usize,
            limit: ISO_VERTEX_LIMIT,
        });
    }
    let words = enumerate_candidates(params.dee_count, params.mu_multiplicity);
    let target = TargetSignature {
        low_coeff: params.low_coeff.clone(),
        low_index: params.low_index,
        high_coeff: params.high_coeff.clone(),
        high_index: params.high_index,
    };
    let matches: Vec<PosetExpr> = words
        .par_iter()
        .filter_map(|w| {
            let sig = signature_eval_pruned(w, &target.low_coeff)?;
            if sig != target {
                return None;
            }
            let expr = w.to_expr();
            (expr.eval_strict() == *f).then(|| collapse_point_runs(&expr))
        })
        .collect();
    into_classes(matches)
}

/// All canonical series-parallel expressions with exactly `points` points.
/// Canonical means: concatenations list ≥ 2 series-indecomposable blocks in
/// order; unions list ≥ 2 parallel-indecomposable blocks as a multiset.
pub fn sp_posets(points: u32) -> Vec<PosetExpr> {
    let p = points as usize;
    // sind[s]: series-indecomposable (point or union-rooted);
    // pind[s]: parallel-indecomposable (point or concatenation-rooted).
    let mut sind: Vec<Vec<PosetExpr>> = vec![Vec::new(); p + 1];
    let mut pind: Vec<Vec<PosetExpr>> = vec![Vec::new(); p + 1];
    let mut all: Vec<Vec<PosetExpr>> = vec![Vec::new(); p + 1];
    for s in 1..=p {
        // Concatenations of total size s: ordered sequences of ≥ 2
        // series-indecomposable blocks. seqs[q] = sequences of ≥ 1 blocks
        // totalling q, built from already-complete sind[< s].
        let mut seqs: Vec<Vec<Vec<PosetExpr>>> = vec![Vec::new(); s + 1];
        seqs[0].push(Vec::new());
        for q in 1..=s {
            for first in 1..=q {
                for block in &sind[first] {
                    for rest in seqs[q - first].clone() {
                        let mut seq = Vec::with_capacity(rest.len() + 1);
                        seq.push(block.clone());
                        seq.extend(rest);
                        seqs[q].push(seq);
                    }
                }
            }
        }
        let mus: Vec<PosetExpr> = seqs[s]
            .iter()
            .filter(|seq| seq.len() >= 2)
            .map(|seq| PosetExpr::mu(seq.clone()).expect("≥ 2 blocks"))
            .collect();

        // Unions of total size s: multisets of ≥ 2 parallel-indecomposable
        // blocks, enumerated as nondecreasing sequences over (size, position).
        let mut unions: Vec<PosetExpr> = Vec::new();
        fn multisets(
            remaining: usize,
            min_size: usize,
            min_pos: usize,
            pind: &[Vec<PosetExpr>],
            chosen: &mut Vec<PosetExpr>,
            out: &mut Vec<PosetExpr>,
        ) {
            if remaining == 0 {
                if chosen.len() >= 2 {
                    out.push(PosetExpr::union(chosen.clone()).expect("≥ 2 blocks"));
                }
                return;
            }
            for size in min_size..=remaining {
                let start = if size == min_size { min_pos } else { 0 };
                for pos in start..pind[size].len() {
                    chosen.push(pind[size][pos].clone());
                    multisets(remaining - size, size, pos, pind, chosen, out);
                    chosen.pop();
                }
            }
        }
        multisets(s, 1, 0, &pind, &mut Vec::new(), &mut unions);

        sind[s] = if s == 1 {
            vec![PosetExpr::Point]
        } else {
            unions.clone()
        };
        pind[s] = if s == 1 {
            vec![PosetExpr::Point]
        } else {
            mus.clone()
        };
        all[s] = if s == 1 {
            vec![PosetExpr::Point]
        } else {
            let mut both = mus;
            both.extend(unions);
            both
        };
    }
    all.pop().unwrap_or_default()
}

/// Bounded general series-parallel search: enumerate every canonical SP
/// poset with exactly k = max-index points (errors through `max_points`
/// when k exceeds it) and return those whose series equals `f`, grouped as
/// in [`solve`]. Members are unique up to isomorphism by construction of
/// the enumeration, but are still deduplicated defensively.
pub fn solve_sp(f: &ChainSeries, max_points: u32) -> Result<Vec<DoppelgangerClass>, CalcError> {
    let (Some(_), Some(k)) = (f.min_index(), f.max_index()) else {
        return Err(CalcError::Infeasible {
            report: "the zero series represents no poset".to_string(),
        });
    };
    for (&u, a) in f.iter() {
        if !a.is_positive() {
            return Err(CalcError::Infeasible {
                report: format!("coefficient at index {u} is {a}, not positive"),
            });
        }
    }
    let alt = f.alternating_sum();
    if !alt.is_one() {
        return Err(CalcError::Infeasible {
            report: format!("alternating sum is {alt}, not 1"),
        });
    }
    if k > max_points {
        return Err(CalcError::SearchCap {
            needed: k,
            cap: max_points,
        });
    }
    if k as usize > ISO_VERTEX_LIMIT {
        return Err(CalcError::SizeLimit {
            vertices: k as usize,
            limit: ISO_VERTEX_LIMIT,
        });
    }
    let candidates = sp_posets(k);
    let matches: Vec<PosetExpr> = candidates
        .par_iter()
        .filter(|e| e.eval_strict() == *f)
        .map(collapse_point_runs)
        .collect();
    into_classes(matches)
}
