//! Series-parallel poset expressions, their Hasse digraphs, structural
//! invariants, evaluation into the chain basis, and isomorphism testing.
//!
//! Expressions are trees over Point, Chain(n) (sugar for an n-fold
//! concatenation of points), Mu (ordered concatenation, ≥ 2 children),
//! Union (unordered disjoint union, ≥ 2 children), and the handle
//! operation Dee.
//!
//! Invariants:
//! - Corolla normal form: no Mu child is itself a Mu (constructors and the
//!   parser splice nested Mu children in place).
//! - Union children are stored sorted by their printed form, making
//!   structural equality multiset equality; Chain(1) normalizes to Point.
//! - Hasse digraphs carry covering edges only, listed as (lower, upper).

use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::CalcError;
use crate::series::{ChainSeries, NonStrictSeries};

/// Largest vertex count accepted by [`isomorphic`].
pub const ISO_VERTEX_LIMIT: usize = 32;

/// A series-parallel poset expression with the handle operation as a
/// primitive node kind.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PosetExpr {
    Point,
    /// n-element chain, n ≥ 2 (n = 1 normalizes to Point).
    Chain(u32),
    /// Ordered concatenation, ≥ 2 children, none itself a Mu.
    Mu(Vec<PosetExpr>),
    /// Unordered disjoint union, ≥ 2 children, stored sorted, none a Union.
    Union(Vec<PosetExpr>),
    /// Handle operation: new minimum x₀ and maximum x₁ around the child,
    /// plus an incomparable middle point strictly between them.
    Dee(Box<PosetExpr>),
}

impl PosetExpr {
    /// The n-element chain; n = 1 gives Point. Errors on n = 0.
    pub fn chain(n: u32) -> Result<Self, CalcError> {
        match n {
            0 => Err(CalcError::Domain("chain needs at least 1 point".to_string())),
            1 => Ok(PosetExpr::Point),
            _ => Ok(PosetExpr::Chain(n)),
        }
    }

    /// Ordered concatenation. Nested Mu children are spliced in place
    /// (corolla normal form); needs ≥ 2 children after splicing.
    pub fn mu(children: Vec<Self>) -> Result<Self, CalcError> {
        let mut flat = Vec::with_capacity(children.len());
        for child in children {
            match child {
                PosetExpr::Mu(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() < 2 {
            return Err(CalcError::Domain(
                "mu needs at least 2 children".to_string(),
            ));
        }
        Ok(PosetExpr::Mu(flat))
    }

    /// Unordered disjoint union. Nested Union children are spliced in place
    /// and the result is stored sorted; needs ≥ 2 children after splicing.
    pub fn union(children: Vec<Self>) -> Result<Self, CalcError> {
        let mut flat = Vec::with_capacity(children.len());
        for child in children {
            match child {
                PosetExpr::Union(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() < 2 {
            return Err(CalcError::Domain(
                "u needs at least 2 children".to_string(),
            ));
        }
        flat.sort_by_cached_key(|e| e.to_string());
        Ok(PosetExpr::Union(flat))
    }

    /// Handle operation around a child expression.
    pub fn dee(child: Self) -> Self {
        PosetExpr::Dee(Box::new(child))
    }

    /// Total number of poset elements.
    pub fn n_points(&self) -> u32 {
        match self {
            PosetExpr::Point => 1,
            PosetExpr::Chain(n) => *n,
            PosetExpr::Mu(cs) | PosetExpr::Union(cs) => cs.iter().map(Self::n_points).sum(),
            PosetExpr::Dee(c) => c.n_points() + 3,
        }
    }

    /// True when the expression uses only Point, Chain, Mu, and Dee —
    /// no Union outside the three points Dee itself contributes.
    pub fn is_wixarika(&self) -> bool {
        match self {
            PosetExpr::Point | PosetExpr::Chain(_) => true,
            PosetExpr::Mu(cs) => cs.iter().all(Self::is_wixarika),
            PosetExpr::Union(_) => false,
            PosetExpr::Dee(c) => c.is_wixarika(),
        }
    }

    /// Strict order series: Point ↦ z[1], Chain(n) ↦ z[n], Mu folds the
    /// concatenation product, Union the Hadamard product, Dee the handle
    /// operation.
    pub fn eval_strict(&self) -> ChainSeries {
        match self {
            PosetExpr::Point => ChainSeries::basis(1),
            PosetExpr::Chain(n) => ChainSeries::basis(*n),
            PosetExpr::Mu(cs) => cs
                .iter()
                .map(Self::eval_strict)
                .reduce(|f, g| f.star(&g))
                .expect("mu nodes have children"),
            PosetExpr::Union(cs) => cs
                .iter()
                .map(Self::eval_strict)
                .reduce(|f, g| f.hadamard(&g))
                .expect("u nodes have children"),
            PosetExpr::Dee(c) => c.eval_strict().dee(),
        }
    }

    /// Non-strict order series: the reciprocity involution of the strict
    /// series at the expression's point count.
    pub fn eval_nonstrict(&self) -> NonStrictSeries {
        self.eval_strict()
            .reciprocity(self.n_points())
            .expect("an order series has max index at most the point count")
    }

    /// Min indices of the series entering each Dee node, in depth-first
    /// order. Their product equals the bottom coefficient a_i of the whole
    /// series when the expression is a Wixárika word.
    pub fn dee_min_indices(&self) -> Vec<u32> {
        fn walk(e: &PosetExpr, out: &mut Vec<u32>) -> ChainSeries {
            match e {
                PosetExpr::Point => ChainSeries::basis(1),
                PosetExpr::Chain(n) => ChainSeries::basis(*n),
                PosetExpr::Mu(cs) => cs
                    .iter()
                    .map(|c| walk(c, out))
                    .reduce(|f, g| f.star(&g))
                    .expect("mu nodes have children"),
                PosetExpr::Union(cs) => cs
                    .iter()
                    .map(|c| walk(c, out))
                    .reduce(|f, g| f.hadamard(&g))
                    .expect("u nodes have children"),
                PosetExpr::Dee(c) => {
                    let inner = walk(c, out);
                    out.push(inner.min_index().unwrap_or(0));
                    inner.dee()
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Replace every Dee(X) with Mu(Point, Union(Point, X), Point): a pure
    /// series-parallel expression of the same poset.
    pub fn desugar_dee(&self) -> PosetExpr {
        match self {
            PosetExpr::Point => PosetExpr::Point,
            PosetExpr::Chain(n) => PosetExpr::Chain(*n),
            PosetExpr::Mu(cs) => {
                PosetExpr::mu(cs.iter().map(Self::desugar_dee).collect()).expect("arity kept")
            }
            PosetExpr::Union(cs) => {
                PosetExpr::union(cs.iter().map(Self::desugar_dee).collect()).expect("arity kept")
            }
            PosetExpr::Dee(c) => {
                let middle = PosetExpr::union(vec![PosetExpr::Point, c.desugar_dee()])
                    .expect("two children");
                PosetExpr::mu(vec![PosetExpr::Point, middle, PosetExpr::Point])
                    .expect("three children")
            }
        }
    }

    /// Build the Hasse digraph (covering edges only).
    pub fn hasse(&self) -> HasseDigraph {
        let frag = build_fragment(self, 0);
        HasseDigraph::from_parts(frag.n, frag.edges)
    }

    /// Structural invariants: graph quantities from the Hasse digraph plus
    /// operation counts from the tree (Chain(n) counts as n − 1 binary
    /// concatenations of n points).
    pub fn invariants(&self) -> PosetInvariants {
        let h = self.hasse();
        let (mut mu_count, mut dee_count, mut leaf_count) = (0, 0, 0);
        fn counts(e: &PosetExpr, mu: &mut u32, dee: &mut u32, leaf: &mut u32) {
            match e {
                PosetExpr::Point => *leaf += 1,
                PosetExpr::Chain(n) => {
                    *leaf += n;
                    *mu += n - 1;
                }
                PosetExpr::Mu(cs) => {
                    *mu += cs.len() as u32 - 1;
                    cs.iter().for_each(|c| counts(c, mu, dee, leaf));
                }
                PosetExpr::Union(cs) => cs.iter().for_each(|c| counts(c, mu, dee, leaf)),
                PosetExpr::Dee(c) => {
                    *dee += 1;
                    counts(c, mu, dee, leaf);
                }
            }
        }
        counts(self, &mut mu_count, &mut dee_count, &mut leaf_count);
        PosetInvariants {
            n_points: h.vertex_count() as u32,
            max_chain: h.max_chain(),
            betti: h.betti(),
            components: h.components(),
            mu_count,
            dee_count,
            leaf_count,
        }
    }
}

/// Structural invariants of an expression. For Wixárika words these satisfy
/// betti = dee_count = n_points − max_chain and
/// mu_count = max_chain − 2·betti − 1 = leaf_count − 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PosetInvariants {
    pub n_points: u32,
    pub max_chain: u32,
    pub betti: u32,
    pub components: u32,
    pub mu_count: u32,
    pub dee_count: u32,
    pub leaf_count: u32,
}

// ---------------------------------------------------------------------------
// Hasse digraph construction
// ---------------------------------------------------------------------------

struct Fragment {
    n: u32,
    edges: Vec<(u32, u32)>,
    mins: Vec<u32>,
    maxs: Vec<u32>,
}

fn build_fragment(e: &PosetExpr, base: u32) -> Fragment {
    match e {
        PosetExpr::Point => Fragment {
            n: 1,
            edges: Vec::new(),
            mins: vec![base],
            maxs: vec![base],
        },
        PosetExpr::Chain(n) => Fragment {
            n: *n,
            edges: (0..n - 1).map(|i| (base + i, base + i + 1)).collect(),
            mins: vec![base],
            maxs: vec![base + n - 1],
        },
        PosetExpr::Mu(cs) => {
            let mut offset = base;
            let mut edges = Vec::new();
            let mut prev_maxs: Vec<u32> = Vec::new();
            let mut mins = Vec::new();
            let mut maxs = Vec::new();
            for (idx, c) in cs.iter().enumerate() {
                let frag = build_fragment(c, offset);
                for &upper in &frag.mins {
                    for &lower in &prev_maxs {
                        edges.push((lower, upper));
                    }
                }
                edges.extend(frag.edges);
                if idx == 0 {
                    mins = frag.mins.clone();
                }
                prev_maxs = frag.maxs;
                offset += frag.n;
            }
            maxs.extend(prev_maxs);
            Fragment {
                n: offset - base,
                edges,
                mins,
                maxs,
            }
        }
        PosetExpr::Union(cs) => {
            let mut offset = base;
            let mut edges = Vec::new();
            let mut mins = Vec::new();
            let mut maxs = Vec::new();
            for c in cs {
                let frag = build_fragment(c, offset);
                edges.extend(frag.edges);
                mins.extend(frag.mins);
                maxs.extend(frag.maxs);
                offset += frag.n;
            }
            Fragment {
                n: offset - base,
                edges,
                mins,
                maxs,
            }
        }
        PosetExpr::Dee(c) => {
            let frag = build_fragment(c, base);
            let x0 = base + frag.n;
            let y = x0 + 1;
            let x1 = x0 + 2;
            let mut edges = frag.edges;
            edges.push((x0, y));
            edges.push((y, x1));
            for &m in &frag.mins {
                edges.push((x0, m));
            }
            for &m in &frag.maxs {
                edges.push((m, x1));
            }
            Fragment {
                n: frag.n + 3,
                edges,
                mins: vec![x0],
                maxs: vec![x1],
            }
        }
    }
}

/// Hasse digraph of a poset: covering edges only, listed as (lower, upper).
/// Derived quantities (components, longest chain, Betti number) are computed
/// once at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDigraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    components: u32,
    max_chain: u32,
    betti: u32,
}

impl HasseDigraph {
    fn from_parts(n: u32, mut edges: Vec<(u32, u32)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let n = n as usize;

        // Component count by union-find.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for &(a, b) in &edges {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
        roots.sort_unstable();
        roots.dedup();
        let components = roots.len() as u32;

        // Longest chain (vertex count) by dynamic programming in
        // topological order; edges always point lower → upper.
        let mut indeg = vec![0usize; n];
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a as usize].push(b);
            indeg[b as usize] += 1;
        }
        let mut depth = vec![1u32; n];
        let mut queue: Vec<u32> = (0..n as u32).filter(|&v| indeg[v as usize] == 0).collect();
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head] as usize;
            head += 1;
            for &w in &adj[v] {
                let w = w as usize;
                depth[w] = depth[w].max(depth[v] + 1);
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w as u32);
                }
            }
        }
        debug_assert_eq!(queue.len(), n, "covering digraph must be acyclic");
        let max_chain = depth.iter().copied().max().unwrap_or(0);

        let betti = (edges.len() + components as usize - n) as u32;
        Self {
            n,
            edges,
            components,
            max_chain,
            betti,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Covering edges as (lower, upper) pairs, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn components(&self) -> u32 {
        self.components
    }

    /// Number of vertices in a longest chain, over all components.
    pub fn max_chain(&self) -> u32 {
        self.max_chain
    }

    /// First Betti number of the underlying graph:
    /// edges − vertices + components.
    pub fn betti(&self) -> u32 {
        self.betti
    }
}

// ---------------------------------------------------------------------------
// Isomorphism testing
// ---------------------------------------------------------------------------

struct AdjMasks {
    up: Vec<u64>,
    down: Vec<u64>,
}

impl AdjMasks {
    fn new(h: &HasseDigraph) -> Self {
        let mut up = vec![0u64; h.n];
        let mut down = vec![0u64; h.n];
        for &(a, b) in &h.edges {
            up[a as usize] |= 1 << b;
            down[b as usize] |= 1 << a;
        }
        Self { up, down }
    }
}

/// Iteratively refine vertex colors of both graphs with a shared signature
/// table until stable; returns None as soon as the color histograms diverge
/// (which proves non-isomorphism).
fn joint_refine(a: &AdjMasks, b: &AdjMasks) -> Option<(Vec<u32>, Vec<u32>)> {
    let (na, nb) = (a.up.len(), b.up.len());
    let mut ca = vec![0u32; na];
    let mut cb = vec![0u32; nb];
    let mut classes = 1usize;
    loop {
        type Sig = (u32, Vec<u32>, Vec<u32>);
        let signature = |masks: &AdjMasks, colors: &[u32], v: usize| -> Sig {
            let collect = |mask: u64| {
                let mut cs: Vec<u32> =
                    (0..colors.len()).filter(|&w| mask >> w & 1 == 1).map(|w| colors[w]).collect();
                cs.sort_unstable();
                cs
            };
            (colors[v], collect(masks.up[v]), collect(masks.down[v]))
        };
        let sigs_a: Vec<Sig> = (0..na).map(|v| signature(a, &ca, v)).collect();
        let sigs_b: Vec<Sig> = (0..nb).map(|v| signature(b, &cb, v)).collect();
        let mut table: BTreeMap<&Sig, u32> = BTreeMap::new();
        for sig in sigs_a.iter().chain(sigs_b.iter()) {
            let next = table.len() as u32;
            table.entry(sig).or_insert(next);
        }
        // Re-number in signature order so ids are deterministic.
        let mut ordered: Vec<&Sig> = table.keys().copied().collect();
        ordered.sort();
        let ids: BTreeMap<&Sig, u32> = ordered
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i as u32))
            .collect();
        ca = sigs_a.iter().map(|s| ids[s]).collect();
        cb = sigs_b.iter().map(|s| ids[s]).collect();

        let hist = |colors: &[u32]| {
            let mut h = vec![0u32; ids.len()];
            colors.iter().for_each(|&c| h[c as usize] += 1);
            h
        };
        if hist(&ca) != hist(&cb) {
            return None;
        }
        if ids.len() == classes {
            return Some((ca, cb));
        }
        classes = ids.len();
    }
}

/// Decide order-isomorphism of two Hasse digraphs (≤ 32 vertices each) by
/// color refinement followed by backtracking over color-compatible vertex
/// assignments.
pub fn isomorphic(a: &HasseDigraph, b: &HasseDigraph) -> Result<bool, CalcError> {
    for h in [a, b] {
        if h.n > ISO_VERTEX_LIMIT {
            return Err(CalcError::SizeLimit {
                vertices: h.n,
                limit: ISO_VERTEX_LIMIT,
            });
        }
    }
    if a.n != b.n
        || a.edges.len() != b.edges.len()
        || a.components != b.components
        || a.max_chain != b.max_chain
    {
        return Ok(false);
    }
    if a.n == 0 {
        return Ok(true);
    }
    let (ma, mb) = (AdjMasks::new(a), AdjMasks::new(b));
    let Some((ca, cb)) = joint_refine(&ma, &mb) else {
        return Ok(false);
    };

    // Candidates of each a-vertex: b-vertices of the same color. Assign the
    // most constrained vertices first.
    let mut class_size = BTreeMap::new();
    for &c in &ca {
        *class_size.entry(c).or_insert(0u32) += 1;
    }
    let mut order: Vec<usize> = (0..a.n).collect();
    order.sort_by_key(|&v| (class_size[&ca[v]], ca[v], v));

    let mut map_a: Vec<Option<usize>> = vec![None; a.n];
    let mut used_b = 0u64;

    fn consistent(ma: &AdjMasks, mb: &AdjMasks, map_a: &[Option<usize>], va: usize, vb: usize) -> bool {
        for (ua, ub) in map_a.iter().enumerate().filter_map(|(u, m)| m.map(|t| (u, t))) {
            if (ma.up[va] >> ua & 1) != (mb.up[vb] >> ub & 1)
                || (ma.down[va] >> ua & 1) != (mb.down[vb] >> ub & 1)
            {
                return false;
            }
        }
        true
    }

    fn backtrack(
        pos: usize,
        order: &[usize],
        ca: &[u32],
        cb: &[u32],
        ma: &AdjMasks,
        mb: &AdjMasks,
        map_a: &mut Vec<Option<usize>>,
        used_b: &mut u64,
    ) -> bool {
        let Some(&va) = order.get(pos) else {
            return true;
        };
        for vb in 0..cb.len() {
            if *used_b >> vb & 1 == 1 || cb[vb] != ca[va] {
                continue;
            }
            if consistent(ma, mb, map_a, va, vb) {
                map_a[va] = Some(vb);
                *used_b |= 1 << vb;
                if backtrack(pos + 1, order, ca, cb, ma, mb, map_a, used_b) {
                    return true;
                }
                map_a[va] = None;
                *used_b &= !(1 << vb);
            }
        }
        false
    }

    Ok(backtrack(0, &order, &ca, &cb, &ma, &mb, &mut map_a, &mut used_b))
}

// ---------------------------------------------------------------------------
// Textual form: `1`, `cN`, `mu(...)`, `u(...)`, `d(...)`; ASCII,
// whitespace-insensitive.
// ---------------------------------------------------------------------------

impl fmt::Display for PosetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetExpr::Point => write!(f, "1"),
            PosetExpr::Chain(n) => write!(f, "c{n}"),
            PosetExpr::Mu(cs) | PosetExpr::Union(cs) => {
                write!(f, "{}(", if matches!(self, PosetExpr::Mu(_)) { "mu" } else { "u" })?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            PosetExpr::Dee(c) => write!(f, "d({c})"),
        }
    }
}

struct ExprParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn err(&self, message: impl Into<String>) -> CalcError {
        CalcError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), CalcError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", byte as char)))
        }
    }

    fn number(&mut self) -> Result<u32, CalcError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("digits are ASCII")
            .parse()
            .map_err(|_| CalcError::Syntax {
                position: start,
                message: "number out of range".to_string(),
            })
    }

    fn children(&mut self) -> Result<Vec<PosetExpr>, CalcError> {
        self.expect(b'(')?;
        let mut out = vec![self.expr()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.expr()?);
        }
        self.expect(b')')?;
        Ok(out)
    }

    fn expr(&mut self) -> Result<PosetExpr, CalcError> {
        let at = self.pos;
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(PosetExpr::Point)
            }
            Some(b'c') => {
                self.pos += 1;
                let n = self.number()?;
                PosetExpr::chain(n).map_err(|e| CalcError::Syntax {
                    position: at,
                    message: e.to_string(),
                })
            }
            Some(b'm') => {
                if self.bytes[self.pos..].starts_with(b"mu") {
                    self.pos += 2;
                    let at = self.pos;
                    let children = self.children()?;
                    PosetExpr::mu(children).map_err(|e| CalcError::Syntax {
                        position: at,
                        message: e.to_string(),
                    })
                } else {
                    Err(self.err("expected 'mu'"))
                }
            }
            Some(b'u') => {
                self.pos += 1;
                let at = self.pos;
                let children = self.children()?;
                PosetExpr::union(children).map_err(|e| CalcError::Syntax {
                    position: at,
                    message: e.to_string(),
                })
            }
            Some(b'd') => {
                self.pos += 1;
                self.expect(b'(')?;
                let child = self.expr()?;
                self.expect(b')')?;
                Ok(PosetExpr::dee(child))
            }
            _ => Err(self.err("expected '1', 'cN', 'mu(', 'u(', or 'd('")),
        }
    }
}

impl FromStr for PosetExpr {
    type Err = CalcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = ExprParser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let expr = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.bytes.len() {
            return Err(parser.err("unexpected trailing input"));
        }
        Ok(expr)
    }
}

/// Check the Wixárika coefficient factorization: the bottom coefficient
/// a_i equals the product of the min indices entering each Dee node.
pub fn bottom_coefficient_factors(e: &PosetExpr) -> bool {
    let series = e.eval_strict();
    let Some(min) = series.min_index() else {
        return false;
    };
    let product: BigInt = e
        .dee_min_indices()
        .iter()
        .fold(BigInt::one(), |acc, &t| acc * BigInt::from(t));
    product == series.coeff(min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> PosetExpr {
        text.parse().unwrap()
    }

    fn cs(terms: &[(u32, i64)]) -> ChainSeries {
        ChainSeries::from_terms(terms.iter().copied())
    }

    #[test]
    fn parse_examples_and_normal_forms() {
        assert_eq!(
            parse("d(mu(1,1))"),
            PosetExpr::dee(PosetExpr::mu(vec![PosetExpr::Point, PosetExpr::Point]).unwrap())
        );
        assert_eq!(
            parse("mu(mu(1,1),1)"),
            PosetExpr::Mu(vec![PosetExpr::Point, PosetExpr::Point, PosetExpr::Point])
        );
        assert_eq!(
            parse("u(c3,1)"),
            PosetExpr::union(vec![PosetExpr::Chain(3), PosetExpr::Point]).unwrap()
        );
        // Union children are stored sorted, so both writings are equal.
        assert_eq!(parse("u(c3,1)"), parse("u(1,c3)"));
        assert_eq!(parse("c1"), PosetExpr::Point);
        assert_eq!(parse(" mu ( 1 , c2 ) "), parse("mu(1,c2)"));

        for bad in ["", "mu(1)", "u(1)", "c0", "c", "2", "mu(1,1", "d()", "1 x", "m(1,1)"] {
            assert!(bad.parse::<PosetExpr>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn print_parse_round_trip() {
        for text in [
            "1",
            "c4",
            "mu(1,c3,d(1))",
            "u(1,c3)",
            "d(mu(1,u(1,c2),1))",
            "d(mu(1,mu(1,mu(1,d(d(mu(d(1),mu(1,d(1)))))))))",
        ] {
            let e = parse(text);
            assert_eq!(e.to_string().parse::<PosetExpr>().unwrap(), e);
        }
        // Printing uses the normalized tree.
        assert_eq!(parse("mu(mu(1,1),1)").to_string(), "mu(1,1,1)");
    }

    #[test]
    fn eval_strict_examples() {
        assert_eq!(parse("d(c2)").eval_strict(), cs(&[(4, 2), (5, 3)]));
        assert_eq!(parse("c5").eval_strict(), ChainSeries::basis(5));
        assert_eq!(parse("mu(1,d(c3))").eval_strict(), cs(&[(6, 3), (7, 4)]));
        assert_eq!(parse("mu(d(c3),1)").eval_strict(), cs(&[(6, 3), (7, 4)]));
        assert_eq!(parse("u(1,1)").eval_strict(), cs(&[(1, 1), (2, 2)]));
        // Chain sugar evaluates like the folded concatenation.
        assert_eq!(parse("c3").eval_strict(), parse("mu(1,1,1)").eval_strict());
    }

    #[test]
    fn eval_nonstrict_examples() {
        assert_eq!(parse("c4").eval_nonstrict(), NonStrictSeries::basis(4));
        let d2 = parse("d(c2)").eval_nonstrict();
        assert_eq!(d2, NonStrictSeries::from_terms([(4, -2), (5, 3)], 5));
        assert_eq!(
            d2.expand(4),
            [0, 1, 8, 33, 98].map(BigInt::from).to_vec()
        );
        assert_eq!(
            parse("u(1,1)").eval_nonstrict().expand(4),
            [0, 1, 4, 9, 16].map(BigInt::from).to_vec()
        );
    }

    #[test]
    fn desugared_dee_evaluates_identically() {
        for text in ["d(1)", "d(c2)", "mu(1,d(c3))", "d(d(1))", "d(u(1,c2))"] {
            let e = parse(text);
            let sugar_free = e.desugar_dee();
            assert_eq!(e.eval_strict(), sugar_free.eval_strict(), "{text}");
            assert_eq!(e.n_points(), sugar_free.n_points());
            // Same poset: Hasse digraphs are isomorphic.
            assert!(isomorphic(&e.hasse(), &sugar_free.hasse()).unwrap(), "{text}");
        }
    }

    #[test]
    fn hasse_examples() {
        let chain = parse("c3").hasse();
        assert_eq!(
            (chain.vertex_count(), chain.edge_count(), chain.betti()),
            (3, 2, 0)
        );
        assert_eq!(chain.max_chain(), 3);

        let dee = parse("d(1)").hasse();
        assert_eq!(
            (dee.vertex_count(), dee.edge_count(), dee.betti()),
            (4, 4, 1)
        );
        assert_eq!(dee.max_chain(), 3);

        let union = parse("u(c2,1)").hasse();
        assert_eq!(
            (union.vertex_count(), union.edge_count(), union.components()),
            (3, 1, 2)
        );
        assert_eq!(union.max_chain(), 2);
    }

    #[test]
    fn invariants_examples() {
        let inv = parse("c6").invariants();
        assert_eq!((inv.n_points, inv.max_chain, inv.betti), (6, 6, 0));
        assert_eq!((inv.mu_count, inv.leaf_count, inv.dee_count), (5, 6, 0));

        let inv = parse("u(c3,c2)").invariants();
        assert_eq!((inv.n_points, inv.max_chain, inv.betti, inv.components), (5, 3, 0, 2));
    }

    #[test]
    fn regression_word_invariants() {
        let word = parse("d(mu(1,mu(1,mu(1,d(d(mu(d(1),mu(1,d(1)))))))))");
        assert!(word.is_wixarika());
        let inv = word.invariants();
        assert_eq!(inv.n_points, 21);
        assert_eq!(inv.max_chain, 16);
        assert_eq!(inv.betti, 5);
        assert_eq!(inv.dee_count, 5);
        assert_eq!(inv.mu_count, 5);
        assert_eq!(inv.leaf_count, 6);
        assert_eq!(inv.components, 1);
        // Wixárika relations.
        assert_eq!(inv.n_points - inv.max_chain, inv.dee_count);
        assert_eq!(inv.mu_count, inv.max_chain - 2 * inv.betti - 1);
        assert_eq!(inv.leaf_count, inv.mu_count + 1);

        let series = word.eval_strict();
        assert_eq!(series.min_index(), Some(16));
        assert_eq!(series.max_index(), Some(21));
        assert_eq!(series.alternating_sum(), BigInt::one());
        assert!(bottom_coefficient_factors(&word));
    }

    #[test]
    fn wixarika_predicate() {
        assert!(parse("mu(1,d(c3))").is_wixarika());
        assert!(!parse("u(1,1)").is_wixarika());
        assert!(!parse("d(u(1,c2))").is_wixarika());
    }

    #[test]
    fn isomorphism_examples() {
        let iso = |x: &str, y: &str| isomorphic(&parse(x).hasse(), &parse(y).hasse()).unwrap();
        assert!(iso("c3", "c3"));
        assert!(iso("c3", "mu(1,1,1)"));
        assert!(iso("mu(c2,1)", "c3"));
        assert!(!iso("mu(1,d(c3))", "mu(d(c3),1)"));
        assert!(!iso("u(1,1)", "c2"));
        assert!(iso("u(c2,c3)", "u(c3,c2)"));
        // Dual pairs with equal invariants are still distinguished.
        assert!(!iso("mu(1,u(1,c2))", "mu(u(1,c2),1)"));
        // Self-dual handle posets are isomorphic to themselves.
        assert!(iso("d(c2)", "d(c2)"));
    }

    #[test]
    fn isomorphism_scales_to_antichains_and_caps_size() {
        let big = PosetExpr::union(vec![PosetExpr::Point; 30]).unwrap();
        assert!(isomorphic(&big.hasse(), &big.hasse()).unwrap());

        let too_big = PosetExpr::union(vec![PosetExpr::Point; 33]).unwrap();
        assert!(matches!(
            isomorphic(&too_big.hasse(), &too_big.hasse()),
            Err(CalcError::SizeLimit { vertices: 33, limit: 32 })
        ));
    }

    #[test]
    fn mu_permutation_keeps_series_but_not_poset() {
        let a = parse("mu(c2,d(1))");
        let b = parse("mu(d(1),c2)");
        assert_eq!(a.eval_strict(), b.eval_strict());
        assert!(!isomorphic(&a.hasse(), &b.hasse()).unwrap());
    }
}
