//! Directed graphs on `0..n`, vertex sets, and dominance closure.
//!
//! A vertex `u` dominates `v` when `v` is reachable from `u` along directed
//! edges; every vertex dominates itself. The closure of a set `X` is the set of
//! all vertices dominated by some member of `X`.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A finite set of vertex indices, stored as a bitset.
///
/// Trailing zero words are never stored, so equal sets compare equal.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSet {
    words: Vec<u64>,
}

impl SupportSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::new();
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut s = Self { words: vec![mask] };
        s.trim();
        s
    }

    /// The set as a single machine word, if every member is below 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn insert(&mut self, i: usize) {
        let w = i / WORD;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        let w = i / WORD;
        if w < self.words.len() {
            self.words[w] &= !(1 << (i % WORD));
            self.trim();
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / WORD)
            .is_some_and(|w| w & (1 << (i % WORD)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Largest member, if any.
    pub fn max_element(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD + (WORD - 1 - last.leading_zeros() as usize))
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + b)
            })
        })
    }

    pub fn union_with(&mut self, other: &SupportSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &SupportSet) -> SupportSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &SupportSet) -> SupportSet {
        let mut s = SupportSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        s.trim();
        s
    }

    pub fn difference(&self, other: &SupportSet) -> SupportSet {
        let mut s = SupportSet {
            words: self
                .words
                .iter()
                .enumerate()
                .map(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0))
                .collect(),
        };
        s.trim();
        s
    }

    /// Complement inside `0..n`.
    pub fn complement(&self, n: usize) -> SupportSet {
        SupportSet::full(n).difference(self)
    }

    pub fn is_subset(&self, other: &SupportSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn intersects(&self, other: &SupportSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Fails unless every member is below `n`.
    pub fn check_bound(&self, n: usize) -> Result<()> {
        match self.max_element() {
            Some(m) if m >= n => Err(Error::VertexOutOfRange { index: m, n }),
            _ => Ok(()),
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for SupportSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = SupportSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A loop-free directed graph on vertices `0..n`, stored as a dense bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    rows: Vec<SupportSet>,
}

impl Digraph {
    /// The graph with no edges.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            rows: vec![SupportSet::new(); n],
        }
    }

    /// Every ordered pair of distinct vertices is an edge.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.rows[u].insert(v);
                }
            }
        }
        g
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph number `code` among the `2^(n(n-1))` graphs on `n` vertices.
    ///
    /// Bit `k` of `code` selects the `k`-th off-diagonal pair in row-major order.
    pub fn from_code(n: usize, code: u64) -> Self {
        let mut g = Self::empty(n);
        let mut k = 0;
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    if code >> k & 1 == 1 {
                        g.rows[u].insert(v);
                    }
                    k += 1;
                }
            }
        }
        g
    }

    /// Inverse of [`Digraph::from_code`]; requires `n(n-1) <= 64`.
    pub fn code(&self) -> u64 {
        let mut code = 0u64;
        let mut k = 0;
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v {
                    if self.rows[u].contains(v) {
                        code |= 1 << k;
                    }
                    k += 1;
                }
            }
        }
        code
    }

    /// Iterates over every digraph on `n` vertices (`n <= 8`).
    pub fn all(n: usize) -> impl Iterator<Item = Digraph> {
        assert!(n <= 8, "exhaustive graph enumeration is limited to n <= 8");
        let pairs = n * n.saturating_sub(1);
        (0..1u64 << pairs).map(move |code| Digraph::from_code(n, code))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.rows[u].insert(v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n {
            self.rows[u].remove(v);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.rows[u].contains(v)
    }

    pub fn out_neighbors(&self, u: usize) -> &SupportSet {
        &self.rows[u]
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(SupportSet::len).sum()
    }

    pub fn check_vertex(&self, u: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange { index: u, n: self.n });
        }
        Ok(())
    }

    /// `⟨X⟩`: every vertex reachable from `x`, including `x` itself.
    pub fn closure(&self, x: &SupportSet) -> Result<SupportSet> {
        x.check_bound(self.n)?;
        Ok(self.closure_unchecked(x, None))
    }

    /// Breadth-first reachability, optionally ignoring one deleted vertex.
    fn closure_unchecked(&self, x: &SupportSet, deleted: Option<usize>) -> SupportSet {
        let mut seen = x.clone();
        let mut frontier: Vec<usize> = x.iter().collect();
        while let Some(u) = frontier.pop() {
            for v in self.rows[u].iter() {
                if Some(v) != deleted && !seen.contains(v) {
                    seen.insert(v);
                    frontier.push(v);
                }
            }
        }
        seen
    }

    /// Whether `⟨x⟩ = x`.
    pub fn is_closed(&self, x: &SupportSet) -> Result<bool> {
        Ok(self.closure(x)? == *x)
    }

    /// The closure of each single vertex.
    pub fn reachability(&self) -> Vec<SupportSet> {
        (0..self.n)
            .map(|u| self.closure_unchecked(&SupportSet::from_iter([u]), None))
            .collect()
    }

    /// Reachability rows as machine words; `None` when `n > 64`.
    pub fn reach_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            self.reachability()
                .iter()
                .map(|s| s.to_mask().unwrap_or(0))
                .collect(),
        )
    }

    /// Reflexive: every vertex dominates itself.
    pub fn dominates(&self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(u == v || self.closure_unchecked(&SupportSet::from_iter([u]), None).contains(v))
    }

    /// Whether a simple path of length at least two runs from `u` to `v`.
    ///
    /// Equivalently, `v` is reachable from an out-neighbour `w ∉ {u, v}` of `u`
    /// once `u` is deleted. The pair need not be an edge of the graph.
    pub fn is_shortcut(&self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidArgument(format!(
                "shortcut candidate ({u}, {v}) is a loop"
            )));
        }
        let starts: SupportSet = self.rows[u].iter().filter(|&w| w != v).collect();
        Ok(self.closure_unchecked(&starts, Some(u)).contains(v))
    }

    /// The reverse graph: every edge flipped.
    pub fn reverse(&self) -> Digraph {
        let mut g = Digraph::empty(self.n);
        for (u, v) in self.edges() {
            g.rows[v].insert(u);
        }
        g
    }

    /// The subgraph induced on `s`, relabelled `0..|s|` in increasing order.
    pub fn induced_subgraph(&self, s: &SupportSet) -> Result<Digraph> {
        s.check_bound(self.n)?;
        let keep: Vec<usize> = s.iter().collect();
        let mut g = Digraph::empty(keep.len());
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate() {
                if self.rows[u].contains(v) {
                    g.rows[a].insert(b);
                }
            }
        }
        Ok(g)
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Digraph> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        Digraph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
