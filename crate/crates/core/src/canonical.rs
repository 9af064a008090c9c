//! Expanded and reduced canonical forms, levels, and metric equality.
//!
//! The expanded form adds every shortcut, which amounts to the transitive
//! closure. The reduced form contracts strongly connected components into
//! single vertices weighted by component size, then keeps only cover edges
//! (the Hasse diagram of the induced poset). Two graphs define the same metric
//! iff their expanded forms coincide.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Digraph, SupportSet};

/// The transitive closure of `g`, without loops.
pub fn expanded_form(g: &Digraph) -> Digraph {
    let reach = g.reachability();
    let mut out = Digraph::empty(g.n());
    for (u, row) in reach.iter().enumerate() {
        for v in row.iter().filter(|&v| v != u) {
            out.add_edge(u, v).expect("closure stays in range");
        }
    }
    out
}

/// Tarjan's algorithm, iterative. Components are returned sorted by their
/// smallest vertex, each listed in increasing order.
pub fn strongly_connected_components(g: &Digraph) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = g.n();
    let succ: Vec<Vec<usize>> = (0..n).map(|u| g.out_neighbors(u).iter().collect()).collect();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut comps = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        // (vertex, position in its successor list)
        let mut call = vec![(root, 0usize)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (u, ref mut pos)) = call.last_mut() {
            if let Some(&v) = succ[u].get(*pos) {
                *pos += 1;
                if index[v] == UNVISITED {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("component root is on the stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == u {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// A digraph whose vertices carry positive integer weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedDigraph {
    pub graph: Digraph,
    pub weights: Vec<usize>,
}

/// The canonical reduced form `G'(V', E', L')` with its projection and levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedForm {
    n: usize,
    hasse: Digraph,
    weights: Vec<usize>,
    pi: Vec<usize>,
    levels: Vec<usize>,
    height: usize,
}

/// Condensation of `g`, reduced to its cover relation, with levels.
///
/// Reduced vertex `a` is the component containing the `a`-th smallest
/// component minimum. Level 1 holds the vertices that dominate nothing else.
pub fn reduced_form(g: &Digraph) -> ReducedForm {
    let comps = strongly_connected_components(g);
    let m = comps.len();
    let mut pi = vec![0; g.n()];
    for (a, comp) in comps.iter().enumerate() {
        for &v in comp {
            pi[v] = a;
        }
    }
    let weights: Vec<usize> = comps.iter().map(Vec::len).collect();

    let mut condensed = Digraph::empty(m);
    for (u, v) in g.edges() {
        if pi[u] != pi[v] {
            condensed.add_edge(pi[u], pi[v]).expect("indices in range");
        }
    }
    let hasse = transitive_reduction(&condensed);
    let levels = dag_levels(&hasse);
    let height = levels.iter().copied().max().unwrap_or(0);
    ReducedForm {
        n: g.n(),
        hasse,
        weights,
        pi,
        levels,
        height,
    }
}

/// Cover edges of an acyclic graph: `(a, b)` survives iff `b` is reachable from
/// `a` but not through any third vertex.
pub fn transitive_reduction(dag: &Digraph) -> Digraph {
    let reach = dag.reachability();
    let m = dag.n();
    let mut out = Digraph::empty(m);
    for a in 0..m {
        for b in reach[a].iter().filter(|&b| b != a) {
            let covered = reach[a]
                .iter()
                .any(|c| c != a && c != b && reach[c].contains(b));
            if !covered {
                out.add_edge(a, b).expect("indices in range");
            }
        }
    }
    out
}

/// Longest-chain height of each vertex in a DAG, counting vertices; sinks get 1.
fn dag_levels(dag: &Digraph) -> Vec<usize> {
    let m = dag.n();
    let mut level = vec![0usize; m];
    fn visit(v: usize, dag: &Digraph, level: &mut [usize]) -> usize {
        if level[v] > 0 {
            return level[v];
        }
        let mut best = 0;
        for w in dag.out_neighbors(v).iter() {
            best = best.max(visit(w, dag, level));
        }
        level[v] = best + 1;
        level[v]
    }
    for v in 0..m {
        visit(v, dag, &mut level);
    }
    level
}

impl ReducedForm {
    /// Number of original vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of reduced vertices.
    pub fn m(&self) -> usize {
        self.hasse.n()
    }

    pub fn hasse(&self) -> &Digraph {
        &self.hasse
    }

    /// `L'(a) = |π^{-1}(a)|`.
    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    /// Level (height) of each reduced vertex, starting at 1.
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Reduced vertices of level `i` (1-based), in increasing order.
    pub fn level_set(&self, i: usize) -> Vec<usize> {
        (0..self.m()).filter(|&a| self.levels[a] == i).collect()
    }

    /// Original vertices whose image lies in level `i`.
    pub fn original_level_set(&self, i: usize) -> SupportSet {
        (0..self.n).filter(|&v| self.levels[self.pi[v]] == i).collect()
    }

    /// Level of an original vertex.
    pub fn vertex_level(&self, v: usize) -> usize {
        self.levels[self.pi[v]]
    }

    /// `π^{-1}(a)`.
    pub fn class(&self, a: usize) -> SupportSet {
        (0..self.n).filter(|&v| self.pi[v] == a).collect()
    }

    /// Reflexive domination in the reduced poset.
    pub fn dominates(&self, a: usize, b: usize) -> bool {
        a == b || self.hasse.closure(&SupportSet::from_iter([a])).map(|c| c.contains(b)).unwrap_or(false)
    }

    /// Reduced reachability rows.
    pub fn reachability(&self) -> Vec<SupportSet> {
        self.hasse.reachability()
    }

    pub fn weighted(&self) -> WeightedDigraph {
        WeightedDigraph {
            graph: self.hasse.clone(),
            weights: self.weights.clone(),
        }
    }

    /// Assembles a reduced form from parts, checking every invariant.
    pub fn from_parts(
        n: usize,
        hasse: Digraph,
        weights: Vec<usize>,
        pi: Vec<usize>,
        levels: Vec<usize>,
        height: usize,
    ) -> Result<Self> {
        let m = hasse.n();
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if weights.len() != m || levels.len() != m || pi.len() != n {
            return bad("reduced form parts have inconsistent sizes".into());
        }
        if weights.contains(&0) || weights.iter().sum::<usize>() != n {
            return bad("vertex weights must be positive and sum to n".into());
        }
        let mut counts = vec![0usize; m];
        for &p in &pi {
            if p >= m {
                return bad(format!("projection target {p} out of range"));
            }
            counts[p] += 1;
        }
        if counts != weights {
            return bad("weights disagree with the projection".into());
        }
        if strongly_connected_components(&hasse).len() != m {
            return bad("Hasse diagram has a cycle".into());
        }
        if transitive_reduction(&hasse) != hasse {
            return bad("Hasse diagram contains a shortcut".into());
        }
        if dag_levels(&hasse) != levels || levels.iter().copied().max().unwrap_or(0) != height {
            return bad("levels disagree with the Hasse diagram".into());
        }
        Ok(Self { n, hasse, weights, pi, levels, height })
    }
}

/// Every level-`i` vertex dominates every level-`(i-1)` vertex.
pub fn is_hierarchical(r: &ReducedForm) -> bool {
    let reach = r.reachability();
    (0..r.m()).all(|a| {
        let la = r.levels()[a];
        la == 1 || r.level_set(la - 1).iter().all(|&b| reach[a].contains(b))
    })
}

/// Whether `g1` and `g2` define the same metric.
pub fn same_metric(g1: &Digraph, g2: &Digraph) -> Result<bool> {
    if g1.n() != g2.n() {
        return Err(Error::DimensionMismatch { expected: g1.n(), found: g2.n() });
    }
    Ok(expanded_form(g1) == expanded_form(g2))
}

/// Largest reduced-vertex count for the isomorphism search.
pub const ISOMORPHISM_SEARCH_LIMIT: usize = 24;

/// Whether the metrics of `g1` and `g2` are isomorphic.
///
/// Returns a witness mapping reduced vertices of `g1` onto reduced vertices of
/// `g2` that preserves weights and Hasse edges, or `None`. Graphs of different
/// order are never isomorphic.
pub fn isomorphic_metrics(g1: &Digraph, g2: &Digraph) -> Result<Option<Vec<usize>>> {
    if g1.n() != g2.n() {
        return Ok(None);
    }
    let r1 = reduced_form(g1);
    let r2 = reduced_form(g2);
    weighted_isomorphism(&r1.weighted(), &r2.weighted())
}

/// Backtracking isomorphism search between vertex-weighted digraphs.
pub fn weighted_isomorphism(a: &WeightedDigraph, b: &WeightedDigraph) -> Result<Option<Vec<usize>>> {
    let m = a.graph.n();
    if m != b.graph.n() {
        return Ok(None);
    }
    if m > ISOMORPHISM_SEARCH_LIMIT {
        return Err(Error::SearchTooLarge(format!(
            "isomorphism search on {m} reduced vertices (limit {ISOMORPHISM_SEARCH_LIMIT})"
        )));
    }
    let sig = |w: &WeightedDigraph| -> Vec<(usize, usize, usize, usize, usize)> {
        let reach = w.graph.reachability();
        let rev = w.graph.reverse();
        let rreach = rev.reachability();
        (0..w.graph.n())
            .map(|v| {
                (
                    w.weights[v],
                    w.graph.out_neighbors(v).len(),
                    rev.out_neighbors(v).len(),
                    reach[v].len(),
                    rreach[v].len(),
                )
            })
            .collect()
    };
    let sa = sig(a);
    let sb = sig(b);
    let mut sorted_a = sa.clone();
    let mut sorted_b = sb.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b || a.graph.edge_count() != b.graph.edge_count() {
        return Ok(None);
    }

    let mut map = vec![usize::MAX; m];
    let mut used = vec![false; m];
    fn extend(
        v: usize,
        a: &WeightedDigraph,
        b: &WeightedDigraph,
        sa: &[(usize, usize, usize, usize, usize)],
        sb: &[(usize, usize, usize, usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let m = map.len();
        if v == m {
            return true;
        }
        for w in 0..m {
            if used[w] || sa[v] != sb[w] {
                continue;
            }
            let consistent = (0..v).all(|u| {
                a.graph.has_edge(u, v) == b.graph.has_edge(map[u], w)
                    && a.graph.has_edge(v, u) == b.graph.has_edge(w, map[u])
            });
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(v + 1, a, b, sa, sb, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }
    Ok(extend(0, a, b, &sa, &sb, &mut map, &mut used).then_some(map))
}

/// Reduced forms keyed by expanded form, for callers that scan many graphs.
#[derive(Debug, Default)]
pub struct CanonicalCache {
    cache: HashMap<Digraph, ReducedForm>,
}

impl CanonicalCache {
    pub fn reduced(&mut self, g: &Digraph) -> &ReducedForm {
        let key = expanded_form(g);
        self.cache.entry(key).or_insert_with(|| reduced_form(g))
    }
}
