//! Recovering a graph metric from partial weight data.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{Digraph, SupportSet};
use crate::metric::{MaskMetric, WeightTable};

enum Source {
    Graph(MaskMetric),
    Table(WeightTable),
}

/// Answers weight queries and counts them.
pub struct WeightOracle {
    n: usize,
    source: Source,
    queries: usize,
}

impl WeightOracle {
    /// Oracle backed by a hidden graph (n <= 64).
    pub fn from_graph(g: &Digraph) -> Result<Self> {
        Ok(Self { n: g.n(), source: Source::Graph(MaskMetric::new(g)?), queries: 0 })
    }

    /// Oracle backed by a (possibly partial) table.
    pub fn from_table(t: WeightTable) -> Self {
        Self { n: t.n(), source: Source::Table(t), queries: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of queries answered so far.
    pub fn queries(&self) -> usize {
        self.queries
    }

    pub fn query(&mut self, s: &SupportSet) -> Result<usize> {
        s.check_bound(self.n)?;
        let mask = s.to_mask().expect("bounded by n <= 64");
        self.queries += 1;
        match &self.source {
            Source::Graph(m) => Ok(m.weight(mask) as usize),
            Source::Table(t) => t
                .get_mask(mask)
                .ok_or_else(|| Error::MissingRequiredWeight(s.to_string())),
        }
    }
}

/// Rebuilds the expanded form from the weights of all words of Hamming weight
/// one and two: `(i, j)` is an edge iff `w(e_i + e_j) = w(e_i)`.
pub fn infer_from_weight12(o: &mut WeightOracle) -> Result<Digraph> {
    let n = o.n();
    let mut single = Vec::with_capacity(n);
    for i in 0..n {
        let w = o.query(&SupportSet::from_iter([i]))?;
        if w == 0 || w > n {
            return Err(Error::InconsistentOracle(format!("w({{{i}}}) = {w} outside 1..={n}")));
        }
        single.push(w);
    }
    let mut g = Digraph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let w = o.query(&SupportSet::from_iter([i, j]))?;
            if w < single[i].max(single[j]) || w > (single[i] + single[j]).min(n) {
                return Err(Error::InconsistentOracle(format!(
                    "w({{{i},{j}}}) = {w} incompatible with singletons {} and {}",
                    single[i], single[j]
                )));
            }
            if w == single[i] {
                g.add_edge(i, j)?;
            }
            if w == single[j] {
                g.add_edge(j, i)?;
            }
        }
    }
    Ok(g)
}

/// Fills in the pair weights omitted along a matching.
///
/// The table must hold every singleton and every pair except those of a
/// matching. For an omitted pair `{a, b}`, the known pairs reveal which other
/// vertices `a` and `b` dominate; comparing with `w(e_a)`, `w(e_b)` decides
/// whether one dominates the other, and otherwise the closures overlap only in
/// commonly dominated vertices.
pub fn recover_matching_weights(t: &WeightTable) -> Result<WeightTable> {
    let n = t.n();
    let pair = |i: usize, j: usize| t.get_mask((1u64 << i) | (1u64 << j));
    let mut single = Vec::with_capacity(n);
    for i in 0..n {
        single.push(
            t.get_mask(1u64 << i)
                .ok_or_else(|| Error::MissingRequiredWeight(format!("{{{i}}}")))?,
        );
    }
    let mut partner = vec![None; n];
    for i in 0..n {
        for j in i + 1..n {
            if pair(i, j).is_some() {
                continue;
            }
            if partner[i].is_some() || partner[j].is_some() {
                return Err(Error::MissingRequiredWeight(format!(
                    "{{{i},{j}}} (omitted pairs must form a matching)"
                )));
            }
            partner[i] = Some(j);
            partner[j] = Some(i);
        }
    }
    // dominated(a) excluding a and its partner, read off the known pairs
    let dominated = |a: usize| -> SupportSet {
        (0..n)
            .filter(|&j| j != a && Some(j) != partner[a])
            .filter(|&j| pair(a, j) == Some(single[a]))
            .collect()
    };
    let mut out = t.clone();
    for a in 0..n {
        let Some(b) = partner[a] else { continue };
        if b < a {
            continue;
        }
        let da = dominated(a);
        let db = dominated(b);
        let w = if single[a] == da.len() + 2 {
            single[a]
        } else if single[b] == db.len() + 2 {
            single[b]
        } else {
            single[a] + single[b] - da.intersection(&db).len()
        };
        out.insert_mask((1u64 << a) | (1u64 << b), w);
    }
    Ok(out)
}

/// `D(n) = ⌈n/2⌉ + C(n, 2)`.
pub fn d_of_n(n: usize) -> usize {
    n.div_ceil(2) + n * n.saturating_sub(1) / 2
}

/// Two graphs whose tables differ only on two pair supports, showing that no
/// more than a matching of pairs can be dropped.
pub fn lower_bound_witness(n: usize) -> Result<(Digraph, Digraph, SupportSet, SupportSet)> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("lower-bound construction needs n >= 4, got {n}")));
    }
    let mut base = Digraph::empty(n);
    for i in 3..n {
        for j in 3..n {
            if i != j {
                base.add_edge(i, j)?;
            }
        }
        for j in 0..3 {
            base.add_edge(i, j)?;
        }
    }
    let mut g1 = base.clone();
    g1.add_edge(0, 1)?;
    let mut g2 = base;
    g2.add_edge(0, 2)?;
    Ok((g1, g2, SupportSet::from_iter([0, 1]), SupportSet::from_iter([0, 2])))
}

/// A weight list pinning down the metric of `g`.
///
/// For each vertex `u`: `({u}, w(u))`, and for non-sinks also
/// `(⟨u⟩, w(u))`. Duplicates collapse, which leaves at most `2n - 1` entries.
pub fn certificate(g: &Digraph) -> Vec<(SupportSet, usize)> {
    let reach = g.reachability();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (u, cl) in reach.iter().enumerate() {
        let w = cl.len();
        let single = SupportSet::from_iter([u]);
        if seen.insert(single.clone()) {
            out.push((single, w));
        }
        if w > 1 && seen.insert(cl.clone()) {
            out.push((cl.clone(), w));
        }
    }
    out
}

/// Largest order for certificate verification.
pub const CERTIFICATE_SCAN_LIMIT: usize = 5;

/// All transitive loop-free relations on `n` vertices, as reachability masks
/// including the vertex itself.
fn expanded_forms(n: usize) -> &'static [Vec<u64>] {
    static CACHE: [OnceLock<Vec<Vec<u64>>>; CERTIFICATE_SCAN_LIMIT + 1] =
        [const { OnceLock::new() }; CERTIFICATE_SCAN_LIMIT + 1];
    CACHE[n].get_or_init(|| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        let mut out = Vec::new();
        for code in 0u64..(1u64 << pairs.len()) {
            let mut rows: Vec<u64> = (0..n).map(|u| 1u64 << u).collect();
            for (k, &(u, v)) in pairs.iter().enumerate() {
                if code >> k & 1 == 1 {
                    rows[u] |= 1 << v;
                }
            }
            let transitive = (0..n).all(|u| {
                let mut acc = 0;
                let mut rest = rows[u];
                while rest != 0 {
                    acc |= rows[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                acc == rows[u]
            });
            if transitive {
                out.push(rows);
            }
        }
        out
    })
}

/// Whether exactly one metric on `n` vertices agrees with every entry.
pub fn verify_certificate(cert: &[(SupportSet, usize)], n: usize) -> Result<bool> {
    if n > CERTIFICATE_SCAN_LIMIT {
        return Err(Error::SearchTooLarge(format!(
            "certificate verification scans all metrics on n <= {CERTIFICATE_SCAN_LIMIT} vertices, got {n}"
        )));
    }
    let mut entries = Vec::with_capacity(cert.len());
    for (s, w) in cert {
        s.check_bound(n)?;
        entries.push((s.to_mask().expect("n <= 5"), *w as u32));
    }
    let mut consistent = 0;
    for rows in expanded_forms(n) {
        let ok = entries.iter().all(|&(mask, w)| {
            let mut cl = 0u64;
            let mut rest = mask;
            while rest != 0 {
                cl |= rows[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            cl.count_ones() == w
        });
        if ok {
            consistent += 1;
            if consistent > 1 {
                return Ok(false);
            }
        }
    }
    Ok(consistent == 1)
}

/// Known bounds on the number of weights needed to pin down a metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MBounds {
    /// `M^min(n)`.
    pub min: usize,
    /// Lower bound on `M^max(n)`.
    pub max_lower: usize,
    /// Upper bound on `M^max(n)`.
    pub max_upper: usize,
}

pub fn m_bounds(n: usize) -> MBounds {
    MBounds {
        min: n,
        max_lower: n.max((2 * n).saturating_sub(4)),
        max_upper: (2 * n).saturating_sub(1),
    }
}

/// A table entry that disagrees with the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub support: SupportSet,
    pub expected: usize,
    pub found: usize,
}

/// First entry of `t` (in mask order) that `g` does not reproduce.
pub fn consistency_check(g: &Digraph, t: &WeightTable) -> Result<Option<Mismatch>> {
    if t.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: t.n() });
    }
    let metric = MaskMetric::new(g)?;
    Ok(t.masks().find_map(|(mask, found)| {
        let expected = metric.weight(mask) as usize;
        (expected != found).then(|| Mismatch { support: SupportSet::from_mask(mask), expected, found })
    }))
}
