//! Deliberately naive reference implementations.
//!
//! Everything here works from the raw edge relation with breadth-first search
//! and plain loops, and shares no helpers with the rest of the crate, so the
//! two can be compared against each other.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::linalg::LinearCode;

/// Largest `n` for naive tables.
pub const NAIVE_TABLE_MAX_N: usize = 8;

/// Largest `log2(q^{n^2})` for naive map enumeration.
pub const NAIVE_MAP_LIMIT_LOG2: u32 = 22;

fn adjacency(g: &Digraph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|u| (0..g.n()).filter(|&v| g.has_edge(u, v)).collect()).collect()
}

fn bfs_count(adj: &[Vec<usize>], start: &[usize]) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::new();
    for &s in start {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen.iter().filter(|&&b| b).count()
}

/// Number of vertices reachable from `s`.
pub fn naive_weight(g: &Digraph, s: &[usize]) -> usize {
    bfs_count(&adjacency(g), s)
}

/// Weights of all `2^n` supports, indexed by mask (bit `i` = vertex `i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricTable {
    pub n: usize,
    pub weights: Vec<usize>,
}

pub fn naive_table(g: &Digraph) -> Result<MetricTable> {
    let n = g.n();
    if n > NAIVE_TABLE_MAX_N {
        return Err(Error::EnumerationTooLarge {
            what: "naive table",
            log2_size: n as u32,
            limit_log2: NAIVE_TABLE_MAX_N as u32,
        });
    }
    let adj = adjacency(g);
    let weights = (0..1usize << n)
        .map(|mask| {
            let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            bfs_count(&adj, &members)
        })
        .collect();
    Ok(MetricTable { n, weights })
}

/// Equal tables (hence equal distances, by translation invariance).
pub fn naive_same_metric(g1: &Digraph, g2: &Digraph) -> Result<bool> {
    if g1.n() != g2.n() {
        return Ok(false);
    }
    Ok(naive_table(g1)? == naive_table(g2)?)
}

fn binary_words(c: &LinearCode) -> Vec<usize> {
    let basis: Vec<usize> = c
        .basis()
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, _)| 1 << i).sum())
        .collect();
    (0..1usize << basis.len())
        .map(|sel| {
            (0..basis.len()).filter(|i| sel >> i & 1 == 1).fold(0, |acc, i| acc ^ basis[i])
        })
        .collect()
}

/// Largest `r` for which the radius-`r` balls around distinct codewords are
/// pairwise disjoint, scanning every point of `F_2^n` (`q = 2` only).
pub fn naive_packing_radius(g: &Digraph, c: &LinearCode) -> Result<usize> {
    if c.q() != 2 {
        return Err(Error::InvalidArgument("naive packing radius is binary only".into()));
    }
    if c.dim() == 0 {
        return Err(Error::ZeroCode);
    }
    let table = naive_table(g)?;
    let words = binary_words(c);
    let disjoint = |r: usize| {
        (0..1usize << g.n()).all(|z| words.iter().filter(|&&w| table.weights[w ^ z] <= r).count() <= 1)
    };
    let mut r = 0;
    while r < g.n() && disjoint(r + 1) {
        r += 1;
    }
    Ok(r)
}

fn naive_rank(q: u64, mut m: Vec<Vec<u64>>) -> usize {
    let n = m.len();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&i| !m[i][col].is_multiple_of(q)) else { continue };
        m.swap(rank, p);
        let inv = (1..q).find(|&a| a * m[rank][col] % q == 1).expect("prime modulus");
        for i in 0..n {
            if i != rank && m[i][col] != 0 {
                let f = m[i][col] * inv % q;
                let pivot = m[rank].clone();
                for (e, p) in m[i].iter_mut().zip(&pivot) {
                    *e = (*e + q * q - f * p % q) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Invertible matrices preserving every weight, by full enumeration.
pub fn naive_isometry_count(g: &Digraph, q: u32) -> Result<u128> {
    let n = g.n();
    let log2 = ((q as f64).log2() * (n * n) as f64).ceil() as u32;
    if log2 > NAIVE_MAP_LIMIT_LOG2 {
        return Err(Error::EnumerationTooLarge {
            what: "naive map scan",
            log2_size: log2,
            limit_log2: NAIVE_MAP_LIMIT_LOG2,
        });
    }
    let q = q as u64;
    let table = naive_table(g)?;
    let vectors: Vec<Vec<u64>> = (0..q.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = k % q;
                    k /= q;
                    d
                })
                .collect()
        })
        .collect();
    let mask = |x: &[u64]| x.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, _)| 1usize << i).sum::<usize>();
    let mut count = 0u128;
    for code in 0..q.pow((n * n) as u32) {
        let mut k = code;
        let m: Vec<Vec<u64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let d = k % q;
                        k /= q;
                        d
                    })
                    .collect()
            })
            .collect();
        if naive_rank(q, m.clone()) < n {
            continue;
        }
        let preserves = vectors.iter().all(|x| {
            let image: Vec<u64> = (0..n).map(|j| (0..n).map(|i| x[i] * m[i][j]).sum::<u64>() % q).collect();
            table.weights[mask(x)] == table.weights[mask(&image)]
        });
        if preserves {
            count += 1;
        }
    }
    Ok(count)
}
