//! Linear codes under a graph metric: maximal sets, cleared forms, minimal
//! generators, minimum distance, canonical decomposition and packing radius.

use crate::canonical::{is_hierarchical, reduced_form, ReducedForm};
use crate::error::{guard_power, Error, Result, ENUMERATION_LIMIT_LOG2};
use crate::graph::{Digraph, SupportSet};
use crate::linalg::{reduce, FqVector, LinearCode, LinearMap};
use crate::metric::MaskMetric;

fn check_len(n: usize, x: &FqVector) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.len() });
    }
    Ok(())
}

/// Support positions whose class is maximal among the classes of the support.
pub fn max_set(r: &ReducedForm, x: &FqVector) -> Result<SupportSet> {
    check_len(r.n(), x)?;
    let reach = r.reachability();
    let classes: SupportSet = x.support().iter().map(|v| r.pi()[v]).collect();
    let maximal: Vec<bool> = (0..r.m())
        .map(|a| classes.contains(a) && !classes.iter().any(|b| b != a && reach[b].contains(a)))
        .collect();
    Ok(x.support().iter().filter(|&v| maximal[r.pi()[v]]).collect())
}

/// `x` with every non-maximal coordinate zeroed.
pub fn cleared_form(r: &ReducedForm, x: &FqVector) -> Result<FqVector> {
    let keep = max_set(r, x)?;
    let mut out = FqVector::zero(x.q(), x.len());
    for i in keep.iter() {
        out.set(i, x.get(i));
    }
    Ok(out)
}

/// A minimal subset of `x` with the same closure.
///
/// Elements are dropped greedily from the highest index down, so inside a
/// clique the lowest index survives.
pub fn msg(g: &Digraph, x: &SupportSet) -> Result<SupportSet> {
    let target = g.closure(x)?;
    let mut keep = x.clone();
    let members: Vec<usize> = x.iter().collect();
    for &v in members.iter().rev() {
        keep.remove(v);
        if g.closure(&keep)? != target {
            keep.insert(v);
        }
    }
    Ok(keep)
}

/// Smallest G-weight of a nonzero codeword.
pub fn min_distance(g: &Digraph, c: &LinearCode) -> Result<usize> {
    if c.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: c.n() });
    }
    if c.dim() == 0 {
        return Err(Error::ZeroCode);
    }
    let metric = MaskMetric::new(g)?;
    Ok(c.codewords()?
        .skip(1)
        .map(|x| metric.weight(x.support_mask()) as usize)
        .min()
        .expect("nonzero code has a nonzero word"))
}

/// Packing radius by exhaustion.
///
/// The radius-`r` balls around `0` and `c` meet iff some `z` has
/// `max(w(z), w(c - z)) <= r`. Shrinking either support never raises a weight,
/// so `z` may be taken to agree with `c` on a subset `S` of its support and
/// vanish elsewhere: the split `(S, supp c \ S)` decides everything.
pub fn packing_radius_bruteforce(g: &Digraph, c: &LinearCode) -> Result<usize> {
    if c.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: c.n() });
    }
    if c.dim() == 0 {
        return Err(Error::ZeroCode);
    }
    let budget = (ENUMERATION_LIMIT_LOG2 + 6).saturating_sub(c.n() as u32);
    guard_power("codeword splits", c.q() as u64, c.dim(), budget)?;
    let metric = MaskMetric::new(g)?;
    let table = metric.table()?;
    let mut best = usize::MAX;
    for word in c.codewords()?.skip(1) {
        let s = word.support_mask();
        // walk the subsets of s
        let mut sub = s;
        let mut meet = usize::MAX;
        loop {
            let w = table[sub as usize].max(table[(s & !sub) as usize]) as usize;
            meet = meet.min(w);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & s;
        }
        best = best.min(meet);
    }
    Ok(best - 1)
}

/// A code moved by an isometry into a direct sum of level-supported pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposedCode {
    /// `T` with `T(C) = ⊕ components`.
    pub isometry: LinearMap,
    /// Entry `i` is supported on the original vertices of level `i + 1`.
    pub components: Vec<LinearCode>,
}

impl DecomposedCode {
    /// The direct sum of the components.
    pub fn sum(&self) -> LinearCode {
        let q = self.isometry.q();
        let n = self.isometry.n();
        let rows: Vec<Vec<u32>> = self.components.iter().flat_map(|c| c.basis().to_vec()).collect();
        LinearCode::from_rows(q, n, &rows).expect("component rows share q and n")
    }
}

/// Canonical decomposition for hierarchical graphs.
///
/// The basis is reduced with columns scanned from the top level down, so every
/// basis word `x` has its pivot in its top level and all pivots are cleared
/// elsewhere. In a hierarchical poset the top-level part of `x` is its cleared
/// form `x̃`, and `T(y) = y - Σ_x y_{p(x)} (x - x̃)` sends `x` to `x̃`. `T` is
/// unipotent and only moves weight downward, so it respects domination.
pub fn canonical_decomposition(g: &Digraph, c: &LinearCode) -> Result<DecomposedCode> {
    let n = g.n();
    if c.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: c.n() });
    }
    let r = reduced_form(g);
    if !is_hierarchical(&r) {
        return Err(Error::NotHierarchical);
    }
    let q = c.q();
    let level = |v: usize| r.vertex_level(v);
    let mut columns: Vec<usize> = (0..n).collect();
    columns.sort_by_key(|&v| (std::cmp::Reverse(level(v)), v));
    let mut rows = c.basis().to_vec();
    let pivots = reduce(q, &mut rows, &columns);

    let mut t_rows = LinearMap::identity(q, n).rows().to_vec();
    let mut parts: Vec<Vec<Vec<u32>>> = vec![Vec::new(); r.height()];
    for (row, &p) in rows.iter().zip(&pivots) {
        let top = level(p);
        let cleared: Vec<u32> = (0..n).map(|v| if level(v) == top { row[v] } else { 0 }).collect();
        for v in (0..n).filter(|&v| level(v) != top) {
            // T(e_p) = e_p - (x - x̃)
            t_rows[p][v] = (q - row[v]) % q;
        }
        parts[top - 1].push(cleared);
    }
    let isometry = LinearMap::new(q, t_rows)?;
    let components = parts
        .iter()
        .map(|rows| LinearCode::from_rows(q, n, rows))
        .collect::<Result<Vec<_>>>()?;
    Ok(DecomposedCode { isometry, components })
}

/// Whether `c` is already a direct sum of level-supported codes.
pub fn is_level_split(r: &ReducedForm, c: &LinearCode) -> bool {
    let n = r.n();
    let dims: usize = (1..=r.height())
        .map(|i| {
            let inside = r.original_level_set(i);
            // c ∩ F^{V_i} is the kernel of the projection onto the complement
            let outside: Vec<usize> = (0..n).filter(|&v| !inside.contains(v)).collect();
            let projected: Vec<Vec<u32>> =
                c.basis().iter().map(|row| outside.iter().map(|&v| row[v]).collect()).collect();
            c.dim() - crate::linalg::rank(c.q(), &projected)
        })
        .sum();
    dims == c.dim()
}

/// For a non-hierarchical graph, a one-dimensional binary code that is not
/// equivalent to any level-split code: `span{e_j + e_k}` where the class of
/// `k` sits one level above the class of `j` without dominating it. The lowest
/// such level and the smallest indices are used.
pub fn non_decomposable_witness(g: &Digraph) -> Option<LinearCode> {
    let r = reduced_form(g);
    let reach = r.reachability();
    for i in 1..r.height() {
        for a in r.level_set(i) {
            for b in r.level_set(i + 1) {
                if !reach[b].contains(a) {
                    let j = r.class(a).iter().next().expect("classes are nonempty");
                    let k = r.class(b).iter().next().expect("classes are nonempty");
                    return Some(LinearCode::from_masks(g.n(), &[(1u64 << j) | (1u64 << k)]));
                }
            }
        }
    }
    None
}

/// Packing radius from the level structure.
///
/// Requires a hierarchical graph whose class sizes are constant on each level.
/// With `k0` the lowest level touched by the decomposed code and `r0` the
/// fewest classes met by a nonzero word of that component, the radius is
/// `⌈r0/2⌉·L(k0) + Σ_{i<k0} |V'_i|·L(i) - 1`.
pub fn packing_radius_formula(g: &Digraph, c: &LinearCode) -> Result<usize> {
    if c.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: c.n() });
    }
    if c.dim() == 0 {
        return Err(Error::ZeroCode);
    }
    let r = reduced_form(g);
    if !is_hierarchical(&r) {
        return Err(Error::NotApplicable("the reduced form is not hierarchical".into()));
    }
    let level_weight: Vec<usize> = (1..=r.height())
        .map(|i| {
            let set = r.level_set(i);
            let w = r.weights()[set[0]];
            if set.iter().all(|&a| r.weights()[a] == w) {
                Ok(w)
            } else {
                Err(Error::NotApplicable(format!("class sizes vary on level {i}")))
            }
        })
        .collect::<Result<_>>()?;
    let d = canonical_decomposition(g, c)?;
    let k0 = d.components.iter().position(|comp| comp.dim() > 0).expect("nonzero code") + 1;
    let r0 = d.components[k0 - 1]
        .codewords()?
        .skip(1)
        .map(|x| x.support().iter().map(|v| r.pi()[v]).collect::<SupportSet>().len())
        .min()
        .expect("nonzero component");
    let below: usize = (1..k0).map(|i| r.level_set(i).len() * level_weight[i - 1]).sum();
    Ok(r0.div_ceil(2) * level_weight[k0 - 1] + below - 1)
}
