//! Linear isometries of a graph metric.
//!
//! Two pieces: permutations preserving the expanded form, and maps that
//! respect domination (nonzero diagonal, `α_ij ≠ 0 ⇒ v_j ∈ ⟨v_i⟩`, invertible).
//! Every isometry factors as `T_φ ∘ m` with `T_φ : e_i ↦ e_{φ(i)}`.
//!
//! The factorisation is not unique once a clique has three or more vertices,
//! and then `|Aut(G̃)|·|N(G)|` overcounts the group. [`group_order`] reports
//! both that product and the exact order, computed from the weighted poset:
//! `|Aut(G', L')| · ∏ |GL(L'(a), q)| · q^{#off-block pattern entries}`.

use crate::canonical::{expanded_form, reduced_form};
use crate::error::{guard_power, Error, Result};
use crate::graph::{Digraph, SupportSet};
use crate::linalg::{check_prime, FqVector, LinearMap};
use crate::metric::MaskMetric;

/// Largest `n` for automorphism enumeration.
pub const AUT_SEARCH_LIMIT: usize = 10;

/// Largest `log2(q^n)` for the vector-by-vector isometry test.
pub const ISOMETRY_SCAN_LIMIT_LOG2: u32 = 20;

fn check_map(g: &Digraph, t: &LinearMap) -> Result<()> {
    if t.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: t.n() });
    }
    Ok(())
}

/// Membership in `N(G)`.
pub fn respects_domination(g: &Digraph, t: &LinearMap) -> Result<bool> {
    check_map(g, t)?;
    Ok(pattern_ok(&g.reachability(), t) && t.is_invertible())
}

fn pattern_ok(reach: &[SupportSet], t: &LinearMap) -> bool {
    (0..t.n()).all(|i| {
        t.entry(i, i) != 0 && (0..t.n()).all(|j| t.entry(i, j) == 0 || reach[i].contains(j))
    })
}

/// All vertex bijections preserving the edge relation and the colours.
pub(crate) fn automorphisms(g: &Digraph, colour: &[usize]) -> Vec<Vec<usize>> {
    let n = g.n();
    let rev = g.reverse();
    let sig: Vec<(usize, usize, usize)> = (0..n)
        .map(|v| (colour[v], g.out_neighbors(v).len(), rev.out_neighbors(v).len()))
        .collect();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        v: usize,
        g: &Digraph,
        sig: &[(usize, usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = map.len();
        if v == n {
            out.push(map.to_vec());
            return;
        }
        for w in 0..n {
            if used[w] || sig[v] != sig[w] {
                continue;
            }
            let consistent = (0..v).all(|u| {
                g.has_edge(u, v) == g.has_edge(map[u], w) && g.has_edge(v, u) == g.has_edge(w, map[u])
            });
            if consistent {
                map[v] = w;
                used[w] = true;
                go(v + 1, g, sig, map, used, out);
                used[w] = false;
            }
        }
    }
    go(0, g, &sig, &mut map, &mut used, &mut out);
    out
}

/// `Aut(G̃)`, in lexicographic order of the permutation vectors.
pub fn aut_expanded(g: &Digraph) -> Result<Vec<Vec<usize>>> {
    if g.n() > AUT_SEARCH_LIMIT {
        return Err(Error::SearchTooLarge(format!(
            "automorphism enumeration on {} vertices (limit {AUT_SEARCH_LIMIT})",
            g.n()
        )));
    }
    Ok(automorphisms(&expanded_form(g), &vec![0; g.n()]))
}

/// Whether `t` preserves every G-weight (hence every distance).
pub fn is_isometry(g: &Digraph, t: &LinearMap) -> Result<bool> {
    check_map(g, t)?;
    let n = g.n();
    let q = t.q();
    if guard_power("vectors", q as u64, n, ISOMETRY_SCAN_LIMIT_LOG2).is_err() {
        return match decompose_isometry(g, t) {
            Ok(_) => Ok(true),
            Err(Error::NotAnIsometry) => Ok(false),
            Err(e) => Err(e),
        };
    }
    let metric = MaskMetric::new(g)?;
    if q == 2 {
        let rows = t.row_masks();
        // walk the Gray code so each image costs one XOR
        let mut x = 0u64;
        let mut image = 0u64;
        for step in 1u64..(1u64 << n) {
            let bit = step.trailing_zeros() as usize;
            x ^= 1 << bit;
            image ^= rows[bit];
            if metric.weight(x) != metric.weight(image) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let mut x = FqVector::zero(q, n);
    loop {
        let Some(k) = (0..n).find(|&k| x.get(k) + 1 < q) else {
            return Ok(true);
        };
        x.set(k, x.get(k) + 1);
        for i in 0..k {
            x.set(i, 0);
        }
        let y = t.apply(&x)?;
        if metric.weight(x.support_mask()) != metric.weight(y.support_mask()) {
            return Ok(false);
        }
    }
}

/// `t = T_φ ∘ nmap` with `φ ∈ Aut(G̃)` and `nmap ∈ N(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryDecomposition {
    pub phi: Vec<usize>,
    pub nmap: LinearMap,
}

impl IsometryDecomposition {
    /// `T_φ ∘ nmap`.
    pub fn compose(&self) -> LinearMap {
        LinearMap::permutation(self.nmap.q(), &self.phi)
            .compose(&self.nmap)
            .expect("matching sizes")
    }
}

/// Splits an isometry into its permutation and domination-respecting parts.
///
/// `φ(i)` is a vertex of `supp(t(e_i))` generating the closure of that support;
/// among valid bijections the lexicographically smallest is taken, which picks
/// the lowest index inside cliques.
pub fn decompose_isometry(g: &Digraph, t: &LinearMap) -> Result<IsometryDecomposition> {
    check_map(g, t)?;
    let n = g.n();
    let reach = g.reachability();
    let expanded = expanded_form(g);
    let mut candidates = Vec::with_capacity(n);
    for i in 0..n {
        let s = t.image_of_unit(i).support();
        let cl = g.closure(&s)?;
        // an isometry keeps closure sizes
        if cl.len() != reach[i].len() {
            return Err(Error::NotAnIsometry);
        }
        let cands: Vec<usize> = s.iter().filter(|&j| reach[j] == cl).collect();
        if cands.is_empty() {
            return Err(Error::NotAnIsometry);
        }
        candidates.push(cands);
    }

    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn assign(
        i: usize,
        cands: &[Vec<usize>],
        ex: &Digraph,
        phi: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == phi.len() {
            return true;
        }
        for &j in &cands[i] {
            if used[j] {
                continue;
            }
            let consistent = (0..i).all(|k| {
                ex.has_edge(k, i) == ex.has_edge(phi[k], j) && ex.has_edge(i, k) == ex.has_edge(j, phi[k])
            });
            if consistent {
                phi[i] = j;
                used[j] = true;
                if assign(i + 1, cands, ex, phi, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    if !assign(0, &candidates, &expanded, &mut phi, &mut used) {
        return Err(Error::NotAnIsometry);
    }
    let inverse = LinearMap::permutation(t.q(), &phi).invert()?;
    let nmap = inverse.compose(t)?;
    if !respects_domination(g, &nmap)? {
        return Err(Error::NotAnIsometry);
    }
    Ok(IsometryDecomposition { phi, nmap })
}

/// Sizes attached to the isometry group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupOrder {
    /// `|Aut(G̃)|`.
    pub aut: u128,
    /// `|N(G)|`.
    pub normal_part: u128,
    /// `|Aut(G̃)| · |N(G)|`.
    pub product: u128,
    /// The exact number of linear isometries.
    pub order: u128,
}

/// `|GL(k, q)|`.
pub fn gl_order(k: usize, q: u32) -> u128 {
    let q = q as u128;
    let qk = q.pow(k as u32);
    (0..k as u32).map(|i| qk - q.pow(i)).product()
}

/// Invertible `k × k` matrices over `F_q` with no zero on the diagonal.
fn unit_diagonal_invertible(k: usize, q: u32) -> Result<u128> {
    if k == 1 {
        return Ok(q as u128 - 1);
    }
    guard_power("matrices", q as u64, k * k, 24)?;
    let mut count = 0u128;
    let mut entries = vec![0u32; k * k];
    loop {
        let diagonal_ok = (0..k).all(|i| entries[i * k + i] != 0);
        if diagonal_ok {
            let rows: Vec<Vec<u32>> = entries.chunks(k).map(<[u32]>::to_vec).collect();
            if crate::linalg::rank(q, &rows) == k {
                count += 1;
            }
        }
        let Some(p) = (0..k * k).find(|&p| entries[p] + 1 < q) else {
            break;
        };
        entries[p] += 1;
        for e in &mut entries[..p] {
            *e = 0;
        }
    }
    Ok(count)
}

/// `|N(G)|`: block-triangular under a topological order of the cliques.
pub fn normal_part_order(g: &Digraph, q: u32) -> Result<u128> {
    check_prime(q)?;
    let r = reduced_form(g);
    let reach = g.reachability();
    let mut order = 1u128;
    for &size in r.weights() {
        order = order.saturating_mul(unit_diagonal_invertible(size, q)?);
    }
    let off_block: usize = (0..g.n()).map(|i| reach[i].len() - r.weights()[r.pi()[i]]).sum();
    Ok(order.saturating_mul((q as u128).saturating_pow(off_block as u32)))
}

/// Group sizes for `g` over `F_q`.
pub fn group_order(g: &Digraph, q: u32) -> Result<GroupOrder> {
    check_prime(q)?;
    let aut = aut_expanded(g)?.len() as u128;
    let normal_part = normal_part_order(g, q)?;

    let r = reduced_form(g);
    let reach = g.reachability();
    let poset_aut = automorphisms(&expanded_form(r.hasse()), r.weights()).len() as u128;
    let mut order = poset_aut;
    for &size in r.weights() {
        order = order.saturating_mul(gl_order(size, q));
    }
    let off_block: usize = (0..g.n()).map(|i| reach[i].len() - r.weights()[r.pi()[i]]).sum();
    order = order.saturating_mul((q as u128).saturating_pow(off_block as u32));
    Ok(GroupOrder { aut, normal_part, product: aut.saturating_mul(normal_part), order })
}

/// A generating set of the isometry group: elementary transvections
/// `e_i ↦ e_i + e_j` for `v_j ∈ ⟨v_i⟩`, scalings of one coordinate by a
/// primitive element, and the automorphisms of the expanded form.
pub fn isometry_generators(g: &Digraph, q: u32) -> Result<Vec<LinearMap>> {
    check_prime(q)?;
    let n = g.n();
    let reach = g.reachability();
    let mut out = Vec::new();
    for i in 0..n {
        for j in reach[i].iter().filter(|&j| j != i) {
            let mut rows = LinearMap::identity(q, n).rows().to_vec();
            rows[i][j] = 1;
            out.push(LinearMap::new(q, rows)?);
        }
    }
    if q > 2 {
        let primitive = (2..q)
            .find(|&a| (1..q - 1).all(|e| pow_mod(a, e, q) != 1))
            .expect("prime fields have a primitive element");
        for i in 0..n {
            let mut rows = LinearMap::identity(q, n).rows().to_vec();
            rows[i][i] = primitive;
            out.push(LinearMap::new(q, rows)?);
        }
    }
    for perm in aut_expanded(g)? {
        if perm.iter().enumerate().any(|(i, &p)| i != p) {
            out.push(LinearMap::permutation(q, &perm));
        }
    }
    Ok(out)
}

fn pow_mod(a: u32, e: u32, q: u32) -> u32 {
    (0..e).fold(1u64, |acc, _| acc * a as u64 % q as u64) as u32
}
