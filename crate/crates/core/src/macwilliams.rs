//! Weight enumerators, the unique decomposition property, condition Ω, and
//! exhaustive checks of the MacWilliams identity and extension property.
//!
//! Character sums are taken over `F_2` only, where `χ(a) = (-1)^a`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::canonical::{is_hierarchical, reduced_form, ReducedForm};
use crate::error::{guard_power, Error, Result, ENUMERATION_LIMIT_LOG2};
use crate::graph::{Digraph, SupportSet};
use crate::isometry::isometry_generators;
use crate::linalg::{FqVector, LinearCode};
use crate::metric::MaskMetric;

/// Codeword counts `A_0, …, A_n` by G-weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightEnumerator {
    pub coeffs: Vec<u64>,
}

impl WeightEnumerator {
    /// Number of words counted.
    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }
}

/// `W^G_C`.
pub fn weight_enumerator(g: &Digraph, c: &LinearCode) -> Result<WeightEnumerator> {
    if c.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: c.n() });
    }
    let metric = MaskMetric::new(g)?;
    let mut coeffs = vec![0u64; g.n() + 1];
    if c.q() == 2 {
        for w in c.codeword_masks()? {
            coeffs[metric.weight(w) as usize] += 1;
        }
    } else {
        for x in c.codewords()? {
            coeffs[metric.weight(x.support_mask()) as usize] += 1;
        }
    }
    Ok(WeightEnumerator { coeffs })
}

/// Two subsets of one level with equal weight sums but different multisets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UdpWitness {
    /// Level, starting at 1.
    pub level: usize,
    /// Reduced vertices of the first subset.
    pub left: Vec<usize>,
    /// Reduced vertices of the second subset.
    pub right: Vec<usize>,
}

/// Largest number of sub-multisets examined on one level.
pub const UDP_SEARCH_LIMIT_LOG2: u32 = 20;

/// Checks a multiset of weights. Returns index lists of a colliding pair of
/// sub-multisets with the smallest sum, the smaller one first.
pub fn udp_check_weights(weights: &[usize]) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let mut values: Vec<usize> = weights.to_vec();
    values.sort_unstable();
    values.dedup();
    let mult: Vec<usize> = values.iter().map(|v| weights.iter().filter(|&w| w == v).count()).collect();
    let combos: u128 = mult.iter().map(|&m| m as u128 + 1).product();
    if combos > 1u128 << UDP_SEARCH_LIMIT_LOG2 {
        return Err(Error::SearchTooLarge(format!("{combos} sub-multisets on one level")));
    }
    // every sub-multiset as a count per distinct value
    let mut all: Vec<(usize, usize, Vec<usize>)> = Vec::with_capacity(combos as usize);
    let mut counts = vec![0usize; values.len()];
    loop {
        let sum = counts.iter().zip(&values).map(|(c, v)| c * v).sum();
        let size = counts.iter().sum();
        all.push((sum, size, counts.clone()));
        let Some(t) = (0..counts.len()).find(|&t| counts[t] < mult[t]) else {
            break;
        };
        counts[t] += 1;
        for c in &mut counts[..t] {
            *c = 0;
        }
    }
    all.sort();
    let Some(pair) = all.windows(2).find(|w| w[0].0 == w[1].0) else {
        return Ok(None);
    };
    let pick = |counts: &[usize]| -> Vec<usize> {
        let mut out = Vec::new();
        for (t, &c) in counts.iter().enumerate() {
            out.extend(
                (0..weights.len()).filter(|&i| weights[i] == values[t]).take(c),
            );
        }
        out.sort_unstable();
        out
    };
    Ok(Some((pick(&pair[0].2), pick(&pair[1].2))))
}

/// The unique decomposition property, level by level.
pub fn udp_check(r: &ReducedForm) -> Result<Option<UdpWitness>> {
    for level in 1..=r.height() {
        let set = r.level_set(level);
        let weights: Vec<usize> = set.iter().map(|&a| r.weights()[a]).collect();
        if let Some((l, rr)) = udp_check_weights(&weights)? {
            return Ok(Some(UdpWitness {
                level,
                left: l.iter().map(|&i| set[i]).collect(),
                right: rr.iter().map(|&i| set[i]).collect(),
            }));
        }
    }
    Ok(None)
}

/// Three or more classes of one level sharing a size above 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaWitness {
    pub level: usize,
    pub weight: usize,
    pub vertices: Vec<usize>,
}

/// Condition Ω on every level.
pub fn omega_check(r: &ReducedForm) -> Option<OmegaWitness> {
    for level in 1..=r.height() {
        let set = r.level_set(level);
        let mut by_weight: HashMap<usize, Vec<usize>> = HashMap::new();
        for &a in &set {
            by_weight.entry(r.weights()[a]).or_default().push(a);
        }
        let mut bad: Vec<(usize, Vec<usize>)> =
            by_weight.into_iter().filter(|(w, vs)| *w > 1 && vs.len() > 2).collect();
        bad.sort();
        if let Some((weight, vertices)) = bad.into_iter().next() {
            return Some(OmegaWitness { level, weight, vertices });
        }
    }
    None
}

/// Outcome of a theorem-based prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prediction {
    Holds,
    Fails,
    /// The graph is not hierarchical, so the theorem says nothing.
    Undetermined,
}

impl Prediction {
    fn from_bool(b: bool) -> Self {
        if b {
            Prediction::Holds
        } else {
            Prediction::Fails
        }
    }
}

/// Largest `n` for the exhaustive binary code scans.
pub const CODE_SCAN_MAX_N: usize = 6;

fn check_scan(g: &Digraph, dim_cap: usize, cap_limit: usize) -> Result<()> {
    if g.n() > CODE_SCAN_MAX_N {
        return Err(Error::SearchTooLarge(format!(
            "exhaustive code scan needs n <= {CODE_SCAN_MAX_N}, got {}",
            g.n()
        )));
    }
    if dim_cap > cap_limit {
        return Err(Error::SearchTooLarge(format!("dimension cap {dim_cap} exceeds {cap_limit}")));
    }
    Ok(())
}

/// Whether `W^G_C` determines `W^{Ḡ}_{C^⊥}` for all binary codes up to
/// dimension `max_dim`. The witness is the first pair with equal enumerators
/// whose duals differ; codes are scanned by dimension, then in the order of
/// [`LinearCode::enumerate_all`].
pub fn identity_check(g: &Digraph, max_dim: usize) -> Result<Option<(LinearCode, LinearCode)>> {
    check_scan(g, max_dim, 3)?;
    let n = g.n();
    let rev = g.reverse();
    let mut seen: HashMap<WeightEnumerator, (LinearCode, WeightEnumerator)> = HashMap::new();
    for k in 0..=max_dim.min(n) {
        for c in LinearCode::enumerate_all(2, n, k)? {
            let w = weight_enumerator(g, &c)?;
            let dual_w = weight_enumerator(&rev, &c.dual())?;
            match seen.get(&w) {
                Some((first, first_dual)) if *first_dual != dual_w => {
                    return Ok(Some((first.clone(), c)));
                }
                Some(_) => {}
                None => {
                    seen.insert(w, (c, dual_w));
                }
            }
        }
    }
    Ok(None)
}

/// The identity predicted from the unique decomposition property.
pub fn identity_predicted(g: &Digraph) -> Result<Prediction> {
    let r = reduced_form(g);
    if !is_hierarchical(&r) {
        return Ok(Prediction::Undetermined);
    }
    Ok(Prediction::from_bool(udp_check(&r)?.is_none()))
}

fn check_binary(x: &FqVector) -> Result<()> {
    if x.q() != 2 {
        return Err(Error::InvalidArgument(format!("character sums need q = 2, got {}", x.q())));
    }
    Ok(())
}

/// `Σ (-1)^{x·y}` over all `y` with `⟨supp y⟩ = jc`, by enumeration.
pub fn character_sum(g: &Digraph, x: &FqVector, jc: &SupportSet) -> Result<i64> {
    check_binary(x)?;
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: x.len() });
    }
    if !g.is_closed(jc)? {
        return Err(Error::InvalidArgument(format!("{jc} is not closed")));
    }
    guard_power("character-sum terms", 2, jc.len(), ENUMERATION_LIMIT_LOG2)?;
    let metric = MaskMetric::new(g)?;
    let target = jc.to_mask().expect("n <= 64");
    let xm = x.support_mask();
    let mut sum = 0i64;
    let mut y = target;
    loop {
        if metric.closure(y) == target {
            sum += if (xm & y).count_ones().is_multiple_of(2) { 1 } else { -1 };
        }
        if y == 0 {
            break;
        }
        y = (y - 1) & target;
    }
    Ok(sum)
}

/// Closed form of [`character_sum`] for single-level graphs:
/// `(-1)^{|π(I ∩ J^c)|} · ∏_{a ∈ π(J^c \ I)} (2^{L(a)} - 1)` with `I = ⟨supp x⟩`.
pub fn p_closed_form(g: &Digraph, x: &FqVector, jc: &SupportSet) -> Result<i64> {
    check_binary(x)?;
    let r = reduced_form(g);
    if r.height() > 1 {
        return Err(Error::NotSingleLevel(r.height()));
    }
    if !g.is_closed(jc)? {
        return Err(Error::InvalidArgument(format!("{jc} is not closed")));
    }
    let i = g.closure(&x.support())?;
    Ok(closed_form_classes(&r, &i, jc))
}

fn closed_form_classes(r: &ReducedForm, i: &SupportSet, jc: &SupportSet) -> i64 {
    let classes = |s: &SupportSet| -> SupportSet { s.iter().map(|v| r.pi()[v]).collect() };
    let inside = classes(&i.intersection(jc)).len();
    let product: i64 = classes(&jc.difference(i))
        .iter()
        .map(|a| (1i64 << r.weights()[a]) - 1)
        .product();
    if inside % 2 == 0 {
        product
    } else {
        -product
    }
}

/// Largest class count for closed-set enumeration.
pub const CLOSED_SET_LIMIT: usize = 20;

/// Closed sets of a single-level reduced form (unions of classes).
fn closed_sets(r: &ReducedForm) -> Result<Vec<SupportSet>> {
    if r.m() > CLOSED_SET_LIMIT {
        return Err(Error::SearchTooLarge(format!("{} classes (limit {CLOSED_SET_LIMIT})", r.m())));
    }
    let classes: Vec<SupportSet> = (0..r.m()).map(|a| r.class(a)).collect();
    Ok((0u64..1 << r.m())
        .map(|sel| {
            let mut s = SupportSet::new();
            for (a, class) in classes.iter().enumerate() {
                if sel >> a & 1 == 1 {
                    s.union_with(class);
                }
            }
            s
        })
        .collect())
}

/// MacWilliams transform for single-level graphs over `F_2`:
/// `A_j(C^⊥) = (1/|C|) Σ_i A_i(C) p_ij`, where `p_ij` sums the closed form over
/// all closed sets of size `j` against one closed set of size `i`.
pub fn dual_enumerator_1level(g: &Digraph, w: &WeightEnumerator, code_size: u64) -> Result<WeightEnumerator> {
    let n = g.n();
    if w.coeffs.len() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, found: w.coeffs.len() });
    }
    let r = reduced_form(g);
    if r.height() > 1 {
        return Err(Error::NotSingleLevel(r.height()));
    }
    if udp_check(&r)?.is_some() {
        return Err(Error::UdpViolated);
    }
    if code_size == 0 || w.total() != code_size {
        return Err(Error::InvalidArgument(format!(
            "enumerator counts {} words, code size given as {code_size}",
            w.total()
        )));
    }
    let closed = closed_sets(&r)?;
    let mut coeffs = vec![0i128; n + 1];
    for (i, &a_i) in w.coeffs.iter().enumerate() {
        if a_i == 0 {
            continue;
        }
        let rep = closed.iter().find(|s| s.len() == i).ok_or_else(|| {
            Error::InvalidArgument(format!("no closed set has size {i}, yet A_{i} = {a_i}"))
        })?;
        for k in &closed {
            coeffs[k.len()] += a_i as i128 * closed_form_classes(&r, rep, k) as i128;
        }
    }
    let coeffs = coeffs
        .into_iter()
        .map(|c| {
            if c < 0 || c % code_size as i128 != 0 {
                Err(Error::InvalidArgument("enumerator is not that of a linear code".into()))
            } else {
                Ok((c / code_size as i128) as u64)
            }
        })
        .collect::<Result<_>>()?;
    Ok(WeightEnumerator { coeffs })
}

/// A weight-preserving linear bijection between two codes that no isometry
/// extends: `t` sends `from[i]` to `to[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub from: Vec<FqVector>,
    pub to: Vec<FqVector>,
}

impl ExtensionWitness {
    pub fn source(&self) -> LinearCode {
        LinearCode::from_vectors(2, self.from[0].len(), &self.from).expect("independent words")
    }

    pub fn target(&self) -> LinearCode {
        LinearCode::from_vectors(2, self.to[0].len(), &self.to).expect("independent words")
    }
}

struct Orbits {
    parent: Vec<usize>,
}

impl Orbits {
    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn apply_rows(rows: &[u64], x: u64) -> u64 {
    let mut out = 0;
    let mut rest = x;
    while rest != 0 {
        out ^= rows[rest.trailing_zeros() as usize];
        rest &= rest - 1;
    }
    out
}

/// Independent ordered `k`-tuples of nonzero binary words, encoded base `2^n`.
fn independent_tuples(n: usize, k: usize) -> Vec<Vec<u64>> {
    let size = 1u64 << n;
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            let mut span = vec![0u64];
            for &b in t {
                let shifted: Vec<u64> = span.iter().map(|s| s ^ b).collect();
                span.extend(shifted);
            }
            for v in 1..size {
                if !span.contains(&v) {
                    let mut u = t.clone();
                    u.push(v);
                    next.push(u);
                }
            }
        }
        out = next;
    }
    out
}

fn encode(n: usize, t: &[u64]) -> usize {
    t.iter().rev().fold(0usize, |acc, &v| (acc << n) | v as usize)
}

/// Whether every weight-preserving linear bijection between binary codes of
/// dimension at most `dim_cap` extends to an isometry of the whole space.
///
/// Orbits of the isometry group on ordered bases are merged along a generating
/// set. Two bases whose spans correspond under a weight-preserving map share
/// the weights of all their combinations; the map extends iff they share an
/// orbit.
pub fn extension_check(g: &Digraph, dim_cap: usize) -> Result<Option<ExtensionWitness>> {
    check_scan(g, dim_cap, 2)?;
    let n = g.n();
    let metric = MaskMetric::new(g)?;
    let generators: Vec<Vec<u64>> = isometry_generators(g, 2)?.iter().map(|t| t.row_masks()).collect();
    for k in 1..=dim_cap.min(n) {
        let tuples = independent_tuples(n, k);
        let mut orbits = Orbits { parent: (0..1usize << (n * k)).collect() };
        for t in &tuples {
            let here = encode(n, t);
            for rows in &generators {
                let image: Vec<u64> = t.iter().map(|&v| apply_rows(rows, v)).collect();
                orbits.union(here, encode(n, &image));
            }
        }
        let mut first: HashMap<Vec<u32>, &Vec<u64>> = HashMap::new();
        for t in &tuples {
            let key: Vec<u32> = (1u64..1 << k)
                .map(|sel| {
                    let word = (0..k).filter(|&i| sel >> i & 1 == 1).fold(0, |acc, i| acc ^ t[i]);
                    metric.weight(word)
                })
                .collect();
            match first.get(&key) {
                Some(&rep) => {
                    if orbits.find(encode(n, rep)) != orbits.find(encode(n, t)) {
                        return Ok(Some(ExtensionWitness {
                            from: rep.iter().map(|&v| FqVector::from_mask(n, v)).collect(),
                            to: t.iter().map(|&v| FqVector::from_mask(n, v)).collect(),
                        }));
                    }
                }
                None => {
                    first.insert(key, t);
                }
            }
        }
    }
    Ok(None)
}

/// Whether some isometry sends each `from[i]` to `to[i]` (`q = 2`).
pub fn extends(g: &Digraph, from: &[FqVector], to: &[FqVector]) -> Result<bool> {
    if from.len() != to.len() {
        return Err(Error::DimensionMismatch { expected: from.len(), found: to.len() });
    }
    let n = g.n();
    for x in from.iter().chain(to) {
        check_binary(x)?;
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len() });
        }
    }
    guard_power("orbit", 2, n * from.len(), ENUMERATION_LIMIT_LOG2)?;
    let generators: Vec<Vec<u64>> = isometry_generators(g, 2)?.iter().map(|t| t.row_masks()).collect();
    let start: Vec<u64> = from.iter().map(FqVector::support_mask).collect();
    let goal: Vec<u64> = to.iter().map(FqVector::support_mask).collect();
    let mut seen = std::collections::HashSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some(t) = queue.pop() {
        if t == goal {
            return Ok(true);
        }
        for rows in &generators {
            let image: Vec<u64> = t.iter().map(|&v| apply_rows(rows, v)).collect();
            if seen.insert(image.clone()) {
                queue.push(image);
            }
        }
    }
    Ok(false)
}

/// The extension property predicted from UDP and condition Ω.
pub fn extension_predicted(g: &Digraph) -> Result<Prediction> {
    let r = reduced_form(g);
    if !is_hierarchical(&r) {
        return Ok(Prediction::Undetermined);
    }
    Ok(Prediction::from_bool(udp_check(&r)?.is_none() && omega_check(&r).is_none()))
}
