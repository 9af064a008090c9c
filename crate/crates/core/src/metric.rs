//! G-weights, G-distances, spheres and weight tables.

use std::collections::BTreeMap;

use crate::canonical::ReducedForm;
use crate::error::{guard_power, Error, Result, ENUMERATION_LIMIT_LOG2};
use crate::graph::{Digraph, SupportSet};
use crate::linalg::FqVector;

/// `w_G(x) = |⟨supp(x)⟩_G|`.
pub fn g_weight(g: &Digraph, x: &FqVector) -> Result<usize> {
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: x.len() });
    }
    support_weight(g, &x.support())
}

/// G-weight of any word with support `s`.
pub fn support_weight(g: &Digraph, s: &SupportSet) -> Result<usize> {
    Ok(g.closure(s)?.len())
}

/// `d_G(x, y) = w_G(y - x)`.
pub fn g_distance(g: &Digraph, x: &FqVector, y: &FqVector) -> Result<usize> {
    g_weight(g, &y.sub(x)?)
}

/// G-weight computed on the reduced form: `Σ L(u)` over the reduced closure of `π(s)`.
pub fn g_weight_reduced(r: &ReducedForm, s: &SupportSet) -> Result<usize> {
    s.check_bound(r.n())?;
    let projected: SupportSet = s.iter().map(|v| r.pi()[v]).collect();
    let closure = r.hasse().closure(&projected)?;
    Ok(closure.iter().map(|u| r.weights()[u]).sum())
}

/// Word-level weights for graphs with at most 64 vertices.
///
/// `weight(mask)` ORs precomputed reachability rows, so a full table costs one
/// pass over the `2^n` supports.
#[derive(Debug, Clone)]
pub struct MaskMetric {
    n: usize,
    reach: Vec<u64>,
}

impl MaskMetric {
    pub fn new(g: &Digraph) -> Result<Self> {
        let reach = g.reach_masks().ok_or_else(|| {
            Error::InvalidArgument(format!("word-level metrics need n <= 64, got {}", g.n()))
        })?;
        Ok(Self { n: g.n(), reach })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Closure of a support mask.
    #[inline]
    pub fn closure(&self, mask: u64) -> u64 {
        let mut out = 0;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= self.reach[i];
            rest &= rest - 1;
        }
        out
    }

    #[inline]
    pub fn weight(&self, mask: u64) -> u32 {
        self.closure(mask).count_ones()
    }

    /// Weights of all `2^n` supports, indexed by mask.
    pub fn table(&self) -> Result<Vec<u32>> {
        guard_power("supports", 2, self.n, ENUMERATION_LIMIT_LOG2)?;
        let size = 1usize << self.n;
        let mut closures = vec![0u64; size];
        let mut out = vec![0u32; size];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            closures[mask] = closures[mask & (mask - 1)] | self.reach[low];
            out[mask] = closures[mask].count_ones();
        }
        Ok(out)
    }
}

/// `S_r` as support sets: every support whose closure has `radius` vertices.
pub fn sphere_supports(g: &Digraph, radius: usize) -> Result<Vec<SupportSet>> {
    let metric = MaskMetric::new(g)?;
    let table = metric.table()?;
    Ok(table
        .iter()
        .enumerate()
        .filter(|(_, &w)| w as usize == radius)
        .map(|(m, _)| SupportSet::from_mask(m as u64))
        .collect())
}

/// `S_r = {x ∈ F_q^n : w_G(x) = r}`, materialised.
pub fn sphere(g: &Digraph, radius: usize, q: u32) -> Result<Vec<FqVector>> {
    crate::linalg::check_prime(q)?;
    guard_power("sphere", q as u64, g.n(), ENUMERATION_LIMIT_LOG2)?;
    let n = g.n();
    let mut out = Vec::new();
    for s in sphere_supports(g, radius)? {
        let idx: Vec<usize> = s.iter().collect();
        // every fill of the support with nonzero residues
        let mut digits = vec![1u32; idx.len()];
        loop {
            let mut x = FqVector::zero(q, n);
            for (&i, &d) in idx.iter().zip(&digits) {
                x.set(i, d);
            }
            out.push(x);
            let Some(k) = (0..digits.len()).find(|&k| digits[k] + 1 < q) else {
                break;
            };
            digits[k] += 1;
            for d in &mut digits[..k] {
                *d = 1;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `|S_r|` over `F_q`, counting `(q-1)^|s|` words per support.
pub fn sphere_size(g: &Digraph, radius: usize, q: u32) -> Result<u128> {
    Ok(sphere_supports(g, radius)?
        .iter()
        .map(|s| (q as u128 - 1).pow(s.len() as u32))
        .sum())
}

/// Support → G-weight entries, total (all `2^n` supports) or partial.
///
/// Keys are masks with bit `i` standing for vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightTable {
    n: usize,
    entries: BTreeMap<u64, usize>,
}

impl WeightTable {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64, "weight tables are keyed by 64-bit masks");
        Self { n, entries: BTreeMap::new() }
    }

    /// The complete table of `g`.
    pub fn full(g: &Digraph) -> Result<Self> {
        let table = MaskMetric::new(g)?.table()?;
        Ok(Self {
            n: g.n(),
            entries: table.into_iter().enumerate().map(|(m, w)| (m as u64, w as usize)).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, s: &SupportSet, weight: usize) -> Result<()> {
        s.check_bound(self.n)?;
        self.entries.insert(s.to_mask().expect("bounded by n <= 64"), weight);
        Ok(())
    }

    pub fn insert_mask(&mut self, mask: u64, weight: usize) {
        self.entries.insert(mask, weight);
    }

    pub fn remove(&mut self, s: &SupportSet) -> Option<usize> {
        self.entries.remove(&s.to_mask()?)
    }

    pub fn get(&self, s: &SupportSet) -> Option<usize> {
        self.entries.get(&s.to_mask()?).copied()
    }

    pub fn get_mask(&self, mask: u64) -> Option<usize> {
        self.entries.get(&mask).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether all `2^n` supports are present.
    pub fn is_total(&self) -> bool {
        self.n < 64 && self.entries.len() == 1usize << self.n
    }

    /// Entries in increasing mask order.
    pub fn iter(&self) -> impl Iterator<Item = (SupportSet, usize)> + '_ {
        self.entries.iter().map(|(&m, &w)| (SupportSet::from_mask(m), w))
    }

    pub fn masks(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        self.entries.iter().map(|(&m, &w)| (m, w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::reduced_form;

    fn v(s: &str) -> FqVector {
        FqVector::parse(2, s).unwrap()
    }

    fn set(xs: &[usize]) -> SupportSet {
        xs.iter().copied().collect()
    }

    fn pair4() -> Digraph {
        Digraph::from_edges(4, [(2, 3), (3, 2)]).unwrap()
    }

    fn tri() -> Digraph {
        Digraph::from_edges(3, [(0, 1), (0, 2), (1, 2), (2, 1)]).unwrap()
    }

    fn six() -> Digraph {
        Digraph::from_edges(6, [(0, 1), (1, 0), (2, 3), (3, 2), (4, 5), (5, 4)]).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(g_weight(&pair4(), &v("0011")).unwrap(), 2);
        assert_eq!(g_weight(&pair4(), &v("1100")).unwrap(), 2);
        let k3 = Digraph::complete(3);
        for m in 1..8u64 {
            assert_eq!(g_weight(&k3, &FqVector::from_mask(3, m)).unwrap(), 3);
        }
        assert_eq!(g_weight(&Digraph::empty(4), &v("1011")).unwrap(), 3);
        assert_eq!(g_weight(&Digraph::empty(4), &v("0000")).unwrap(), 0);
        assert!(g_weight(&k3, &v("10")).is_err());
    }

    #[test]
    fn distance_examples() {
        let prx3 = Digraph::from_edges(3, [(2, 0)]).unwrap();
        assert_eq!(g_distance(&prx3, &v("101"), &v("101")).unwrap(), 0);
        assert_eq!(g_distance(&prx3, &v("000"), &v("110")).unwrap(), 2);
        assert_eq!(g_distance(&prx3, &v("000"), &v("001")).unwrap(), 2);
        let path3 = Digraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g_distance(&path3, &v("100"), &v("001")).unwrap(), 3);
        let y3 = FqVector::parse(3, "12").unwrap();
        let x3 = FqVector::parse(3, "11").unwrap();
        assert_eq!(g_distance(&Digraph::empty(2), &x3, &y3).unwrap(), 1);
    }

    #[test]
    fn reduced_weight_examples() {
        assert_eq!(g_weight_reduced(&reduced_form(&tri()), &set(&[0])).unwrap(), 3);
        assert_eq!(g_weight_reduced(&reduced_form(&six()), &set(&[4])).unwrap(), 2);
        assert_eq!(g_weight_reduced(&reduced_form(&six()), &set(&[])).unwrap(), 0);
        assert!(g_weight_reduced(&reduced_form(&six()), &set(&[6])).is_err());
    }

    #[test]
    fn sphere_examples() {
        let hamm4 = Digraph::empty(4);
        let s1: Vec<String> = sphere(&hamm4, 1, 2).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(s1, vec!["0001", "0010", "0100", "1000"]);
        assert_eq!(sphere(&hamm4, 0, 2).unwrap(), vec![FqVector::zero(2, 4)]);
        let s2 = sphere(&pair4(), 2, 2).unwrap();
        assert_eq!(s2.len(), 4);
        let supports = sphere_supports(&pair4(), 2).unwrap();
        assert_eq!(supports, vec![set(&[0, 1]), set(&[2]), set(&[3]), set(&[2, 3])]);
        assert_eq!(sphere_size(&pair4(), 2, 2).unwrap(), 4);
        assert_eq!(sphere(&pair4(), 2, 3).unwrap().len() as u128, sphere_size(&pair4(), 2, 3).unwrap());
    }

    #[test]
    fn spheres_partition_space() {
        let g = Digraph::from_edges(4, [(0, 1), (1, 2), (3, 1)]).unwrap();
        let total: usize = (0..=4).map(|r| sphere(&g, r, 3).unwrap().len()).sum();
        assert_eq!(total, 81);
    }

    #[test]
    fn mask_metric_matches_closure() {
        let g = Digraph::from_edges(5, [(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        let m = MaskMetric::new(&g).unwrap();
        let table = m.table().unwrap();
        for mask in 0..32u64 {
            let s = SupportSet::from_mask(mask);
            assert_eq!(table[mask as usize] as usize, support_weight(&g, &s).unwrap());
            assert_eq!(m.weight(mask), table[mask as usize]);
        }
    }

    #[test]
    fn weight_table_totality() {
        let t = WeightTable::full(&pair4()).unwrap();
        assert!(t.is_total());
        assert_eq!(t.get(&set(&[2])), Some(2));
        let mut partial = t.clone();
        partial.remove(&set(&[0]));
        assert!(!partial.is_total());
        assert_eq!(partial.len(), 15);
    }
}
