//! Exact linear algebra over prime fields `F_q`.
//!
//! Linear maps use the rows-as-images convention: row `i` of the matrix is
//! `T(e_i)`, so `T(e_i) = Σ_j m[i][j] e_j` and `T(x) = Σ_i x_i · row_i`.

use std::fmt;

use crate::error::{guard_power, Error, Result, ENUMERATION_LIMIT_LOG2};
use crate::graph::SupportSet;

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(q: u32) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::NotPrime(q))
    }
}

#[inline]
fn mul(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 * b as u64) % q as u64) as u32
}

#[inline]
fn add(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 + b as u64) % q as u64) as u32
}

#[inline]
fn neg(a: u32, q: u32) -> u32 {
    if a == 0 {
        0
    } else {
        q - a
    }
}

/// Multiplicative inverse of a nonzero residue (Fermat).
pub fn inverse(a: u32, q: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(q));
    let mut result = 1u32;
    let mut base = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(result, base, q);
        }
        base = mul(base, base, q);
        e >>= 1;
    }
    result
}

/// A word of `F_q^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqVector {
    q: u32,
    entries: Vec<u32>,
}

impl FqVector {
    pub fn new(q: u32, entries: Vec<u32>) -> Result<Self> {
        check_prime(q)?;
        if let Some(&value) = entries.iter().find(|&&e| e >= q) {
            return Err(Error::InvalidResidue { value, q });
        }
        Ok(Self { q, entries })
    }

    pub fn zero(q: u32, n: usize) -> Self {
        Self {
            q,
            entries: vec![0; n],
        }
    }

    pub fn unit(q: u32, n: usize, i: usize) -> Self {
        let mut v = Self::zero(q, n);
        v.entries[i] = 1;
        v
    }

    /// Binary word whose bit `i` is coordinate `i`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self {
            q: 2,
            entries: (0..n).map(|i| (mask >> i & 1) as u32).collect(),
        }
    }

    /// Parses a digit string such as `0011`; the first digit is coordinate 0.
    pub fn parse(q: u32, s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad digit {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, entries)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: u32) {
        self.entries[i] = value % self.q;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> SupportSet {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Binary support mask; requires `n <= 64`.
    pub fn support_mask(&self) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    fn check_compatible(&self, other: &FqVector) -> Result<()> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FqVector) -> Result<FqVector> {
        self.check_compatible(other)?;
        let q = self.q;
        Ok(FqVector {
            q,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| add(a, b, q)).collect(),
        })
    }

    /// `self - other`.
    pub fn sub(&self, other: &FqVector) -> Result<FqVector> {
        self.add(&other.scale(self.q - 1))
    }

    pub fn scale(&self, c: u32) -> FqVector {
        let q = self.q;
        FqVector {
            q,
            entries: self.entries.iter().map(|&a| mul(a, c % q, q)).collect(),
        }
    }

    /// Standard inner product.
    pub fn dot(&self, other: &FqVector) -> Result<u32> {
        self.check_compatible(other)?;
        let q = self.q;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0, |acc, (&a, &b)| add(acc, mul(a, b, q), q)))
    }
}

impl fmt::Display for FqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q <= 10 {
            for e in &self.entries {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl fmt::Debug for FqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqVector(q={}, {})", self.q, self)
    }
}

/// Reduces `rows` in place to reduced row-echelon form over `F_q`, scanning
/// columns in the order given. Returns the pivot column of each kept row.
pub(crate) fn reduce(q: u32, rows: &mut Vec<Vec<u32>>, columns: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in columns {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = inverse(rows[r][c], q);
        for e in rows[r].iter_mut() {
            *e = mul(*e, inv, q);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = neg(row[c], q);
                for (e, &p) in row.iter_mut().zip(&pivot_row) {
                    *e = add(*e, mul(f, p, q), q);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

fn validate_rows(q: u32, n: usize, rows: &[Vec<u32>]) -> Result<()> {
    check_prime(q)?;
    for row in rows {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        if let Some(&value) = row.iter().find(|&&e| e >= q) {
            return Err(Error::InvalidResidue { value, q });
        }
    }
    Ok(())
}

/// Rank of a matrix over `F_q`.
pub fn rank(q: u32, rows: &[Vec<u32>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let cols: Vec<usize> = (0..first.len()).collect();
    let mut work = rows.to_vec();
    reduce(q, &mut work, &cols).len()
}

/// A linear code, held as its canonical reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearCode {
    q: u32,
    n: usize,
    basis: Vec<Vec<u32>>,
}

/// Canonical basis of the row space of `rows`.
pub fn rref(q: u32, n: usize, rows: &[Vec<u32>]) -> Result<LinearCode> {
    LinearCode::from_rows(q, n, rows)
}

impl LinearCode {
    pub fn from_rows(q: u32, n: usize, rows: &[Vec<u32>]) -> Result<Self> {
        validate_rows(q, n, rows)?;
        let mut basis = rows.to_vec();
        let cols: Vec<usize> = (0..n).collect();
        reduce(q, &mut basis, &cols);
        Ok(Self { q, n, basis })
    }

    pub fn from_vectors(q: u32, n: usize, vectors: &[FqVector]) -> Result<Self> {
        for v in vectors {
            if v.q() != q {
                return Err(Error::ModulusMismatch(q, v.q()));
            }
        }
        let rows: Vec<Vec<u32>> = vectors.iter().map(|v| v.entries.clone()).collect();
        Self::from_rows(q, n, &rows)
    }

    /// Binary code spanned by the given masks.
    pub fn from_masks(n: usize, masks: &[u64]) -> Self {
        let rows: Vec<Vec<u32>> = masks
            .iter()
            .map(|&m| FqVector::from_mask(n, m).entries)
            .collect();
        Self::from_rows(2, n, &rows).expect("binary rows are valid")
    }

    pub fn zero(q: u32, n: usize) -> Self {
        Self { q, n, basis: Vec::new() }
    }

    pub fn full(q: u32, n: usize) -> Self {
        let basis = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        Self { q, n, basis }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<FqVector> {
        self.basis
            .iter()
            .map(|r| FqVector { q: self.q, entries: r.clone() })
            .collect()
    }

    /// Binary basis rows as masks; requires `q = 2` and `n <= 64`.
    pub fn basis_masks(&self) -> Vec<u64> {
        debug_assert_eq!(self.q, 2);
        self.basis_vectors().iter().map(FqVector::support_mask).collect()
    }

    fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|&e| e != 0).expect("basis rows are nonzero"))
            .collect()
    }

    /// Number of codewords, `q^k`, saturating.
    pub fn size(&self) -> u128 {
        (0..self.dim()).fold(1u128, |acc, _| acc.saturating_mul(self.q as u128))
    }

    pub fn contains(&self, x: &FqVector) -> Result<bool> {
        if x.q() != self.q {
            return Err(Error::ModulusMismatch(self.q, x.q()));
        }
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        let mut rows = self.basis.clone();
        rows.push(x.entries.clone());
        Ok(rank(self.q, &rows) == self.dim())
    }

    /// Union of the supports of all codewords.
    pub fn support(&self) -> SupportSet {
        self.basis
            .iter()
            .flat_map(|r| r.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, _)| i))
            .collect()
    }

    /// `C^⊥` under the standard inner product.
    pub fn dual(&self) -> LinearCode {
        let q = self.q;
        let pivots = self.pivots();
        let free: Vec<usize> = (0..self.n).filter(|c| !pivots.contains(c)).collect();
        let rows: Vec<Vec<u32>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u32; self.n];
                v[f] = 1;
                for (row, &p) in self.basis.iter().zip(&pivots) {
                    v[p] = neg(row[f], q);
                }
                v
            })
            .collect();
        LinearCode::from_rows(q, self.n, &rows).expect("dual rows are valid")
    }

    /// All codewords, zero first, when `q^k` is within the enumeration guard.
    pub fn codewords(&self) -> Result<Codewords<'_>> {
        guard_power("codewords", self.q as u64, self.dim(), ENUMERATION_LIMIT_LOG2)?;
        Ok(Codewords {
            code: self,
            coeffs: vec![0; self.dim()],
            done: false,
        })
    }

    /// All binary codewords as masks (`q = 2`, guarded).
    pub fn codeword_masks(&self) -> Result<Vec<u64>> {
        guard_power("codewords", 2, self.dim(), ENUMERATION_LIMIT_LOG2)?;
        let basis = self.basis_masks();
        let mut words = vec![0u64];
        for b in basis {
            let shifted: Vec<u64> = words.iter().map(|w| w ^ b).collect();
            words.extend(shifted);
        }
        Ok(words)
    }

    /// The image `T(C)`.
    pub fn image(&self, t: &LinearMap) -> Result<LinearCode> {
        let images = self
            .basis_vectors()
            .iter()
            .map(|v| t.apply(v))
            .collect::<Result<Vec<_>>>()?;
        LinearCode::from_vectors(self.q, self.n, &images)
    }

    /// Every `k`-dimensional subspace of `F_q^n`, as RREF bases.
    ///
    /// Within each choice of pivot columns the free entries run from the
    /// largest assignment down to zero.
    pub fn enumerate_all(q: u32, n: usize, k: usize) -> Result<Vec<LinearCode>> {
        check_prime(q)?;
        if k > n {
            return Ok(Vec::new());
        }
        guard_power("subspaces", q as u64, k * (n - k), 20)?;
        let mut out = Vec::new();
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            let free_slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    let pivots = &pivots;
                    (p + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let total = (q as u64).pow(free_slots.len() as u32);
            for idx in (0..total).rev() {
                let mut basis = vec![vec![0u32; n]; k];
                for (r, &p) in pivots.iter().enumerate() {
                    basis[r][p] = 1;
                }
                let mut rest = idx;
                for &(r, c) in &free_slots {
                    basis[r][c] = (rest % q as u64) as u32;
                    rest /= q as u64;
                }
                out.push(LinearCode { q, n, basis });
            }
            // next k-combination of pivot columns
            let Some(i) = (0..k).rev().find(|&i| pivots[i] < n - k + i) else {
                break;
            };
            pivots[i] += 1;
            for j in i + 1..k {
                pivots[j] = pivots[j - 1] + 1;
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis_vectors()
            .iter()
            .map(|v| v.to_string())
            .collect();
        write!(f, "LinearCode(q={}, n={}, [{}])", self.q, self.n, rows.join(", "))
    }
}

/// Iterator over the codewords of a [`LinearCode`].
pub struct Codewords<'a> {
    code: &'a LinearCode,
    coeffs: Vec<u32>,
    done: bool,
}

impl Iterator for Codewords<'_> {
    type Item = FqVector;

    fn next(&mut self) -> Option<FqVector> {
        if self.done {
            return None;
        }
        let q = self.code.q;
        let mut word = vec![0u32; self.code.n];
        for (&c, row) in self.coeffs.iter().zip(&self.code.basis) {
            if c != 0 {
                for (w, &r) in word.iter_mut().zip(row) {
                    *w = add(*w, mul(c, r, q), q);
                }
            }
        }
        // advance the coefficient counter
        let mut i = 0;
        loop {
            if i == self.coeffs.len() {
                self.done = true;
                break;
            }
            self.coeffs[i] += 1;
            if self.coeffs[i] < q {
                break;
            }
            self.coeffs[i] = 0;
            i += 1;
        }
        Some(FqVector { q, entries: word })
    }
}

/// A linear map `F_q^n → F_q^n`; row `i` holds `T(e_i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    q: u32,
    rows: Vec<Vec<u32>>,
}

impl LinearMap {
    pub fn new(q: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        validate_rows(q, n, &rows)?;
        Ok(Self { q, rows })
    }

    pub fn identity(q: u32, n: usize) -> Self {
        Self {
            q,
            rows: (0..n)
                .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
                .collect(),
        }
    }

    /// The coordinate permutation `e_i ↦ e_{perm[i]}`.
    pub fn permutation(q: u32, perm: &[usize]) -> Self {
        let n = perm.len();
        Self {
            q,
            rows: perm
                .iter()
                .map(|&p| (0..n).map(|j| u32::from(j == p)).collect())
                .collect(),
        }
    }

    /// Binary map from row masks.
    pub fn from_row_masks(n: usize, masks: &[u64]) -> Self {
        Self {
            q: 2,
            rows: masks
                .iter()
                .map(|&m| (0..n).map(|j| (m >> j & 1) as u32).collect())
                .collect(),
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.rows[i][j]
    }

    /// `T(e_i)`.
    pub fn image_of_unit(&self, i: usize) -> FqVector {
        FqVector { q: self.q, entries: self.rows[i].clone() }
    }

    /// Binary rows as masks; requires `q = 2`.
    pub fn row_masks(&self) -> Vec<u64> {
        (0..self.n()).map(|i| self.image_of_unit(i).support_mask()).collect()
    }

    pub fn apply(&self, x: &FqVector) -> Result<FqVector> {
        if x.q() != self.q {
            return Err(Error::ModulusMismatch(self.q, x.q()));
        }
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: x.len() });
        }
        let q = self.q;
        let mut out = vec![0u32; self.n()];
        for (&c, row) in x.entries.iter().zip(&self.rows) {
            if c != 0 {
                for (o, &r) in out.iter_mut().zip(row) {
                    *o = add(*o, mul(c, r, q), q);
                }
            }
        }
        Ok(FqVector { q, entries: out })
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: other.n() });
        }
        let rows = (0..self.n())
            .map(|i| self.apply(&other.image_of_unit(i)).map(|v| v.entries))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearMap { q: self.q, rows })
    }

    pub fn is_invertible(&self) -> bool {
        rank(self.q, &self.rows) == self.n()
    }

    pub fn invert(&self) -> Result<LinearMap> {
        let n = self.n();
        let q = self.q;
        let mut aug: Vec<Vec<u32>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| u32::from(i == j)));
                row
            })
            .collect();
        let cols: Vec<usize> = (0..n).collect();
        let pivots = reduce(q, &mut aug, &cols);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        Ok(LinearMap {
            q,
            rows: aug.into_iter().map(|r| r[n..].to_vec()).collect(),
        })
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n()).map(|i| self.image_of_unit(i).to_string()).collect();
        write!(f, "LinearMap(q={}, [{}])", self.q, rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(q: u32, s: &str) -> FqVector {
        FqVector::parse(q, s).unwrap()
    }

    fn code(q: u32, rows: &[&str]) -> LinearCode {
        let vs: Vec<FqVector> = rows.iter().map(|r| v(q, r)).collect();
        LinearCode::from_vectors(q, vs[0].len(), &vs).unwrap()
    }

    #[test]
    fn rref_examples() {
        let c = code(2, &["1100", "1100"]);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.basis_vectors(), vec![v(2, "1100")]);
        let c = code(2, &["1100", "0110"]);
        assert_eq!(c.basis_vectors(), vec![v(2, "1010"), v(2, "0110")]);
        let c = code(3, &["120"]);
        assert_eq!(c.basis_vectors(), vec![v(3, "120")]);
        let c = code(3, &["210"]);
        assert_eq!(c.basis_vectors(), vec![v(3, "120")]);
    }

    #[test]
    fn rref_rejects_bad_input() {
        assert_eq!(LinearCode::from_rows(4, 2, &[vec![1, 0]]), Err(Error::NotPrime(4)));
        assert!(LinearCode::from_rows(2, 2, &[vec![1, 0, 1]]).is_err());
        assert!(LinearCode::from_rows(2, 2, &[vec![2, 0]]).is_err());
    }

    #[test]
    fn dual_examples() {
        let c1 = code(2, &["1100"]);
        let d = c1.dual();
        assert_eq!(d.dim(), 3);
        for w in ["0011", "1110", "1101", "1100"] {
            assert!(d.contains(&v(2, w)).unwrap());
        }
        assert_eq!(d, code(2, &["1100", "1110", "1101"]));
        assert_eq!(LinearCode::full(2, 4).dual(), LinearCode::zero(2, 4));
        assert_eq!(LinearCode::zero(3, 3).dual(), LinearCode::full(3, 3));

        let c = code(2, &["100010", "101000"]);
        let d = c.dual();
        assert_eq!(d.dim(), 4);
        for a in c.basis_vectors() {
            for b in d.basis_vectors() {
                assert_eq!(a.dot(&b).unwrap(), 0);
            }
        }
    }

    #[test]
    fn dual_over_f3_is_orthogonal() {
        let c = code(3, &["1201", "0112"]);
        let d = c.dual();
        assert_eq!(d.dim(), 2);
        for a in c.basis_vectors() {
            for b in d.basis_vectors() {
                assert_eq!(a.dot(&b).unwrap(), 0);
            }
        }
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn codeword_examples() {
        let words: Vec<String> = code(2, &["1100"]).codewords().unwrap().map(|w| w.to_string()).collect();
        assert_eq!(words, vec!["0000", "1100"]);
        let zero: Vec<FqVector> = LinearCode::zero(2, 3).codewords().unwrap().collect();
        assert_eq!(zero, vec![FqVector::zero(2, 3)]);
        assert_eq!(code(2, &["100", "010"]).codewords().unwrap().count(), 4);
        assert_eq!(code(3, &["120", "011"]).codewords().unwrap().count(), 9);
        assert!(matches!(
            LinearCode::full(2, 25).codewords(),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn map_examples() {
        let id = LinearMap::identity(2, 3);
        assert_eq!(id.apply(&v(2, "101")).unwrap(), v(2, "101"));
        let t = LinearMap::new(2, vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(t.apply(&v(2, "10")).unwrap(), v(2, "11"));
        assert_eq!(t.apply(&v(2, "01")).unwrap(), v(2, "01"));
        let s = LinearMap::new(2, vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert!(!s.is_invertible());
        assert_eq!(s.invert(), Err(Error::Singular));
        assert_eq!(t.invert().unwrap().compose(&t).unwrap(), LinearMap::identity(2, 2));
    }

    #[test]
    fn permutation_maps_units() {
        let p = LinearMap::permutation(3, &[2, 0, 1]);
        assert_eq!(p.apply(&FqVector::unit(3, 3, 0)).unwrap(), FqVector::unit(3, 3, 2));
        assert_eq!(p.apply(&v(3, "120")).unwrap(), v(3, "201"));
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        // [4 choose k]_2 = 1, 15, 35, 15, 1
        let counts: Vec<usize> =
            (0..=4).map(|k| LinearCode::enumerate_all(2, 4, k).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 15, 35, 15, 1]);
        assert_eq!(LinearCode::enumerate_all(3, 3, 1).unwrap().len(), 13);
        let all = LinearCode::enumerate_all(2, 4, 2).unwrap();
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        for c in &all {
            assert_eq!(&LinearCode::from_rows(2, 4, c.basis()).unwrap(), c);
        }
    }

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..20).filter(|&q| is_prime(q)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(inverse(3, 7), 5);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn matrix(q: u32, n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
            proptest::collection::vec(proptest::collection::vec(0..q, n), n)
        }

        proptest! {
            #[test]
            fn inverse_composes_to_identity(
                (q, rows) in (prop::sample::select(vec![2u32, 3, 5]), 1usize..=8)
                    .prop_flat_map(|(q, n)| (Just(q), matrix(q, n)))
            ) {
                let n = rows.len();
                let t = LinearMap::new(q, rows).unwrap();
                if let Ok(inv) = t.invert() {
                    prop_assert_eq!(inv.compose(&t).unwrap(), LinearMap::identity(q, n));
                    prop_assert_eq!(t.compose(&inv).unwrap(), LinearMap::identity(q, n));
                } else {
                    prop_assert!(!t.is_invertible());
                }
            }

            #[test]
            fn double_dual_is_identity(rows in matrix(3, 5)) {
                let c = LinearCode::from_rows(3, 5, &rows).unwrap();
                prop_assert_eq!(c.dual().dim(), 5 - c.dim());
                prop_assert_eq!(c.dual().dual(), c);
            }

            #[test]
            fn codeword_count_is_q_to_the_k(rows in matrix(2, 6)) {
                let c = LinearCode::from_rows(2, 6, &rows).unwrap();
                let words: std::collections::HashSet<FqVector> = c.codewords().unwrap().collect();
                prop_assert_eq!(words.len() as u128, c.size());
                prop_assert_eq!(c.codeword_masks().unwrap().len() as u128, c.size());
            }
        }
    }
}
