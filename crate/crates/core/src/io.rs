//! Text formats for graphs, codes, maps, weight tables and reduced forms, plus
//! the JSON record for enumerators.
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use serde::{Deserialize, Serialize};

use crate::canonical::ReducedForm;
use crate::error::{Error, Result};
use crate::graph::{Digraph, SupportSet};
use crate::linalg::{LinearCode, LinearMap};
use crate::macwilliams::WeightEnumerator;
use crate::metric::WeightTable;

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Self { inner: it.peekable(), last: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        match self.inner.next() {
            Some((no, l)) => {
                self.last = no;
                Ok((no, l.split_whitespace().collect()))
            }
            None => Err(parse_err(self.last + 1, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.inner.next() {
            Some((no, _)) => Err(parse_err(no, "trailing content".into())),
            None => Ok(()),
        }
    }
}

fn parse_err(line: usize, message: String) -> Error {
    Error::Parse { line, message }
}

fn fields<const K: usize>(line: usize, parts: &[&str], what: &str) -> Result<[usize; K]> {
    if parts.len() != K {
        return Err(parse_err(line, format!("expected {K} fields for {what}, found {}", parts.len())));
    }
    let mut out = [0usize; K];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| parse_err(line, format!("`{p}` is not a nonnegative integer")))?;
    }
    Ok(out)
}

fn numbers(line: usize, parts: &[&str], expected: usize) -> Result<Vec<u32>> {
    if parts.len() != expected {
        return Err(parse_err(line, format!("expected {expected} entries, found {}", parts.len())));
    }
    parts
        .iter()
        .map(|p| p.parse().map_err(|_| parse_err(line, format!("`{p}` is not a residue"))))
        .collect()
}

/// `n m`, then `m` lines `u v`.
pub fn parse_graph(text: &str) -> Result<Digraph> {
    let mut lines = Lines::new(text);
    let (no, head) = lines.next("header `n m`")?;
    let [n, m] = fields::<2>(no, &head, "header")?;
    let mut g = Digraph::empty(n);
    for _ in 0..m {
        let (no, parts) = lines.next("an edge")?;
        let [u, v] = fields::<2>(no, &parts, "edge")?;
        if u >= n || v >= n {
            return Err(parse_err(no, Error::VertexOutOfRange { index: u.max(v), n }.to_string()));
        }
        if u == v {
            return Err(parse_err(no, Error::SelfLoop(u).to_string()));
        }
        if g.has_edge(u, v) {
            return Err(parse_err(no, Error::DuplicateEdge(u, v).to_string()));
        }
        g.add_edge(u, v)?;
    }
    lines.finish()?;
    Ok(g)
}

pub fn format_graph(g: &Digraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// `q n k`, then `k` rows of `n` residues. Rows are normalised to RREF.
pub fn parse_code(text: &str) -> Result<LinearCode> {
    let mut lines = Lines::new(text);
    let (no, head) = lines.next("header `q n k`")?;
    let [q, n, k] = fields::<3>(no, &head, "header")?;
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (no, parts) = lines.next("a generator row")?;
        rows.push(numbers(no, &parts, n)?);
    }
    lines.finish()?;
    LinearCode::from_rows(q as u32, n, &rows)
}

pub fn format_code(c: &LinearCode) -> String {
    let mut out = format!("{} {} {}\n", c.q(), c.n(), c.dim());
    for row in c.basis() {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

/// `q n`, then `n` rows; row `i` is the image of `e_i`.
pub fn parse_map(text: &str) -> Result<LinearMap> {
    let mut lines = Lines::new(text);
    let (no, head) = lines.next("header `q n`")?;
    let [q, n] = fields::<2>(no, &head, "header")?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, parts) = lines.next("a matrix row")?;
        rows.push(numbers(no, &parts, n)?);
    }
    lines.finish()?;
    for row in &rows {
        if let Some(&value) = row.iter().find(|&&e| e >= q as u32) {
            return Err(Error::InvalidResidue { value, q: q as u32 });
        }
    }
    LinearMap::new(q as u32, rows)
}

pub fn format_map(t: &LinearMap) -> String {
    let mut out = format!("{} {}\n", t.q(), t.n());
    for row in t.rows() {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

fn join(row: &[u32]) -> String {
    row.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

/// Binary string of length `n`, rightmost character for vertex 0.
pub fn format_mask(n: usize, mask: u64) -> String {
    (0..n).rev().map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Lines `bitmask weight`; every bitmask has the same length `n`.
pub fn parse_weight_table(text: &str) -> Result<WeightTable> {
    let mut table: Option<WeightTable> = None;
    let mut lines = Lines::new(text);
    while lines.inner.peek().is_some() {
        let (no, parts) = lines.next("an entry")?;
        if parts.len() != 2 {
            return Err(parse_err(no, format!("expected `bitmask weight`, found {} fields", parts.len())));
        }
        let bits = parts[0];
        if bits.len() > 64 || bits.chars().any(|c| c != '0' && c != '1') {
            return Err(parse_err(no, format!("`{bits}` is not a bitmask of length <= 64")));
        }
        let t = table.get_or_insert_with(|| WeightTable::new(bits.len()));
        if bits.len() != t.n() {
            return Err(parse_err(no, format!("bitmask length {} differs from {}", bits.len(), t.n())));
        }
        let mask = bits.chars().rev().enumerate().filter(|(_, c)| *c == '1').fold(0u64, |m, (i, _)| m | 1 << i);
        let weight: usize =
            parts[1].parse().map_err(|_| parse_err(no, format!("`{}` is not a weight", parts[1])))?;
        if t.get_mask(mask).is_some() {
            return Err(parse_err(no, format!("support {bits} listed twice")));
        }
        t.insert_mask(mask, weight);
    }
    table.ok_or_else(|| parse_err(1, "empty weight table".into()))
}

pub fn format_weight_table(t: &WeightTable) -> String {
    t.masks().map(|(m, w)| format!("{} {w}\n", format_mask(t.n(), m))).collect()
}

/// Entries of a certificate, in table format.
pub fn format_entries(n: usize, entries: &[(SupportSet, usize)]) -> String {
    entries
        .iter()
        .map(|(s, w)| format!("{} {w}\n", format_mask(n, s.to_mask().expect("n <= 64"))))
        .collect()
}

/// `m h`; `m` lines `v L level`; `edges e` and `e` lines `u v`; `pi n` and
/// `n` lines `i π(i)`.
pub fn format_reduced_form(r: &ReducedForm) -> String {
    let mut out = format!("{} {}\n", r.m(), r.height());
    for a in 0..r.m() {
        out.push_str(&format!("{a} {} {}\n", r.weights()[a], r.levels()[a]));
    }
    out.push_str(&format!("edges {}\n", r.hasse().edge_count()));
    for (u, v) in r.hasse().edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out.push_str(&format!("pi {}\n", r.n()));
    for (i, p) in r.pi().iter().enumerate() {
        out.push_str(&format!("{i} {p}\n"));
    }
    out
}

pub fn parse_reduced_form(text: &str) -> Result<ReducedForm> {
    let mut lines = Lines::new(text);
    let (no, head) = lines.next("header `m h`")?;
    let [m, h] = fields::<2>(no, &head, "header")?;
    let mut weights = vec![0; m];
    let mut levels = vec![0; m];
    for expected in 0..m {
        let (no, parts) = lines.next("a vertex line")?;
        let [v, l, level] = fields::<3>(no, &parts, "vertex")?;
        if v != expected {
            return Err(parse_err(no, format!("vertex {expected} expected, found {v}")));
        }
        weights[v] = l;
        levels[v] = level;
    }
    let labelled = |lines: &mut Lines, label: &str| -> Result<usize> {
        let (no, parts) = lines.next(label)?;
        if parts.len() != 2 || parts[0] != label {
            return Err(parse_err(no, format!("expected `{label} <count>`")));
        }
        parts[1].parse().map_err(|_| parse_err(no, format!("bad {label} count")))
    };
    let e = labelled(&mut lines, "edges")?;
    let mut hasse = Digraph::empty(m);
    for _ in 0..e {
        let (no, parts) = lines.next("a Hasse edge")?;
        let [u, v] = fields::<2>(no, &parts, "edge")?;
        if u >= m || v >= m || u == v || hasse.has_edge(u, v) {
            return Err(parse_err(no, format!("invalid Hasse edge {u} {v}")));
        }
        hasse.add_edge(u, v)?;
    }
    let n = labelled(&mut lines, "pi")?;
    let mut pi = vec![0; n];
    for expected in 0..n {
        let (no, parts) = lines.next("a projection line")?;
        let [i, p] = fields::<2>(no, &parts, "projection")?;
        if i != expected {
            return Err(parse_err(no, format!("vertex {expected} expected, found {i}")));
        }
        pi[i] = p;
    }
    lines.finish()?;
    ReducedForm::from_parts(n, hasse, weights, pi, levels, h)
}

/// `{"coeffs":[…],"q":…,"n":…}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratorRecord {
    pub coeffs: Vec<u64>,
    pub q: u32,
    pub n: usize,
}

impl EnumeratorRecord {
    pub fn new(w: &WeightEnumerator, q: u32) -> Self {
        Self { coeffs: w.coeffs.clone(), q, n: w.coeffs.len().saturating_sub(1) }
    }

    pub fn enumerator(&self) -> WeightEnumerator {
        WeightEnumerator { coeffs: self.coeffs.clone() }
    }
}

pub fn format_enumerator_json(w: &WeightEnumerator, q: u32) -> String {
    serde_json::to_string(&EnumeratorRecord::new(w, q)).expect("plain data serialises")
}

pub fn parse_enumerator_json(text: &str) -> Result<EnumeratorRecord> {
    let rec: EnumeratorRecord =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    if rec.coeffs.len() != rec.n + 1 {
        return Err(Error::DimensionMismatch { expected: rec.n + 1, found: rec.coeffs.len() });
    }
    Ok(rec)
}

/// A vertex set written as `0,2,5` (braces optional, empty for `∅`).
pub fn parse_support(text: &str) -> Result<SupportSet> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| parse_err(1, format!("`{s}` is not a vertex index"))))
        .collect()
}
