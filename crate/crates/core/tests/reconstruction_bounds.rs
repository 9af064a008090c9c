use std::collections::HashSet;

use graphmetric::canonical::expanded_form;
use graphmetric::metric::MaskMetric;
use graphmetric::reconstruction::{certificate, m_bounds};
use graphmetric::Digraph;

/// Weight tables of every metric on `n` vertices.
fn metric_tables(n: usize) -> Vec<Vec<u32>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in Digraph::all(n) {
        if seen.insert(expanded_form(&g).code()) {
            out.push(MaskMetric::new(&g).unwrap().table().unwrap());
        }
    }
    out
}

/// Whether the weights on `supports` single out table `t` among `tables`.
fn pins_down(tables: &[Vec<u32>], t: &[u32], supports: &[usize]) -> bool {
    tables.iter().filter(|u| supports.iter().all(|&s| u[s] == t[s])).count() == 1
}

fn subsets(items: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    if items < size {
        return vec![];
    }
    let mut out = subsets(items - 1, size);
    for mut s in subsets(items - 1, size - 1) {
        s.push(items - 1);
        out.push(s);
    }
    out
}

#[test]
fn fewest_weights_needed_is_n() {
    // a single vertex carries only one metric, so it needs no weight at all
    assert_eq!(metric_tables(1).len(), 1);
    for n in 2..=4 {
        let tables = metric_tables(n);
        let nonempty = (1usize << n) - 1;
        let shift = |s: Vec<usize>| s.into_iter().map(|i| i + 1).collect::<Vec<_>>();
        // no metric is fixed by fewer than n weights
        for s in subsets(nonempty, n - 1).into_iter().map(shift) {
            assert!(tables.iter().all(|t| !pins_down(&tables, t, &s)), "n={n} supports {s:?}");
        }
        // and some metric is fixed by n of them
        let best = subsets(nonempty, n)
            .into_iter()
            .map(shift)
            .any(|s| tables.iter().any(|t| pins_down(&tables, t, &s)));
        assert!(best, "n={n}");
        assert_eq!(m_bounds(n).min, n);
    }
}

#[test]
fn certificates_respect_the_upper_bound() {
    for n in 1..=4 {
        for g in Digraph::all(n) {
            assert!(certificate(&g).len() <= m_bounds(n).max_upper);
        }
    }
}
