//! Acceptance suite: twelve criteria, one line each.
//!
//! Runs without the libtest harness so that every criterion reports even when
//! an earlier one fails. The process exits non-zero if any criterion fails.

use std::collections::{HashMap, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use graphmetric::canonical::{expanded_form, reduced_form};
use graphmetric::codes::{
    canonical_decomposition, is_level_split, non_decomposable_witness, packing_radius_bruteforce,
    packing_radius_formula,
};
use graphmetric::isometry::{group_order, is_isometry};
use graphmetric::macwilliams::{
    character_sum, dual_enumerator_1level, extends, extension_check, extension_predicted, identity_check,
    identity_predicted, p_closed_form, udp_check, weight_enumerator,
};
use graphmetric::metric::{g_weight_reduced, MaskMetric, WeightTable};
use graphmetric::oracle::{naive_isometry_count, naive_packing_radius, naive_same_metric, naive_table};
use graphmetric::reconstruction::{
    certificate, infer_from_weight12, lower_bound_witness, recover_matching_weights, verify_certificate, WeightOracle,
};
use graphmetric::{is_hierarchical, same_metric, Digraph, Error, FqVector, LinearCode, Prediction, SupportSet};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn code(words: &[&str]) -> LinearCode {
    let vs: Vec<FqVector> = words.iter().map(|w| FqVector::parse(2, w).unwrap()).collect();
    LinearCode::from_vectors(2, vs[0].len(), &vs).unwrap()
}

fn pair4() -> Digraph {
    Digraph::from_edges(4, [(2, 3), (3, 2)]).unwrap()
}

fn prx3() -> Digraph {
    Digraph::from_edges(3, [(2, 0)]).unwrap()
}

fn six() -> Digraph {
    Digraph::from_edges(6, [(0, 1), (1, 0), (2, 3), (3, 2), (4, 5), (5, 4)]).unwrap()
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Digraph {
    let p: f64 = rng.gen_range(0.05..0.7);
    let mut g = Digraph::empty(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn random_code(rng: &mut ChaCha8Rng, n: usize, max_dim: usize) -> LinearCode {
    let k = rng.gen_range(1..=max_dim.min(n));
    loop {
        let masks: Vec<u64> = (0..k).map(|_| rng.gen_range(1..1u64 << n)).collect();
        let c = LinearCode::from_masks(n, &masks);
        if c.dim() > 0 {
            return c;
        }
    }
}

/// Every expanded form on `n` vertices, once each.
fn expanded_forms(n: usize) -> Vec<Digraph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in Digraph::all(n) {
        let e = expanded_form(&g);
        if seen.insert(e.code()) {
            out.push(e);
        }
    }
    out
}

/// Partitions of `total` into parts drawn from `parts`, in nonincreasing order.
fn partitions(total: usize, max_part: usize, parts: &[usize]) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for &p in parts.iter().filter(|&&p| p <= max_part.min(total)) {
        for mut rest in partitions(total - p, p, parts) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

/// Level structures (clique sizes per level, lowest level first) on at most
/// `max_n` vertices.
fn level_structures(max_n: usize, parts: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn extend(budget: usize, parts: &[usize], prefix: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        for used in 1..=budget {
            for level in partitions(used, used, parts) {
                prefix.push(level);
                out.push(prefix.clone());
                extend(budget - used, parts, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(max_n, parts, &mut Vec::new(), &mut out);
    out
}

/// Cliques per level, every vertex pointing at every vertex one level down,
/// then randomly relabelled.
fn hierarchical_graph(levels: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Digraph {
    let n: usize = levels.iter().flatten().sum();
    let mut g = Digraph::empty(n);
    let mut next = 0;
    let mut below: Vec<usize> = Vec::new();
    for level in levels {
        let mut here = Vec::new();
        for &size in level {
            let clique: Vec<usize> = (next..next + size).collect();
            next += size;
            for &u in &clique {
                for &v in &clique {
                    if u != v {
                        g.add_edge(u, v).unwrap();
                    }
                }
                for &v in &below {
                    g.add_edge(u, v).unwrap();
                }
            }
            here.extend(clique);
        }
        below = here;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    g.relabel(&perm).unwrap()
}

// 1
fn golden_counterexample() -> Outcome {
    let g = pair4();
    let c1 = code(&["1100"]);
    let c2 = code(&["0011"]);
    let w1 = ok(weight_enumerator(&g.reverse(), &c1.dual()))?;
    let w2 = ok(weight_enumerator(&g.reverse(), &c2.dual()))?;
    ensure!(w1.coeffs == [1, 0, 4, 0, 3], "C1 dual enumerator {:?}", w1.coeffs);
    ensure!(w2.coeffs == [1, 2, 2, 2, 1], "C2 dual enumerator {:?}", w2.coeffs);
    let witness = ok(identity_check(&g, 2))?;
    ensure!(witness == Some((c1, c2)), "witness {witness:?}");
    Ok("1+4X^2+3X^4 vs 1+2X+2X^2+2X^3+X^4, witness (1100, 0011)".into())
}

// 2
fn packing_radius_example() -> Outcome {
    let g = prx3();
    let r1 = ok(packing_radius_bruteforce(&g, &code(&["110"])))?;
    let r2 = ok(packing_radius_bruteforce(&g, &code(&["001"])))?;
    ensure!((r1, r2) == (0, 1), "radii {r1} {r2}");
    for c in [code(&["110"]), code(&["001"])] {
        let f = packing_radius_formula(&g, &c);
        ensure!(matches!(f, Err(Error::NotApplicable(_))), "formula gave {f:?}");
    }
    Ok("R(C1)=0, R(C2)=1, formula not applicable".into())
}

// 3
fn canonical_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..1000 {
        let n = rng.gen_range(1..=7);
        let g = random_graph(&mut rng, n);
        let t = ok(MaskMetric::new(&g).and_then(|m| m.table()))?;
        let te = ok(MaskMetric::new(&expanded_form(&g)).and_then(|m| m.table()))?;
        let r = reduced_form(&g);
        for mask in 0..1u64 << n {
            let wr = ok(g_weight_reduced(&r, &SupportSet::from_mask(mask)))?;
            let w = t[mask as usize] as usize;
            ensure!(
                w == te[mask as usize] as usize && w == wr,
                "trial {trial}: {g:?} support {mask:b}"
            );
        }
    }
    Ok("1000 graphs agree on every support".into())
}

// 4
fn canonical_completeness() -> Outcome {
    let mut by_table: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut by_form: HashMap<u64, Vec<u32>> = HashMap::new();
    for g in Digraph::all(4) {
        let t = ok(MaskMetric::new(&g).and_then(|m| m.table()))?;
        let e = expanded_form(&g).code();
        let prev = by_table.entry(t.clone()).or_insert(e);
        ensure!(*prev == e, "equal tables, different expanded forms: {g:?}");
        let prev = by_form.entry(e).or_insert(t.clone());
        ensure!(*prev == t, "equal expanded forms, different tables: {g:?}");
    }
    ensure!(by_table.len() == by_form.len(), "class counts differ");
    Ok(format!("4096 graphs, {} metrics", by_table.len()))
}

// 5
fn reconstruction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let g = random_graph(&mut rng, n);
        let mut oracle = ok(WeightOracle::from_graph(&g))?;
        let h = ok(infer_from_weight12(&mut oracle))?;
        ensure!(h == expanded_form(&g), "wrong reconstruction of {g:?}");
        ensure!(oracle.queries() == n + n * (n - 1) / 2, "{} queries for n = {n}", oracle.queries());

        let full = ok(WeightTable::full(&g))?;
        let mut partial = WeightTable::new(n);
        for (mask, w) in full.masks().filter(|(m, _)| (1..=2).contains(&m.count_ones())) {
            partial.insert_mask(mask, w);
        }
        let expected = partial.clone();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        for pair in order.chunks_exact(2) {
            if rng.gen_bool(0.8) {
                partial.remove(&SupportSet::from_iter([pair[0], pair[1]]));
            }
        }
        let recovered = ok(recover_matching_weights(&partial))?;
        ensure!(recovered == expected, "matching recovery failed on {g:?}");
    }
    for n in 4..=6 {
        let (g1, g2, s1, s2) = ok(lower_bound_witness(n))?;
        let (t1, t2) = (ok(WeightTable::full(&g1))?, ok(WeightTable::full(&g2))?);
        let differing: HashSet<u64> = t1
            .masks()
            .filter(|(m, w)| m.count_ones() <= 2 && t2.get_mask(*m) != Some(*w))
            .map(|(m, _)| m)
            .collect();
        let predicted = HashSet::from([s1.to_mask().unwrap(), s2.to_mask().unwrap()]);
        ensure!(differing == predicted, "n = {n}: differing supports {differing:?}");
    }
    Ok("1000 reconstructions, matching recovery, lower-bound pairs n=4..6".into())
}

// 6
fn certificates() -> Outcome {
    let mut count = 0;
    for n in 1..=4 {
        for g in Digraph::all(n) {
            let cert = certificate(&g);
            ensure!(cert.len() < 2 * n, "{} entries for {g:?}", cert.len());
            ensure!(ok(verify_certificate(&cert, n))?, "certificate not unique for {g:?}");
            count += 1;
        }
    }
    Ok(format!("{count} graphs, all certificates unique"))
}

// 7
fn isometry_group() -> Outcome {
    let mut mismatches = Vec::new();
    let mut exact_ok = 0;
    for g in Digraph::all(3) {
        let brute = ok(naive_isometry_count(&g, 2))?;
        let o = ok(group_order(&g, 2))?;
        if o.order == brute {
            exact_ok += 1;
        }
        if o.product != brute {
            mismatches.push((g, brute, o.product));
        }
    }
    ensure!(
        mismatches.is_empty(),
        "|Aut|*|N| differs from the brute-force count on {} of 64 graphs (e.g. {:?}: {} vs {}); \
         exact order matches on {exact_ok} of 64",
        mismatches.len(),
        mismatches[0].0,
        mismatches[0].1,
        mismatches[0].2
    );
    Ok("|Aut|*|N| equals the brute-force count on all 64 graphs".into())
}

fn binary_rank(rows: &[u64]) -> usize {
    let mut rows = rows.to_vec();
    let mut rank = 0;
    for bit in 0..64 {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i] >> bit & 1 == 1 {
                rows[i] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

fn apply(rows: &[u64], x: u64) -> u64 {
    (0..rows.len()).filter(|i| x >> i & 1 == 1).fold(0, |acc, i| acc ^ rows[i])
}

/// Images of `word` under every weight-preserving invertible matrix.
fn isometry_orbit(g: &Digraph, word: u64) -> Vec<u64> {
    let n = g.n();
    let table = MaskMetric::new(g).unwrap().table().unwrap();
    let mut orbit = HashSet::new();
    for code in 0u64..1 << (n * n) {
        let rows: Vec<u64> = (0..n).map(|i| code >> (i * n) & ((1 << n) - 1)).collect();
        if binary_rank(&rows) < n {
            continue;
        }
        if (0..1u64 << n).all(|x| table[x as usize] == table[apply(&rows, x) as usize]) {
            orbit.insert(apply(&rows, word));
        }
    }
    orbit.into_iter().collect()
}

// 8
fn decomposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut hierarchical = 0;
    let mut witnesses = 0;
    for n in 1..=5 {
        for g in expanded_forms(n) {
            let r = reduced_form(&g);
            if !is_hierarchical(&r) {
                if n <= 4 {
                    let w = non_decomposable_witness(&g).ok_or(format!("no witness for {g:?}"))?;
                    let word = w.basis_masks()[0];
                    for image in isometry_orbit(&g, word) {
                        let c = LinearCode::from_masks(n, &[image]);
                        ensure!(!is_level_split(&r, &c), "witness for {g:?} maps to a split code");
                    }
                    witnesses += 1;
                }
                continue;
            }
            hierarchical += 1;
            for _ in 0..200 {
                let c = random_code(&mut rng, n, n);
                let d = ok(canonical_decomposition(&g, &c))?;
                ensure!(ok(is_isometry(&g, &d.isometry))?, "witness is not an isometry");
                let image = ok(c.image(&d.isometry))?;
                ensure!(image == d.sum(), "components do not sum to the image");
                let dims: usize = d.components.iter().map(LinearCode::dim).sum();
                ensure!(dims == c.dim(), "components are not independent");
                for (i, comp) in d.components.iter().enumerate() {
                    ensure!(
                        comp.support().is_subset(&r.original_level_set(i + 1)),
                        "component {} leaves its level",
                        i + 1
                    );
                }
            }
        }
    }
    Ok(format!("{hierarchical} hierarchical metrics x 200 codes, {witnesses} non-decomposable witnesses"))
}

// 9
fn packing_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut classes = 0;
    for levels in level_structures(7, &[1, 2, 3, 4, 5, 6, 7]) {
        if levels.iter().any(|l| l.iter().any(|&s| s != l[0])) {
            continue;
        }
        classes += 1;
        let g = hierarchical_graph(&levels, &mut rng);
        for _ in 0..100 {
            let c = random_code(&mut rng, g.n(), 3);
            let f = ok(packing_radius_formula(&g, &c))?;
            let b = ok(packing_radius_bruteforce(&g, &c))?;
            ensure!(f == b, "{levels:?} {g:?} {c:?}: formula {f}, brute force {b}");
        }
    }
    Ok(format!("{classes} graph classes x 100 codes"))
}

fn same_prediction(p: Prediction, holds: bool) -> bool {
    matches!((p, holds), (Prediction::Holds, true) | (Prediction::Fails, false))
}

// 10
fn macwilliams_theorems() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut identity_classes = 0;
    let mut fails = 0;
    for levels in level_structures(5, &[1, 2, 3, 4, 5]) {
        let g = hierarchical_graph(&levels, &mut rng);
        let holds = ok(identity_check(&g, 2))?.is_none();
        ensure!(same_prediction(ok(identity_predicted(&g))?, holds), "identity on {levels:?}: check {holds}");
        identity_classes += 1;
        fails += usize::from(!holds);
    }
    let mut extension_classes = 0;
    for levels in level_structures(6, &[1, 2]) {
        let g = hierarchical_graph(&levels, &mut rng);
        let holds = ok(extension_check(&g, 2))?.is_none();
        ensure!(same_prediction(ok(extension_predicted(&g))?, holds), "extension on {levels:?}: check {holds}");
        if holds {
            ensure!(ok(identity_check(&g, 2))?.is_none(), "extension without identity on {levels:?}");
        }
        extension_classes += 1;
    }
    let g = six();
    ensure!(ok(identity_check(&g, 2))?.is_none(), "identity fails on the six-vertex graph");
    ensure!(ok(extension_check(&g, 2))?.is_some(), "extension holds on the six-vertex graph");
    let v = |s: &str| FqVector::parse(2, s).unwrap();
    let from = [v("100010"), v("101000")];
    let to = [v("010010"), v("110011")];
    let table = MaskMetric::new(&g).unwrap();
    for sel in 1u64..4 {
        let pick = |ws: &[FqVector]| {
            (0..2).filter(|i| sel >> i & 1 == 1).fold(0u64, |acc, i| acc ^ ws[i].support_mask())
        };
        ensure!(table.weight(pick(&from)) == table.weight(pick(&to)), "map is not weight-preserving");
    }
    ensure!(!ok(extends(&g, &from, &to))?, "the six-vertex map extends");
    Ok(format!(
        "{identity_classes} identity classes ({fails} failing), {extension_classes} extension classes, \
         six-vertex gap confirmed"
    ))
}

// 11
fn character_sums() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0u64;
    for n in 1..=8 {
        for sizes in partitions(n, n, &(1..=n).collect::<Vec<_>>()) {
            let g = hierarchical_graph(&[sizes], &mut rng);
            let r = reduced_form(&g);
            let xs: Vec<FqVector> = (0..200).map(|_| FqVector::from_mask(n, rng.gen_range(0..1u64 << n))).collect();
            for sel in 0u64..1 << r.m() {
                let jc: SupportSet = (0..r.m()).filter(|a| sel >> a & 1 == 1).flat_map(|a| r.class(a).iter().collect::<Vec<_>>()).collect();
                for x in &xs {
                    let direct = ok(character_sum(&g, x, &jc))?;
                    let closed = ok(p_closed_form(&g, x, &jc))?;
                    ensure!(direct == closed, "{g:?} x={x} J^c={jc}: {direct} vs {closed}");
                    checked += 1;
                }
            }
        }
    }
    let mut pairs = 0;
    while pairs < 100 {
        let n = rng.gen_range(1..=8);
        let all = partitions(n, n, &(1..=n).collect::<Vec<_>>());
        let sizes = all.choose(&mut rng).unwrap().clone();
        let g = hierarchical_graph(&[sizes], &mut rng);
        if ok(udp_check(&reduced_form(&g)))?.is_some() {
            continue;
        }
        let c = if rng.gen_bool(0.1) { LinearCode::zero(2, n) } else { random_code(&mut rng, n, n) };
        let w = ok(weight_enumerator(&g, &c))?;
        let transformed = ok(dual_enumerator_1level(&g, &w, c.size() as u64))?;
        let direct = ok(weight_enumerator(&g.reverse(), &c.dual()))?;
        ensure!(transformed == direct, "{g:?} {c:?}: {:?} vs {:?}", transformed.coeffs, direct.coeffs);
        pairs += 1;
    }
    Ok(format!("{checked} character sums, 100 dual enumerators"))
}

// 12
fn property_suite() -> Outcome {
    for n in 1..=4 {
        for g in Digraph::all(n) {
            let t = ok(MaskMetric::new(&g).and_then(|m| m.table()))?;
            let size = 1usize << n;
            for x in 0..size {
                ensure!((t[x] == 0) == (x == 0), "definiteness on {g:?}");
                for y in 0..size {
                    for z in 0..size {
                        ensure!(t[x ^ y] <= t[x ^ z] + t[z ^ y], "triangle inequality on {g:?}");
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let g = random_graph(&mut rng, n);
        let m = MaskMetric::new(&g).unwrap();
        let (a, b) = (rng.gen_range(0..1u64 << n), rng.gen_range(0..1u64 << n));
        let (ca, cb) = (m.closure(a), m.closure(b));
        ensure!(a & !ca == 0 && m.closure(ca) == ca, "extensive/idempotent on {g:?}");
        if a & !b == 0 {
            ensure!(ca & !cb == 0, "monotone on {g:?}");
        }
        ensure!(m.closure(a | b) == ca | cb, "union law on {g:?}");

        let x: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        let y: Vec<u32> = x.iter().map(|&e| if e == 0 { 0 } else { rng.gen_range(1..3) }).collect();
        let (x, y) = (FqVector::new(3, x).unwrap(), FqVector::new(3, y).unwrap());
        ensure!(
            graphmetric::g_weight(&g, &x).unwrap() == graphmetric::g_weight(&g, &y).unwrap(),
            "ternary weight depends on more than the support"
        );

        let naive = ok(naive_table(&g))?;
        ensure!(
            (0..1u64 << n).all(|s| naive.weights[s as usize] == m.weight(s) as usize),
            "oracle table disagrees on {g:?}"
        );
        if n <= 6 {
            let c = random_code(&mut rng, n, 3);
            ensure!(
                ok(naive_packing_radius(&g, &c))? == ok(packing_radius_bruteforce(&g, &c))?,
                "oracle packing radius disagrees on {g:?} {c:?}"
            );
        }
    }
    let graphs: Vec<Digraph> = Digraph::all(3).collect();
    for a in &graphs {
        for b in &graphs {
            ensure!(ok(same_metric(a, b))? == ok(naive_same_metric(a, b))?, "same-metric disagrees");
        }
        ensure!(ok(group_order(a, 2))?.order == ok(naive_isometry_count(a, 2))?, "group order disagrees on {a:?}");
    }
    Ok("metric axioms n<=4, closure laws, ternary supports, oracle agreement".into())
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

const fn criterion(name: &'static str, secs: u64, run: fn() -> Outcome) -> Criterion {
    Criterion { name, limit: Duration::from_secs(secs), run }
}

const CRITERIA: [Criterion; 12] = [
    criterion("golden counterexample", 1, golden_counterexample),
    criterion("packing radius example", 1, packing_radius_example),
    criterion("canonical-form soundness", 30, canonical_soundness),
    criterion("canonical-form completeness", 60, canonical_completeness),
    criterion("reconstruction", 30, reconstruction),
    criterion("certificates", 300, certificates),
    criterion("isometry group order", 60, isometry_group),
    criterion("canonical decomposition", 300, decomposition),
    criterion("packing-radius formula", 300, packing_formula),
    criterion("MacWilliams theorems", 600, macwilliams_theorems),
    criterion("character sums", 60, character_sums),
    criterion("property suite", 120, property_suite),
];

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > c.limit => Err(format!("took {elapsed:.2?}, limit {:?} ({detail})", c.limit)),
            other => other,
        };
        let (status, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {status} {} [{elapsed:.2?}]: {detail}", i + 1, c.name);
        failed += usize::from(result.is_err());
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
