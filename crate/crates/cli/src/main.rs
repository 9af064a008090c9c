//! `graphmetric`: command-line access to graph-metric analyses.
//!
//! Exit status: 0 when the property holds or the computation finished, 1 when
//! the property fails (a witness is printed), 2 on input or guard errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use graphmetric::codes::{
    canonical_decomposition, min_distance, non_decomposable_witness, packing_radius_bruteforce,
    packing_radius_formula,
};
use graphmetric::io::{
    format_code, format_entries, format_graph, format_map, format_mask, format_reduced_form,
    format_weight_table, parse_code, parse_graph, parse_map, parse_weight_table, EnumeratorRecord,
};
use graphmetric::isometry::{decompose_isometry, group_order, is_isometry};
use graphmetric::macwilliams::{
    extension_check, extension_predicted, identity_check, identity_predicted, omega_check, udp_check,
    weight_enumerator, Prediction,
};
use graphmetric::reconstruction::{
    certificate, infer_from_weight12, recover_matching_weights, verify_certificate, WeightOracle,
};
use graphmetric::{
    expanded_form, isomorphic_metrics, reduced_form, Digraph, Error, FqVector, LinearCode, LinearMap,
    ReducedForm, WeightTable,
};

#[derive(Parser)]
#[command(name = "graphmetric", version, about = "Metrics on F_q^n induced by directed graphs")]
struct Cli {
    /// Emit machine-readable JSON records.
    #[arg(long, global = true)]
    json: bool,

    /// Refuse enumerations of more than about 2^EXP steps.
    #[arg(long, global = true, value_name = "EXP", default_value_t = 24,
          value_parser = clap::value_parser!(u32).range(1..=48))]
    max_exponent: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// G-weight of a word (digits, first digit is coordinate 0).
    Weight {
        graph: PathBuf,
        word: String,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Full weight table.
    Table { graph: PathBuf },
    /// Expanded or reduced canonical form.
    #[command(group(ArgGroup::new("form").required(true).args(["expanded", "reduced"])))]
    Canon {
        graph: PathBuf,
        #[arg(long)]
        expanded: bool,
        #[arg(long)]
        reduced: bool,
    },
    /// Whether two graphs define the same metric.
    SameMetric { first: PathBuf, second: PathBuf },
    /// Whether two graph metrics are isomorphic.
    Isomorphic { first: PathBuf, second: PathBuf },
    /// Rebuild a graph from singleton and pair weights (a matching of pairs may be missing).
    Reconstruct { table: PathBuf },
    /// Weight list that pins down the metric.
    Certificate {
        graph: PathBuf,
        /// Check uniqueness against every metric on n <= 5 vertices.
        #[arg(long)]
        verify: bool,
    },
    /// Whether a linear map preserves every G-weight.
    IsometryCheck { graph: PathBuf, map: PathBuf },
    /// Split an isometry into permutation and domination-respecting parts.
    DecomposeIsometry { graph: PathBuf, map: PathBuf },
    /// Sizes of the isometry group and its factors.
    GroupOrder {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Canonical decomposition of a code.
    CodeDecompose { graph: PathBuf, code: PathBuf },
    /// Minimum G-distance of a code.
    MinDistance { graph: PathBuf, code: PathBuf },
    /// Packing radius of a code.
    #[command(group(ArgGroup::new("method").args(["formula", "brute"])))]
    PackingRadius {
        graph: PathBuf,
        code: PathBuf,
        #[arg(long)]
        formula: bool,
        #[arg(long)]
        brute: bool,
    },
    /// G-weight enumerator of a code.
    Enumerator {
        graph: PathBuf,
        code: PathBuf,
        /// Enumerate the dual code under the reverse graph instead.
        #[arg(long)]
        dual: bool,
    },
    /// Unique decomposition property.
    Udp { graph: PathBuf },
    /// Condition Ω.
    Omega { graph: PathBuf },
    /// Exhaustive MacWilliams identity check over binary codes.
    MacwilliamsCheck {
        graph: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
    /// Exhaustive extension-property check over binary codes.
    ExtensionCheck {
        graph: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
}

/// What a subcommand reports: text for people, a record for machines, and
/// whether the property held.
struct Report {
    text: String,
    record: Value,
    holds: bool,
}

impl Report {
    fn done(text: String, record: Value) -> Self {
        Self { text, record, holds: true }
    }

    fn verdict(holds: bool, text: String, record: Value) -> Self {
        Self { text, record, holds }
    }
}

#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<Report, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> std::result::Result<Digraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path, n: usize) -> std::result::Result<LinearCode, Failure> {
    let c = parse_code(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    if c.n() != n {
        return Err(Failure(format!("{}: code length {} but graph has {n} vertices", path.display(), c.n())));
    }
    Ok(c)
}

fn load_map(path: &Path, n: usize) -> std::result::Result<LinearMap, Failure> {
    let t = parse_map(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    if t.n() != n {
        return Err(Failure(format!("{}: map size {} but graph has {n} vertices", path.display(), t.n())));
    }
    Ok(t)
}

fn load_table(path: &Path) -> std::result::Result<WeightTable, Failure> {
    parse_weight_table(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn edges_json(g: &Digraph) -> Value {
    json!(g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>())
}

fn graph_json(g: &Digraph) -> Value {
    json!({"n": g.n(), "edges": edges_json(g)})
}

fn reduced_json(r: &ReducedForm) -> Value {
    json!({
        "m": r.m(),
        "h": r.height(),
        "weights": r.weights(),
        "levels": r.levels(),
        "edges": edges_json(r.hasse()),
        "pi": r.pi(),
    })
}

fn code_json(c: &LinearCode) -> Value {
    json!({"q": c.q(), "n": c.n(), "basis": c.basis()})
}

fn map_json(t: &LinearMap) -> Value {
    json!({"q": t.q(), "n": t.n(), "rows": t.rows()})
}

fn prediction_str(p: Prediction) -> &'static str {
    match p {
        Prediction::Holds => "holds",
        Prediction::Fails => "fails",
        Prediction::Undetermined => "undetermined",
    }
}

/// Rough log2 of the work a command is about to do, checked against the limit.
struct Guard(u32);

impl Guard {
    fn check(&self, what: &str, log2: f64) -> std::result::Result<(), Failure> {
        if log2 > self.0 as f64 {
            return Err(Failure(format!(
                "{what} needs about 2^{} steps, above --max-exponent {}",
                log2.ceil(),
                self.0
            )));
        }
        Ok(())
    }
}

fn words_log2(q: u32, k: usize) -> f64 {
    (q as f64).log2() * k as f64
}

fn run(cmd: Command, guard: &Guard) -> Outcome {
    match cmd {
        Command::Weight { graph, word, q } => {
            let g = load_graph(&graph)?;
            let x = FqVector::parse(q, &word)?;
            let w = graphmetric::g_weight(&g, &x)?;
            Ok(Report::done(format!("{w}\n"), json!({"weight": w})))
        }
        Command::Table { graph } => {
            let g = load_graph(&graph)?;
            guard.check("the weight table", g.n() as f64)?;
            let t = WeightTable::full(&g)?;
            let entries: Vec<Value> = t
                .masks()
                .map(|(m, w)| json!({"support": format_mask(t.n(), m), "weight": w}))
                .collect();
            Ok(Report::done(format_weight_table(&t), json!({"n": t.n(), "entries": entries})))
        }
        Command::Canon { graph, expanded, reduced: _ } => {
            let g = load_graph(&graph)?;
            if expanded {
                let e = expanded_form(&g);
                Ok(Report::done(format_graph(&e), graph_json(&e)))
            } else {
                let r = reduced_form(&g);
                Ok(Report::done(format_reduced_form(&r), reduced_json(&r)))
            }
        }
        Command::SameMetric { first, second } => {
            let (g1, g2) = (load_graph(&first)?, load_graph(&second)?);
            if g1.n() != g2.n() {
                return Err(Failure(format!("graphs have {} and {} vertices", g1.n(), g2.n())));
            }
            let (e1, e2) = (expanded_form(&g1), expanded_form(&g2));
            let only_first: Vec<(usize, usize)> = e1.edges().filter(|&(u, v)| !e2.has_edge(u, v)).collect();
            let only_second: Vec<(usize, usize)> = e2.edges().filter(|&(u, v)| !e1.has_edge(u, v)).collect();
            let same = only_first.is_empty() && only_second.is_empty();
            let text = if same {
                "same metric\n".to_string()
            } else {
                let mut t = "different metrics\n".to_string();
                for (u, v) in &only_first {
                    t.push_str(&format!("{u} dominates {v} only in the first graph\n"));
                }
                for (u, v) in &only_second {
                    t.push_str(&format!("{u} dominates {v} only in the second graph\n"));
                }
                t
            };
            Ok(Report::verdict(
                same,
                text,
                json!({"same": same, "only_first": only_first, "only_second": only_second}),
            ))
        }
        Command::Isomorphic { first, second } => {
            let (g1, g2) = (load_graph(&first)?, load_graph(&second)?);
            let witness = isomorphic_metrics(&g1, &g2)?;
            let text = match &witness {
                Some(map) => format!(
                    "isomorphic\nreduced vertex map {}\n",
                    map.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
                ),
                None => "not isomorphic\n".to_string(),
            };
            Ok(Report::verdict(
                witness.is_some(),
                text,
                json!({"isomorphic": witness.is_some(), "map": witness}),
            ))
        }
        Command::Reconstruct { table } => {
            let t = load_table(&table)?;
            let completed = recover_matching_weights(&t)?;
            let mut oracle = WeightOracle::from_table(completed);
            let g = infer_from_weight12(&mut oracle)?;
            let text = format!("# expanded form from {} weights\n{}", oracle.queries(), format_graph(&g));
            Ok(Report::done(text, json!({"graph": graph_json(&g), "queries": oracle.queries()})))
        }
        Command::Certificate { graph, verify } => {
            let g = load_graph(&graph)?;
            if verify {
                guard.check("certificate verification", (g.n() * g.n().saturating_sub(1)) as f64)?;
            }
            let cert = certificate(&g);
            let entries: Vec<Value> = cert
                .iter()
                .map(|(s, w)| json!({"support": format_mask(g.n(), s.to_mask().unwrap_or(0)), "weight": w}))
                .collect();
            let mut text = format_entries(g.n(), &cert);
            let unique = if verify { Some(verify_certificate(&cert, g.n())?) } else { None };
            if let Some(u) = unique {
                text.push_str(if u { "# unique\n" } else { "# not unique\n" });
            }
            Ok(Report::verdict(
                unique.unwrap_or(true),
                text,
                json!({"entries": entries, "unique": unique}),
            ))
        }
        Command::IsometryCheck { graph, map } => {
            let g = load_graph(&graph)?;
            let t = load_map(&map, g.n())?;
            guard.check("the isometry scan", words_log2(t.q(), g.n()))?;
            let ok = is_isometry(&g, &t)?;
            let text = if ok { "isometry\n" } else { "not an isometry\n" };
            Ok(Report::verdict(ok, text.to_string(), json!({"isometry": ok})))
        }
        Command::DecomposeIsometry { graph, map } => {
            let g = load_graph(&graph)?;
            let t = load_map(&map, g.n())?;
            match decompose_isometry(&g, &t) {
                Ok(d) => {
                    let phi: Vec<String> = d.phi.iter().map(usize::to_string).collect();
                    let text = format!("phi {}\nn_part\n{}", phi.join(" "), format_map(&d.nmap));
                    Ok(Report::done(text, json!({"phi": d.phi, "n_part": map_json(&d.nmap)})))
                }
                Err(Error::NotAnIsometry) => Ok(Report::verdict(
                    false,
                    "not an isometry\n".to_string(),
                    json!({"isometry": false}),
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::GroupOrder { graph, q } => {
            let g = load_graph(&graph)?;
            let o = group_order(&g, q)?;
            let text = format!(
                "order {}\naut {}\nnormal_part {}\nproduct {}\n",
                o.order, o.aut, o.normal_part, o.product
            );
            let record = json!({
                "order": o.order.to_string(),
                "aut": o.aut.to_string(),
                "normal_part": o.normal_part.to_string(),
                "product": o.product.to_string(),
            });
            Ok(Report::done(text, record))
        }
        Command::CodeDecompose { graph, code } => {
            let g = load_graph(&graph)?;
            let c = load_code(&code, g.n())?;
            match canonical_decomposition(&g, &c) {
                Ok(d) => {
                    let mut text = format!("witness\n{}", format_map(&d.isometry));
                    for (i, comp) in d.components.iter().enumerate() {
                        text.push_str(&format!("level {}\n{}", i + 1, format_code(comp)));
                    }
                    let comps: Vec<Value> = d.components.iter().map(code_json).collect();
                    Ok(Report::done(text, json!({"witness": map_json(&d.isometry), "components": comps})))
                }
                Err(Error::NotHierarchical) => {
                    let w = non_decomposable_witness(&g).expect("non-hierarchical forms have a witness");
                    let text = format!("not hierarchical\nnon-decomposable code\n{}", format_code(&w));
                    Ok(Report::verdict(false, text, json!({"hierarchical": false, "witness": code_json(&w)})))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::MinDistance { graph, code } => {
            let g = load_graph(&graph)?;
            let c = load_code(&code, g.n())?;
            guard.check("the codeword scan", words_log2(c.q(), c.dim()))?;
            let d = min_distance(&g, &c)?;
            Ok(Report::done(format!("{d}\n"), json!({"min_distance": d})))
        }
        Command::PackingRadius { graph, code, formula, brute: _ } => {
            let g = load_graph(&graph)?;
            let c = load_code(&code, g.n())?;
            let extra = if formula { 0.0 } else { g.n() as f64 };
            guard.check("the packing-radius scan", words_log2(c.q(), c.dim()) + extra)?;
            let r = if formula { packing_radius_formula(&g, &c)? } else { packing_radius_bruteforce(&g, &c)? };
            let method = if formula { "formula" } else { "brute" };
            Ok(Report::done(format!("{r}\n"), json!({"packing_radius": r, "method": method})))
        }
        Command::Enumerator { graph, code, dual } => {
            let g = load_graph(&graph)?;
            let c = load_code(&code, g.n())?;
            let k = if dual { c.n() - c.dim() } else { c.dim() };
            guard.check("the codeword scan", words_log2(c.q(), k))?;
            let w = if dual { weight_enumerator(&g.reverse(), &c.dual())? } else { weight_enumerator(&g, &c)? };
            let rec = EnumeratorRecord::new(&w, c.q());
            let text = format!("{}\n", w.coeffs.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
            Ok(Report::done(text, serde_json::to_value(rec).expect("plain data")))
        }
        Command::Udp { graph } => {
            let g = load_graph(&graph)?;
            let r = reduced_form(&g);
            let w = udp_check(&r)?;
            let text = match &w {
                None => "UDP holds\n".to_string(),
                Some(w) => {
                    let weights = |vs: &[usize]| vs.iter().map(|&a| r.weights()[a]).collect::<Vec<_>>();
                    format!(
                        "UDP fails on level {}: classes {:?} (sizes {:?}) vs {:?} (sizes {:?})\n",
                        w.level,
                        w.left,
                        weights(&w.left),
                        w.right,
                        weights(&w.right)
                    )
                }
            };
            let record = match &w {
                None => json!({"udp": true}),
                Some(w) => json!({"udp": false, "level": w.level, "left": w.left, "right": w.right}),
            };
            Ok(Report::verdict(w.is_none(), text, record))
        }
        Command::Omega { graph } => {
            let g = load_graph(&graph)?;
            let w = omega_check(&reduced_form(&g));
            let text = match &w {
                None => "condition omega holds\n".to_string(),
                Some(w) => format!(
                    "condition omega fails on level {}: classes {:?} all of size {}\n",
                    w.level, w.vertices, w.weight
                ),
            };
            let record = match &w {
                None => json!({"omega": true}),
                Some(w) => json!({"omega": false, "level": w.level, "weight": w.weight, "classes": w.vertices}),
            };
            Ok(Report::verdict(w.is_none(), text, record))
        }
        Command::MacwilliamsCheck { graph, max_n, max_dim } => {
            let g = load_graph(&graph)?;
            if g.n() > max_n {
                return Err(Failure(format!("n = {} exceeds --max-n {max_n}", g.n())));
            }
            guard.check("the code scan", (g.n() * max_dim) as f64)?;
            let predicted = identity_predicted(&g)?;
            let w = identity_check(&g, max_dim)?;
            let mut text = format!("predicted {}\n", prediction_str(predicted));
            let record = match &w {
                None => {
                    text.push_str("identity holds\n");
                    json!({"identity": true, "predicted": prediction_str(predicted)})
                }
                Some((a, b)) => {
                    text.push_str(&format!("identity fails\nC1\n{}C2\n{}", format_code(a), format_code(b)));
                    json!({
                        "identity": false,
                        "predicted": prediction_str(predicted),
                        "c1": code_json(a),
                        "c2": code_json(b),
                    })
                }
            };
            Ok(Report::verdict(w.is_none(), text, record))
        }
        Command::ExtensionCheck { graph, max_n, max_dim } => {
            let g = load_graph(&graph)?;
            if g.n() > max_n {
                return Err(Failure(format!("n = {} exceeds --max-n {max_n}", g.n())));
            }
            guard.check("the code-pair scan", (2 * g.n() * max_dim) as f64)?;
            let predicted = extension_predicted(&g)?;
            let w = extension_check(&g, max_dim)?;
            let mut text = format!("predicted {}\n", prediction_str(predicted));
            let record = match &w {
                None => {
                    text.push_str("extension property holds\n");
                    json!({"extension": true, "predicted": prediction_str(predicted)})
                }
                Some(w) => {
                    text.push_str(&format!(
                        "extension property fails\nC1\n{}C2\n{}",
                        format_code(&w.source()),
                        format_code(&w.target())
                    ));
                    let pairs: Vec<Value> = w
                        .from
                        .iter()
                        .zip(&w.to)
                        .map(|(a, b)| {
                            text.push_str(&format!("t {a} -> {b}\n"));
                            json!([a.to_string(), b.to_string()])
                        })
                        .collect();
                    json!({
                        "extension": false,
                        "predicted": prediction_str(predicted),
                        "c1": code_json(&w.source()),
                        "c2": code_json(&w.target()),
                        "map": pairs,
                    })
                }
            };
            Ok(Report::verdict(w.is_none(), text, record))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, &Guard(cli.max_exponent)) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.record);
            } else {
                print!("{}", report.text);
            }
            if report.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
