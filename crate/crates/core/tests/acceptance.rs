//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use indep12::blocks::is_cactus;
use indep12::dp::{self, vertex_tables};
use indep12::generate::{
    double_star, path, prufer_decode, random_cactus_with, random_connected, random_tree_with, rng,
    spider, star,
};
use indep12::oracle::{oracle_all_sets, oracle_decide, oracle_label_set, oracle_min, validate_set};
use indep12::rooted::root_tree;
use indep12::scaling::{bench_with, Shape};
use indep12::spanning::{
    cactus_decide, construct_with_method, find_non_sufficiency_witness, verify_condition, Method,
    DEFAULT_BUDGET,
};
use indep12::structure::{
    generating_family, is_semiexcellent, strong_support_vertex, witness_containing,
};
use indep12::sweep::map_range;
use indep12::{Error, Graph};

const DP_CORPUS: usize = 1000;
const DP_MAX_N: usize = 16;
const DP_BUDGET: Duration = Duration::from_secs(60);
const LABEL_TREES: usize = 300;
const LABEL_MAX_N: usize = 14;
const SEMI_EXHAUSTIVE_MAX_N: usize = 7;
const SEMI_SAMPLED: usize = 3000;
const SEMI_SAMPLED_MAX_N: usize = 10;
const SEMI_RANDOM: usize = 300;
const SEMI_RANDOM_MAX_N: usize = 13;
const FAMILY_TREES: usize = 500;
const FAMILY_MAX_N: usize = 18;
const SPANNING_GRAPHS: usize = 300;
const SPANNING_MAX_N: usize = 11;
const CACTI: usize = 300;
const CACTUS_MAX_N: usize = 12;
const CACTUS_BIAS: f64 = 0.6;
const SEARCH_MAX_N: usize = 10;
const SEARCH_ATTEMPTS: usize = 50_000;
const LINEAR_SIZES: [usize; 3] = [10_000, 100_000, 1_000_000];
const RULES_PER_VERTEX: usize = 2;
const MAX_TIME_RATIO: f64 = 20.0;
const BENCH_BUDGET: Duration = Duration::from_secs(120);
const BENCH_REPS: usize = 5;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn tree_corpus() -> Vec<Graph> {
    map_range(0..DP_CORPUS, |i| {
        let mut r = rng(1_000_000 + i as u64);
        let n = r.gen_range(1..=DP_MAX_N);
        random_tree_with(n, &mut r)
    })
}

fn ensure(ok: bool, pass: String, fail: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(pass)
    } else {
        Err(fail())
    }
}

fn c01_decision() -> Check {
    let start = Instant::now();
    let trees = tree_corpus();
    let bad: Vec<usize> = map_range(0..trees.len(), |i| {
        let t = &trees[i];
        (dp::decide(t).unwrap() != oracle_decide(t).unwrap()).then_some(i)
    })
    .into_iter()
    .flatten()
    .collect();
    let took = start.elapsed();
    let no = trees.iter().filter(|t| !dp::decide(t).unwrap()).count();
    ensure(
        bad.is_empty() && took < DP_BUDGET,
        format!(
            "{} trees ({no} NO), 0 mismatches, {:.1} s",
            trees.len(),
            took.as_secs_f64()
        ),
        || {
            format!(
                "{} mismatches (first at index {:?}), {:.1} s",
                bad.len(),
                bad.first(),
                took.as_secs_f64()
            )
        },
    )
}

fn c02_minimum() -> Check {
    let trees = tree_corpus();
    let bad: Vec<String> = map_range(0..trees.len(), |i| {
        let t = &trees[i];
        let r = dp::solve(t).unwrap();
        let want = oracle_min(t).unwrap();
        if r.min_cardinality != want {
            return Some(format!(
                "tree {i}: dp {:?} oracle {want:?}",
                r.min_cardinality
            ));
        }
        match &r.witness {
            Some(w) if !validate_set(t, w).is_valid() || Some(w.len()) != want => {
                Some(format!("tree {i}: bad witness {w}"))
            }
            None if want.is_some() => Some(format!("tree {i}: missing witness")),
            _ => None,
        }
    })
    .into_iter()
    .flatten()
    .collect();
    ensure(
        bad.is_empty(),
        format!("{} trees, minima equal, all witnesses valid", trees.len()),
        || format!("{} failures, first: {}", bad.len(), bad[0]),
    )
}

fn c03_transfer() -> Check {
    let rows: Vec<(usize, Vec<String>)> = map_range(0..LABEL_TREES, |i| {
        let mut r = rng(2_000_000 + i as u64);
        let n = r.gen_range(3..=LABEL_MAX_N);
        let t = random_tree_with(n, &mut r);
        let internal: Vec<_> = t.vertices().filter(|&v| !t.is_leaf(v)).collect();
        let root = internal[r.gen_range(0..internal.len())];
        let rooted = root_tree(&t, Some(root)).unwrap();
        let tables = vertex_tables(&rooted);
        let mut bad = Vec::new();
        for &v in rooted.order() {
            let want = oracle_label_set(&rooted, v).unwrap();
            if tables[v].costs() != want {
                bad.push(format!(
                    "tree {i} vertex {v}: dp {} oracle {want:?}",
                    tables[v]
                ));
            }
        }
        (rooted.order().len(), bad)
    });
    let vertices: usize = rows.iter().map(|r| r.0).sum();
    let bad: Vec<&String> = rows.iter().flat_map(|r| &r.1).collect();
    ensure(
        bad.is_empty(),
        format!("{LABEL_TREES} rooted trees, {vertices} internal vertices, 0 mismatches"),
        || format!("{} mismatches, first: {}", bad.len(), bad[0]),
    )
}

fn c04_fixed() -> Check {
    let mut bad = Vec::new();
    for r in 1..=6 {
        let g = star(r);
        let res = dp::solve(&g).unwrap();
        if !res.answer || res.min_cardinality != Some(1) {
            bad.push(format!("K1,{r}"));
        }
    }
    let ds = double_star(3, 3);
    if dp::decide(&ds).unwrap() || oracle_decide(&ds).unwrap() {
        bad.push("double star 3+3".into());
    }
    for n in 2..=18 {
        let g = path(n);
        let res = dp::solve(&g).unwrap();
        let want = Some(n.div_ceil(3));
        if !res.answer || res.min_cardinality != want || oracle_min(&g).unwrap() != want {
            bad.push(format!("P{n}"));
        }
    }
    ensure(
        bad.is_empty(),
        "stars r=1..6, double star 3+3, paths n=2..18".into(),
        || format!("failed: {}", bad.join(", ")),
    )
}

/// Every vertex lies in some independent [1,2]-set, by exhaustive search.
fn every_vertex_covered(t: &Graph) -> bool {
    let mut covered = vec![false; t.vertex_count()];
    for s in oracle_all_sets(t).unwrap() {
        for v in s.iter() {
            covered[v] = true;
        }
    }
    covered.iter().all(|&c| c)
}

/// Labeled trees on up to `SEMI_EXHAUSTIVE_MAX_N` vertices (all of them),
/// sampled trees up to `SEMI_SAMPLED_MAX_N`, fixtures, and larger random
/// trees.
fn semiexcellent_corpus() -> Vec<Graph> {
    let mut trees = vec![Graph::empty(1), path(2)];
    for n in 3..=SEMI_EXHAUSTIVE_MAX_N {
        let total = n.pow(n as u32 - 2);
        trees.extend(map_range(0..total, |mut code| {
            let seq: Vec<usize> = (0..n - 2)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect();
            prufer_decode(n, &seq)
        }));
    }
    trees.extend(map_range(0..SEMI_SAMPLED, |i| {
        let mut r = rng(3_000_000 + i as u64);
        let n = r.gen_range(SEMI_EXHAUSTIVE_MAX_N + 1..=SEMI_SAMPLED_MAX_N);
        random_tree_with(n, &mut r)
    }));
    for n in 1..=SEMI_SAMPLED_MAX_N {
        trees.push(path(n));
    }
    for r in 1..=SEMI_SAMPLED_MAX_N - 1 {
        trees.push(star(r));
    }
    for (legs, len) in [(3, 1), (3, 2), (3, 3), (4, 2), (2, 4)] {
        trees.push(spider(legs, len));
    }
    trees.extend(map_range(0..SEMI_RANDOM, |i| {
        let mut r = rng(4_000_000 + i as u64);
        let n = r.gen_range(1..=SEMI_RANDOM_MAX_N);
        random_tree_with(n, &mut r)
    }));
    trees
}

fn c05_semiexcellent(trees: &[Graph]) -> Check {
    let bad: Vec<usize> = map_range(0..trees.len(), |i| {
        let t = &trees[i];
        (is_semiexcellent(t).unwrap() != every_vertex_covered(t)).then_some(i)
    })
    .into_iter()
    .flatten()
    .collect();
    let p3 = is_semiexcellent(&path(3)).unwrap();
    let yes = trees
        .iter()
        .filter(|t| is_semiexcellent(t).unwrap())
        .count();
    ensure(
        bad.is_empty() && p3,
        format!(
            "{} trees ({yes} semiexcellent), 0 mismatches, P3 true",
            trees.len()
        ),
        || {
            format!(
                "{} mismatches, P3 = {p3}, first tree {:?}",
                bad.len(),
                bad.first().map(|&i| &trees[i])
            )
        },
    )
}

fn c06_witness_containing(trees: &[Graph]) -> Check {
    let rows: Vec<(usize, Vec<String>)> = map_range(0..trees.len(), |i| {
        let t = &trees[i];
        if !is_semiexcellent(t).unwrap() {
            return (0, Vec::new());
        }
        let bad = t
            .vertices()
            .filter_map(|x| match witness_containing(t, x) {
                Ok(s) if s.contains(x) && validate_set(t, &s).is_valid() => None,
                Ok(s) => Some(format!("tree {i} x={x}: invalid {s}")),
                Err(e) => Some(format!("tree {i} x={x}: {e}")),
            })
            .collect();
        (t.vertex_count(), bad)
    });
    let pairs: usize = rows.iter().map(|r| r.0).sum();
    let bad: Vec<&String> = rows.iter().flat_map(|r| &r.1).collect();
    ensure(
        bad.is_empty(),
        format!("{pairs} (tree, vertex) pairs, 0 failures"),
        || format!("{} failures, first: {}", bad.len(), bad[0]),
    )
}

fn c07_generating_family() -> Check {
    let mut trees = Vec::new();
    let mut r = rng(5_000_000);
    while trees.len() < FAMILY_TREES {
        let n = r.gen_range(2..=FAMILY_MAX_N);
        let t = random_tree_with(n, &mut r);
        if strong_support_vertex(&t).is_none() {
            trees.push(t);
        }
    }
    let bad: Vec<String> = map_range(0..trees.len(), |i| match generating_family(&trees[i]) {
        Ok(f) => f.check(&trees[i]).err().map(|e| format!("tree {i}: {e}")),
        Err(e) => Some(format!("tree {i}: {e}")),
    })
    .into_iter()
    .flatten()
    .collect();
    ensure(
        bad.is_empty(),
        format!("{FAMILY_TREES} strong-support-free trees, all invariants hold"),
        || format!("{} failures, first: {}", bad.len(), bad[0]),
    )
}

fn c08_spanning() -> Check {
    let rows: Vec<(usize, usize, Vec<String>)> = map_range(0..SPANNING_GRAPHS, |i| {
        let mut r = rng(6_000_000 + i as u64);
        let n = r.gen_range(2..=SPANNING_MAX_N);
        let p = [0.1, 0.2, 0.35][i % 3];
        let g = random_connected(n, p, &mut r);
        let (mut pairs, mut fallback, mut bad) = (0, 0, Vec::new());
        for s in oracle_all_sets(&g).unwrap() {
            pairs += 1;
            match construct_with_method(&g, &s) {
                Ok((cert, method)) => {
                    if verify_condition(&g, &cert.tree, &s).is_err() {
                        bad.push(format!("graph {i} set {s}: certificate rejected"));
                    }
                    fallback += usize::from(method == Method::SetEdgeForest);
                }
                Err(e) => bad.push(format!("graph {i} set {s}: {e}")),
            }
        }
        (pairs, fallback, bad)
    });
    let pairs: usize = rows.iter().map(|r| r.0).sum();
    let fallback: usize = rows.iter().map(|r| r.1).sum();
    let bad: Vec<&String> = rows.iter().flat_map(|r| &r.2).collect();
    ensure(
        bad.is_empty(),
        format!(
            "{SPANNING_GRAPHS} graphs, {pairs} (graph, set) pairs, 0 failures ({fallback} via set-edge forest)"
        ),
        || format!("{} failures, first: {}", bad.len(), bad[0]),
    )
}

/// Even indices: plain random cacti. Odd indices: a random cactus with three
/// to six pendant leaves split between two anchors, which makes negative
/// instances common.
fn cactus_instance(i: usize) -> Graph {
    let mut r = rng(7_000_000 + i as u64);
    if i.is_multiple_of(2) {
        let n = r.gen_range(1..=CACTUS_MAX_N);
        return random_cactus_with(n, CACTUS_BIAS, &mut r);
    }
    let n = r.gen_range(6..=CACTUS_MAX_N);
    let k = r.gen_range(3..=(n / 2).min(6));
    let base = random_cactus_with(n - k, CACTUS_BIAS, &mut r);
    let anchors = [r.gen_range(0..n - k), r.gen_range(0..n - k)];
    let leaves = (n - k..n).map(|leaf| (anchors[leaf % 2], leaf));
    Graph::new(n, base.edges().iter().copied().chain(leaves)).unwrap()
}

fn c09_cactus() -> Check {
    let rows: Vec<Result<(bool, bool), String>> = map_range(0..CACTI, |i| {
        let g = cactus_instance(i);
        assert!(is_cactus(&g).unwrap());
        let want = oracle_decide(&g).unwrap();
        match cactus_decide(&g, DEFAULT_BUDGET) {
            Ok(a) => Ok((a == want, want)),
            Err(Error::BudgetExceeded { .. }) => Err(format!("cactus {i}")),
            Err(e) => panic!("cactus {i}: {e}"),
        }
    });
    let overruns = rows.iter().filter(|r| r.is_err()).count();
    let mismatches = rows.iter().filter(|r| matches!(r, Ok((false, _)))).count();
    let no = rows.iter().filter(|r| matches!(r, Ok((_, false)))).count();
    ensure(
        mismatches == 0,
        format!("{CACTI} cacti ({no} NO), 0 mismatches, {overruns} budget overruns excluded"),
        || format!("{mismatches} mismatches, {overruns} budget overruns"),
    )
}

fn c10_non_sufficiency() -> Check {
    let Some(w) = find_non_sufficiency_witness(SEARCH_MAX_N, 8_000_000, SEARCH_ATTEMPTS) else {
        return Err(format!("no witness in {SEARCH_ATTEMPTS} attempts"));
    };
    let n = w.graph.vertex_count();
    let ok = n <= SEARCH_MAX_N
        && !is_cactus(&w.graph).unwrap()
        && verify_condition(&w.graph, &w.tree, &w.set).is_ok()
        && !oracle_decide(&w.graph).unwrap();
    let extra: Vec<String> = w
        .graph
        .edges()
        .iter()
        .filter(|&&(u, v)| !w.tree.has_edge(u, v))
        .map(|(u, v)| format!("{u}-{v}"))
        .collect();
    ensure(
        ok,
        format!(
            "n={n}, m={}, set {{{}}}, added edges {}",
            w.graph.edge_count(),
            w.set,
            extra.join(" ")
        ),
        || "witness does not re-verify".into(),
    )
}

fn c11_linearity() -> Check {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    for shape in [Shape::Path, Shape::RandomTree] {
        let rows = bench_with(&LINEAR_SIZES, shape, 9_000_000, BENCH_REPS).unwrap();
        for r in &rows {
            if r.rule_applications > RULES_PER_VERTEX * r.n {
                bad.push(format!("{shape} n={} rules {}", r.n, r.rule_applications));
            }
        }
        let ratios: Vec<f64> = rows
            .windows(2)
            .map(|w| w[1].elapsed.as_secs_f64() / w[0].elapsed.as_secs_f64().max(1e-9))
            .collect();
        for (k, &q) in ratios.iter().enumerate() {
            if q > MAX_TIME_RATIO {
                bad.push(format!("{shape} ratio {q:.1} at n={}", rows[k].n));
            }
        }
        let times: Vec<String> = rows
            .iter()
            .map(|r| format!("{:.2}ms", r.elapsed.as_secs_f64() * 1e3))
            .collect();
        let ratios: Vec<String> = ratios.iter().map(|q| format!("{q:.1}")).collect();
        parts.push(format!(
            "{shape}: {} ratios {}",
            times.join("/"),
            ratios.join("/")
        ));
    }
    let took = start.elapsed();
    if took > BENCH_BUDGET {
        bad.push(format!("total {:.1} s", took.as_secs_f64()));
    }
    ensure(
        bad.is_empty(),
        format!("{}; total {:.1} s", parts.join("; "), took.as_secs_f64()),
        || bad.join(", "),
    )
}

fn main() -> ExitCode {
    let semi = semiexcellent_corpus();
    let criteria: Vec<Criterion<'_>> = vec![
        ("dp-oracle decision equivalence", Box::new(c01_decision)),
        ("dp-oracle minimum equivalence", Box::new(c02_minimum)),
        ("transfer-rule equivalence", Box::new(c03_transfer)),
        ("fixed instances", Box::new(c04_fixed)),
        (
            "semiexcellent equivalence",
            Box::new(|| c05_semiexcellent(&semi)),
        ),
        (
            "witness-containing soundness",
            Box::new(|| c06_witness_containing(&semi)),
        ),
        (
            "generating-family soundness",
            Box::new(c07_generating_family),
        ),
        ("spanning-tree necessity", Box::new(c08_spanning)),
        ("cactus characterization", Box::new(c09_cactus)),
        ("non-sufficiency witness", Box::new(c10_non_sufficiency)),
        ("linearity", Box::new(c11_linearity)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:2} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
