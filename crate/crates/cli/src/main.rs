use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use indep12::oracle::{validate_set, Oracle, DEFAULT_CAP};
use indep12::scaling::{self, Shape};
use indep12::spanning::{self, SpanningCertificate, DEFAULT_BUDGET};
use indep12::structure::{self, GeneratingFamily};
use indep12::{dp, generate, parse_graph, Error, Graph, Vertex, VertexSet};

/// Graphs up to this size are verified unless `--no-verify` is given.
const AUTO_VERIFY_MAX_N: usize = 20;

#[derive(Parser)]
#[command(
    name = "indep12",
    version,
    about = "Independent [1,2]-sets in trees and general graphs"
)]
struct Cli {
    /// Re-validate every produced witness or certificate before printing
    /// (default: only for graphs with at most 20 vertices).
    #[arg(long, global = true, overrides_with = "no_verify")]
    verify: bool,
    /// Skip re-validation even on small graphs.
    #[arg(long, global = true, overrides_with = "verify")]
    no_verify: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Does the tree have an independent [1,2]-set?
    Decide {
        file: PathBuf,
        #[arg(long)]
        stats: bool,
    },
    /// Minimum cardinality of an independent [1,2]-set of the tree.
    Min {
        file: PathBuf,
        #[arg(long)]
        stats: bool,
    },
    /// A minimum independent [1,2]-set, or one containing a given vertex.
    Witness {
        file: PathBuf,
        #[arg(long)]
        contains: Option<Vertex>,
        #[arg(long)]
        stats: bool,
    },
    /// Does every vertex lie in some independent [1,2]-set?
    Semiexcellent { file: PathBuf },
    /// Generating family of a tree without strong support vertices.
    Decompose { file: PathBuf },
    /// Validate a vertex set against a graph.
    CheckSet {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Spanning-tree certificates for general graphs.
    #[command(subcommand)]
    Spanning(SpanningCommand),
    /// Exact decision for a cactus graph.
    CactusDecide {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Exhaustive search on small graphs.
    Oracle {
        mode: OracleMode,
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Generate random instances in edge-list format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Time the tree decision on generated instances.
    Bench {
        /// Comma-separated, ascending.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value = "path")]
        shape: ShapeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

#[derive(Subcommand)]
enum SpanningCommand {
    /// Check a spanning tree and set against the graph.
    Check {
        file: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Build a spanning tree from an independent [1,2]-set of the graph.
    Construct {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Uniform random labeled tree.
    Tree(GenArgs),
    /// Random cactus built from pendant edges and cycles.
    Cactus {
        #[command(flatten)]
        common: GenArgs,
        /// Probability of attaching a cycle instead of an edge.
        #[arg(long, default_value_t = 0.5)]
        bias: f64,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMode {
    Decide,
    Min,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Path,
    RandomTree,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Path => Shape::Path,
            ShapeArg::RandomTree => Shape::RandomTree,
        }
    }
}

/// Report lines and whether the answer was positive.
struct Outcome {
    lines: Vec<String>,
    positive: bool,
}

impl Outcome {
    fn new(positive: bool) -> Self {
        Self {
            lines: Vec::new(),
            positive,
        }
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.lines.push(s.into());
        self
    }

    fn yes_no(answer: bool) -> Self {
        Self::new(answer).line(if answer { "YES" } else { "NO" })
    }
}

type CliResult<T> = Result<T, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            for l in &out.lines {
                println!("{l}");
            }
            ExitCode::from(if out.positive { 0 } else { 1 })
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_set(g: &Graph, text: &str) -> CliResult<VertexSet> {
    let s = VertexSet::parse(text).map_err(err)?;
    s.check_over(g).map_err(err)?;
    Ok(s)
}

fn err(e: Error) -> String {
    e.to_string()
}

fn set_line(s: &VertexSet) -> String {
    s.to_string()
}

fn stats_lines(mut out: Outcome, n: usize, rules: usize, start: Instant) -> Outcome {
    let us = start.elapsed().as_micros();
    out = out.line(format!("n = {n}"));
    out = out.line(format!("rule_applications = {rules}"));
    out.line(format!("wall_time_us = {us}"))
}

impl Cli {
    fn verify_for(&self, n: usize) -> bool {
        if self.verify {
            true
        } else if self.no_verify {
            false
        } else {
            n <= AUTO_VERIFY_MAX_N
        }
    }
}

fn check_witness(g: &Graph, s: &VertexSet) -> CliResult<()> {
    let report = validate_set(g, s);
    if report.is_valid() {
        Ok(())
    } else {
        Err(format!("verification failed for {s}: {report}"))
    }
}

fn check_certificate(g: &Graph, cert: &SpanningCertificate) -> CliResult<()> {
    check_witness(&cert.tree, &cert.set)?;
    spanning::verify_condition(g, &cert.tree, &cert.set)
        .map(|_| ())
        .map_err(|f| format!("verification failed: {f}"))
}

fn certificate_lines(mut out: Outcome, cert: &SpanningCertificate) -> Outcome {
    out = out.line(format!("set = {}", cert.set));
    for &(u, v) in cert.tree.edges() {
        out = out.line(format!("tree_edge = {u} {v}"));
    }
    for ((u, v), class) in &cert.edge_classes {
        out = out.line(format!("removed = {u} {v} {class}"));
    }
    out
}

fn family_lines(mut out: Outcome, fam: &GeneratingFamily) -> Outcome {
    out = out.line(format!("components = {}", fam.components.len()));
    for (i, c) in fam.components.iter().enumerate() {
        let marks: Vec<String> = c
            .vertices
            .iter()
            .map(|v| {
                let side = if c.bipartition.y_side.contains(v) {
                    'Y'
                } else {
                    'X'
                };
                format!("{v}:{side}")
            })
            .collect();
        out = out.line(format!("component {i} = {}", marks.join(" ")));
    }
    for &(u, v) in &fam.removed_edges {
        out = out.line(format!("removed_edge = {u} {v}"));
    }
    out.line(format!("set = {}", fam.associated_set()))
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Decide { file, stats } => {
            let g = read_graph(file)?;
            let start = Instant::now();
            let (answer, st) = dp::decide_with_stats(&g).map_err(err)?;
            let out = Outcome::yes_no(answer);
            Ok(if *stats {
                stats_lines(out, st.vertices, st.rule_applications, start)
            } else {
                out
            })
        }
        Command::Min { file, stats } => {
            let g = read_graph(file)?;
            let start = Instant::now();
            let r = dp::solve(&g).map_err(err)?;
            if let (true, Some(w), Some(k)) = (
                cli.verify_for(g.vertex_count()),
                &r.witness,
                r.min_cardinality,
            ) {
                check_witness(&g, w)?;
                if w.len() != k {
                    return Err(format!(
                        "verification failed: witness size {} != {k}",
                        w.len()
                    ));
                }
            }
            let out = match r.min_cardinality {
                Some(k) => Outcome::new(true).line(format!("i12 = {k}")),
                None => Outcome::new(false).line("i12 = none"),
            };
            Ok(if *stats {
                stats_lines(out, r.stats.vertices, r.stats.rule_applications, start)
            } else {
                out
            })
        }
        Command::Witness {
            file,
            contains,
            stats,
        } => {
            let g = read_graph(file)?;
            let start = Instant::now();
            let (witness, rules) = match contains {
                None => {
                    let r = dp::solve(&g).map_err(err)?;
                    (r.witness, Some(r.stats.rule_applications))
                }
                Some(x) => match structure::witness_containing(&g, *x) {
                    Ok(s) => (Some(s), None),
                    Err(Error::NotSemiexcellent) => {
                        (dp::min_witness_containing(&g, *x).map_err(err)?, None)
                    }
                    Err(e) => return Err(err(e)),
                },
            };
            if let (true, Some(w)) = (cli.verify_for(g.vertex_count()), &witness) {
                check_witness(&g, w)?;
                if let Some(x) = contains {
                    if !w.contains(*x) {
                        return Err(format!("verification failed: {x} not in {w}"));
                    }
                }
            }
            let out = match &witness {
                Some(w) => Outcome::new(true).line(set_line(w)),
                None => Outcome::new(false).line("none"),
            };
            Ok(match (stats, rules) {
                (true, Some(r)) => stats_lines(out, g.vertex_count(), r, start),
                _ => out,
            })
        }
        Command::Semiexcellent { file } => {
            let g = read_graph(file)?;
            Ok(Outcome::yes_no(
                structure::is_semiexcellent(&g).map_err(err)?,
            ))
        }
        Command::Decompose { file } => {
            let g = read_graph(file)?;
            match structure::generating_family(&g) {
                Ok(fam) => {
                    if cli.verify_for(g.vertex_count()) {
                        fam.check(&g)
                            .map_err(|e| format!("verification failed: {e}"))?;
                    }
                    Ok(family_lines(Outcome::new(true), &fam))
                }
                Err(e @ Error::StrongSupport(_)) => {
                    Ok(Outcome::new(false).line(format!("none ({e})")))
                }
                Err(e) => Err(err(e)),
            }
        }
        Command::CheckSet { file, set } => {
            let g = read_graph(file)?;
            let s = parse_set(&g, set)?;
            let report = validate_set(&g, &s);
            let mut out = Outcome::new(report.is_valid());
            if report.is_valid() {
                out = out.line("valid");
            }
            for (v, why) in &report.violations {
                out = out.line(format!("violation = {v} {why}"));
            }
            Ok(out)
        }
        Command::Spanning(SpanningCommand::Check { file, tree, set }) => {
            let g = read_graph(file)?;
            let t = read_graph(tree)?;
            let s = parse_set(&g, set)?;
            match spanning::verify_condition(&g, &t, &s) {
                Ok(cert) => Ok(certificate_lines(Outcome::new(true).line("YES"), &cert)),
                Err(f) => Ok(Outcome::new(false).line("NO").line(format!("reason = {f}"))),
            }
        }
        Command::Spanning(SpanningCommand::Construct { file, set }) => {
            let g = read_graph(file)?;
            let s = parse_set(&g, set)?;
            let cert = spanning::construct_spanning_tree(&g, &s).map_err(err)?;
            if cli.verify_for(g.vertex_count()) {
                check_certificate(&g, &cert)?;
            }
            Ok(certificate_lines(Outcome::new(true), &cert))
        }
        Command::CactusDecide { file, budget, cap } => {
            let g = read_graph(file)?;
            let answer =
                spanning::cactus_decide_with(&g, *budget, Oracle::with_cap(*cap)).map_err(err)?;
            Ok(Outcome::yes_no(answer))
        }
        Command::Oracle { mode, file, cap } => {
            let g = read_graph(file)?;
            let oracle = Oracle::with_cap(*cap);
            match mode {
                OracleMode::Decide => Ok(Outcome::yes_no(oracle.decide(&g).map_err(err)?)),
                OracleMode::Min => Ok(match oracle.min(&g).map_err(err)? {
                    Some(k) => Outcome::new(true).line(format!("i12 = {k}")),
                    None => Outcome::new(false).line("i12 = none"),
                }),
                OracleMode::All => {
                    let sets = oracle.all_sets(&g).map_err(err)?;
                    let mut out = Outcome::new(!sets.is_empty());
                    for s in &sets {
                        out = out.line(set_line(s));
                    }
                    Ok(out)
                }
            }
        }
        Command::Gen(GenCommand::Tree(a)) => {
            if a.n == 0 {
                return Err("--n must be positive".into());
            }
            let g = generate::random_tree(a.n, a.seed);
            if cli.verify_for(a.n) && !g.is_tree() {
                return Err("verification failed: generated graph is not a tree".into());
            }
            Ok(Outcome::new(true).line(g.to_edge_list().trim_end()))
        }
        Command::Gen(GenCommand::Cactus { common, bias }) => {
            if common.n == 0 {
                return Err("--n must be positive".into());
            }
            if !(0.0..=1.0).contains(bias) {
                return Err("--bias must lie in [0, 1]".into());
            }
            let g = generate::random_cactus(common.n, *bias, common.seed);
            if cli.verify_for(common.n) && !indep12::blocks::is_cactus(&g).map_err(err)? {
                return Err("verification failed: generated graph is not a cactus".into());
            }
            Ok(Outcome::new(true).line(g.to_edge_list().trim_end()))
        }
        Command::Bench {
            sizes,
            shape,
            seed,
            reps,
        } => {
            if sizes.windows(2).any(|w| w[0] > w[1]) {
                return Err("--sizes must be ascending".into());
            }
            if sizes.contains(&0) {
                return Err("--sizes must be positive".into());
            }
            let shape = Shape::from(*shape);
            let rows = scaling::bench_with(sizes, shape, *seed, *reps).map_err(err)?;
            let mut out = Outcome::new(true).line(format!("shape = {shape}"));
            out = out.line("n rule_applications wall_time_us answer");
            for r in &rows {
                out = out.line(format!(
                    "{} {} {} {}",
                    r.n,
                    r.rule_applications,
                    r.elapsed.as_micros(),
                    if r.answer { "YES" } else { "NO" }
                ));
            }
            Ok(out)
        }
    }
}
