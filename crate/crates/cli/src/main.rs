mod analyze;
mod families;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use lrw::encoding::{decode, encode, ColoredOrder};
use lrw::interval::{build_interval_graph, p_centered_coloring, verify_centered_guarded, CENTERED_GUARD};
use lrw::ramsey::verify_vertex_ramsey;
use lrw::stability::{order_index_guarded, ORDER_INDEX_GUARD};
use lrw::width::{linear_rankwidth_exact_guarded, LRW_GUARD};
use lrw::{activity::analyze as analyze_order, Error, Graph, OrderedGraph};

pub const SCHEMA: &str = "lrw-report/1";

#[derive(Parser)]
#[command(name = "lrw", version, about = "Linear rankwidth structure toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON instead of a text summary.
    #[arg(long, global = true)]
    json: bool,

    /// Leave the timing block out of JSON reports.
    #[arg(long, global = true)]
    no_timing: bool,

    /// Raise or lower the vertex-count guard of exact computations.
    #[arg(long, global = true, value_name = "K")]
    guard_n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph from a named family as an edge list.
    Gen {
        /// halfgraph K | lozin N M | lozin-tilde N M | lexpower NAME M |
        /// path N | cycle N | clique N | empty N | random N P
        family: String,
        params: Vec<String>,
        /// Seed for the random family.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write to a file and print `n m` instead of the edge list.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the full certificate pipeline on an edge-list file.
    Analyze {
        input: PathBuf,
        /// Use this vertex order instead of computing an optimal one.
        #[arg(long, value_name = "FILE")]
        order: Option<PathBuf>,
    },
    /// Centered coloring of the activity interval graph, verified at p+1.
    Centered {
        input: PathBuf,
        #[arg(short, long)]
        p: usize,
        #[arg(long, value_name = "FILE")]
        order: Option<PathBuf>,
    },
    /// Check that every m-coloring of the m-th lexicographic power of F has a
    /// monochromatic induced copy of F.
    Ramsey {
        /// Edge-list file or a name such as P4, K2, C5.
        pattern: String,
        m: usize,
    },
    /// Largest semi-induced half-graph.
    Orderindex { input: PathBuf },
    /// Print the colored-order encoding.
    Encode {
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        order: Option<PathBuf>,
    },
    /// Decode a colored order back into an edge list (vertices are positions).
    Decode { input: PathBuf },
}

/// Failure categories mapped onto exit codes.
enum Failure {
    Usage(anyhow::Error),
    Certificate(String),
    Capacity(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::Capacity { .. }) => Failure::Capacity(format!("{e:#}")),
            Some(Error::Invariant(_)) => Failure::Certificate(format!("{e:#}")),
            _ => Failure::Usage(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.passed { 0 } else { 2 })
        }
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Usage(e) => (1, "usage", format!("{e:#}")),
                Failure::Certificate(m) => (2, "certificate", m),
                Failure::Capacity(m) => (3, "capacity", m),
            };
            if cli.json {
                let v = json!({"schema": SCHEMA, "error": {"kind": kind, "message": msg}});
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            eprintln!("lrw: {msg}");
            ExitCode::from(code)
        }
    }
}

struct Output {
    text: String,
    passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let started = Instant::now();
    match &cli.command {
        Command::Gen { family, params, seed, out } => {
            let g = families::generate(family, params, *seed)?;
            let text = g.to_edge_list();
            match out {
                Some(path) => {
                    fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
                    Ok(Output::ok(format!("{} {}\n", g.n(), g.edge_count())))
                }
                None => Ok(Output::ok(text)),
            }
        }
        Command::Analyze { input, order } => {
            let g = read_graph(input)?;
            let og = ordered(cli, g, order.as_deref())?;
            let report = analyze::run(&og.0, og.1);
            let passed = report.ok;
            let text = if cli.json {
                with_timing(cli, "analyze", &report, started)
            } else {
                report.summary()
            };
            Ok(Output { text, passed })
        }
        Command::Centered { input, p, order } => {
            let g = read_graph(input)?;
            let (og, _) = ordered(cli, g, order.as_deref())?;
            let family = build_interval_graph(&analyze_order(&og))?;
            let coloring = p_centered_coloring(&family, *p)?;
            let guard = cli.guard_n.unwrap_or(CENTERED_GUARD);
            let witness = verify_centered_guarded(family.graph(), &coloring.colors, p + 1, guard)?;
            let report = CenteredReport {
                p: *p,
                verified_at: p + 1,
                palette: coloring.palette,
                colors: coloring.colors,
                centered: witness.is_none(),
                witness,
                intervals: family.normalized(),
            };
            let text = if cli.json {
                with_timing(cli, "centered", &report, started)
            } else {
                format!("centered: {}, palette: {}\n", report.centered, report.palette)
            };
            Ok(Output { text, passed: report.centered })
        }
        Command::Ramsey { pattern, m } => {
            let f = if Path::new(pattern).exists() {
                read_graph(Path::new(pattern))?
            } else {
                lrw::graph::named(pattern)?
            };
            let verdict = verify_vertex_ramsey(&f, *m)?;
            let text = if cli.json {
                with_timing(cli, "ramsey", &verdict, started)
            } else {
                format!("ramsey: {}\n", verdict.holds)
            };
            Ok(Output { text, passed: verdict.holds })
        }
        Command::Orderindex { input } => {
            let g = read_graph(input)?;
            let w = order_index_guarded(&g, cli.guard_n.unwrap_or(ORDER_INDEX_GUARD))?;
            let text = if cli.json {
                let v = json!({"order_index": w.order(), "witness": w});
                with_timing(cli, "orderindex", &v, started)
            } else {
                format!("{}\n", w.order())
            };
            Ok(Output::ok(text))
        }
        Command::Encode { input, order } => {
            let g = read_graph(input)?;
            let (og, _) = ordered(cli, g, order.as_deref())?;
            let co = encode(&og)?;
            let text = if cli.json {
                with_timing(cli, "encode", &json!({"order": og.order(), "encoding": co}), started)
            } else {
                co.to_text()
            };
            Ok(Output::ok(text))
        }
        Command::Decode { input } => {
            let text = read(input)?;
            let co = ColoredOrder::parse_text(&text)?;
            let g = decode(&co)?;
            Ok(Output::ok(g.to_edge_list()))
        }
    }
}

#[derive(Serialize)]
struct CenteredReport {
    p: usize,
    verified_at: usize,
    palette: usize,
    colors: Vec<usize>,
    centered: bool,
    witness: Option<Vec<usize>>,
    /// Normalized `(left, right)` endpoint ranks per position.
    intervals: Vec<(usize, usize)>,
}

fn with_timing(cli: &Cli, command: &str, body: &impl Serialize, started: Instant) -> String {
    let mut doc = json!({
        "schema": SCHEMA,
        "command": command,
        "result": body,
    });
    if !cli.no_timing {
        doc["timing"] = json!({"elapsed_ms": started.elapsed().as_secs_f64() * 1e3});
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    Graph::parse_edge_list(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// The ordered graph to analyze and, when the order was computed here, the
/// exact linear rankwidth.
fn ordered(cli: &Cli, g: Graph, order: Option<&Path>) -> anyhow::Result<(OrderedGraph, Option<usize>)> {
    match order {
        Some(path) => {
            let text = read(path)?;
            let order = text
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|e| anyhow!("bad vertex id {t:?} in order file: {e}")))
                .collect::<anyhow::Result<Vec<_>>>()?;
            Ok((OrderedGraph::new(g, order)?, None))
        }
        None => {
            let (w, order) = linear_rankwidth_exact_guarded(&g, cli.guard_n.unwrap_or(LRW_GUARD))?;
            Ok((OrderedGraph::new(g, order)?, Some(w)))
        }
    }
}
