//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or precondition error, 2 unreadable or
//! malformed input, 3 a verified invariant failed.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::gen::{generate, Distribution, GenConfig, Radii};
use crate::geom::{Epsilon, Instance};
use crate::graph::SpannerGraph;
use crate::io::{parse_instance, write_instance};
use crate::oracle::{build_intersection_graph, exact_diameter, verify_stretch};
use crate::proximity::estimate_diameter;
use crate::separator::{build_separator_decomposition_with, check_edge_lengths, verify_separator, SeparatorConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "diskspan", version, about = "Spanners for disk graphs, separators and diameter estimates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Yao,
    Udg,
    Dg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "uniform")]
        dist: Distribution,
        /// `unit` or `loguniform:MIN`.
        #[arg(long, default_value = "unit")]
        radii: Radii,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Side of the sampling square; defaults to √n.
        #[arg(long)]
        side: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a spanner of an instance.
    Build {
        #[arg(long, value_enum)]
        algo: Algo,
        /// `1/2^m`, for example `1/4` or `1/2^3`.
        #[arg(long)]
        eps: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare spanner distances against a graph, edge by edge.
    Verify {
        /// Graph file; without it the full intersection graph of `--in` is used.
        #[arg(long, required_unless_present = "input", conflicts_with = "input")]
        graph: Option<PathBuf>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        spanner: PathBuf,
        #[arg(long)]
        bound: f64,
    },
    /// Separator decomposition of a spanner.
    Separate {
        #[arg(long)]
        spanner: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "1/4")]
        eps: String,
        #[arg(long, default_value_t = 32)]
        leaf_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate the spanner diameter over its separator tree.
    Diameter {
        #[arg(long)]
        spanner: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "1/4")]
        eps: String,
        #[arg(long, default_value_t = 32)]
        leaf_max: usize,
        /// Also compute the exact diameter by all-pairs shortest paths.
        #[arg(long)]
        exact: bool,
        /// Accept disconnected spanners and report every component.
        #[arg(long)]
        per_component: bool,
    },
    /// CSV summary of a spanner.
    Stats {
        #[arg(long)]
        spanner: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        eps: String,
    },
}

/// A failed command: exit code and message.
#[derive(Debug)]
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::Io(_)
            | Error::DuplicatePoint(..)
            | Error::InvalidRadius { .. }
            | Error::EmptyInstance => EXIT_PARSE,
            Error::SeparatorInvariantViolation(_) | Error::NotSubgraph(..) | Error::InductionOrderViolation(..) => {
                EXIT_INVARIANT
            }
            _ => EXIT_USAGE,
        };
        Failure(code, e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn read_instance(path: &Path) -> std::result::Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::from(e).with_path(path))
}

fn read_graph(path: &Path) -> std::result::Result<SpannerGraph, Failure> {
    SpannerGraph::parse(&read(path)?).map_err(|e| Failure::from(e).with_path(path))
}

impl Failure {
    fn with_path(self, path: &Path) -> Self {
        Failure(self.0, format!("{}: {}", path.display(), self.1))
    }
}

/// Write through a sibling temporary file so readers never see a partial file.
fn write_out(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    let io = |e: std::io::Error| Failure(EXIT_USAGE, e.to_string());
    match path {
        None => stdout.write_all(text.as_bytes()).map_err(io),
        Some(p) => {
            let mut tmp = p.as_os_str().to_owned();
            tmp.push(".tmp");
            std::fs::write(&tmp, text).map_err(io)?;
            std::fs::rename(&tmp, p).map_err(io)
        }
    }
}

fn check_size(inst: &Instance, g: &SpannerGraph) -> std::result::Result<(), Failure> {
    if inst.len() != g.n {
        return Err(Failure(EXIT_PARSE, format!("instance has {} points but spanner has {} vertices", inst.len(), g.n)));
    }
    Ok(())
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cli.command {
        Command::Gen { n, dist, radii, seed, side, out: path } => {
            let inst = generate(&GenConfig { n, dist, radii, seed, side })?;
            write_out(path.as_deref(), &write_instance(&inst), out)?;
        }
        Command::Build { algo, eps, input, out: path } => {
            let eps = Epsilon::parse(&eps)?;
            let inst = read_instance(&input)?;
            let g = match algo {
                Algo::Yao => crate::yao::build_modified_yao(&inst, eps)?,
                Algo::Udg => crate::udg::build_udg_spanner(&inst, eps)?,
                Algo::Dg => crate::dg::build_dg_spanner(&inst, eps)?,
            };
            write_out(path.as_deref(), &g.to_text(), out)?;
        }
        Command::Verify { graph, input, spanner, bound } => {
            let gp = read_graph(&spanner)?;
            let g = match (graph, input) {
                (Some(p), _) => read_graph(&p)?,
                (None, Some(p)) => build_intersection_graph(&read_instance(&p)?)?,
                (None, None) => unreachable!("clap requires one of --graph and --in"),
            };
            let r = verify_stretch(&g, &gp, bound)?;
            let witness = r.witness.map_or("none".to_string(), |(u, v)| format!("{u} {v}"));
            writeln!(out, "maxRatio {}", r.max_ratio).ok();
            writeln!(out, "witness {witness}").ok();
            writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" }).ok();
            return Ok(if r.pass { EXIT_OK } else { EXIT_INVARIANT });
        }
        Command::Separate { spanner, input, eps, leaf_max, out: path } => {
            let eps = Epsilon::parse(&eps)?;
            let inst = read_instance(&input)?;
            let g = read_graph(&spanner)?;
            check_size(&inst, &g)?;
            let tree = build_separator_decomposition_with(&g, &inst, eps, SeparatorConfig { leaf_max });
            write_out(path.as_deref(), &tree.dump(), out)?;
            let report = verify_separator(&tree, &g)?;
            check_edge_lengths(&g, &inst)?;
            let mut text = String::new();
            writeln!(text, "nodes {}", report.nodes).unwrap();
            writeln!(text, "height {}", report.height).unwrap();
            writeln!(text, "rootSeparator {}", report.root_separator).unwrap();
            writeln!(text, "maxRatio {}", report.max_ratio).unwrap();
            writeln!(text, "crossingBudget {}", report.crossing_budget).unwrap();
            writeln!(text, "PASS").unwrap();
            // the dump owns stdout when no file is given
            if path.is_some() {
                out.write_all(text.as_bytes()).ok();
            } else {
                err.write_all(text.as_bytes()).ok();
            }
        }
        Command::Diameter { spanner, input, eps, leaf_max, exact, per_component } => {
            let eps = Epsilon::parse(&eps)?;
            let inst = read_instance(&input)?;
            let g = read_graph(&spanner)?;
            check_size(&inst, &g)?;
            let tree = build_separator_decomposition_with(&g, &inst, eps, SeparatorConfig { leaf_max });
            let r = estimate_diameter(&g, &tree, per_component)?;
            writeln!(out, "dia {}", r.dia).ok();
            if per_component && r.per_component.len() > 1 {
                writeln!(out, "components {}", r.per_component.len()).ok();
            }
            if exact {
                let delta = exact_diameter(&g);
                let ratio = if delta > 0.0 { r.dia / delta } else { 1.0 };
                writeln!(out, "delta {delta}").ok();
                writeln!(out, "ratio {ratio}").ok();
            }
        }
        Command::Stats { spanner, input, eps } => {
            let eps = Epsilon::parse(&eps)?;
            let inst = read_instance(&input)?;
            let g = read_graph(&spanner)?;
            check_size(&inst, &g)?;
            write_out(None, &stats_csv(&g, &inst, eps), out)?;
        }
    }
    Ok(EXIT_OK)
}

/// Summary row followed by the per-depth edge histogram.
pub fn stats_csv(g: &SpannerGraph, inst: &Instance, eps: Epsilon) -> String {
    let mut s = String::new();
    let max_degree = g.degrees().into_iter().max().unwrap_or(0);
    writeln!(s, "n,m,eps,rho,maxDegree,edgesPerN").unwrap();
    writeln!(s, "{},{},{},{},{},{}", g.n, g.m(), eps.value(), inst.global_stretch(), max_degree, g.m() as f64 / g.n as f64).unwrap();
    let mut hist: BTreeMap<i32, usize> = BTreeMap::new();
    for e in &g.edges {
        *hist.entry(e.depth_tag).or_default() += 1;
    }
    writeln!(s, "depth,count").unwrap();
    for (d, c) in hist {
        writeln!(s, "{d},{c}").unwrap();
    }
    s
}

/// Parse `args` (program name first) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                out.write_all(text.as_bytes()).ok();
            } else {
                err.write_all(text.as_bytes()).ok();
            }
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            writeln!(err, "error: {msg}").ok();
            code
        }
    }
}
