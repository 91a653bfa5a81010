//! Command-line front end: ingest set systems or graphs, run the
//! library analyses, and emit deterministic plain-text reports.
//!
//! Reports go to stdout (or `--out`); timings go to stderr so the
//! report bytes depend only on input, flags, and seed. Exit code 0
//! covers successful runs including exceeds-cap and budget-exhausted
//! sub-results; nonzero is reserved for input and internal errors.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;
use thicket::bitset::BitSet;
use thicket::budget::Budget;
use thicket::complexity;
use thicket::decision::{lower_bound_experiment, AtomStructure, DepthOutcome};
use thicket::error::Error as LibError;
use thicket::graph::{self, Graph, PivotStrategy};
use thicket::ladder::max_ladder;
use thicket::report::{encode_indices, sha256_hex, Report};
use thicket::setsystem::SetSystem;

#[derive(Parser)]
#[command(name = "thicket", version, about = "Analyze set families, their trees, ladders, and graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimensions, shatter tables, and maximum ladders of a set system
    /// (or of a graph's neighborhood family).
    Analyze {
        input: PathBuf,
        /// Input format; `auto` tries the incidence matrix first, then
        /// the edge list.
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        /// Largest level of the shatter and depth tables (capped at 24).
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// Search-step budget granted to each sub-analysis.
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the neighborhood splitting tree of a graph.
    Typetree {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = PivotArg::Lowest)]
        pivot: PivotArg,
        /// Seed for the random pivot strategy.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the tree as GraphViz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract a verified homogeneous vertex set (clique or independent
    /// set) from a graph.
    Eh {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the minimum decision depth of the balanced threshold
    /// target over [0, 2^n) for equality atoms versus order atoms.
    Lowerbound {
        #[arg(long, value_enum, default_value_t = StructureArg::Both)]
        structure: StructureArg,
        #[arg(long, default_value_t = 2)]
        nmin: usize,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        /// Depth cap per row (default: the domain size, which always
        /// suffices).
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Auto,
    Incidence,
    Edges,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PivotArg {
    Lowest,
    Maxdeg,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StructureArg {
    Equality,
    Order,
    Both,
}

enum Input {
    System(SetSystem),
    Graph(Graph, SetSystem),
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Analyze { input, format, nmax, budget, out } => {
            cmd_analyze(&input, format, nmax, budget, out.as_deref())
        }
        Cmd::Typetree { input, pivot, seed, dot, format, out } => {
            cmd_typetree(&input, pivot, seed, dot.as_deref(), format, out.as_deref())
        }
        Cmd::Eh { input, format, out } => cmd_eh(&input, format, out.as_deref()),
        Cmd::Lowerbound { structure, nmin, nmax, cap, budget, out } => {
            cmd_lowerbound(structure, nmin, nmax, cap, budget, out.as_deref())
        }
    }
}

fn load(path: &Path, format: FormatArg) -> Result<(String, &'static str, Input)> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading input {}", path.display()))?;
    let parsed = match format {
        FormatArg::Incidence => {
            (SetSystem::parse_incidence(&text).map(Input::System)?, "incidence")
        }
        FormatArg::Edges => (parse_graph(&text)?, "edges"),
        FormatArg::Auto => match SetSystem::parse_incidence(&text) {
            Ok(sys) => (Input::System(sys), "incidence"),
            Err(incidence_err) => match parse_graph(&text) {
                Ok(g) => (g, "edges"),
                Err(_) => {
                    return Err(incidence_err).with_context(|| {
                        format!("input {} is neither an incidence matrix nor an edge list", path.display())
                    })
                }
            },
        },
    };
    Ok((text, parsed.1, parsed.0))
}

fn parse_graph(text: &str) -> Result<Input, LibError> {
    let g = Graph::parse_edge_list(text)?;
    let neigh = graph::neighborhood_system(&g);
    Ok(Input::Graph(g, neigh))
}

fn describe_input(report: &mut Report, path: &Path, fmt: &str, text: &str, input: &Input) {
    report.section("toolkit").put("version", env!("CARGO_PKG_VERSION"));
    let s = report.section("input");
    s.put("file", path.display())
        .put("format", fmt)
        .put("sha256", sha256_hex(text.as_bytes()));
    match input {
        Input::System(sys) => {
            s.put("domain", sys.domain_size())
                .put("family", sys.len())
                .put("duplicates_dropped", sys.duplicates_dropped());
        }
        Input::Graph(g, neigh) => {
            s.put("vertices", g.vertex_count())
                .put("edges", g.edge_count())
                .put("family", neigh.len())
                .put("twins_collapsed", neigh.duplicates_dropped());
        }
    }
}

fn write_out(report: &Report, out: Option<&Path>) -> Result<()> {
    let text = report.to_text();
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_analyze(
    path: &Path,
    format: FormatArg,
    nmax: usize,
    budget: u64,
    out: Option<&Path>,
) -> Result<()> {
    let (text, fmt, input) = load(path, format)?;
    let nmax = if nmax > 24 {
        eprintln!("note: --nmax clamped to 24");
        24
    } else {
        nmax
    };
    let mut report = Report::new();
    describe_input(&mut report, path, fmt, &text, &input);
    let sys = match &input {
        Input::System(sys) => sys,
        Input::Graph(_, neigh) => neigh,
    };

    let t = Instant::now();
    let dim = complexity::thicket_dim(sys);
    let dual = complexity::dual_dim(sys);
    let vc = complexity::vc_dim(sys);
    report
        .section("dims")
        .put("thicket", dim)
        .put("dual_thicket", dual)
        .put("vc", vc);
    eprintln!("timing: dimensions in {:.1?}", t.elapsed());

    let t = Instant::now();
    match complexity::sauer_shelah_report(sys, nmax) {
        Ok(table) => {
            let s = report.section("shatter");
            for (n, v) in table.rho.iter().enumerate() {
                s.put(&format!("rho.{n}"), v);
            }
            for (n, v) in table.phi_bound.iter().enumerate() {
                s.put(&format!("phi.{n}"), v);
            }
            s.put("certified", true);
        }
        Err(e) => {
            report.section("shatter").put("error", e);
        }
    }
    eprintln!("timing: shatter table in {:.1?}", t.elapsed());

    let t = Instant::now();
    {
        let s = report.section("depth");
        if sys.is_empty() {
            s.put("note", "no full trees over an empty family");
        } else {
            for n in 1..=nmax {
                match complexity::sigma(sys, n) {
                    Ok(Some(d)) => s.put(&format!("sigma.{n}"), d),
                    Ok(None) => s.put(&format!("sigma.{n}"), "unattainable"),
                    Err(e) => s.put(&format!("sigma.{n}"), format!("error: {e}")),
                };
            }
        }
    }
    eprintln!("timing: depth table in {:.1?}", t.elapsed());

    for (kind, strict) in [("plain", false), ("strict", true)] {
        let t = Instant::now();
        let cap = if strict {
            sys.len()
        } else {
            sys.domain_size() * sys.len()
        };
        let mut b = Budget::new(budget);
        let (ladder, exhausted) = match max_ladder(sys, cap, strict, &mut b) {
            Ok(l) => (l, false),
            Err(LibError::LadderBudget { best }) => (best, true),
            Err(e) => return Err(e.into()),
        };
        let s = report.section(&format!("ladder.{kind}"));
        s.put("length", ladder.len())
            .put("elements", encode_indices(&ladder.elements))
            .put("sets", encode_indices(&ladder.sets));
        if exhausted {
            s.put("budget_exhausted", true);
        }
        eprintln!("timing: {kind} ladder in {:.1?}", t.elapsed());
    }

    write_out(&report, out)
}

fn cmd_typetree(
    path: &Path,
    pivot: PivotArg,
    seed: u64,
    dot: Option<&Path>,
    format: FormatArg,
    out: Option<&Path>,
) -> Result<()> {
    let (text, fmt, input) = load(path, format)?;
    let Input::Graph(g, neigh) = &input else {
        bail!("the typetree command needs an edge-list graph input");
    };
    let (strategy, pivot_name) = match pivot {
        PivotArg::Lowest => (PivotStrategy::Lowest, "lowest"),
        PivotArg::Maxdeg => (PivotStrategy::MaxDegree, "maxdeg"),
        PivotArg::Random => (PivotStrategy::Random(seed), "random"),
    };
    let t = Instant::now();
    let Some(tt) = graph::type_tree(g, &BitSet::full(g.vertex_count()), strategy) else {
        bail!("the graph has no vertices");
    };
    eprintln!("timing: type tree in {:.1?}", t.elapsed());

    let mut report = Report::new();
    describe_input(&mut report, path, fmt, &text, &input);
    {
        let s = report.section("typetree");
        s.put("pivot", pivot_name);
        if matches!(pivot, PivotArg::Random) {
            s.put("seed", seed);
        }
        s.put("depth", tt.tree.depth())
            .put("vertices", tt.tree.vertex_count())
            .put("leaves", tt.tree.leaves().len())
            .put("full_over_neighborhoods", tt.is_full_over(neigh));
    }
    let s = report.section("labels");
    for (&graph_vertex, tree_vertex) in &tt.element_of {
        s.put(&format!("v{graph_vertex}"), tree_vertex);
    }

    if let Some(dot_path) = dot {
        let dot_text = tt.tree.to_dot(&|v| match tt.tree.label(v) {
            Some(l) => format!("v{l}"),
            None => v.to_string(),
        });
        fs::write(dot_path, dot_text)
            .with_context(|| format!("writing DOT to {}", dot_path.display()))?;
    }
    write_out(&report, out)
}

fn cmd_eh(path: &Path, format: FormatArg, out: Option<&Path>) -> Result<()> {
    let (text, fmt, input) = load(path, format)?;
    let Input::Graph(g, neigh) = &input else {
        bail!("the eh command needs an edge-list graph input");
    };
    let t = Instant::now();
    let (set, kind) = graph::eh_extract(g)?;
    let dim = complexity::thicket_dim(neigh);
    let floor = graph::homogeneous_size_floor(g.vertex_count(), dim);
    eprintln!("timing: extraction in {:.1?}", t.elapsed());

    let mut report = Report::new();
    describe_input(&mut report, path, fmt, &text, &input);
    report
        .section("homogeneous")
        .put(
            "kind",
            match kind {
                graph::Homogeneity::Clique => "clique",
                graph::Homogeneity::Independent => "independent",
            },
        )
        .put("size", set.count())
        .put("vertices", encode_indices(&set.iter().collect::<Vec<_>>()))
        .put("dim", dim)
        .put("size_floor", floor)
        .put("floor_met", set.count() >= floor);
    write_out(&report, out)
}

fn cmd_lowerbound(
    structure: StructureArg,
    nmin: usize,
    nmax: usize,
    cap: Option<usize>,
    budget: u64,
    out: Option<&Path>,
) -> Result<()> {
    if nmin > nmax {
        bail!("--nmin {nmin} exceeds --nmax {nmax}");
    }
    let ns: Vec<usize> = (nmin..=nmax).collect();
    let mut report = Report::new();
    report.section("toolkit").put("version", env!("CARGO_PKG_VERSION"));
    report
        .section("experiment")
        .put("target", "x < 2^(n-1) over [0, 2^n)")
        .put("nmin", nmin)
        .put("nmax", nmax)
        .put(
            "cap",
            match cap {
                Some(c) => c.to_string(),
                None => "auto".into(),
            },
        );

    let runs: &[AtomStructure] = match structure {
        StructureArg::Equality => &[AtomStructure::Equality],
        StructureArg::Order => &[AtomStructure::Order],
        StructureArg::Both => &[AtomStructure::Equality, AtomStructure::Order],
    };
    for &atoms in runs {
        let name = match atoms {
            AtomStructure::Equality => "equality",
            AtomStructure::Order => "order",
        };
        let t = Instant::now();
        let rows = lower_bound_experiment(atoms, &ns, cap, budget)?;
        eprintln!("timing: {name} rows in {:.1?}", t.elapsed());
        let s = report.section(&format!("depths.{name}"));
        for row in rows {
            let value = match row.outcome {
                DepthOutcome::Depth(d) => d.to_string(),
                DepthOutcome::ExceedsCap => "exceeds-cap".into(),
                DepthOutcome::BudgetExhausted => "budget-exhausted".into(),
            };
            s.put(&format!("n{}", row.n), value);
        }
    }
    write_out(&report, out)
}
