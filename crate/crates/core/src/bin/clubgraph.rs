//! Command-line front end.
//!
//! Exit status: 0 success, 1 audit failure, 2 usage or input error,
//! 3 output produced under an exhausted budget (flagged in the output).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use clubgraph::chroma::{chromatic_number, fg_profile, Budget};
use clubgraph::consim::{
    audit_decomposition, audit_hm, audit_requirements, audit_subgraph_chromatic, diagonalize, DiagonalOutcome,
    HashAdversary, Mode, SimGraph, SubgraphBudget,
};
use clubgraph::graphcore::shortest_odd_cycle_within;
use clubgraph::ladder::{generate_ladders, realization_census, LadderSystem};
use clubgraph::report::{self, parse_audits, AnchorSpec, AuditKind, SimRequest};
use clubgraph::specker::{build_specker, subset_unrank, SpeckerSpec};
use clubgraph::textio::{emit_coloring, emit_graph, emit_vertex_map, parse_graph};
use clubgraph::typealg::{tp, DisjointType, OrdinalSet};

const THREADS_ENV: &str = "CLUBGRAPH_THREADS";

#[derive(Parser)]
#[command(
    name = "clubgraph",
    version,
    about = "Specker graphs, exact coloring and ladder-system simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Disjoint type utilities.
    #[command(name = "type", subcommand)]
    Type(TypeCmd),
    /// Specker graphs G(alpha, t).
    #[command(subcommand)]
    Specker(SpeckerCmd),
    /// Exact chromatic number.
    #[command(subcommand)]
    Chroma(ChromaCmd),
    /// Smallest subgraphs of chromatic number at least k.
    Fg(FgArgs),
    /// Ladder systems and realization census.
    #[command(subcommand)]
    Ladder(LadderCmd),
    /// Build a simulated construction and audit it.
    Simulate(SimulateArgs),
    /// Audit a stored simulation graph.
    Audit(AuditArgs),
    /// Run the diagonal argument against a stored simulation graph.
    Diagonalize(DiagonalizeArgs),
    /// Regenerate a report from its embedded configuration and compare.
    Rerun(RerunArgs),
}

#[derive(Subcommand)]
enum TypeCmd {
    /// Print t^n_s.
    Canonical { n: usize, s: usize },
    /// Print tp(a, b) for comma-separated sets.
    Tp { a: OrdinalSet, b: OrdinalSet },
    /// Concatenate types.
    Concat {
        #[arg(required = true)]
        types: Vec<DisjointType>,
    },
    /// Check that a word is a disjoint type; prints its length n.
    Validate { t: String },
    /// Positions i with a(i) > b(i).
    OnesBeforeZeros { t: DisjointType },
}

#[derive(Subcommand)]
enum SpeckerCmd {
    /// Write G(alpha, t) in graph text format.
    Gen {
        #[arg(long)]
        alpha: u64,
        #[arg(long = "type")]
        t: DisjointType,
        #[arg(long)]
        out: PathBuf,
        /// Also write the `v <rank> <subset>` vertex map.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        max_vertices: u64,
    },
    /// List the neighbours of one subset.
    Neighbors {
        #[arg(long)]
        alpha: u64,
        #[arg(long = "type")]
        t: DisjointType,
        #[arg(long)]
        subset: OrdinalSet,
    },
    /// Shortest odd cycle of length at most --max-len.
    OddGirth {
        #[arg(long)]
        alpha: u64,
        #[arg(long = "type")]
        t: DisjointType,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        max_vertices: u64,
    },
}

#[derive(Args)]
struct BudgetArgs {
    /// Search-node budget (deterministic).
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Wall-clock budget in milliseconds (not reproducible).
    #[arg(long)]
    budget_ms: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.max_nodes,
            max_millis: self.budget_ms,
        }
    }
}

#[derive(Subcommand)]
enum ChromaCmd {
    /// Chromatic number of a graph file; prints a JSON result.
    Solve {
        graph: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the coloring as `c <vertex> <color>` lines.
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FgArgs {
    graph: PathBuf,
    #[arg(long, default_value_t = 4)]
    k_max: usize,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum LadderCmd {
    /// Generate a seeded ladder system as JSON.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `<count>:<lo>-<hi>`, evenly spaced.
        #[arg(long)]
        anchors: AnchorSpec,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Realization census of all types of length n within color classes.
    Census {
        #[arg(long)]
        ladders: PathBuf,
        #[arg(long)]
        n: usize,
        /// Number of classes; anchors are split by a seeded hash.
        #[arg(long, default_value_t = 1)]
        classes: u32,
        #[arg(long, default_value_t = 0)]
        partition_seed: u64,
        #[arg(long, value_enum, default_value_t = CensusFormat::Csv)]
        format: CensusFormat,
    },
}

fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1)
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "200:1000-50000")]
    anchors: AnchorSpec,
    /// Target function values f(0),f(1),...
    #[arg(long, value_delimiter = ',', default_value = "3,3,3,3")]
    f: Vec<u64>,
    #[arg(long, default_value_t = 4)]
    color_count: u32,
    #[arg(long, default_value_t = 8)]
    generators: usize,
    #[arg(long, default_value_t = 0.25)]
    planted_p: f64,
    #[arg(long)]
    ladder_length: Option<usize>,
    /// Hash adversary seed; in mode B it is also the planted coloring.
    #[arg(long)]
    adversary_seed: Option<u64>,
    /// Comma-separated: all, none, requirements, decomposition, chromatic, hm, diagonalize.
    #[arg(long, default_value = "all")]
    audit: String,
    #[arg(long, default_value_t = SubgraphBudget::default().max_subgraphs)]
    max_subgraphs: usize,
    #[arg(long, default_value_t = 1_000_000)]
    solver_nodes: u64,
    #[arg(long, default_value_t = default_threads())]
    threads: usize,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the simulated graph as JSON.
    #[arg(long)]
    emit_sim: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    sim: PathBuf,
    #[arg(long, default_value = "all")]
    audit: String,
    #[arg(long, default_value_t = SubgraphBudget::default().max_subgraphs)]
    max_subgraphs: usize,
    #[arg(long, default_value_t = 1_000_000)]
    solver_nodes: u64,
    /// Hash adversary seed for the diagonal audit.
    #[arg(long, default_value_t = 0)]
    adversary_seed: u64,
}

#[derive(Args)]
struct DiagonalizeArgs {
    #[arg(long)]
    sim: PathBuf,
    #[arg(long, default_value_t = 0)]
    adversary_seed: u64,
}

#[derive(Args)]
struct RerunArgs {
    report: PathBuf,
    #[arg(long, default_value_t = default_threads())]
    threads: usize,
}

enum Status {
    Ok,
    AuditFailed,
    BudgetFlagged,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn run_type(cmd: TypeCmd) -> Result<Status> {
    match cmd {
        TypeCmd::Canonical { n, s } => println!("{}", DisjointType::canonical(n, s)?),
        TypeCmd::Tp { a, b } => println!("{}", tp(&a, &b)?),
        TypeCmd::Concat { types } => {
            let t = types.iter().fold(DisjointType::empty(), |acc, t| acc.concat(t));
            println!("{t}");
        }
        TypeCmd::Validate { t } => {
            let t: DisjointType = t.parse()?;
            println!("{}", t.len());
        }
        TypeCmd::OnesBeforeZeros { t } => {
            let idx: Vec<String> = t.ones_before_zeros().iter().map(usize::to_string).collect();
            println!("{}", idx.join(","));
        }
    }
    Ok(Status::Ok)
}

fn run_specker(cmd: SpeckerCmd) -> Result<Status> {
    match cmd {
        SpeckerCmd::Gen {
            alpha,
            t,
            out,
            map,
            max_vertices,
        } => {
            let spec = SpeckerSpec::new(alpha, t);
            let g = build_specker(&spec, max_vertices)?;
            write(&out, &emit_graph(&g))?;
            if let Some(map) = map {
                let subsets: Vec<OrdinalSet> = (0..g.vertex_count() as u64)
                    .map(|r| subset_unrank(r, spec.n()))
                    .collect();
                write(&map, &emit_vertex_map(&subsets))?;
            }
            eprintln!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
        }
        SpeckerCmd::Neighbors { alpha, t, subset } => {
            for s in SpeckerSpec::new(alpha, t).neighbors(&subset)? {
                println!("{s}");
            }
        }
        SpeckerCmd::OddGirth {
            alpha,
            t,
            max_len,
            max_vertices,
        } => {
            let g = build_specker(&SpeckerSpec::new(alpha, t), max_vertices)?;
            let limit = max_len.unwrap_or(g.vertex_count());
            match shortest_odd_cycle_within(&g, limit) {
                Some(c) => {
                    let vs: Vec<String> = c.vertices().iter().map(usize::to_string).collect();
                    println!("{} {}", c.len(), vs.join(","));
                }
                None => println!("none"),
            }
        }
    }
    Ok(Status::Ok)
}

fn run_chroma(cmd: ChromaCmd) -> Result<Status> {
    let ChromaCmd::Solve {
        graph,
        budget,
        coloring,
    } = cmd;
    let g = parse_graph(&read(&graph)?)?;
    let result = chromatic_number(&g, budget.budget());
    print!("{}", json(&result));
    if let Some(path) = coloring {
        write(&path, &emit_coloring(&result.coloring))?;
    }
    Ok(if result.exact {
        Status::Ok
    } else {
        Status::BudgetFlagged
    })
}

fn run_fg(args: FgArgs) -> Result<Status> {
    let g = parse_graph(&read(&args.graph)?)?;
    let profile = fg_profile(&g, args.k_max, args.budget.budget());
    print!("{}", json(&profile));
    let exact = profile.chi_exact && profile.entries.iter().all(|e| e.exact);
    Ok(if exact { Status::Ok } else { Status::BudgetFlagged })
}

fn run_ladder(cmd: LadderCmd) -> Result<Status> {
    match cmd {
        LadderCmd::Gen {
            seed,
            anchors,
            length,
            out,
        } => {
            let l = generate_ladders(seed, &anchors.anchors(), length)?;
            let text = json(&l);
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
        }
        LadderCmd::Census {
            ladders,
            n,
            classes,
            partition_seed,
            format,
        } => {
            if classes == 0 {
                bail!("--classes must be at least 1");
            }
            let l: LadderSystem = serde_json::from_str(&read(&ladders)?)?;
            let hash = HashAdversary {
                seed: partition_seed,
                colors: classes,
            };
            let partition: BTreeMap<u64, usize> = l
                .anchors()
                .iter()
                .map(|a| (a, clubgraph::consim::Adversary::color(&hash, a, &[]) as usize))
                .collect();
            let census = realization_census(&l, n, &partition)?;
            match format {
                CensusFormat::Csv => print!("{}", census.to_csv()),
                CensusFormat::Json => print!("{}", json(&census)),
            }
        }
    }
    Ok(Status::Ok)
}

fn report_status(pass: bool, exact: bool, sampled: bool) -> Status {
    if !pass {
        Status::AuditFailed
    } else if !exact || sampled {
        Status::BudgetFlagged
    } else {
        Status::Ok
    }
}

fn run_simulate(args: SimulateArgs) -> Result<Status> {
    let mut req = SimRequest::new(args.mode, args.seed, args.anchors, args.f);
    req.color_count = args.color_count;
    req.generator_count = args.generators;
    req.planted_p = args.planted_p;
    req.ladder_length = args.ladder_length;
    req.adversary_seed = args.adversary_seed;
    req.audits = parse_audits(&args.audit, args.mode)?;
    req.max_subgraphs = args.max_subgraphs;
    req.solver_nodes = args.solver_nodes;
    if let Some(path) = &args.emit_sim {
        write(path, &json(&report::build_request(&req)?))?;
    }
    let r = report::simulate(&req, args.threads)?;
    let text = r.to_json();
    match &args.out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(report_status(r.pass, r.flags.exact, r.flags.sampled))
}

#[derive(Serialize)]
struct AuditOutput {
    tool: report::Tool,
    sim: String,
    audits: report::Audits,
    pass: bool,
    flags: report::Flags,
}

fn run_audit(args: AuditArgs) -> Result<Status> {
    let sim: SimGraph = serde_json::from_str(&read(&args.sim)?)?;
    let kinds = parse_audits(&args.audit, sim.mode)?;
    let budget = SubgraphBudget {
        max_subgraphs: args.max_subgraphs,
        solver: Budget::nodes(args.solver_nodes),
    };
    let mut audits = report::Audits::default();
    let mut pass = true;
    let mut flags = report::Flags {
        exact: true,
        sampled: false,
    };
    for kind in kinds {
        match kind {
            AuditKind::Requirements => {
                let r = audit_requirements(&sim);
                pass &= r.pass;
                audits.requirements = Some(r);
            }
            AuditKind::Decomposition => {
                let rs = (0..=sim.k_max())
                    .map(|k| audit_decomposition(&sim, k))
                    .collect::<Result<Vec<_>, _>>()?;
                pass &= rs.iter().all(|r| r.pass);
                audits.decomposition = Some(rs);
            }
            AuditKind::Chromatic => {
                let rs = (0..=sim.k_max())
                    .map(|k| audit_subgraph_chromatic(&sim, k, budget))
                    .collect::<Result<Vec<_>, _>>()?;
                pass &= rs.iter().all(|r| r.pass);
                flags.exact &= rs.iter().all(|r| r.exact);
                flags.sampled |= rs.iter().any(|r| r.sampled);
                audits.chromatic = Some(rs);
            }
            AuditKind::Hm => {
                let r = audit_hm(&sim)?;
                pass &= r.pass;
                audits.hm = Some(r);
            }
            AuditKind::Diagonalize => {
                let adversary = HashAdversary {
                    seed: args.adversary_seed,
                    colors: sim.config.color_count,
                };
                let r = diagonalize(&sim, &adversary)?;
                pass &= !matches!(r.outcome, DiagonalOutcome::Contradiction { .. });
                audits.diagonalize = Some(r);
            }
        }
    }
    let out = AuditOutput {
        tool: report::Tool {
            name: report::TOOL_NAME.into(),
            version: report::TOOL_VERSION.into(),
        },
        sim: args.sim.display().to_string(),
        audits,
        pass,
        flags,
    };
    print!("{}", json(&out));
    Ok(report_status(pass, flags.exact, flags.sampled))
}

fn run_diagonalize(args: DiagonalizeArgs) -> Result<Status> {
    let sim: SimGraph = serde_json::from_str(&read(&args.sim)?)?;
    let adversary = HashAdversary {
        seed: args.adversary_seed,
        colors: sim.config.color_count,
    };
    let r = diagonalize(&sim, &adversary)?;
    print!("{}", json(&r));
    let contradiction = matches!(r.outcome, DiagonalOutcome::Contradiction { .. });
    Ok(if contradiction { Status::AuditFailed } else { Status::Ok })
}

fn run_rerun(args: RerunArgs) -> Result<Status> {
    let text = read(&args.report)?;
    let (_, same) = report::rerun(&text, args.threads)?;
    if same {
        println!("identical");
        Ok(Status::Ok)
    } else {
        println!("differs");
        Ok(Status::AuditFailed)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Type(c) => run_type(c),
        Command::Specker(c) => run_specker(c),
        Command::Chroma(c) => run_chroma(c),
        Command::Fg(a) => run_fg(a),
        Command::Ladder(c) => run_ladder(c),
        Command::Simulate(a) => run_simulate(a),
        Command::Audit(a) => run_audit(a),
        Command::Diagonalize(a) => run_diagonalize(a),
        Command::Rerun(a) => run_rerun(a),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::AuditFailed) => ExitCode::from(1),
        Ok(Status::BudgetFlagged) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
