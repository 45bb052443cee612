//! Command-line front end: every library operation as a pipe-able
//! subcommand over the JSON instance and partition formats.
//!
//! Exit codes: 0 for success with an empty report, 1 when a produced or
//! checked report contains violations (or the oracle finds no solution),
//! 2 for input errors, 3 for internal invariant failures.

use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use unfriendly::{
    ConditionedGraph, Error, ExtendedCardinal, Fin, GadgetGraph, Graph, InitialAssignment,
    InstanceFile, PartitionFile, Strategy, build_gadget, check_threshold_unfriendly,
    check_unfriendly, decorate_conditions, emit_dot, emit_gadget_dot, emit_instance,
    find_transfer_gap, finitize_conditions, gnp, min_degree, parse_instance, parse_partition,
    recover_partition, solve_brute_force, solve_greedy_extend, solve_layered, solve_local_search,
    solve_with_restarts, sparsify, star_bipartite, t_core, v1_v2_decompose,
};

#[derive(Parser)]
#[command(
    name = "unfriendly",
    version,
    about = "Unfriendly partitions with a finite infinity threshold"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Infinity threshold t: "infinitely many" means "at least t"
    #[arg(long, global = true, default_value_t = 2)]
    threshold: u64,

    /// Seed for every random draw
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format (dot is available for graph-shaped output)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Output path; stdout when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Largest vertex set whose members all have ≥ t neighbours inside it
    Core { input: PathBuf },
    /// Stage-wise split into sparse v1, anchored v2 and the core
    Decompose { input: PathBuf },
    /// Delete edges inside v2 and between dense v1 vertices
    Sparsify { input: PathBuf },
    /// Rewrite all conditions to finite ones relative to the threshold
    Finitize { input: PathBuf },
    /// Compile a finite-condition instance into a plain three-copy gadget
    Gadget { input: PathBuf },
    /// Map a gadget partition back to the instance the gadget encodes
    Recover {
        /// Gadget instance, as emitted by `gadget`
        input: PathBuf,
        /// Partition of the gadget graph
        #[arg(long)]
        partition: PathBuf,
    },
    /// Find an unfriendly partition
    Solve {
        input: PathBuf,
        #[arg(long, default_value = "local")]
        strategy: Strategy,
        /// Starting assignment for local search
        #[arg(long, default_value = "zero")]
        initial: InitialAssignment,
        /// Rerun local search this many times, keeping the smallest result
        #[arg(long, default_value_t = 1)]
        restarts: u64,
        /// Abort after this many flips (defaults to the proven bound)
        #[arg(long)]
        max_flips: Option<u64>,
        /// Also write the solve trace to this path
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check a partition; the report is the output
    Verify {
        input: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        /// Exemption bound: a count, or "inf" for the exact check
        #[arg(long, default_value = "inf")]
        mu: ExtendedCardinal,
    },
    /// Enumerate all partitions of a small instance
    Oracle {
        input: PathBuf,
        #[arg(long, default_value = "inf")]
        mu: ExtendedCardinal,
    },
    /// Generate a seeded instance
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Scripted studies
    Experiment {
        #[command(subcommand)]
        experiment: Experiment,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Every possible edge independently with probability p
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        decorate: Decorate,
    },
    /// Random graph augmented until every degree reaches the threshold
    MinDegree {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        decorate: Decorate,
    },
    /// Hubs with ≥ t leaf neighbours, no hub-hub edges, leaf degrees < t
    StarBipartite {
        #[arg(long)]
        hubs: usize,
        #[arg(long)]
        leaves: usize,
        #[command(flatten)]
        decorate: Decorate,
    },
}

#[derive(Args)]
struct Decorate {
    /// Attach conditions with kappa drawn from 0..=max-kappa
    #[arg(long)]
    max_kappa: Option<u64>,
    /// Attach conditions with lambda drawn from 0..=max-lambda
    #[arg(long)]
    max_lambda: Option<u64>,
    /// Probability that a drawn condition value is "inf"
    #[arg(long)]
    p_inf: Option<f64>,
}

impl Decorate {
    fn apply(&self, g: Graph, seed: u64) -> Result<ConditionedGraph, Error> {
        if self.max_kappa.is_none() && self.max_lambda.is_none() && self.p_inf.is_none() {
            return Ok(ConditionedGraph::plain(g));
        }
        decorate_conditions(
            g,
            self.max_kappa.unwrap_or(0),
            self.max_lambda.unwrap_or(0),
            self.p_inf.unwrap_or(0.0),
            seed,
        )
    }
}

#[derive(Subcommand)]
enum Experiment {
    /// Solve a star-bipartite instance with every strategy and report
    /// whether each output is t-unfriendly
    Question {
        #[arg(long, default_value_t = 3)]
        hubs: usize,
        #[arg(long, default_value_t = 30)]
        leaves: usize,
    },
    /// Search random conditioned instances for a partition the finitized
    /// instance accepts at mu = t but the original rejects
    Prop21Gap {
        #[arg(long, default_value_t = 100)]
        instances: u64,
        /// Vertices per instance (exhaustive enumeration caps this at 16)
        #[arg(long, default_value_t = 8)]
        size: usize,
        /// Condition values are drawn from 0..=max-condition
        #[arg(long, default_value_t = 3)]
        max_condition: u64,
    },
}

fn input_error(context: &str, message: impl std::fmt::Display) -> Error {
    Error::Parse {
        context: context.to_owned(),
        message: message.to_string(),
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, Error> {
    if path.as_os_str() == "-" {
        let mut buffer = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buffer)
            .map_err(|e| input_error("stdin", e))?;
        return Ok(buffer);
    }
    std::fs::read(path).map_err(|e| input_error(&path.display().to_string(), e))
}

fn read_instance(path: &Path) -> Result<ConditionedGraph, Error> {
    parse_instance(&read_bytes(path)?)
}

struct Output {
    format: Format,
    out: Option<PathBuf>,
}

impl Output {
    fn write(&self, payload: &str) -> Result<(), Error> {
        match &self.out {
            Some(path) => std::fs::write(path, payload)
                .map_err(|e| input_error(&path.display().to_string(), e)),
            None => {
                print!("{payload}");
                Ok(())
            }
        }
    }

    fn write_json<T: serde::Serialize>(&self, value: &T) -> Result<(), Error> {
        let mut payload =
            serde_json::to_string_pretty(value).expect("reports serialize without fail");
        payload.push('\n');
        self.write(&payload)
    }

    /// For commands whose payload is not a graph.
    fn require_json(&self) -> Result<(), Error> {
        match self.format {
            Format::Json => Ok(()),
            Format::Dot => Err(input_error(
                "format",
                "dot output is unavailable for this command",
            )),
        }
    }
}

fn names(g: &Graph, ids: &[unfriendly::VertexId]) -> Vec<String> {
    ids.iter().map(|&v| g.name(v).to_owned()).collect()
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let t = cli.threshold;
    let seed = cli.seed;
    let output = Output {
        format: cli.format,
        out: cli.out,
    };
    match cli.command {
        Command::Core { input } => {
            output.require_json()?;
            let cg = read_instance(&input)?;
            let core = t_core(cg.graph(), t)?;
            output.write_json(&json!({
                "threshold": t,
                "core": names(cg.graph(), &core),
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { input } => {
            output.require_json()?;
            let cg = read_instance(&input)?;
            let g = cg.graph();
            let d = v1_v2_decompose(g, t)?;
            let stages: Vec<_> = d
                .stages
                .iter()
                .map(|s| {
                    json!({
                        "index": s.index,
                        "v1": names(g, &s.v1),
                        "v2": names(g, &s.v2),
                    })
                })
                .collect();
            output.write_json(&json!({
                "threshold": t,
                "v1": names(g, &d.v1),
                "v2": names(g, &d.v2),
                "core": names(g, &d.core),
                "stages": stages,
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sparsify { input } => {
            let cg = read_instance(&input)?;
            let s = sparsify(cg.graph(), t)?;
            if s.core_warning {
                eprintln!("note: the core is nonempty; deletions assume a core-free graph");
            }
            eprintln!("note: deleted {} edges", s.deleted.len());
            let entries: Vec<(String, _)> = cg
                .graph()
                .vertices()
                .filter(|&v| !cg.conditions(v).is_zero())
                .map(|v| (cg.graph().name(v).to_owned(), cg.conditions(v)))
                .collect();
            let sparse = ConditionedGraph::new(s.graph, entries)?;
            match output.format {
                Format::Json => output.write(&emit_instance(&sparse))?,
                Format::Dot => output.write(&emit_dot(sparse.graph(), None)?)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Finitize { input } => {
            let cg = read_instance(&input)?;
            let finite = finitize_conditions(&cg, t)?;
            match output.format {
                Format::Json => output.write(&emit_instance(&finite))?,
                Format::Dot => output.write(&emit_dot(finite.graph(), None)?)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gadget { input } => {
            let cg = read_instance(&input)?;
            let gg = build_gadget(&cg)?;
            match output.format {
                Format::Json => {
                    output.write(&emit_instance(&ConditionedGraph::plain(gg.graph().clone())))?
                }
                Format::Dot => output.write(&emit_gadget_dot(&gg, None)?)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Recover { input, partition } => {
            let cg = read_instance(&input)?;
            if !cg.is_plain() {
                return Err(input_error(
                    "recover",
                    "a gadget instance carries no conditions",
                ));
            }
            let gg = GadgetGraph::from_graph(cg.graph().clone())?;
            let ph = parse_partition(gg.graph(), &read_bytes(&partition)?)?;
            let r = recover_partition(&gg, &ph)?;
            let original = gg.original();
            let report = check_unfriendly(original, &r.partition)?;
            eprintln!(
                "note: read copy {}{}; original report: {}",
                r.copy,
                if r.flipped { " (complemented)" } else { "" },
                if report.passes() { "ok" } else { "violated" },
            );
            match output.format {
                Format::Json => {
                    let mut file = PartitionFile::new(original.graph(), &r.partition)?;
                    file.copy = Some(r.copy);
                    file.flipped = Some(r.flipped);
                    output.write_json(&file)?;
                }
                Format::Dot => output.write(&emit_dot(original.graph(), Some(&r.partition))?)?,
            }
            Ok(if report.passes() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Solve {
            input,
            strategy,
            initial,
            restarts,
            max_flips,
            trace,
        } => {
            let cg = read_instance(&input)?;
            let mut cfg = unfriendly::SolverConfig::new(t)?
                .with_seed(seed)
                .with_initial(initial);
            if let Some(cap) = max_flips {
                cfg = cfg.with_max_flips(cap);
            }
            if restarts > 1 && strategy != Strategy::LocalSearch {
                return Err(input_error("solve", "restarts apply to the local strategy"));
            }
            let (p, solve_trace) = match strategy {
                Strategy::LocalSearch => solve_with_restarts(&cg, cfg, restarts)?,
                Strategy::GreedyExtend => {
                    if !cg.is_plain() {
                        return Err(input_error(
                            "solve",
                            "the extend strategy handles plain instances only",
                        ));
                    }
                    solve_greedy_extend(cg.graph(), cfg)?
                }
                Strategy::Layered => solve_layered(&cg, cfg)?,
            };
            let threshold_ok = solve_trace.threshold_report.passes();
            eprintln!(
                "note: {} made {} flips over {} stages; exact {}, threshold {}",
                strategy,
                solve_trace.flips,
                solve_trace.stages.len().max(1),
                if solve_trace.exact_report.passes() {
                    "ok"
                } else {
                    "violated"
                },
                if threshold_ok { "ok" } else { "violated" },
            );
            if let Some(path) = trace {
                let mut payload = serde_json::to_string_pretty(&solve_trace)
                    .expect("traces serialize without fail");
                payload.push('\n');
                std::fs::write(&path, payload)
                    .map_err(|e| input_error(&path.display().to_string(), e))?;
            }
            match output.format {
                Format::Json => {
                    let file = PartitionFile::new(cg.graph(), &p)?;
                    output.write_json(&file)?;
                }
                Format::Dot => output.write(&emit_dot(cg.graph(), Some(&p))?)?,
            }
            Ok(if threshold_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Verify {
            input,
            partition,
            mu,
        } => {
            let cg = read_instance(&input)?;
            let p = parse_partition(cg.graph(), &read_bytes(&partition)?)?;
            let report = check_threshold_unfriendly(&cg, &p, mu)?;
            match output.format {
                Format::Json => output.write_json(&report)?,
                Format::Dot => output.write(&emit_dot(cg.graph(), Some(&p))?)?,
            }
            Ok(if report.passes() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Oracle { input, mu } => {
            output.require_json()?;
            let cg = read_instance(&input)?;
            let result = solve_brute_force(&cg, mu)?;
            let partition = result
                .partition
                .as_ref()
                .map(|p| PartitionFile::new(cg.graph(), p))
                .transpose()?;
            output.write_json(&json!({
                "solutions": result.solutions,
                "partition": partition,
            }))?;
            Ok(if result.solutions > 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Gen { family } => {
            let cg = match family {
                Family::Gnp { n, p, decorate } => decorate.apply(gnp(n, p, seed)?, seed)?,
                Family::MinDegree { n, decorate } => {
                    decorate.apply(min_degree(n, t, seed)?, seed)?
                }
                Family::StarBipartite {
                    hubs,
                    leaves,
                    decorate,
                } => decorate.apply(star_bipartite(hubs, leaves, t, seed)?, seed)?,
            };
            match output.format {
                Format::Json => output.write(&emit_instance(&cg))?,
                Format::Dot => output.write(&emit_dot(cg.graph(), None)?)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment { experiment } => match experiment {
            Experiment::Question { hubs, leaves } => {
                output.require_json()?;
                let g = star_bipartite(hubs, leaves, t, seed)?;
                let cg = ConditionedGraph::plain(g);
                let cfg = unfriendly::SolverConfig::new(t)?.with_seed(seed);
                let mut runs = Vec::new();
                let mut all_ok = true;
                for strategy in [
                    Strategy::LocalSearch,
                    Strategy::GreedyExtend,
                    Strategy::Layered,
                ] {
                    let (_, trace) = match strategy {
                        Strategy::LocalSearch => solve_local_search(&cg, cfg)?,
                        Strategy::GreedyExtend => solve_greedy_extend(cg.graph(), cfg)?,
                        Strategy::Layered => solve_layered(&cg, cfg)?,
                    };
                    let threshold_ok = trace.threshold_report.passes();
                    all_ok &= threshold_ok;
                    runs.push(json!({
                        "strategy": strategy.token(),
                        "flips": trace.flips,
                        "stages": trace.stages.len(),
                        "exact_ok": trace.exact_report.passes(),
                        "threshold_ok": threshold_ok,
                        "notes": trace.notes,
                    }));
                }
                output.write_json(&json!({
                    "family": {"hubs": hubs, "leaves": leaves, "threshold": t, "seed": seed},
                    "graph": {
                        "vertices": cg.graph().vertex_count(),
                        "edges": cg.graph().edge_count(),
                        "min_degree": cg.graph().min_degree(),
                    },
                    "runs": runs,
                }))?;
                Ok(if all_ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
            Experiment::Prop21Gap {
                instances,
                size,
                max_condition,
            } => {
                output.require_json()?;
                let mut gaps = Vec::new();
                for k in 0..instances {
                    let s = seed.wrapping_add(k);
                    let g = gnp(size, 0.35, s)?;
                    let cg = decorate_conditions(g, max_condition, max_condition, 0.1, s)?;
                    if let Some(p) = find_transfer_gap(&cg, t)? {
                        let finitized = finitize_conditions(&cg, t)?;
                        debug_assert!(check_threshold_unfriendly(&finitized, &p, Fin(t))?.passes());
                        gaps.push(json!({
                            "seed": s,
                            "instance": InstanceFile::from_instance(&cg),
                            "partition": PartitionFile::new(cg.graph(), &p)?,
                        }));
                    }
                }
                eprintln!(
                    "note: {} of {} instances opened a transfer gap",
                    gaps.len(),
                    instances
                );
                output.write_json(&json!({
                    "threshold": t,
                    "searched": instances,
                    "found": gaps.len(),
                    "gaps": gaps,
                }))?;
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_internal() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
