mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use z2cut::bnt_greedy::{solve_bnt_greedy, BntConfig};
use z2cut::canonical;
use z2cut::complex::{Chain, Complex};
use z2cut::feasibility::{
    is_bnt_feasible, is_global_bnt_solution, is_global_ths_solution, is_ths_feasible, FeasibilityReport,
};
use z2cut::format::{emit_chain, emit_complex, parse_chain, parse_colored_graph, parse_complex};
use z2cut::fpt_ths::{solve_ths_fpt, FeasibilityRoute, FptConfig};
use z2cut::gadgets::{gen_bnt_gadget, gen_ths_gadget, GadgetInstance, GadgetKind};
use z2cut::global_rand::{solve_global_bnt, solve_global_ths, RandomizedRun, DEFAULT_TRIALS};
use z2cut::oracle::{self, OracleBudget, OracleOutcome};
use z2cut::surface_ths::{solve_ths_surface, solve_ths_surface_weighted};
use z2cut::Error;

use report::{chain_json, InputFile, RunArtifact};

const EXIT_SOLVED: u8 = 0;
const EXIT_NONE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Solvers, verifiers and generators for topological hitting set and
/// boundary nontrivialization over Z2.
///
/// Exit status: 0 solved or verified, 1 no solution or rejected,
/// 2 input error, 3 resource limit.
#[derive(Parser, Debug)]
#[command(name = "z2cut", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Write a JSON run report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Use the data-parallel code paths where the build supports them.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args, Debug, Clone)]
struct CycleInput {
    /// Complex in `.scx` format.
    #[arg(long, value_name = "FILE")]
    complex: PathBuf,
    /// Cycle in `.chn` format.
    #[arg(long, value_name = "FILE")]
    cycle: PathBuf,
}

#[derive(Args, Debug, Clone)]
struct Budget {
    /// Largest number of chains or subsets an exhaustive search may visit.
    #[arg(long, default_value_t = OracleBudget::default().max_enumeration)]
    max_enumeration: u64,
}

impl Budget {
    fn get(&self) -> OracleBudget {
        OracleBudget {
            max_enumeration: self.max_enumeration,
            ..OracleBudget::default()
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Route {
    Colspace,
    RestrictedRows,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum hitting set for a non-bounding 1-cycle on a closed surface.
    ThsSurface {
        #[command(flatten)]
        input: CycleInput,
        /// Use the edge weights from the complex file instead of unit weights.
        #[arg(long)]
        weighted: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Minimum hitting set of bounded size by connected-set enumeration.
    ThsFpt {
        #[command(flatten)]
        input: CycleInput,
        /// Largest solution size to search.
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Route::Colspace)]
        route: Route,
        /// Report every minimum solution.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Greedy boundary nontrivialization of a bounding cycle.
    BntGreedy {
        #[command(flatten)]
        input: CycleInput,
        #[arg(long, default_value_t = BntConfig::default().beta_cap)]
        beta_cap: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized global hitting set.
    GlobalThs {
        #[arg(long, value_name = "FILE")]
        complex: PathBuf,
        /// Dimension of the homology group.
        #[arg(long)]
        dim: usize,
        /// Size bound for each trial's search.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized global boundary nontrivialization.
    GlobalBnt {
        #[arg(long, value_name = "FILE")]
        complex: PathBuf,
        /// Dimension of the boundaries to make non-bounding.
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = BntConfig::default().beta_cap)]
        beta_cap: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check a candidate set.
    Verify {
        #[command(subcommand)]
        problem: VerifyCommand,
    },
    /// Exhaustive reference computations.
    Oracle {
        #[command(subcommand)]
        query: OracleCommand,
    },
    /// Write a named complex or a reduction gadget to disk.
    Gen {
        /// One of the canonical complex names, `gadget-ths` or `gadget-bnt`.
        name: String,
        /// Output path of the complex; the chain and legend are written beside it.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Genus for `genus-g`.
        #[arg(long, default_value_t = 2)]
        genus: usize,
        /// Colored graph in `.cg` format, for gadgets.
        #[arg(long, value_name = "FILE")]
        graph: Option<PathBuf>,
        /// Penalty multiplicity for gadgets; defaults to the cube of the vertex count.
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Does the set hit every cycle homologous to the given one?
    Ths {
        #[command(flatten)]
        input: CycleInput,
        #[arg(long, value_name = "FILE")]
        set: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Does removing the set make the given boundary non-bounding?
    Bnt {
        #[command(flatten)]
        input: CycleInput,
        #[arg(long, value_name = "FILE")]
        set: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Does removing the set destroy some homology class?
    GlobalThs {
        #[arg(long, value_name = "FILE")]
        complex: PathBuf,
        #[arg(long, value_name = "FILE")]
        set: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Does removing the set make some boundary non-bounding?
    GlobalBnt {
        #[arg(long, value_name = "FILE")]
        complex: PathBuf,
        #[arg(long, value_name = "FILE")]
        set: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Exhaustive minimum hitting set.
    Ths {
        #[command(flatten)]
        input: CycleInput,
        #[arg(long)]
        kmax: usize,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive minimum boundary nontrivialization.
    Bnt {
        #[command(flatten)]
        input: CycleInput,
        #[arg(long)]
        kmax: usize,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        common: Common,
    },
    /// List every cycle homologous to the given one.
    Homologous {
        #[command(flatten)]
        input: CycleInput,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        common: Common,
    },
    /// List every chain whose boundary is the given cycle.
    Coset {
        #[command(flatten)]
        input: CycleInput,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::ThsSurface { common, .. }
            | Command::ThsFpt { common, .. }
            | Command::BntGreedy { common, .. }
            | Command::GlobalThs { common, .. }
            | Command::GlobalBnt { common, .. }
            | Command::Gen { common, .. } => common,
            Command::Verify { problem } => match problem {
                VerifyCommand::Ths { common, .. }
                | VerifyCommand::Bnt { common, .. }
                | VerifyCommand::GlobalThs { common, .. }
                | VerifyCommand::GlobalBnt { common, .. } => common,
            },
            Command::Oracle { query } => match query {
                OracleCommand::Ths { common, .. }
                | OracleCommand::Bnt { common, .. }
                | OracleCommand::Homologous { common, .. }
                | OracleCommand::Coset { common, .. } => common,
            },
        }
    }
}

/// Holds the report under construction and reads input files into it.
struct Run {
    artifact: RunArtifact,
    parallel: bool,
}

impl Run {
    fn read(&mut self, role: &str, path: &Path) -> anyhow::Result<String> {
        let bytes = fs::read(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        self.artifact.inputs.push(InputFile::new(role, path, &bytes));
        String::from_utf8(bytes).map_err(|_| Error::Input(format!("{} is not UTF-8", path.display())).into())
    }

    fn complex(&mut self, path: &Path) -> anyhow::Result<Complex> {
        let text = self.read("complex", path)?;
        parse_complex(&text).with_context(|| path.display().to_string())
    }

    fn chain(&mut self, role: &str, path: &Path, k: &Complex) -> anyhow::Result<Chain> {
        let text = self.read(role, path)?;
        parse_chain(&text, k).with_context(|| path.display().to_string())
    }

    fn cycle(&mut self, input: &CycleInput) -> anyhow::Result<(Complex, Chain)> {
        let k = self.complex(&input.complex)?;
        let z = self.chain("cycle", &input.cycle, &k)?;
        Ok((k, z))
    }
}

fn print_chain(label: &str, c: &Chain, k: &Complex) {
    println!("{label}: {} {}-simplices", c.len(), c.dim());
    for s in c.simplices(k) {
        let vs: Vec<String> = s.vertices().iter().map(ToString::to_string).collect();
        println!("  {}", vs.join(" "));
    }
}

fn report_verdict(run: &mut Run, name: &str, report: &FeasibilityReport) -> bool {
    println!(
        "{name}: {} (method {})",
        if report.verdict { "feasible" } else { "infeasible" },
        report.method
    );
    run.artifact.verdict(name, report.verdict);
    run.artifact.output("method", report.method.to_string());
    run.artifact.output("ranks", &report.ranks);
    report.verdict
}

fn report_oracle(run: &mut Run, k: &Complex, out: &OracleOutcome, kmax: usize) -> bool {
    run.artifact.output("route", out.route.to_string());
    run.artifact.output("checked", out.checked);
    if let Some(d) = &out.diagnostic {
        println!("{d}");
        run.artifact.output("diagnostic", d);
    }
    match &out.solution {
        Some(s) => {
            print_chain("minimum set", s, k);
            run.artifact.output("solution", chain_json(s, k));
            true
        }
        None => {
            println!("no set of size at most {kmax}");
            run.artifact.output("solution", serde_json::Value::Null);
            false
        }
    }
}

fn report_randomized(run: &mut Run, k: &Complex, result: &RandomizedRun) -> bool {
    let verified = result.records.iter().filter(|t| t.verified).count();
    println!("{verified} of {} trials produced a verified set", result.trials);
    let trials: Vec<_> = result
        .records
        .iter()
        .map(|t| json!({ "trial": t.trial, "coordinates": t.coordinates, "set": t.subroutine, "verified": t.verified }))
        .collect();
    run.artifact.output("trials", trials);
    run.artifact.output("verified_trials", verified);
    match &result.best {
        Some(s) => {
            print_chain("best set", s, k);
            run.artifact.output("solution", chain_json(s, k));
            true
        }
        None => {
            println!("no trial produced a verified set");
            run.artifact.output("solution", serde_json::Value::Null);
            false
        }
    }
}

fn seed_for(run: &mut Run, seed: Option<u64>, json: bool) -> anyhow::Result<u64> {
    match seed {
        Some(s) => {
            run.artifact.seed = Some(s);
            Ok(s)
        }
        None if json => bail!(Error::Input(
            "randomized commands need --seed when --json is given".into()
        )),
        None => {
            println!("seed 0 (pass --seed to choose)");
            run.artifact.seed = Some(0);
            Ok(0)
        }
    }
}

fn sibling(path: &Path, extension: &str) -> PathBuf {
    path.with_extension(extension)
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn legend_json(g: &GadgetInstance) -> serde_json::Value {
    let roles: serde_json::Map<String, serde_json::Value> = g
        .legend
        .roles
        .iter()
        .map(|(d, rs)| {
            let named: Vec<_> = rs
                .iter()
                .enumerate()
                .map(|(i, r)| json!({ "simplex": g.complex.simplex(*d, i).vertices(), "role": r.to_string(), "admissible": r.is_admissible() }))
                .collect();
            (d.to_string(), json!(named))
        })
        .collect();
    json!({
        "kind": match g.kind { GadgetKind::HittingSet => "ths", GadgetKind::Nontrivialization => "bnt" },
        "parameter": g.parameter,
        "m": g.m,
        "reference_m": g.reference_m,
        "solution_dim": g.solution_dim(),
        "admissible": g.admissible(),
        "vertex_names": g.legend.vertex_names,
        "roles": roles,
        "warnings": g.warnings,
    })
}

fn run_gen(
    run: &mut Run,
    name: &str,
    out: &Path,
    genus: usize,
    graph: Option<&Path>,
    m: Option<usize>,
) -> anyhow::Result<bool> {
    let (complex, chain, legend) = match name {
        "gadget-ths" | "gadget-bnt" => {
            let Some(path) = graph else {
                bail!(Error::Input(format!("{name} needs --graph")));
            };
            let text = run.read("graph", path)?;
            let g = parse_colored_graph(&text).with_context(|| path.display().to_string())?;
            let m = m.unwrap_or_else(|| g.vertex_count().pow(3));
            run.artifact.param("m", m);
            let gadget = if name == "gadget-ths" {
                gen_ths_gadget(&g, m)?
            } else {
                gen_bnt_gadget(&g, m)?
            };
            for w in &gadget.warnings {
                eprintln!("warning: {w}");
            }
            println!("parameter {}, m {}", gadget.parameter, gadget.m);
            let legend = legend_json(&gadget);
            (gadget.complex, Some(gadget.input_chain), Some(legend))
        }
        _ => {
            let c = canonical::by_name(name, genus)?;
            (c.complex, c.cycle, None)
        }
    };
    write(out, &emit_complex(&complex))?;
    println!("wrote {}", out.display());
    run.artifact.output("complex", out.display().to_string());
    let counts: Vec<usize> = (complex.lo()..=complex.hi()).map(|d| complex.count(d)).collect();
    println!("window {} {}, simplex counts {counts:?}", complex.lo(), complex.hi());
    run.artifact.output("counts", counts);
    if let Some(z) = &chain {
        let p = sibling(out, "chn");
        write(&p, &emit_chain(z, &complex))?;
        println!("wrote {}", p.display());
        run.artifact.output("chain", p.display().to_string());
    }
    if let Some(l) = &legend {
        let p = sibling(out, "legend.json");
        write(&p, &serde_json::to_string_pretty(l)?)?;
        println!("wrote {}", p.display());
        run.artifact.output("legend", p.display().to_string());
    }
    Ok(true)
}

fn execute(run: &mut Run, command: &Command) -> anyhow::Result<bool> {
    let json = command.common().json.is_some();
    let parallel = run.parallel;
    match command {
        Command::ThsSurface { input, weighted, .. } => {
            let (k, z) = run.cycle(input)?;
            run.artifact.param("weighted", weighted);
            let out = if *weighted {
                solve_ths_surface_weighted(&k, &z, parallel)?
            } else {
                solve_ths_surface(&k, &z, parallel)?
            };
            print_chain("cocycle", &out.solution, &k);
            println!("weight {}", out.weight);
            run.artifact.output("solution", chain_json(&out.solution, &k));
            run.artifact.output("weight", out.weight);
            run.artifact.output("basis_index", out.basis_index);
            report_verdict(run, "ths_feasible", &out.certificate);
            Ok(true)
        }
        Command::ThsFpt {
            input,
            k: bound,
            route,
            all,
            ..
        } => {
            let (k, z) = run.cycle(input)?;
            run.artifact.param("k", bound);
            run.artifact.param("route", format!("{route:?}"));
            let config = FptConfig {
                k: *bound,
                parallel,
                count_all: *all,
                route: match route {
                    Route::Colspace => FeasibilityRoute::Colspace,
                    Route::RestrictedRows => FeasibilityRoute::RestrictedRows,
                },
                candidates: None,
            };
            let out = solve_ths_fpt(&k, &z, &config)?;
            println!(
                "{} candidates, {} checked, max degree {}",
                out.stats.candidates, out.stats.checked, out.stats.max_degree
            );
            run.artifact.output("candidates", out.stats.candidates);
            run.artifact.output("checked", out.stats.checked);
            run.artifact.output("envelope", out.stats.envelope.to_string());
            if *all {
                let sets: Vec<_> = out.all_minimum.iter().map(|s| chain_json(s, &k)).collect();
                println!("{} minimum solutions", sets.len());
                run.artifact.output("all_minimum", sets);
            }
            match &out.solution {
                Some(s) => {
                    print_chain("minimum set", s, &k);
                    run.artifact.output("solution", chain_json(s, &k));
                    Ok(true)
                }
                None => {
                    println!("no hitting set of size at most {bound}");
                    run.artifact.output("solution", serde_json::Value::Null);
                    Ok(false)
                }
            }
        }
        Command::BntGreedy { input, beta_cap, .. } => {
            let (k, z) = run.cycle(input)?;
            run.artifact.param("beta_cap", beta_cap);
            let out = solve_bnt_greedy(&k, &z, &BntConfig { beta_cap: *beta_cap })?;
            print_chain("set", &out.solution, &k);
            println!("{} rounds (bound {})", out.iterations.len(), out.iteration_bound);
            run.artifact.output("solution", chain_json(&out.solution, &k));
            run.artifact.output("rounds", out.iterations.len());
            run.artifact.output("round_bound", out.iteration_bound);
            report_verdict(run, "bnt_feasible", &out.certificate);
            Ok(true)
        }
        Command::GlobalThs {
            complex,
            dim,
            k: bound,
            trials,
            seed,
            ..
        } => {
            let k = run.complex(complex)?;
            let seed = seed_for(run, *seed, json)?;
            run.artifact.param("dim", dim);
            run.artifact.param("k", bound);
            run.artifact.param("trials", trials);
            let config = FptConfig {
                k: *bound,
                parallel,
                ..FptConfig::new(*bound)
            };
            let result = solve_global_ths(&k, *dim, &config, seed, *trials)?;
            Ok(report_randomized(run, &k, &result))
        }
        Command::GlobalBnt {
            complex,
            dim,
            trials,
            seed,
            beta_cap,
            ..
        } => {
            let k = run.complex(complex)?;
            let seed = seed_for(run, *seed, json)?;
            run.artifact.param("dim", dim);
            run.artifact.param("trials", trials);
            run.artifact.param("beta_cap", beta_cap);
            let result = solve_global_bnt(&k, *dim, &BntConfig { beta_cap: *beta_cap }, seed, *trials, parallel)?;
            Ok(report_randomized(run, &k, &result))
        }
        Command::Verify { problem } => match problem {
            VerifyCommand::Ths { input, set, .. } => {
                let (k, z) = run.cycle(input)?;
                let s = run.chain("set", set, &k)?;
                Ok(report_verdict(run, "ths_feasible", &is_ths_feasible(&k, &z, &s)?))
            }
            VerifyCommand::Bnt { input, set, .. } => {
                let (k, z) = run.cycle(input)?;
                let s = run.chain("set", set, &k)?;
                Ok(report_verdict(run, "bnt_feasible", &is_bnt_feasible(&k, &z, &s)?))
            }
            VerifyCommand::GlobalThs { complex, set, .. } => {
                let k = run.complex(complex)?;
                let s = run.chain("set", set, &k)?;
                Ok(report_verdict(
                    run,
                    "global_ths",
                    &is_global_ths_solution(&k, s.dim(), &s)?,
                ))
            }
            VerifyCommand::GlobalBnt { complex, set, .. } => {
                let k = run.complex(complex)?;
                let s = run.chain("set", set, &k)?;
                let Some(r) = s.dim().checked_sub(1) else {
                    bail!(Error::Input("the set must have positive dimension".into()));
                };
                Ok(report_verdict(run, "global_bnt", &is_global_bnt_solution(&k, r, &s)?))
            }
        },
        Command::Oracle { query } => match query {
            OracleCommand::Ths {
                input, kmax, budget, ..
            } => {
                let (k, z) = run.cycle(input)?;
                run.artifact.param("kmax", kmax);
                let out = oracle::brute_ths(&k, &z, *kmax, &budget.get(), parallel)?;
                Ok(report_oracle(run, &k, &out, *kmax))
            }
            OracleCommand::Bnt {
                input, kmax, budget, ..
            } => {
                let (k, z) = run.cycle(input)?;
                run.artifact.param("kmax", kmax);
                let out = oracle::brute_bnt(&k, &z, *kmax, &budget.get(), parallel)?;
                Ok(report_oracle(run, &k, &out, *kmax))
            }
            OracleCommand::Homologous { input, budget, .. } => {
                let (k, z) = run.cycle(input)?;
                let all = oracle::enumerate_homologous(&k, &z, &budget.get())?;
                list_chains(run, &k, "homologous cycles", &all)
            }
            OracleCommand::Coset { input, budget, .. } => {
                let (k, z) = run.cycle(input)?;
                let all = oracle::enumerate_boundary_chains(&k, &z, &budget.get())?;
                list_chains(run, &k, "preimages", &all)
            }
        },
        Command::Gen {
            name,
            out,
            genus,
            graph,
            m,
            ..
        } => {
            run.artifact.param("name", name);
            run.artifact.param("genus", genus);
            run_gen(run, name, out, *genus, graph.as_deref(), *m)
        }
    }
}

fn list_chains(run: &mut Run, k: &Complex, what: &str, all: &[Chain]) -> anyhow::Result<bool> {
    println!("{} {what}", all.len());
    for (i, c) in all.iter().enumerate() {
        print_chain(&format!("#{i}"), c, k);
    }
    run.artifact.output("count", all.len());
    run.artifact
        .output("chains", all.iter().map(|c| chain_json(c, k)).collect::<Vec<_>>());
    Ok(!all.is_empty())
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Resource(_)) => EXIT_RESOURCE,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common().clone();
    let mut run = Run {
        artifact: RunArtifact::new(std::env::args().skip(1).collect()),
        parallel: common.parallel,
    };
    run.artifact.param("parallel", common.parallel);
    let start = Instant::now();
    let code = match execute(&mut run, &cli.command) {
        Ok(true) => EXIT_SOLVED,
        Ok(false) => EXIT_NONE,
        Err(e) => {
            eprintln!("error: {e:#}");
            run.artifact.error = Some(format!("{e:#}"));
            exit_code_for(&e)
        }
    };
    run.artifact.exit_code = i32::from(code);
    run.artifact.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    if let Some(path) = &common.json {
        let text = serde_json::to_string_pretty(&run.artifact).expect("report serializes");
        if let Err(e) = fs::write(path, text + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT);
        }
    }
    ExitCode::from(code)
}
