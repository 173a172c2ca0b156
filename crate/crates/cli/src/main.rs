use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qgoa_core::harness::{
    emit_layer_summary, emit_report, emit_scale_table, locality_probe, read_runs, run_on, scalability_curve,
    summary_rows, sweep, ExperimentConfig, InstanceSource, Problem, RunResult, ScaleConfig, SweepResult,
    SUMMARY_HEADER,
};
use qgoa_core::bits::fmt_f64;
use qgoa_core::problems::{gen_mvc, gen_portfolio, load_instance, save_instance, to_json};
use qgoa_core::{brute_force, AdamConfig, Algorithm, CostProblem, GradientEngine};

/// Environment variable holding the worker thread count.
const THREADS_ENV: &str = "QGOA_THREADS";

#[derive(Parser)]
#[command(name = "qgoa", version, about = "Graph-Hamiltonian variational optimization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded problem instance as JSON.
    Gen(GenArgs),
    /// Brute-force the optimum of an instance.
    Solve {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Optimize one circuit on one instance.
    Run(RunArgs),
    /// Run a layer x seed grid and select the best layer per algorithm.
    Sweep(SweepArgs),
    /// Resource and convergence table across system sizes.
    Scale(ScaleArgs),
    /// Readout sensitivities on the three-vertex path.
    ProbeLocality(ProbeArgs),
    /// Rewrite summary.csv and traces from a runs.jsonl file.
    Report {
        #[arg(long)]
        runs: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Portfolio,
    Mvc,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    Qgoa,
    Qaoa,
    Both,
}

impl AlgArg {
    fn algorithms(self) -> Vec<Algorithm> {
        match self {
            AlgArg::Qgoa => vec![Algorithm::Qgoa],
            AlgArg::Qaoa => vec![Algorithm::Qaoa],
            AlgArg::Both => vec![Algorithm::Qgoa, Algorithm::Qaoa],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Adjoint,
    Fd,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    edges: usize,
    /// Risk weight for portfolio instances.
    #[arg(long, default_value_t = 0.5)]
    lambda: f64,
    /// Per-vertex penalty for vertex-cover instances.
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct AdamArgs {
    #[arg(long, default_value_t = 0.05)]
    lr: f64,
    #[arg(long, default_value_t = 0.9)]
    beta1: f64,
    #[arg(long, default_value_t = 0.999)]
    beta2: f64,
    #[arg(long, default_value_t = 1e-8)]
    adam_eps: f64,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 25)]
    window: usize,
    #[arg(long, value_enum, default_value_t = Engine::Adjoint)]
    engine: Engine,
    /// Step for the finite-difference engine.
    #[arg(long, default_value_t = 1e-5)]
    fd_eps: f64,
}

impl AdamArgs {
    fn config(&self) -> AdamConfig {
        AdamConfig {
            learning_rate: self.lr,
            beta1: self.beta1,
            beta2: self.beta2,
            epsilon: self.adam_eps,
            max_iters: self.max_iters,
            tol: self.tol,
            window: self.window,
            seed: 0,
            engine: match self.engine {
                Engine::Adjoint => GradientEngine::Adjoint,
                Engine::Fd => GradientEngine::FiniteDifference { eps: self.fd_eps },
            },
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = AlgArg::Qgoa)]
    alg: AlgArg,
    #[arg(long, default_value_t = 2)]
    layers: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    adam: AdamArgs,
    /// Report directory; nothing is written when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = AlgArg::Both)]
    alg: AlgArg,
    /// Inclusive layer range such as `2..6`.
    #[arg(long, value_parser = parse_range, default_value = "1..4")]
    layers: RangeInclusive<usize>,
    /// Number of seeds, run as `0..k`.
    #[arg(long, default_value_t = 10)]
    seeds: u64,
    #[command(flatten)]
    adam: AdamArgs,
    /// Iteration budget for QAOA cells when different from `--max-iters`.
    #[arg(long)]
    qaoa_max_iters: Option<usize>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct ScaleArgs {
    #[arg(long, value_parser = parse_range, default_value = "4..12")]
    sizes: RangeInclusive<usize>,
    /// Edges per qubit.
    #[arg(long, default_value_t = 2.0)]
    density: f64,
    #[arg(long, value_enum, default_value_t = Kind::Mvc)]
    kind: Kind,
    #[arg(long, default_value_t = 0.5)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long, default_value_t = 0)]
    instance_seed: u64,
    #[arg(long, value_parser = parse_range, default_value = "2..2")]
    qgoa_layers: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range, default_value = "4..4")]
    qaoa_layers: RangeInclusive<usize>,
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    #[command(flatten)]
    adam: AdamArgs,
    #[arg(long)]
    qaoa_max_iters: Option<usize>,
    #[arg(long, default_value = "out/scale.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct ProbeArgs {
    /// Encoded features for V1, V2, V3.
    #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = [0.9, -0.6, 1.3])]
    x: Vec<f64>,
    /// RY angles for V1..V3 followed by RZ angles for V1..V3.
    #[arg(long, value_delimiter = ',', num_args = 6, default_values_t = [0.3, -1.1, 0.8, 0.5, 1.7, -0.4])]
    theta: Vec<f64>,
    #[arg(long, default_value_t = 0.7)]
    eta: f64,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().with_context(|| format!("{THREADS_ENV}={v:?} is not a thread count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn print_summary(results: &[RunResult]) -> Result<()> {
    let mut out = io::stdout().lock();
    let written = writeln!(out, "{}", SUMMARY_HEADER.join(","))
        .and_then(|_| summary_rows(results).iter().try_for_each(|row| writeln!(out, "{}", row.join(","))));
    match written {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn gen(args: GenArgs) -> Result<()> {
    let inst = match args.kind {
        Kind::Portfolio => gen_portfolio(args.n, args.edges, args.lambda, args.seed)?,
        Kind::Mvc => gen_mvc(args.n, args.edges, args.b, args.seed)?.0,
    };
    match args.out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            save_instance(&inst, &path)?;
        }
        None => println!("{}", to_json(&inst)?),
    }
    Ok(())
}

fn solve(instance: &Path) -> Result<()> {
    let inst = load_instance(instance)?;
    let oracle = brute_force(&inst)?;
    println!("optimal_value {}", oracle.optimal_value);
    for b in oracle.bitstrings() {
        println!("{b}");
    }
    Ok(())
}

fn run(args: RunArgs) -> Result<()> {
    let problem = Problem::prepare(load_instance(&args.instance)?)?;
    let adam = args.adam.config();
    let mut results = Vec::new();
    for alg in args.alg.algorithms() {
        results.push(run_on(&problem, alg, args.layers, args.seed, &adam)?);
    }
    if let Some(dir) = &args.out {
        emit_report(&results, dir)?;
    }
    print_summary(&results)
}

fn finish_sweep(res: &SweepResult, out: &Path) -> Result<()> {
    emit_report(&res.runs, out)?;
    emit_layer_summary(&res.summary, &out.join("layers.csv"))?;
    for f in &res.failures {
        eprintln!("cell {} L={} seed={} failed: {}", f.algorithm, f.layer, f.seed, f.message);
    }
    for (alg, layer) in &res.best_layers {
        println!("best {alg} layer {layer}");
    }
    Ok(())
}

fn run_sweep(args: SweepArgs) -> Result<()> {
    if args.seeds == 0 {
        bail!("--seeds must be at least 1");
    }
    let adam = args.adam.config();
    let cfg = ExperimentConfig {
        source: InstanceSource::File(args.instance),
        algorithms: args.alg.algorithms(),
        layers: args.layers.collect(),
        seeds: (0..args.seeds).collect(),
        adam,
        qaoa_adam: args.qaoa_max_iters.map(|m| AdamConfig { max_iters: m, ..adam }),
        output_dir: Some(args.out.clone()),
    };
    let res = sweep(&cfg)?;
    finish_sweep(&res, &args.out)
}

fn scale(args: ScaleArgs) -> Result<()> {
    let adam = args.adam.config();
    let cfg = ScaleConfig {
        sizes: args.sizes.collect(),
        density: args.density,
        problem: match args.kind {
            Kind::Portfolio => CostProblem::Portfolio,
            Kind::Mvc => CostProblem::Mvc,
        },
        lambda: args.lambda,
        b: args.b,
        instance_seed: args.instance_seed,
        qgoa_layers: args.qgoa_layers.collect(),
        qaoa_layers: args.qaoa_layers.collect(),
        seeds: (0..args.seeds.max(1)).collect(),
        qgoa_adam: adam,
        qaoa_adam: AdamConfig { max_iters: args.qaoa_max_iters.unwrap_or(adam.max_iters), ..adam },
    };
    let rows = scalability_curve(&cfg)?;
    if let Some(dir) = args.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    emit_scale_table(&rows, &args.out)?;
    for r in &rows {
        println!("{} n={} edges={} L={} n2={} T={} cost={}", r.algorithm, r.n_qubits, r.n_edges, r.layer, r.n2, r.t, r.classical_cost);
    }
    Ok(())
}

fn probe(args: ProbeArgs) -> Result<()> {
    let x: [f64; 3] = args.x.try_into().map_err(|_| anyhow::anyhow!("--x takes 3 values"))?;
    let theta: [f64; 6] = args.theta.try_into().map_err(|_| anyhow::anyhow!("--theta takes 6 values"))?;
    let p = locality_probe(x, theta, args.eta)?;
    println!("readout,d_dx1,d_dx2,d_dx3");
    for i in 1..=3 {
        println!("M{i},{},{},{}", fmt_f64(p.d(i, 1)), fmt_f64(p.d(i, 2)), fmt_f64(p.d(i, 3)));
    }
    Ok(())
}

fn report(runs: &Path, out: &Path) -> Result<()> {
    let results = read_runs(runs)?;
    emit_report(&results, out)?;
    print_summary(&results)
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    configure_threads()?;
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve { instance } => solve(&instance),
        Command::Run(a) => run(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Scale(a) => scale(a),
        Command::ProbeLocality(a) => probe(a),
        Command::Report { runs, out } => report(&runs, &out),
    }
}
