use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::ansatz::{build_qaoa, build_qgoa, count_gates, paper_cost_model, Algorithm, CostProblem, GateCounts};
use crate::bits::format_bits;
use crate::error::{invalid, Result};
use crate::observables::{qubo_to_observable, CompiledObservable, SpinConvention};
use crate::optimizer::{adam_minimize, init_params, AdamConfig, OptTrace};
use crate::problems::{
    brute_force, gen_mvc, gen_portfolio, instance_graph, load_instance, GraphInstance, OracleResult,
    ProblemKind, QuboInstance, MAX_ORACLE_VARIABLES,
};
use crate::sim::run_circuit;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum InstanceSource {
    File(PathBuf),
    Portfolio { n: usize, edges: usize, lambda: f64, seed: u64 },
    Mvc { n: usize, edges: usize, b: f64, seed: u64 },
}

impl InstanceSource {
    pub fn load(&self) -> Result<QuboInstance> {
        match self {
            InstanceSource::File(path) => load_instance(path),
            InstanceSource::Portfolio { n, edges, lambda, seed } => gen_portfolio(*n, *edges, *lambda, *seed),
            InstanceSource::Mvc { n, edges, b, seed } => gen_mvc(*n, *edges, *b, *seed).map(|(inst, _)| inst),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub source: InstanceSource,
    pub algorithms: Vec<Algorithm>,
    pub layers: Vec<usize>,
    pub seeds: Vec<u64>,
    pub adam: AdamConfig,
    /// Overrides `adam` for QAOA runs when set.
    pub qaoa_adam: Option<AdamConfig>,
    pub output_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(source: InstanceSource, algorithm: Algorithm, layers: usize, seed: u64) -> Self {
        Self {
            source,
            algorithms: vec![algorithm],
            layers: vec![layers],
            seeds: vec![seed],
            adam: AdamConfig::default(),
            qaoa_adam: None,
            output_dir: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return invalid("no algorithm selected");
        }
        if self.layers.is_empty() || self.layers.contains(&0) {
            return invalid("layers must be non-empty and each at least 1");
        }
        if self.seeds.is_empty() {
            return invalid("at least one seed is required");
        }
        Ok(())
    }

    pub fn adam_for(&self, alg: Algorithm) -> &AdamConfig {
        match (alg, &self.qaoa_adam) {
            (Algorithm::Qaoa, Some(cfg)) => cfg,
            _ => &self.adam,
        }
    }
}

/// An instance compiled once and shared by every run on it.
#[derive(Clone, Debug)]
pub struct Problem {
    pub instance: QuboInstance,
    pub graph: GraphInstance,
    pub compiled: CompiledObservable,
    /// `None` when the instance exceeds the oracle bound.
    pub oracle: Option<OracleResult>,
}

impl Problem {
    pub fn prepare(instance: QuboInstance) -> Result<Self> {
        Self::prepare_with_oracle_limit(instance, MAX_ORACLE_VARIABLES)
    }

    pub fn prepare_with_oracle_limit(instance: QuboInstance, oracle_limit: usize) -> Result<Self> {
        let convention = match instance.kind {
            ProblemKind::Mvc { .. } => SpinConvention::OneIsPlusOne,
            ProblemKind::Portfolio { .. } | ProblemKind::Generic => SpinConvention::ZeroIsPlusOne,
        };
        let compiled = qubo_to_observable(&instance, convention)?;
        let graph = instance_graph(&instance);
        let oracle = if instance.n <= oracle_limit.min(MAX_ORACLE_VARIABLES) {
            Some(brute_force(&instance)?)
        } else {
            None
        };
        Ok(Self {
            instance,
            graph,
            compiled,
            oracle,
        })
    }

    pub fn cost_problem(&self) -> CostProblem {
        match self.instance.kind {
            ProblemKind::Mvc { .. } => CostProblem::Mvc,
            _ => CostProblem::Portfolio,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuccessMetrics {
    pub p_optimal: f64,
    pub argmax_match: bool,
    pub argmax: usize,
}

/// Probability mass on the oracle set, and whether a most probable
/// assignment is optimal. `dist` is indexed by assignment; probabilities
/// within 1e-12 of the maximum count as tied for the argmax.
pub fn success_metrics(dist: &[f64], oracle: &OracleResult) -> SuccessMetrics {
    let p_optimal = oracle
        .optimal_assignments
        .iter()
        .map(|&x| dist[x])
        .sum::<f64>()
        .min(1.0);
    let p_max = dist.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let maximal = |x: usize| dist[x] >= p_max - 1e-12;
    let argmax_match = oracle.optimal_assignments.iter().any(|&x| maximal(x));
    let argmax = (0..dist.len()).find(|&x| maximal(x) && (!argmax_match || oracle.is_optimal(x))).unwrap_or(0);
    SuccessMetrics {
        p_optimal,
        argmax_match,
        argmax,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub algorithm: Algorithm,
    pub layer: usize,
    pub seed: u64,
    pub instance_seed: u64,
    pub n_qubits: usize,
    pub n_edges: usize,
    /// Convergence iteration, or `max_iters` when `converged` is false.
    pub converged_t: usize,
    pub converged: bool,
    pub max_iters: usize,
    /// Includes the compile-time offset, so it is directly comparable to
    /// `oracle_value`.
    pub final_loss: f64,
    pub oracle_value: Option<f64>,
    pub optimal_bitstrings: Option<Vec<String>>,
    pub p_optimal: Option<f64>,
    pub argmax_match: Option<bool>,
    pub argmax_bitstring: String,
    pub gate_counts: GateCounts,
    pub paper_model: GateCounts,
    pub n_params: usize,
    pub convention: SpinConvention,
    /// Final state probabilities indexed by assignment (bit `i` = `x_i`).
    pub final_distribution: Vec<f64>,
    pub trace: OptTrace,
    pub trace_path: String,
}

pub fn run_single(cfg: &ExperimentConfig, alg: Algorithm, layer: usize, seed: u64) -> Result<RunResult> {
    let problem = Problem::prepare(cfg.source.load()?)?;
    run_on(&problem, alg, layer, seed, cfg.adam_for(alg))
}

/// Builds, optimizes and scores one circuit on a prepared problem.
pub fn run_on(problem: &Problem, alg: Algorithm, layer: usize, seed: u64, adam: &AdamConfig) -> Result<RunResult> {
    let (circuit, layout) = match alg {
        Algorithm::Qgoa => build_qgoa(&problem.graph, layer)?,
        Algorithm::Qaoa => build_qaoa(&problem.compiled.observable, layer)?,
    };
    let loss_obs = problem.compiled.loss_observable();
    let init = init_params(&layout, seed);
    let trace = adam_minimize(&circuit, &loss_obs, &init, adam)?;
    run_from_trace(problem, alg, layer, seed, &circuit, trace)
}

pub(crate) fn run_from_trace(
    problem: &Problem,
    alg: Algorithm,
    layer: usize,
    seed: u64,
    circuit: &crate::sim::Circuit,
    trace: OptTrace,
) -> Result<RunResult> {
    let n = problem.instance.n;
    let state = run_circuit(circuit, &trace.final_params)?;
    let convention = problem.compiled.convention;
    let final_distribution = convention.assignment_distribution(&state.probabilities());
    let n_edges = problem.graph.n_edges();
    let paper = paper_cost_model(alg, problem.cost_problem(), n, n_edges, layer);

    let metrics = problem.oracle.as_ref().map(|o| success_metrics(&final_distribution, o));
    let argmax = metrics.map(|m| m.argmax).unwrap_or_else(|| {
        let p_max = final_distribution.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        final_distribution.iter().position(|&p| p == p_max).unwrap_or(0)
    });

    Ok(RunResult {
        algorithm: alg,
        layer,
        seed,
        instance_seed: problem.instance.seed,
        n_qubits: n,
        n_edges,
        converged_t: trace.iterations(),
        converged: trace.converged_at.is_some(),
        max_iters: trace.max_iters,
        final_loss: trace.final_loss(),
        oracle_value: problem.oracle.as_ref().map(|o| o.optimal_value),
        optimal_bitstrings: problem.oracle.as_ref().map(OracleResult::bitstrings),
        p_optimal: metrics.map(|m| m.p_optimal),
        argmax_match: metrics.map(|m| m.argmax_match),
        argmax_bitstring: format_bits(argmax, n),
        gate_counts: count_gates(circuit),
        paper_model: paper.counts,
        n_params: circuit.n_params(),
        convention,
        final_distribution,
        trace,
        trace_path: format!("traces/{}.csv", super::report::trace_id(alg, layer, seed)),
    })
}
