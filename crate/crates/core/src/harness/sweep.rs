use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::run::{run_on, ExperimentConfig, Problem, RunResult};
use crate::ansatz::Algorithm;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellFailure {
    pub algorithm: Algorithm,
    pub layer: usize,
    pub seed: u64,
    pub message: String,
}

/// Aggregate over the seeds of one `(algorithm, layer)` cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerSummary {
    pub algorithm: Algorithm,
    pub layer: usize,
    pub runs: usize,
    pub best_loss: f64,
    pub median_loss: f64,
    pub mean_p_optimal: Option<f64>,
    pub argmax_successes: Option<usize>,
    pub median_t: usize,
    pub n_params: usize,
    pub n2: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    /// Ordered by `(algorithm, layer, seed)`.
    pub runs: Vec<RunResult>,
    pub failures: Vec<CellFailure>,
    pub summary: Vec<LayerSummary>,
    /// Layer with the lowest median final loss, per algorithm.
    pub best_layers: Vec<(Algorithm, usize)>,
}

pub(crate) fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let k = values.len();
    if k == 0 {
        f64::NAN
    } else if k % 2 == 1 {
        values[k / 2]
    } else {
        0.5 * (values[k / 2 - 1] + values[k / 2])
    }
}

/// Lower median.
pub(crate) fn median_usize(values: &mut [usize]) -> usize {
    values.sort_unstable();
    values.get(values.len().saturating_sub(1) / 2).copied().unwrap_or(0)
}

/// Runs the full `algorithms x layers x seeds` cross product in parallel.
pub fn sweep(cfg: &ExperimentConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let problem = Problem::prepare(cfg.source.load()?)?;
    Ok(sweep_problem(&problem, cfg))
}

pub(crate) fn sweep_problem(problem: &Problem, cfg: &ExperimentConfig) -> SweepResult {
    let mut algorithms = cfg.algorithms.clone();
    algorithms.sort();
    algorithms.dedup();
    let mut layers = cfg.layers.clone();
    layers.sort_unstable();
    layers.dedup();

    let cells: Vec<(Algorithm, usize, u64)> = algorithms
        .iter()
        .flat_map(|&a| layers.iter().flat_map(move |&l| cfg.seeds.iter().map(move |&s| (a, l, s))))
        .collect();

    let outcomes: Vec<_> = cells
        .par_iter()
        .map(|&(alg, layer, seed)| (alg, layer, seed, run_on(problem, alg, layer, seed, cfg.adam_for(alg))))
        .collect();

    let mut runs = Vec::new();
    let mut failures = Vec::new();
    for (algorithm, layer, seed, outcome) in outcomes {
        match outcome {
            Ok(r) => runs.push(r),
            Err(e) => failures.push(CellFailure {
                algorithm,
                layer,
                seed,
                message: e.to_string(),
            }),
        }
    }
    runs.sort_by_key(|r| (r.algorithm, r.layer, r.seed));

    let summary = summarize(&runs);
    let best_layers = algorithms
        .iter()
        .filter_map(|&alg| {
            summary
                .iter()
                .filter(|s| s.algorithm == alg)
                .min_by(|a, b| a.median_loss.total_cmp(&b.median_loss).then(a.layer.cmp(&b.layer)))
                .map(|s| (alg, s.layer))
        })
        .collect();

    SweepResult {
        runs,
        failures,
        summary,
        best_layers,
    }
}

/// One summary row per `(algorithm, layer)` present in `runs`.
pub(crate) fn summarize(runs: &[RunResult]) -> Vec<LayerSummary> {
    let mut keys: Vec<(Algorithm, usize)> = runs.iter().map(|r| (r.algorithm, r.layer)).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|(algorithm, layer)| {
            let cell: Vec<&RunResult> = runs
                .iter()
                .filter(|r| r.algorithm == algorithm && r.layer == layer)
                .collect();
            let mut losses: Vec<f64> = cell.iter().map(|r| r.final_loss).collect();
            let best_loss = losses.iter().copied().fold(f64::INFINITY, f64::min);
            let p: Option<Vec<f64>> = cell.iter().map(|r| r.p_optimal).collect();
            let hits: Option<Vec<bool>> = cell.iter().map(|r| r.argmax_match).collect();
            let mut ts: Vec<usize> = cell.iter().map(|r| r.converged_t).collect();
            LayerSummary {
                algorithm,
                layer,
                runs: cell.len(),
                best_loss,
                median_loss: median(&mut losses),
                mean_p_optimal: p.map(|p| p.iter().sum::<f64>() / p.len() as f64),
                argmax_successes: hits.map(|h| h.iter().filter(|b| **b).count()),
                median_t: median_usize(&mut ts),
                n_params: cell[0].n_params,
                n2: cell[0].gate_counts.doubles,
            }
        })
        .collect()
}
