use serde::{Deserialize, Serialize};

use super::run::{ExperimentConfig, InstanceSource, Problem};
use super::sweep::sweep_problem;
use crate::ansatz::{paper_cost_model, Algorithm, CostProblem};
use crate::error::{invalid, Result};
use crate::optimizer::AdamConfig;
use crate::problems::{gen_mvc, gen_portfolio};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleConfig {
    pub sizes: Vec<usize>,
    /// Edges per qubit; the count is capped at a complete graph.
    pub density: f64,
    pub problem: CostProblem,
    pub lambda: f64,
    pub b: f64,
    pub instance_seed: u64,
    pub qgoa_layers: Vec<usize>,
    pub qaoa_layers: Vec<usize>,
    pub seeds: Vec<u64>,
    pub qgoa_adam: AdamConfig,
    pub qaoa_adam: AdamConfig,
}

impl Default for ScaleConfig {
    fn default() -> Self {
        Self {
            sizes: (4..=12).collect(),
            density: 2.0,
            problem: CostProblem::Mvc,
            lambda: 0.5,
            b: 1.0,
            instance_seed: 0,
            qgoa_layers: vec![2],
            qaoa_layers: vec![4],
            seeds: vec![0],
            qgoa_adam: AdamConfig::default(),
            qaoa_adam: AdamConfig::default(),
        }
    }
}

/// Resource row for one algorithm at one size, taken at its best layer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleRow {
    pub algorithm: Algorithm,
    pub n_qubits: usize,
    pub n_edges: usize,
    pub layer: usize,
    pub n1: usize,
    pub n2: usize,
    pub n1_paper: usize,
    pub n2_paper: usize,
    pub n_params: usize,
    /// Lower-median convergence iteration over seeds.
    pub t: usize,
    /// `t * n_params`.
    pub classical_cost: usize,
    pub median_final_loss: f64,
    pub oracle_value: Option<f64>,
    pub mean_p_optimal: Option<f64>,
}

pub fn edges_for(n: usize, density: f64) -> usize {
    let max = n * (n - 1) / 2;
    ((density * n as f64).round() as usize).min(max)
}

pub fn scalability_curve(cfg: &ScaleConfig) -> Result<Vec<ScaleRow>> {
    if cfg.sizes.is_empty() || cfg.sizes.contains(&0) {
        return invalid("sizes must be non-empty and positive");
    }
    if !(cfg.density >= 0.0) {
        return invalid("density must be non-negative");
    }
    let mut sizes = cfg.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();

    let mut rows = Vec::new();
    for n in sizes {
        let edges = edges_for(n, cfg.density);
        let (instance, source) = match cfg.problem {
            CostProblem::Portfolio => (
                gen_portfolio(n, edges, cfg.lambda, cfg.instance_seed)?,
                InstanceSource::Portfolio { n, edges, lambda: cfg.lambda, seed: cfg.instance_seed },
            ),
            CostProblem::Mvc => (
                gen_mvc(n, edges, cfg.b, cfg.instance_seed)?.0,
                InstanceSource::Mvc { n, edges, b: cfg.b, seed: cfg.instance_seed },
            ),
        };
        let problem = Problem::prepare(instance)?;
        for (alg, layers, adam) in [
            (Algorithm::Qgoa, &cfg.qgoa_layers, &cfg.qgoa_adam),
            (Algorithm::Qaoa, &cfg.qaoa_layers, &cfg.qaoa_adam),
        ] {
            if layers.is_empty() {
                continue;
            }
            let exp = ExperimentConfig {
                source: source.clone(),
                algorithms: vec![alg],
                layers: layers.clone(),
                seeds: cfg.seeds.clone(),
                adam: *adam,
                qaoa_adam: None,
                output_dir: None,
            };
            exp.validate()?;
            let res = sweep_problem(&problem, &exp);
            if let Some(f) = res.failures.first() {
                return invalid(format!("n = {n}, {alg} L = {}: {}", f.layer, f.message));
            }
            let Some(&(_, layer)) = res.best_layers.first() else {
                continue;
            };
            let summary = res
                .summary
                .iter()
                .find(|s| s.layer == layer)
                .expect("best layer has a summary row");
            let run = res.runs.iter().find(|r| r.layer == layer).expect("best layer has runs");
            let paper = paper_cost_model(alg, cfg.problem, n, edges, layer);
            rows.push(ScaleRow {
                algorithm: alg,
                n_qubits: n,
                n_edges: edges,
                layer,
                n1: run.gate_counts.singles,
                n2: run.gate_counts.doubles,
                n1_paper: paper.counts.singles,
                n2_paper: paper.counts.doubles,
                n_params: run.n_params,
                t: summary.median_t,
                classical_cost: summary.median_t * run.n_params,
                median_final_loss: summary.median_loss,
                oracle_value: run.oracle_value,
                mean_p_optimal: summary.mean_p_optimal,
            });
        }
    }
    rows.sort_by_key(|r| (r.algorithm, r.n_qubits));
    Ok(rows)
}
