//! Shared fixtures for the kernel benchmarks.

use qgoa_core::harness::Problem;
use qgoa_core::problems::{gen_mvc, gen_portfolio};
use qgoa_core::{build_qaoa, build_qgoa, init_params, Circuit, Observable};

/// A circuit, its loss observable and a seeded parameter vector.
pub struct Workload {
    pub circuit: Circuit,
    pub observable: Observable,
    pub params: Vec<f64>,
}

fn edges(n: usize) -> usize {
    (2 * n).min(n * (n - 1) / 2)
}

pub fn qgoa_portfolio(n: usize, layers: usize) -> Workload {
    let problem = Problem::prepare_with_oracle_limit(gen_portfolio(n, edges(n), 0.5, 0).unwrap(), 0).unwrap();
    let (circuit, layout) = build_qgoa(&problem.graph, layers).unwrap();
    Workload {
        circuit,
        observable: problem.compiled.loss_observable(),
        params: init_params(&layout, 0),
    }
}

pub fn qaoa_mvc(n: usize, layers: usize) -> Workload {
    let problem = Problem::prepare_with_oracle_limit(gen_mvc(n, edges(n), 1.0, 0).unwrap().0, 0).unwrap();
    let (circuit, layout) = build_qaoa(&problem.compiled.observable, layers).unwrap();
    Workload {
        circuit,
        observable: problem.compiled.loss_observable(),
        params: init_params(&layout, 0),
    }
}
