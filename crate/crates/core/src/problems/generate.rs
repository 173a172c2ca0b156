use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::instance::{GraphInstance, ProblemKind, QuboInstance};
use crate::error::{invalid, Result};

/// Raw portfolio data behind a generated instance.
#[derive(Clone, Debug, PartialEq)]
pub struct PortfolioData {
    /// Symmetric; zero off the sampled edge set.
    pub covariance: Vec<Vec<f64>>,
    pub mu: Vec<f64>,
    pub lambda: f64,
    pub seed: u64,
}

impl PortfolioData {
    /// `lambda x^T V x - (1 - lambda) mu^T x` as a QUBO.
    pub fn to_qubo(&self) -> Result<QuboInstance> {
        let n = self.mu.len();
        let lambda = self.lambda;
        let mut quad = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.covariance[i][j];
                if v != 0.0 {
                    quad.insert((i, j), lambda * v);
                }
            }
        }
        let diag = (0..n).map(|i| lambda * self.covariance[i][i]).collect();
        let linear = self.mu.iter().map(|m| -(1.0 - lambda) * m).collect();
        QuboInstance::new(n, quad, diag, linear, ProblemKind::Portfolio { lambda }, self.seed)
    }
}

fn random_edges(rng: &mut ChaCha8Rng, n: usize, n_edges: usize) -> Result<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    if n_edges > pairs.len() {
        return invalid(format!(
            "{n_edges} edges requested, a simple graph on {n} vertices has at most {}",
            pairs.len()
        ));
    }
    let mut edges: Vec<_> = sample(rng, pairs.len(), n_edges)
        .into_iter()
        .map(|k| pairs[k])
        .collect();
    edges.sort_unstable();
    Ok(edges)
}

/// Sparse portfolio: variances and returns `U(0,1)`, `n_edges` random
/// nonzero covariances `U(0,1)`.
pub fn gen_portfolio_data(n: usize, n_edges: usize, lambda: f64, seed: u64) -> Result<PortfolioData> {
    if n == 0 {
        return invalid("portfolio needs at least one asset");
    }
    if !(0.0..=1.0).contains(&lambda) {
        return invalid(format!("lambda {lambda} outside [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let variances: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    let mu: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    let edges = random_edges(&mut rng, n, n_edges)?;
    let mut covariance = vec![vec![0.0; n]; n];
    for (i, v) in variances.into_iter().enumerate() {
        covariance[i][i] = v;
    }
    for (i, j) in edges {
        let v = rng.random::<f64>();
        covariance[i][j] = v;
        covariance[j][i] = v;
    }
    Ok(PortfolioData {
        covariance,
        mu,
        lambda,
        seed,
    })
}

pub fn gen_portfolio(n: usize, n_edges: usize, lambda: f64, seed: u64) -> Result<QuboInstance> {
    gen_portfolio_data(n, n_edges, lambda, seed)?.to_qubo()
}

/// Random simple graph with exactly `n_edges` edges and its vertex cover
/// QUBO `sum_E (1 - x_i)(1 - x_j) + b sum_V x_i`.
pub fn gen_mvc(n: usize, n_edges: usize, b: f64, seed: u64) -> Result<(QuboInstance, GraphInstance)> {
    if n == 0 {
        return invalid("graph needs at least one vertex");
    }
    if !b.is_finite() {
        return invalid("penalty b must be finite");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = random_edges(&mut rng, n, n_edges)?;
    let graph = GraphInstance::unweighted(n, edges.iter().copied())?;
    let inst = mvc_qubo(&graph, b, seed)?;
    Ok((inst, graph))
}

/// Vertex cover QUBO of an existing graph.
pub fn mvc_qubo(graph: &GraphInstance, b: f64, seed: u64) -> Result<QuboInstance> {
    let n = graph.n;
    let mut linear = vec![b; n];
    let mut quad = BTreeMap::new();
    for &(i, j) in graph.edges.keys() {
        // (1 - x_i)(1 - x_j) = 1 - x_i - x_j + x_i x_j; the pair is split
        // over (i, j) and (j, i).
        quad.insert((i, j), 0.5);
        linear[i] -= 1.0;
        linear[j] -= 1.0;
    }
    let mut inst = QuboInstance::new(n, quad, vec![0.0; n], linear, ProblemKind::Mvc { b }, seed)?;
    inst.constant = graph.n_edges() as f64;
    Ok(inst)
}
