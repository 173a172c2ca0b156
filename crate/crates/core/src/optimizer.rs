//! ADAM minimization of circuit expectation values.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ansatz::ParamLayout;
use crate::error::{invalid, Error, Result};
use crate::observables::Observable;
use crate::sim::{run_circuit, value_and_adjoint_gradient, Circuit};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GradientEngine {
    Adjoint,
    FiniteDifference { eps: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdamConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub max_iters: usize,
    /// Stop once the loss range over the trailing `window` iterations drops
    /// below `tol`.
    pub tol: f64,
    pub window: usize,
    pub seed: u64,
    pub engine: GradientEngine,
}

impl Default for AdamConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.05,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            max_iters: 500,
            tol: 1e-6,
            window: 25,
            seed: 0,
            engine: GradientEngine::Adjoint,
        }
    }
}

impl AdamConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return invalid(format!("learning rate must be positive, got {}", self.learning_rate));
        }
        for (name, b) in [("beta1", self.beta1), ("beta2", self.beta2)] {
            if !(b > 0.0 && b < 1.0) {
                return invalid(format!("{name} must lie in (0, 1), got {b}"));
            }
        }
        if self.window == 0 {
            return invalid("convergence window must be at least 1");
        }
        if !(self.epsilon > 0.0) || !(self.tol >= 0.0) {
            return invalid("epsilon must be positive and tol non-negative");
        }
        if let GradientEngine::FiniteDifference { eps } = self.engine {
            if !(eps > 0.0) {
                return invalid("finite-difference step must be positive");
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptTrace {
    pub losses: Vec<f64>,
    pub grad_norms: Vec<f64>,
    /// Parameters at which the last loss was evaluated.
    pub final_params: Vec<f64>,
    /// Iteration count at which the convergence test first passed.
    pub converged_at: Option<usize>,
    pub max_iters: usize,
}

impl OptTrace {
    pub fn final_loss(&self) -> f64 {
        self.losses.last().copied().unwrap_or(f64::NAN)
    }

    /// Convergence iteration, or the budget when the run never converged.
    pub fn iterations(&self) -> usize {
        self.converged_at.unwrap_or(self.max_iters)
    }
}

/// Uniform(-pi, pi) initial parameters.
pub fn init_params(layout: &ParamLayout, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..layout.n_params())
        .map(|_| rng.random_range(-PI..PI))
        .collect()
}

/// Central differences `(f(p + eps e_j) - f(p - eps e_j)) / 2 eps`.
pub fn finite_diff_gradient(circuit: &Circuit, obs: &Observable, params: &[f64], eps: f64) -> Result<Vec<f64>> {
    let mut p = params.to_vec();
    let mut grad = Vec::with_capacity(params.len());
    for j in 0..params.len() {
        p[j] = params[j] + eps;
        let up = obs.expectation(&run_circuit(circuit, &p)?)?;
        p[j] = params[j] - eps;
        let down = obs.expectation(&run_circuit(circuit, &p)?)?;
        p[j] = params[j];
        grad.push((up - down) / (2.0 * eps));
    }
    Ok(grad)
}

fn evaluate(circuit: &Circuit, obs: &Observable, params: &[f64], engine: GradientEngine) -> Result<(f64, Vec<f64>)> {
    match engine {
        GradientEngine::Adjoint => value_and_adjoint_gradient(circuit, obs, params),
        GradientEngine::FiniteDifference { eps } => {
            let value = obs.expectation(&run_circuit(circuit, params)?)?;
            Ok((value, finite_diff_gradient(circuit, obs, params, eps)?))
        }
    }
}

/// Minimizes `<obs>` over the circuit parameters with bias-corrected ADAM.
///
/// The observable's constant is part of every logged loss.
pub fn adam_minimize(circuit: &Circuit, obs: &Observable, init: &[f64], cfg: &AdamConfig) -> Result<OptTrace> {
    cfg.validate()?;
    if init.len() != circuit.n_params() {
        return invalid(format!(
            "initial parameters have length {}, circuit expects {}",
            init.len(),
            circuit.n_params()
        ));
    }
    let mut params = init.to_vec();
    let mut m = vec![0.0; params.len()];
    let mut v = vec![0.0; params.len()];
    let mut losses = Vec::with_capacity(cfg.max_iters);
    let mut grad_norms = Vec::with_capacity(cfg.max_iters);
    let mut converged_at = None;

    for iteration in 0..cfg.max_iters {
        let (loss, grad) = evaluate(circuit, obs, &params, cfg.engine)?;
        if !loss.is_finite() {
            return Err(Error::NonFinite { what: "loss", iteration });
        }
        if grad.iter().any(|g| !g.is_finite()) {
            return Err(Error::NonFinite { what: "gradient", iteration });
        }
        losses.push(loss);
        grad_norms.push(grad.iter().map(|g| g * g).sum::<f64>().sqrt());

        if losses.len() >= cfg.window {
            let tail = &losses[losses.len() - cfg.window..];
            let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
            if hi - lo < cfg.tol {
                converged_at = Some(losses.len());
                break;
            }
        }
        if iteration + 1 == cfg.max_iters {
            break;
        }

        let t = (iteration + 1) as i32;
        let c1 = 1.0 - cfg.beta1.powi(t);
        let c2 = 1.0 - cfg.beta2.powi(t);
        for k in 0..params.len() {
            m[k] = cfg.beta1 * m[k] + (1.0 - cfg.beta1) * grad[k];
            v[k] = cfg.beta2 * v[k] + (1.0 - cfg.beta2) * grad[k] * grad[k];
            let m_hat = m[k] / c1;
            let v_hat = v[k] / c2;
            params[k] -= cfg.learning_rate * m_hat / (v_hat.sqrt() + cfg.epsilon);
        }
    }

    Ok(OptTrace {
        losses,
        grad_norms,
        final_params: params,
        converged_at,
        max_iters: cfg.max_iters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::ParamLabel;
    use crate::observables::{Pauli, PauliString};
    use crate::sim::{Gate, GateKind, InitialState};

    fn ry_z() -> (Circuit, Observable) {
        let mut c = Circuit::new(1, 1, InitialState::AllZero).unwrap();
        c.push(Gate::bound(GateKind::RY(0), 0, 1.0)).unwrap();
        let obs = Observable::new(1, vec![PauliString::single(0, Pauli::Z, 1.0)], 0.0).unwrap();
        (c, obs)
    }

    #[test]
    fn init_is_seeded_and_in_range() {
        let layout = ParamLayout {
            labels: (0..38).map(|layer| ParamLabel::Eta { layer }).collect(),
        };
        let a = init_params(&layout, 3);
        assert_eq!(a.len(), 38);
        assert_eq!(a, init_params(&layout, 3));
        assert_ne!(a, init_params(&layout, 4));
        assert!(a.iter().all(|p| p.abs() < PI));
    }

    #[test]
    fn finds_cosine_minimum() {
        let (c, obs) = ry_z();
        let cfg = AdamConfig {
            max_iters: 2000,
            ..AdamConfig::default()
        };
        let trace = adam_minimize(&c, &obs, &[0.1], &cfg).unwrap();
        assert!((trace.final_loss() + 1.0).abs() < 1e-4, "{}", trace.final_loss());
        let theta = trace.final_params[0].rem_euclid(2.0 * PI);
        assert!((theta - PI).abs() < 1e-2, "{theta}");
        assert!(trace.converged_at.is_some());
    }

    #[test]
    fn constant_objective_converges_after_one_window() {
        let (c, _) = ry_z();
        let obs = Observable::constant_only(1, 2.5);
        let cfg = AdamConfig::default();
        let trace = adam_minimize(&c, &obs, &[0.3], &cfg).unwrap();
        assert_eq!(trace.converged_at, Some(cfg.window));
        assert!(trace.losses.iter().all(|l| *l == 2.5));
    }

    #[test]
    fn small_steps_descend_monotonically() {
        let (c, obs) = ry_z();
        let cfg = AdamConfig {
            learning_rate: 1e-3,
            max_iters: 300,
            ..AdamConfig::default()
        };
        let trace = adam_minimize(&c, &obs, &[0.1], &cfg).unwrap();
        for w in trace.losses[5..].windows(2) {
            assert!(w[1] <= w[0] + 1e-9);
        }
    }

    #[test]
    fn finite_differences() {
        let (c, obs) = ry_z();
        let g = finite_diff_gradient(&c, &obs, &[PI / 2.0], 1e-5).unwrap();
        assert!((g[0] + 1.0).abs() < 1e-8);
        let empty = Circuit::new(1, 0, InitialState::AllZero).unwrap();
        assert!(finite_diff_gradient(&empty, &obs, &[], 1e-5).unwrap().is_empty());
    }

    #[test]
    fn non_finite_loss_reports_iteration() {
        let (c, _) = ry_z();
        let obs = Observable::constant_only(1, f64::INFINITY);
        let err = adam_minimize(&c, &obs, &[0.0], &AdamConfig::default()).unwrap_err();
        assert!(matches!(err, Error::NonFinite { iteration: 0, .. }), "{err}");
        assert!(err.to_string().contains("iteration 0"));
    }

    #[test]
    fn rejects_bad_config() {
        let (c, obs) = ry_z();
        let cfg = AdamConfig {
            window: 0,
            ..AdamConfig::default()
        };
        assert!(adam_minimize(&c, &obs, &[0.0], &cfg).is_err());
        assert!(adam_minimize(&c, &obs, &[0.0, 1.0], &AdamConfig::default()).is_err());
    }
}
