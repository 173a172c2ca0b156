//! Sensitivity of single-qubit readouts to the encoded features on the
//! three-vertex path `V2 - V1 - V3`.
//!
//! Qubits 0, 1, 2 hold V1 (the centre), V2 and V3. The circuit encodes each
//! feature with `RY(x_i)`, applies `RY(theta_i)` and `RZ(theta_{3+i})`, then
//! one aggregation block with parameter `eta` on edges (V1, V2), (V1, V3).
//! Entry `[i][j]` of the result is `d<Z_i>/dx_j` by central differences.

use std::collections::BTreeMap;

use crate::ansatz::push_aggregation;
use crate::error::Result;
use crate::observables::{Observable, Pauli, PauliString};
use crate::problems::GraphInstance;
use crate::sim::{run_circuit, AngleSlot, Circuit, Gate, GateKind, InitialState};

pub const PROBE_EPS: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq)]
pub struct LocalityProbe {
    pub sensitivity: [[f64; 3]; 3],
}

impl LocalityProbe {
    /// `d<M_i>/dx_j` with 1-based vertex labels.
    pub fn d(&self, readout: usize, feature: usize) -> f64 {
        self.sensitivity[readout - 1][feature - 1]
    }
}

fn probe_circuit(theta: &[f64; 6], eta: f64) -> Result<Circuit> {
    let graph = GraphInstance::new(3, BTreeMap::from([((0, 1), 1.0), ((0, 2), 1.0)]), vec![0.0; 3])?;
    // parameters 0..3 are the features, 3 is eta
    let mut c = Circuit::new(3, 4, InitialState::AllZero)?;
    for q in 0..3 {
        c.push(Gate::bound(GateKind::RY(q), q, 1.0))?;
    }
    for q in 0..3 {
        c.push(Gate::fixed(GateKind::RY(q), theta[q]))?;
    }
    for q in 0..3 {
        c.push(Gate::fixed(GateKind::RZ(q), theta[3 + q]))?;
    }
    push_aggregation(&mut c, &graph, 3)?;
    // pin eta so that only the features remain free
    for g in &mut c.gates {
        if let AngleSlot::Bound { param: 3, scale } = g.angle {
            g.angle = AngleSlot::Fixed(scale * eta);
        }
    }
    Ok(c)
}

pub fn locality_probe(x: [f64; 3], theta: [f64; 6], eta: f64) -> Result<LocalityProbe> {
    let circuit = probe_circuit(&theta, eta)?;
    let readouts: Vec<Observable> = (0..3)
        .map(|q| Observable::new(3, vec![PauliString::single(q, Pauli::Z, 1.0)], 0.0))
        .collect::<Result<_>>()?;
    let eval = |feats: &[f64; 3]| -> Result<[f64; 3]> {
        let params = [feats[0], feats[1], feats[2], 0.0];
        let state = run_circuit(&circuit, &params)?;
        Ok([
            readouts[0].expectation(&state)?,
            readouts[1].expectation(&state)?,
            readouts[2].expectation(&state)?,
        ])
    };
    let mut sensitivity = [[0.0; 3]; 3];
    for j in 0..3 {
        let mut up = x;
        let mut down = x;
        up[j] += PROBE_EPS;
        down[j] -= PROBE_EPS;
        let (fu, fd) = (eval(&up)?, eval(&down)?);
        for i in 0..3 {
            sensitivity[i][j] = (fu[i] - fd[i]) / (2.0 * PROBE_EPS);
        }
    }
    Ok(LocalityProbe { sensitivity })
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA: [f64; 6] = [0.3, -1.1, 0.8, 0.5, 1.7, -0.4];
    const X: [f64; 3] = [0.9, -0.6, 1.3];

    #[test]
    fn without_aggregation_readouts_are_local() {
        let p = locality_probe(X, THETA, 0.0).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                if i != j {
                    assert!(p.d(i, j).abs() < 1e-8, "d<M{i}>/dx{j} = {}", p.d(i, j));
                }
            }
            assert!(p.d(i, i).abs() > 1e-3);
        }
    }

    #[test]
    fn aggregation_couples_neighbours() {
        let p = locality_probe(X, THETA, 0.7).unwrap();
        assert!(p.d(2, 1).abs() > 1e-3, "{:?}", p.sensitivity);
    }
}
