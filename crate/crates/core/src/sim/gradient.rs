//! Adjoint-mode gradients.
//!
//! One forward pass produces `psi = U|init>` and `lambda = O psi`. Walking the
//! gates backwards, each rotation `exp(-i a/2 G)` contributes
//! `d<O>/da = Im <lambda|G|psi>` with both vectors taken just after the gate;
//! the gate is then undone on both.

use super::circuit::{run_circuit, Circuit};
use super::gate::AngleSlot;
use crate::error::Result;
use crate::observables::Observable;

/// Returns `(<O>, d<O>/d params)`.
pub fn value_and_adjoint_gradient(
    circuit: &Circuit,
    obs: &Observable,
    params: &[f64],
) -> Result<(f64, Vec<f64>)> {
    let mut psi = run_circuit(circuit, params)?;
    let value = obs.expectation(&psi)?;
    let mut lambda = obs.apply(&psi)?;
    let mut grad = vec![0.0; circuit.n_params()];

    for gate in circuit.gates.iter().rev() {
        let angle = gate.resolve(params);
        if let AngleSlot::Bound { param, scale } = gate.angle {
            let mask = gate.kind.generator().expect("bound gates are rotations");
            let g = mask.matrix_element(lambda.amplitudes(), psi.amplitudes());
            grad[param] += scale * g.im;
        }
        // Undo: rotations invert by negating the angle; H and X are involutions.
        psi.apply_unchecked(gate.kind, -angle);
        lambda.apply_unchecked(gate.kind, -angle);
    }
    Ok((value, grad))
}

pub fn adjoint_gradient(circuit: &Circuit, obs: &Observable, params: &[f64]) -> Result<Vec<f64>> {
    value_and_adjoint_gradient(circuit, obs, params).map(|(_, g)| g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::{Pauli, PauliString};
    use crate::sim::{Gate, GateKind, InitialState};
    use std::f64::consts::PI;

    fn ry_z() -> (Circuit, Observable) {
        let mut c = Circuit::new(1, 1, InitialState::AllZero).unwrap();
        c.push(Gate::bound(GateKind::RY(0), 0, 1.0)).unwrap();
        let obs = Observable::new(1, vec![PauliString::single(0, Pauli::Z, 1.0)], 0.0).unwrap();
        (c, obs)
    }

    #[test]
    fn stationary_at_zero() {
        let (c, obs) = ry_z();
        let g = adjoint_gradient(&c, &obs, &[0.0]).unwrap();
        assert!(g[0].abs() < 1e-15);
    }

    #[test]
    fn derivative_of_cosine() {
        let (c, obs) = ry_z();
        let g = adjoint_gradient(&c, &obs, &[PI / 2.0]).unwrap();
        assert!((g[0] + 1.0).abs() < 1e-12, "{g:?}");
    }
}
