use serde::{Deserialize, Serialize};

use super::gate::{AngleSlot, Gate};
use super::state::StateVector;
use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitialState {
    AllZero,
    AllPlus,
}

/// An ordered gate list over `n_qubits` with `n_params` free parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    n_params: usize,
    pub initial_state: InitialState,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize, n_params: usize, initial_state: InitialState) -> Result<Self> {
        if n_qubits == 0 || n_qubits > super::state::MAX_QUBITS {
            return invalid(format!("unsupported qubit count {n_qubits}"));
        }
        Ok(Self {
            n_qubits,
            n_params,
            initial_state,
            gates: Vec::new(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.check_gate(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    fn check_gate(&self, gate: &Gate) -> Result<()> {
        gate.kind.validate(self.n_qubits)?;
        if let AngleSlot::Bound { param, scale } = gate.angle {
            if param >= self.n_params {
                return invalid(format!(
                    "gate {:?} bound to parameter {param}, circuit has {}",
                    gate.kind, self.n_params
                ));
            }
            if !scale.is_finite() {
                return invalid(format!("gate {:?} has non-finite scale", gate.kind));
            }
            if !gate.kind.is_rotation() {
                return invalid(format!("{:?} cannot take a parameter", gate.kind));
            }
        }
        Ok(())
    }

    /// Re-checks every gate; `gates` is public so callers may have edited it.
    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| self.check_gate(g))
    }

    pub fn initial(&self) -> StateVector {
        match self.initial_state {
            InitialState::AllZero => StateVector::zero(self.n_qubits),
            InitialState::AllPlus => StateVector::plus(self.n_qubits),
        }
        .expect("qubit count checked at construction")
    }

    pub(crate) fn check_params(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.n_params {
            return invalid(format!(
                "expected {} parameters, got {}",
                self.n_params,
                params.len()
            ));
        }
        if let Some(i) = params.iter().position(|p| !p.is_finite()) {
            return invalid(format!("parameter {i} is not finite"));
        }
        Ok(())
    }
}

/// Prepares the initial state and applies every gate in order.
pub fn run_circuit(circuit: &Circuit, params: &[f64]) -> Result<StateVector> {
    circuit.check_params(params)?;
    circuit.validate()?;
    let mut state = circuit.initial();
    for gate in &circuit.gates {
        state.apply_unchecked(gate.kind, gate.resolve(params));
    }
    Ok(state)
}
