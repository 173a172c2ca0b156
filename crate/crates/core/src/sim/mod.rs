//! Exact statevector simulation.

mod circuit;
mod gate;
mod gradient;
mod pauli_mask;
mod state;

pub use circuit::{run_circuit, Circuit, InitialState};
pub use gate::{AngleSlot, Gate, GateKind};
pub use gradient::{adjoint_gradient, value_and_adjoint_gradient};
pub use pauli_mask::PauliMask;
pub use state::StateVector;

pub use num_complex::Complex64;
