//! Pauli-sum observables, Ising compilation of QUBO objectives, graph
//! Hamiltonians and dense-matrix oracles.

mod compile;
mod dense;
mod observable;
mod pauli;

pub use compile::{
    build_ht_observable, mvc_observable, portfolio_observable, qubo_to_observable,
    CompiledObservable, SpinConvention,
};
pub use dense::{build_projector_matrix, observable_matrix, DenseMatrix, MAX_DENSE_QUBITS};
pub use observable::Observable;
pub use pauli::{commutes, Pauli, PauliString};
