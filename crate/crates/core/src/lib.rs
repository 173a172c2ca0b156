//! Statevector simulation of the Quantum Graph Optimization Algorithm (QGOA)
//! and a reference QAOA on graph-structured QUBO problems.
//!
//! The crate is layered bottom-up:
//!
//! * [`sim`]: statevectors, gates, circuits and adjoint gradients.
//! * [`observables`]: Pauli sums, QUBO to Ising compilation, the XY graph
//!   Hamiltonian and dense oracles.
//! * [`problems`]: portfolio and vertex-cover generators, the brute-force
//!   oracle and the instance file format.
//! * [`ansatz`]: QGOA/QAOA circuit builders and gate accounting.
//! * [`optimizer`]: ADAM with convergence tracking.
//! * [`harness`]: runs, sweeps, scaling curves, the locality probe, reports.

pub mod ansatz;
pub mod bits;
pub mod error;
pub mod harness;
pub mod observables;
pub mod optimizer;
pub mod problems;
pub mod sim;

pub use ansatz::{build_qaoa, build_qgoa, count_gates, paper_cost_model, Algorithm, CostProblem, GateCounts, ParamLayout};
pub use error::{Error, Result};
pub use observables::{CompiledObservable, Observable, Pauli, PauliString, SpinConvention};
pub use optimizer::{adam_minimize, finite_diff_gradient, init_params, AdamConfig, GradientEngine, OptTrace};
pub use problems::{brute_force, GraphInstance, OracleResult, ProblemKind, QuboInstance};
pub use sim::{adjoint_gradient, run_circuit, Circuit, Gate, GateKind, StateVector};
