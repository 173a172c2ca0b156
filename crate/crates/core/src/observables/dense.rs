//! Dense-matrix forms, used as verification oracles on small systems.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::observable::Observable;
use crate::error::{invalid, Result};
use crate::problems::GraphInstance;

pub type DenseMatrix = DMatrix<Complex64>;

pub const MAX_DENSE_QUBITS: usize = 10;

fn check_size(n: usize) -> Result<usize> {
    if n == 0 || n > MAX_DENSE_QUBITS {
        return invalid(format!("dense matrices limited to 1..={MAX_DENSE_QUBITS} qubits, got {n}"));
    }
    Ok(1 << n)
}

pub fn observable_matrix(obs: &Observable, n: usize) -> Result<DenseMatrix> {
    let dim = check_size(n)?;
    if obs.n_qubits() > n {
        return invalid("observable acts on more qubits than requested");
    }
    let mut m = DenseMatrix::from_diagonal_element(dim, dim, Complex64::new(obs.constant, 0.0));
    for t in obs.terms() {
        let mask = t.mask();
        for j in 0..dim {
            m[(j ^ mask.flip, j)] += t.coefficient * mask.phase(j);
        }
    }
    Ok(m)
}

/// `sum_E E_ij (|1><0|_i |0><1|_j + |0><1|_i |1><0|_j) + sum_V E_ii |1><1|_i`.
pub fn build_projector_matrix(graph: &GraphInstance, n: usize) -> Result<DenseMatrix> {
    let dim = check_size(n)?;
    if graph.n > n {
        return invalid("graph has more vertices than qubits");
    }
    let mut m = DenseMatrix::zeros(dim, dim);
    for (&(i, j), &w) in &graph.edges {
        let (bi, bj) = (1usize << i, 1usize << j);
        for k in 0..dim {
            // |1><0|_i (x) |0><1|_j takes (x_i = 0, x_j = 1) to (1, 0)
            if k & bi == 0 && k & bj != 0 {
                let to = (k | bi) & !bj;
                m[(to, k)] += Complex64::new(w, 0.0);
                m[(k, to)] += Complex64::new(w, 0.0);
            }
        }
    }
    for (i, &w) in graph.vertex_weights.iter().enumerate() {
        for k in 0..dim {
            if k >> i & 1 == 1 {
                m[(k, k)] += Complex64::new(w, 0.0);
            }
        }
    }
    Ok(m)
}
