//! Dense matrices built from Kronecker products, independent of the crate's
//! own dense helpers.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use qgoa_core::{Observable, Pauli, PauliString};

pub type Mat = DMatrix<Complex64>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn pauli_2x2(p: Pauli) -> Mat {
    let i = Complex64::i();
    match p {
        Pauli::X => Mat::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]),
        Pauli::Y => Mat::from_row_slice(2, 2, &[c(0.0), -i, i, c(0.0)]),
        Pauli::Z => Mat::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]),
    }
}

pub fn hadamard() -> Mat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Mat::from_row_slice(2, 2, &[c(h), c(h), c(h), c(-h)])
}

/// Tensor product with qubit 0 as the least significant factor.
pub fn embed_matrices(ops: &[(usize, Mat)], n: usize) -> Mat {
    let mut m = Mat::identity(1, 1);
    for q in (0..n).rev() {
        let f = match ops.iter().find(|(k, _)| *k == q) {
            Some((_, op)) => op.clone(),
            None => Mat::identity(2, 2),
        };
        m = m.kronecker(&f);
    }
    m
}

pub fn embed(ops: &[(usize, Pauli)], n: usize) -> Mat {
    let mats: Vec<(usize, Mat)> = ops.iter().map(|&(q, p)| (q, pauli_2x2(p))).collect();
    embed_matrices(&mats, n)
}

pub fn string_matrix(s: &PauliString, n: usize) -> Mat {
    let ops: Vec<(usize, Pauli)> = s.ops.iter().map(|(&q, &p)| (q, p)).collect();
    embed(&ops, n) * c(s.coefficient)
}

pub fn observable_dense(obs: &Observable, n: usize) -> Mat {
    let dim = 1 << n;
    let mut m = Mat::identity(dim, dim) * c(obs.constant);
    for t in obs.terms() {
        m += string_matrix(t, n);
    }
    m
}
