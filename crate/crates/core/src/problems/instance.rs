use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::bit;
use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ProblemKind {
    Portfolio { lambda: f64 },
    Mvc { b: f64 },
    Generic,
}

/// A QUBO objective
///
/// `l(x) = sum_i (diag_i + linear_i) x_i + sum_{i != j} a_ij x_i x_j + constant`
///
/// where the pair coefficients are symmetric and stored once under `(i, j)`
/// with `i < j`, so each stored entry contributes `2 a_ij x_i x_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuboInstance {
    pub n: usize,
    pub quad: BTreeMap<(usize, usize), f64>,
    pub diag: Vec<f64>,
    pub linear: Vec<f64>,
    /// Constant term (e.g. the `|E|` left over from expanding a vertex cover
    /// penalty); zero for most instances.
    pub constant: f64,
    pub kind: ProblemKind,
    pub seed: u64,
}

impl QuboInstance {
    pub fn new(
        n: usize,
        quad: BTreeMap<(usize, usize), f64>,
        diag: Vec<f64>,
        linear: Vec<f64>,
        kind: ProblemKind,
        seed: u64,
    ) -> Result<Self> {
        let inst = Self {
            n,
            quad,
            diag,
            linear,
            constant: 0.0,
            kind,
            seed,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// From a dense coefficient matrix `a` and linear vector `b`. Rejects
    /// asymmetric `a`.
    pub fn from_dense(a: &[Vec<f64>], b: &[f64], kind: ProblemKind, seed: u64) -> Result<Self> {
        let n = b.len();
        if a.len() != n || a.iter().any(|row| row.len() != n) {
            return invalid(format!("coefficient matrix must be {n}x{n}"));
        }
        let mut quad = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                if (a[i][j] - a[j][i]).abs() > 1e-12 * (1.0 + a[i][j].abs()) {
                    return invalid(format!(
                        "coefficient matrix is not symmetric at ({i}, {j}): {} vs {}",
                        a[i][j], a[j][i]
                    ));
                }
                if a[i][j] != 0.0 {
                    quad.insert((i, j), a[i][j]);
                }
            }
        }
        let diag = (0..n).map(|i| a[i][i]).collect();
        Self::new(n, quad, diag, b.to_vec(), kind, seed)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return invalid("instance has no variables");
        }
        if self.diag.len() != self.n || self.linear.len() != self.n {
            return invalid(format!(
                "diag/linear lengths {}/{} do not match n = {}",
                self.diag.len(),
                self.linear.len(),
                self.n
            ));
        }
        for (&(i, j), w) in &self.quad {
            if i >= j {
                return invalid(format!("quad key ({i}, {j}) must satisfy i < j"));
            }
            if j >= self.n {
                return invalid(format!("quad key ({i}, {j}) out of range for n = {}", self.n));
            }
            if !w.is_finite() {
                return invalid(format!("quad ({i}, {j}) is not finite"));
            }
        }
        let all_finite = self
            .diag
            .iter()
            .chain(&self.linear)
            .chain(std::iter::once(&self.constant))
            .all(|v| v.is_finite());
        if !all_finite {
            return invalid("non-finite coefficient");
        }
        match self.kind {
            ProblemKind::Portfolio { lambda } if !(0.0..=1.0).contains(&lambda) => {
                invalid(format!("lambda {lambda} outside [0, 1]"))
            }
            _ => Ok(()),
        }
    }

    /// `l(x)` for an assignment index (bit `i` is `x_i`).
    pub fn objective(&self, x: usize) -> f64 {
        let mut acc = self.constant;
        for i in 0..self.n {
            if bit(x, i) {
                acc += self.diag[i] + self.linear[i];
            }
        }
        for (&(i, j), w) in &self.quad {
            if bit(x, i) && bit(x, j) {
                acc += 2.0 * w;
            }
        }
        acc
    }
}

/// Weighted simple graph; edge keys `(i, j)` with `i < j`, self weights in
/// `vertex_weights`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphInstance {
    pub n: usize,
    pub edges: BTreeMap<(usize, usize), f64>,
    pub vertex_weights: Vec<f64>,
}

impl GraphInstance {
    pub fn new(n: usize, edges: BTreeMap<(usize, usize), f64>, vertex_weights: Vec<f64>) -> Result<Self> {
        if vertex_weights.len() != n {
            return invalid("vertex weight count does not match n");
        }
        for &(i, j) in edges.keys() {
            if i >= j || j >= n {
                return invalid(format!("invalid edge ({i}, {j}) for n = {n}"));
            }
        }
        Ok(Self {
            n,
            edges,
            vertex_weights,
        })
    }

    /// Unit-weight graph with zero vertex weights.
    pub fn unweighted(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges = edges
            .into_iter()
            .map(|(i, j)| ((i.min(j), i.max(j)), 1.0))
            .collect();
        Self::new(n, edges, vec![0.0; n])
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.keys().filter(|&&(i, j)| i == v || j == v).count()
    }
}

/// Graph used by the aggregation Hamiltonian.
///
/// Edges are the nonzero pair coefficients with `E_ij = a_ij` and
/// `E_ii = a_ii`. Vertex-cover instances use the plain adjacency instead
/// (`E_ij = 1`, `E_ii = 0`).
pub fn instance_graph(inst: &QuboInstance) -> GraphInstance {
    let nonzero = inst.quad.iter().filter(|(_, w)| **w != 0.0);
    match inst.kind {
        ProblemKind::Mvc { .. } => GraphInstance {
            n: inst.n,
            edges: nonzero.map(|(&k, _)| (k, 1.0)).collect(),
            vertex_weights: vec![0.0; inst.n],
        },
        _ => GraphInstance {
            n: inst.n,
            edges: nonzero.map(|(&k, &w)| (k, w)).collect(),
            vertex_weights: inst.diag.clone(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_graph_extraction() {
        let inst = QuboInstance::new(
            2,
            BTreeMap::from([((0, 1), 0.5)]),
            vec![0.0, 0.0],
            vec![0.0, 0.0],
            ProblemKind::Generic,
            0,
        )
        .unwrap();
        let g = instance_graph(&inst);
        assert_eq!(g.edges, BTreeMap::from([((0, 1), 0.5)]));
    }

    #[test]
    fn rejects_asymmetric_and_malformed() {
        let a = vec![vec![0.0, 1.0], vec![0.5, 0.0]];
        assert!(QuboInstance::from_dense(&a, &[0.0, 0.0], ProblemKind::Generic, 0).is_err());
        let bad = QuboInstance::new(
            2,
            BTreeMap::from([((1, 0), 1.0)]),
            vec![0.0; 2],
            vec![0.0; 2],
            ProblemKind::Generic,
            0,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn dense_constructor_uses_double_sum() {
        // l(x) = x0 x1 with a symmetric matrix: a01 = a10 = 1/2.
        let a = vec![vec![0.0, 0.5], vec![0.5, 0.0]];
        let inst = QuboInstance::from_dense(&a, &[0.0, 0.0], ProblemKind::Generic, 0).unwrap();
        assert_eq!(inst.objective(0b11), 1.0);
        assert_eq!(inst.objective(0b01), 0.0);
    }
}
