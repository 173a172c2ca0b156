use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::sim::PauliMask;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// A real multiple of a tensor product of Paulis; identity off `ops`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliString {
    pub ops: BTreeMap<usize, Pauli>,
    pub coefficient: f64,
}

impl PauliString {
    pub fn new(ops: impl IntoIterator<Item = (usize, Pauli)>, coefficient: f64) -> Self {
        Self {
            ops: ops.into_iter().collect(),
            coefficient,
        }
    }

    pub fn identity(coefficient: f64) -> Self {
        Self::new([], coefficient)
    }

    pub fn single(q: usize, p: Pauli, coefficient: f64) -> Self {
        Self::new([(q, p)], coefficient)
    }

    pub fn pair(a: usize, pa: Pauli, b: usize, pb: Pauli, coefficient: f64) -> Self {
        Self::new([(a, pa), (b, pb)], coefficient)
    }

    pub fn weight(&self) -> usize {
        self.ops.len()
    }

    pub fn is_diagonal(&self) -> bool {
        self.ops.values().all(|p| *p == Pauli::Z)
    }

    pub fn max_qubit(&self) -> Option<usize> {
        self.ops.keys().next_back().copied()
    }

    pub fn mask(&self) -> PauliMask {
        let (mut x, mut y, mut z) = (0usize, 0usize, 0usize);
        for (&q, p) in &self.ops {
            match p {
                Pauli::X => x |= 1 << q,
                Pauli::Y => y |= 1 << q,
                Pauli::Z => z |= 1 << q,
            }
        }
        PauliMask::from_masks(x, y, z)
    }
}

/// Two Pauli strings commute iff they anticommute on an even number of sites.
pub fn commutes(a: &PauliString, b: &PauliString) -> bool {
    let clashes = a
        .ops
        .iter()
        .filter(|(q, pa)| b.ops.get(q).is_some_and(|pb| pb != *pa))
        .count();
    clashes % 2 == 0
}
