use serde::{Deserialize, Serialize};

use super::pauli_mask::PauliMask;
use crate::error::{invalid, Result};

/// Supported gates. Rotations implement `exp(-i angle/2 G)` with `G` the
/// named Pauli (or Pauli product).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    RY(usize),
    RZ(usize),
    RX(usize),
    H(usize),
    X(usize),
    XX(usize, usize),
    YY(usize, usize),
    ZZ(usize, usize),
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::XX(..) | GateKind::YY(..) | GateKind::ZZ(..) => 2,
            _ => 1,
        }
    }

    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            GateKind::RY(q) | GateKind::RZ(q) | GateKind::RX(q) | GateKind::H(q) | GateKind::X(q) => {
                (q, None)
            }
            GateKind::XX(a, b) | GateKind::YY(a, b) | GateKind::ZZ(a, b) => (a, Some(b)),
        }
    }

    pub fn is_rotation(&self) -> bool {
        !matches!(self, GateKind::H(_) | GateKind::X(_))
    }

    /// The Pauli generator of a rotation gate; `None` for H and X.
    pub fn generator(&self) -> Option<PauliMask> {
        let (x, y, z) = match *self {
            GateKind::RX(q) => (1 << q, 0, 0),
            GateKind::RY(q) => (0, 1 << q, 0),
            GateKind::RZ(q) => (0, 0, 1 << q),
            GateKind::XX(a, b) => ((1 << a) | (1 << b), 0, 0),
            GateKind::YY(a, b) => (0, (1 << a) | (1 << b), 0),
            GateKind::ZZ(a, b) => (0, 0, (1 << a) | (1 << b)),
            GateKind::H(_) | GateKind::X(_) => return None,
        };
        Some(PauliMask::from_masks(x, y, z))
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let (a, b) = self.qubits();
        if a >= n_qubits {
            return invalid(format!("{self:?}: qubit {a} out of range for {n_qubits} qubits"));
        }
        if let Some(b) = b {
            if b >= n_qubits {
                return invalid(format!("{self:?}: qubit {b} out of range for {n_qubits} qubits"));
            }
            if a == b {
                return invalid(format!("{self:?}: two-qubit gate on a single qubit"));
            }
        }
        Ok(())
    }
}

/// Where a gate's angle comes from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum AngleSlot {
    Fixed(f64),
    /// `angle = scale * params[param]`.
    Bound { param: usize, scale: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub angle: AngleSlot,
}

impl Gate {
    pub fn fixed(kind: GateKind, angle: f64) -> Self {
        Self {
            kind,
            angle: AngleSlot::Fixed(angle),
        }
    }

    pub fn bound(kind: GateKind, param: usize, scale: f64) -> Self {
        Self {
            kind,
            angle: AngleSlot::Bound { param, scale },
        }
    }

    pub fn resolve(&self, params: &[f64]) -> f64 {
        match self.angle {
            AngleSlot::Fixed(a) => a,
            AngleSlot::Bound { param, scale } => scale * params[param],
        }
    }
}
