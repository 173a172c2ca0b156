use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::pauli::{Pauli, PauliString};
use crate::error::{invalid, Error, Result};
use crate::sim::StateVector;

const IMAG_RESIDUE: f64 = 1e-10;

/// `sum_k c_k P_k + constant` on `n_qubits` qubits.
///
/// Terms with identical operator content are merged on construction and exact
/// zeros are dropped; identity terms fold into `constant`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Observable {
    n_qubits: usize,
    terms: Vec<PauliString>,
    pub constant: f64,
}

impl Observable {
    pub fn new(n_qubits: usize, terms: Vec<PauliString>, constant: f64) -> Result<Self> {
        let mut merged: BTreeMap<Vec<(usize, Pauli)>, f64> = BTreeMap::new();
        let mut constant = constant;
        for t in terms {
            if !t.coefficient.is_finite() {
                return invalid("non-finite Pauli coefficient");
            }
            if let Some(q) = t.max_qubit() {
                if q >= n_qubits {
                    return invalid(format!("term acts on qubit {q}, observable has {n_qubits}"));
                }
            }
            if t.ops.is_empty() {
                constant += t.coefficient;
                continue;
            }
            let key: Vec<_> = t.ops.into_iter().collect();
            *merged.entry(key).or_insert(0.0) += t.coefficient;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| *c != 0.0)
            .map(|(ops, c)| PauliString::new(ops, c))
            .collect();
        Ok(Self {
            n_qubits,
            terms,
            constant,
        })
    }

    pub fn constant_only(n_qubits: usize, constant: f64) -> Self {
        Self {
            n_qubits,
            terms: Vec::new(),
            constant,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(PauliString::is_diagonal)
    }

    /// Coefficient of the term with exactly these operators (0 if absent).
    pub fn coefficient(&self, ops: &[(usize, Pauli)]) -> f64 {
        self.terms
            .iter()
            .find(|t| t.ops.len() == ops.len() && ops.iter().all(|(q, p)| t.ops.get(q) == Some(p)))
            .map_or(0.0, |t| t.coefficient)
    }

    pub fn add(&self, other: &Observable) -> Result<Observable> {
        if self.n_qubits != other.n_qubits {
            return invalid("adding observables of different sizes");
        }
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        Observable::new(self.n_qubits, terms, self.constant + other.constant)
    }

    pub fn scaled(&self, factor: f64) -> Observable {
        Observable {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|t| PauliString::new(t.ops.clone(), t.coefficient * factor))
                .collect(),
            constant: self.constant * factor,
        }
    }

    fn check(&self, state: &StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return invalid(format!(
                "observable on {} qubits applied to a {}-qubit state",
                self.n_qubits,
                state.n_qubits()
            ));
        }
        Ok(())
    }

    /// `<psi|O|psi>`, term by term.
    pub fn expectation(&self, state: &StateVector) -> Result<f64> {
        self.check(state)?;
        let psi = state.amplitudes();
        let mut acc = Complex64::new(self.constant, 0.0);
        for t in &self.terms {
            acc += t.coefficient * t.mask().expectation(psi);
        }
        if acc.im.abs() > IMAG_RESIDUE {
            return Err(Error::InvalidInput(format!(
                "expectation has imaginary residue {}",
                acc.im
            )));
        }
        Ok(acc.re)
    }

    /// `<x|O|x>` for a computational basis index, without building a state.
    /// Only diagonal terms contribute.
    pub fn basis_expectation(&self, index: usize) -> f64 {
        let mut acc = self.constant;
        for t in self.terms.iter().filter(|t| t.is_diagonal()) {
            let m = t.mask();
            if (index & m.sign).count_ones() % 2 == 1 {
                acc -= t.coefficient;
            } else {
                acc += t.coefficient;
            }
        }
        acc
    }

    /// `O|psi>`.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.check(state)?;
        let psi = state.amplitudes();
        let mut out: Vec<Complex64> = psi.iter().map(|a| a * self.constant).collect();
        let mut scratch = vec![Complex64::new(0.0, 0.0); psi.len()];
        for t in &self.terms {
            t.mask().apply_into(psi, &mut scratch);
            for (o, s) in out.iter_mut().zip(&scratch) {
                *o += t.coefficient * s;
            }
        }
        StateVector::from_amplitudes(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Pauli::*;

    #[test]
    fn merges_duplicates_and_identities() {
        let obs = Observable::new(
            2,
            vec![
                PauliString::single(0, Z, 0.5),
                PauliString::single(0, Z, 0.25),
                PauliString::identity(1.0),
                PauliString::pair(0, X, 1, X, 1.0),
                PauliString::pair(1, X, 0, X, -1.0),
            ],
            0.5,
        )
        .unwrap();
        assert_eq!(obs.terms().len(), 1);
        assert_eq!(obs.coefficient(&[(0, Z)]), 0.75);
        assert_eq!(obs.constant, 1.5);
    }

    #[test]
    fn simple_expectations() {
        let z0 = Observable::new(1, vec![PauliString::single(0, Z, 1.0)], 0.0).unwrap();
        assert_eq!(z0.expectation(&StateVector::zero(1).unwrap()).unwrap(), 1.0);
        let zz = Observable::new(2, vec![PauliString::pair(0, Z, 1, Z, 1.0)], 0.0).unwrap();
        assert!(zz.expectation(&StateVector::plus(2).unwrap()).unwrap().abs() < 1e-15);
        let mixer = Observable::new(3, (0..3).map(|q| PauliString::single(q, X, 1.0)).collect(), 0.0)
            .unwrap();
        let e = mixer.expectation(&StateVector::plus(3).unwrap()).unwrap();
        assert!((e - 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_size_mismatch() {
        let z0 = Observable::new(1, vec![PauliString::single(0, Z, 1.0)], 0.0).unwrap();
        assert!(z0.expectation(&StateVector::zero(2).unwrap()).is_err());
        assert!(Observable::new(1, vec![PauliString::single(1, Z, 1.0)], 0.0).is_err());
    }
}
