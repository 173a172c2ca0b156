use num_complex::Complex64;

use super::gate::GateKind;
use super::pauli_mask::PauliMask;
use crate::bits::parse_bits;
use crate::error::{invalid, Result};

/// `2^n` complex amplitudes, qubit 0 in the least significant index bit.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

pub(crate) const MAX_QUBITS: usize = 24;

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return invalid(format!("qubit count must be in 1..={MAX_QUBITS}, got {n}"));
    }
    Ok(())
}

impl StateVector {
    pub fn zero(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits: n, amplitudes })
    }

    /// Computational basis state from an MSB-first bitstring.
    pub fn basis(n: usize, bits: &str) -> Result<Self> {
        check_qubits(n)?;
        let index = parse_bits(bits, n)?;
        Self::basis_index(n, index)
    }

    pub fn basis_index(n: usize, index: usize) -> Result<Self> {
        check_qubits(n)?;
        if index >= 1 << n {
            return invalid(format!("basis index {index} out of range for {n} qubits"));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits: n, amplitudes })
    }

    /// Uniform superposition `|+>^n`.
    pub fn plus(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let a = (0.5f64).powf(n as f64 / 2.0);
        Ok(Self {
            n_qubits: n,
            amplitudes: vec![Complex64::new(a, 0.0); 1 << n],
        })
    }

    /// Wraps raw amplitudes. The length must be a power of two; normalization
    /// is the caller's responsibility.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return invalid(format!("amplitude count {len} is not a power of two >= 2"));
        }
        let n = len.trailing_zeros() as usize;
        check_qubits(n)?;
        Ok(Self { n_qubits: n, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Measurement probabilities indexed by basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Applies `kind` with rotation angle `angle` (ignored for H and X).
    pub fn apply(&mut self, kind: GateKind, angle: f64) -> Result<()> {
        kind.validate(self.n_qubits)?;
        if !angle.is_finite() {
            return invalid(format!("non-finite angle {angle} for {kind:?}"));
        }
        self.apply_unchecked(kind, angle);
        Ok(())
    }

    pub(crate) fn apply_unchecked(&mut self, kind: GateKind, angle: f64) {
        match kind {
            GateKind::H(q) => self.hadamard(q),
            GateKind::X(q) => {
                let bit = 1usize << q;
                for j in 0..self.amplitudes.len() {
                    if j & bit == 0 {
                        self.amplitudes.swap(j, j | bit);
                    }
                }
            }
            _ => {
                let mask = kind.generator().expect("rotation gate has a generator");
                mask.rotate(&mut self.amplitudes, angle);
            }
        }
    }

    fn hadamard(&mut self, q: usize) {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let bit = 1usize << q;
        for j in 0..self.amplitudes.len() {
            if j & bit == 0 {
                let (a, b) = (self.amplitudes[j], self.amplitudes[j | bit]);
                self.amplitudes[j] = (a + b) * r;
                self.amplitudes[j | bit] = (a - b) * r;
            }
        }
    }

    /// `P|self>` into a new state.
    pub fn apply_pauli(&self, mask: &PauliMask) -> StateVector {
        let mut out = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        mask.apply_into(&self.amplitudes, &mut out);
        StateVector {
            n_qubits: self.n_qubits,
            amplitudes: out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn basis_states() {
        let s = StateVector::basis(1, "0").unwrap();
        assert_eq!(s.amplitudes(), &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let s = StateVector::basis(2, "10").unwrap();
        assert_eq!(s.amplitudes()[2], Complex64::new(1.0, 0.0));
        let s = StateVector::basis(3, "011").unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
        assert!(StateVector::basis(3, "01").is_err());
        assert!(StateVector::zero(0).is_err());
    }

    #[test]
    fn plus_states() {
        let s = StateVector::plus(1).unwrap();
        assert!(s.amplitudes().iter().all(|a| (a.re - FRAC_1_SQRT_2).abs() < 1e-15));
        let s = StateVector::plus(2).unwrap();
        assert!(s.amplitudes().iter().all(|a| (a.re - 0.5).abs() < 1e-15));
    }

    #[test]
    fn ry_pi_flips() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply(GateKind::RY(0), PI).unwrap();
        assert!(close(s.amplitudes()[0], Complex64::new(0.0, 0.0)));
        assert!(close(s.amplitudes()[1], Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn xx_pi_on_zero() {
        let mut s = StateVector::zero(2).unwrap();
        s.apply(GateKind::XX(0, 1), PI).unwrap();
        assert!(close(s.amplitudes()[3], Complex64::new(0.0, -1.0)));
        assert!(s.amplitudes()[..3].iter().all(|a| a.norm() < 1e-12));
    }

    #[test]
    fn xy_interaction_stays_in_single_excitation_subspace() {
        let eta: f64 = 0.3;
        // |01>: qubit 0 set.
        let mut s = StateVector::basis(2, "01").unwrap();
        s.apply(GateKind::YY(0, 1), 2.0 * eta).unwrap();
        s.apply(GateKind::XX(0, 1), 2.0 * eta).unwrap();
        let a = s.amplitudes();
        assert!(close(a[1], Complex64::new((2.0 * eta).cos(), 0.0)));
        assert!(close(a[2], Complex64::new(0.0, -(2.0 * eta).sin())));
        assert!(a[0].norm() < 1e-12 && a[3].norm() < 1e-12);
    }

    #[test]
    fn rejects_bad_qubits_and_angles() {
        let mut s = StateVector::zero(2).unwrap();
        assert!(s.apply(GateKind::RY(2), 0.1).is_err());
        assert!(s.apply(GateKind::XX(1, 1), 0.1).is_err());
        assert!(s.apply(GateKind::RZ(0), f64::NAN).is_err());
    }

    #[test]
    fn probabilities_of_simple_states() {
        let s = StateVector::basis(1, "1").unwrap();
        assert_eq!(s.probabilities(), vec![0.0, 1.0]);
        let p = StateVector::plus(2).unwrap().probabilities();
        assert!(p.iter().all(|x| (x - 0.25).abs() < 1e-15));
        let mut s = StateVector::zero(1).unwrap();
        s.apply(GateKind::RY(0), PI / 2.0).unwrap();
        let p = s.probabilities();
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
    }
}
