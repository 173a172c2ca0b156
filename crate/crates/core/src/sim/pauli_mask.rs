use num_complex::Complex64;

/// Bit-mask form of a Pauli string.
///
/// `P|j> = i^y_count * (-1)^popcount(j & sign) |j ^ flip>`, where `flip` holds
/// the X and Y sites and `sign` the Y and Z sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct PauliMask {
    pub flip: usize,
    pub sign: usize,
    pub y_count: u32,
}

impl PauliMask {
    pub fn from_masks(x: usize, y: usize, z: usize) -> Self {
        Self {
            flip: x | y,
            sign: y | z,
            y_count: y.count_ones(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.flip == 0
    }

    /// `i^y_count`.
    pub fn global_phase(&self) -> Complex64 {
        match self.y_count % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// Phase picked up by basis state `j`, so that `P|j> = phase(j) |j ^ flip>`.
    #[inline]
    pub fn phase(&self, j: usize) -> Complex64 {
        let g = self.global_phase();
        if (j & self.sign).count_ones() % 2 == 1 {
            -g
        } else {
            g
        }
    }

    /// `out = P psi`.
    pub fn apply_into(&self, psi: &[Complex64], out: &mut [Complex64]) {
        let g = self.global_phase();
        for (j, amp) in psi.iter().enumerate() {
            let s = if (j & self.sign).count_ones() % 2 == 1 { -g } else { g };
            out[j ^ self.flip] = s * amp;
        }
    }

    /// `<psi|P|psi>`.
    pub fn expectation(&self, psi: &[Complex64]) -> Complex64 {
        if self.is_diagonal() {
            let mut acc = 0.0;
            for (j, amp) in psi.iter().enumerate() {
                let p = amp.norm_sqr();
                if (j & self.sign).count_ones() % 2 == 1 {
                    acc -= p;
                } else {
                    acc += p;
                }
            }
            return Complex64::new(acc, 0.0);
        }
        let g = self.global_phase();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, amp) in psi.iter().enumerate() {
            let s = if (j & self.sign).count_ones() % 2 == 1 { -g } else { g };
            acc += psi[j ^ self.flip].conj() * s * amp;
        }
        acc
    }

    /// `<bra|P|ket>`.
    pub fn matrix_element(&self, bra: &[Complex64], ket: &[Complex64]) -> Complex64 {
        let g = self.global_phase();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, amp) in ket.iter().enumerate() {
            let s = if (j & self.sign).count_ones() % 2 == 1 { -g } else { g };
            acc += bra[j ^ self.flip].conj() * s * amp;
        }
        acc
    }

    /// In-place `exp(-i angle/2 P)`.
    pub fn rotate(&self, psi: &mut [Complex64], angle: f64) {
        let (s, c) = (angle / 2.0).sin_cos();
        if self.is_diagonal() {
            // P is +-1 on each basis state.
            let plus = Complex64::new(c, -s);
            let minus = Complex64::new(c, s);
            for (j, amp) in psi.iter_mut().enumerate() {
                if (j & self.sign).count_ones() % 2 == 1 {
                    *amp *= minus;
                } else {
                    *amp *= plus;
                }
            }
            return;
        }
        let mis = Complex64::new(0.0, -s);
        let low = self.flip & self.flip.wrapping_neg();
        for j in 0..psi.len() {
            if j & low != 0 {
                continue;
            }
            let k = j ^ self.flip;
            let (a, b) = (psi[j], psi[k]);
            // (P psi)[j] = phase(k) psi[k], (P psi)[k] = phase(j) psi[j]
            psi[j] = c * a + mis * self.phase(k) * b;
            psi[k] = c * b + mis * self.phase(j) * a;
        }
    }
}
