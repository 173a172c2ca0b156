//! Bitstring helpers.
//!
//! Basis index bit `k` is qubit (or variable) `k`, so qubit 0 is the least
//! significant bit. Strings are printed most-significant first: `"10"` on two
//! qubits is index 2, with qubit 1 set.

use crate::error::{invalid, Result};

pub fn format_bits(index: usize, n: usize) -> String {
    (0..n)
        .rev()
        .map(|k| if index >> k & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn parse_bits(bits: &str, n: usize) -> Result<usize> {
    if bits.len() != n {
        return invalid(format!(
            "bitstring {bits:?} has length {}, expected {n}",
            bits.len()
        ));
    }
    let mut index = 0usize;
    for (pos, ch) in bits.chars().enumerate() {
        let k = n - 1 - pos;
        match ch {
            '0' => {}
            '1' => index |= 1 << k,
            other => return invalid(format!("bitstring contains {other:?}")),
        }
    }
    Ok(index)
}

/// Value of variable `k` in an assignment index.
#[inline]
pub fn bit(index: usize, k: usize) -> bool {
    index >> k & 1 == 1
}

/// Formats a float with 17 significant digits, `%.17g` style.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp).max(0) as usize;
    strip_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
