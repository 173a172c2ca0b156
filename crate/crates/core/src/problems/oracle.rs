use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::instance::QuboInstance;
use crate::bits::format_bits;
use crate::error::{invalid, Result};

pub const MAX_ORACLE_VARIABLES: usize = 24;

/// Exhaustive minimum of a QUBO with every tied minimizer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub n: usize,
    pub optimal_value: f64,
    /// Assignment indices (bit `i` = `x_i`), ascending.
    pub optimal_assignments: Vec<usize>,
    pub evaluations: u64,
}

impl OracleResult {
    pub fn bitstrings(&self) -> Vec<String> {
        self.optimal_assignments
            .iter()
            .map(|&x| format_bits(x, self.n))
            .collect()
    }

    pub fn is_optimal(&self, x: usize) -> bool {
        self.optimal_assignments.binary_search(&x).is_ok()
    }
}

const CHUNK: usize = 1 << 12;

pub fn brute_force(inst: &QuboInstance) -> Result<OracleResult> {
    if inst.n > MAX_ORACLE_VARIABLES {
        return invalid(format!(
            "brute force limited to {MAX_ORACLE_VARIABLES} variables, instance has {}",
            inst.n
        ));
    }
    let total = 1usize << inst.n;
    let n_chunks = total.div_ceil(CHUNK);
    let partial: Vec<(f64, Vec<usize>)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut best = f64::INFINITY;
            let mut ties = Vec::new();
            for x in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let v = inst.objective(x);
                if v < best {
                    best = v;
                    ties.clear();
                    ties.push(x);
                } else if v == best {
                    ties.push(x);
                }
            }
            (best, ties)
        })
        .collect();
    let optimal_value = partial.iter().map(|(v, _)| *v).fold(f64::INFINITY, f64::min);
    // chunks are in index order, so the concatenation is already sorted
    let optimal_assignments = partial
        .into_iter()
        .filter(|(v, _)| *v == optimal_value)
        .flat_map(|(_, t)| t)
        .collect();
    Ok(OracleResult {
        n: inst.n,
        optimal_value,
        optimal_assignments,
        evaluations: total as u64,
    })
}
