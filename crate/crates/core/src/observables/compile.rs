use serde::{Deserialize, Serialize};

use super::observable::Observable;
use super::pauli::{Pauli, PauliString};
use crate::error::{invalid, Result};
use crate::problems::{GraphInstance, QuboInstance};

/// Bijection between a binary variable and the Z eigenvalue of its qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinConvention {
    /// `x = (Z + 1)/2`: qubit `|0>` (Z = +1) encodes `x = 1`.
    ZeroIsPlusOne,
    /// `x = (1 - Z)/2`: qubit `|1>` encodes `x = 1`.
    OneIsPlusOne,
}

impl SpinConvention {
    fn sign(self) -> f64 {
        match self {
            SpinConvention::ZeroIsPlusOne => 1.0,
            SpinConvention::OneIsPlusOne => -1.0,
        }
    }

    /// Basis index of the qubit state encoding assignment `x` on `n`
    /// variables. The map is an involution.
    pub fn basis_index(self, x: usize, n: usize) -> usize {
        match self {
            SpinConvention::OneIsPlusOne => x,
            SpinConvention::ZeroIsPlusOne => !x & ((1usize << n) - 1),
        }
    }

    pub fn assignment(self, basis: usize, n: usize) -> usize {
        self.basis_index(basis, n)
    }

    /// Basis-state probabilities re-indexed by assignment.
    pub fn assignment_distribution(self, probs: &[f64]) -> Vec<f64> {
        let n = probs.len().trailing_zeros() as usize;
        (0..probs.len()).map(|x| probs[self.basis_index(x, n)]).collect()
    }
}

/// An Ising observable together with the constant it dropped.
///
/// `observable.basis_expectation(basis_index(x)) + offset == l(x)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompiledObservable {
    pub observable: Observable,
    pub offset: f64,
    pub convention: SpinConvention,
}

impl CompiledObservable {
    /// The observable with the offset folded into its constant, so that its
    /// expectation equals the classical objective.
    pub fn loss_observable(&self) -> Observable {
        let mut obs = self.observable.clone();
        obs.constant += self.offset;
        obs
    }

    pub fn value_at(&self, x: usize) -> f64 {
        let n = self.observable.n_qubits();
        self.observable
            .basis_expectation(self.convention.basis_index(x, n))
            + self.offset
    }
}

/// Substitutes `x_i = (1 + s Z_i)/2` into
/// `sum_i h_i x_i + sum_pairs c_ij x_i x_j + constant`.
fn ising_expansion(
    n: usize,
    linear: &[f64],
    pairs: impl IntoIterator<Item = ((usize, usize), f64)>,
    constant: f64,
    conv: SpinConvention,
) -> Result<CompiledObservable> {
    let s = conv.sign();
    let mut terms = Vec::new();
    let mut offset = constant;
    for (i, &h) in linear.iter().enumerate() {
        offset += h / 2.0;
        terms.push(PauliString::single(i, Pauli::Z, s * h / 2.0));
    }
    for ((i, j), c) in pairs {
        offset += c / 4.0;
        terms.push(PauliString::single(i, Pauli::Z, s * c / 4.0));
        terms.push(PauliString::single(j, Pauli::Z, s * c / 4.0));
        terms.push(PauliString::pair(i, Pauli::Z, j, Pauli::Z, c / 4.0));
    }
    Ok(CompiledObservable {
        observable: Observable::new(n, terms, 0.0)?,
        offset,
        convention: conv,
    })
}

/// Ising form of a QUBO; the symmetric pair coefficients are folded into one
/// `2 a_ij` term per unordered pair.
pub fn qubo_to_observable(inst: &QuboInstance, conv: SpinConvention) -> Result<CompiledObservable> {
    inst.validate()?;
    let linear: Vec<f64> = inst.diag.iter().zip(&inst.linear).map(|(a, b)| a + b).collect();
    let pairs = inst.quad.iter().map(|(&k, &a)| (k, 2.0 * a));
    ising_expansion(inst.n, &linear, pairs, inst.constant, conv)
}

/// `lambda x^T V x - (1 - lambda) mu^T x` under `x = (Z + 1)/2`.
pub fn portfolio_observable(cov: &[Vec<f64>], mu: &[f64], lambda: f64) -> Result<CompiledObservable> {
    if !(0.0..=1.0).contains(&lambda) {
        return invalid(format!("lambda {lambda} outside [0, 1]"));
    }
    let n = mu.len();
    if n == 0 || cov.len() != n || cov.iter().any(|r| r.len() != n) {
        return invalid(format!("covariance must be {n}x{n}"));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if (cov[i][j] - cov[j][i]).abs() > 1e-12 * (1.0 + cov[i][j].abs()) {
                return invalid(format!("covariance not symmetric at ({i}, {j})"));
            }
            if cov[i][j] != 0.0 {
                pairs.push(((i, j), 2.0 * lambda * cov[i][j]));
            }
        }
    }
    let linear: Vec<f64> = (0..n)
        .map(|i| lambda * cov[i][i] - (1.0 - lambda) * mu[i])
        .collect();
    ising_expansion(n, &linear, pairs, 0.0, SpinConvention::ZeroIsPlusOne)
}

/// Vertex cover `sum_E (1 - x_i)(1 - x_j) + b sum_V x_i` under
/// `x = (1 - Z)/2`. With `b = 1` the Pauli part is
/// `sum_E (Z_i + Z_j + Z_i Z_j)/4 - sum_V Z_i/2`; edge weights are ignored.
pub fn mvc_observable(graph: &GraphInstance, b: f64) -> Result<CompiledObservable> {
    let n = graph.n;
    let mut linear = vec![b; n];
    for &(i, j) in graph.edges.keys() {
        linear[i] -= 1.0;
        linear[j] -= 1.0;
    }
    let pairs = graph.edges.keys().map(|&k| (k, 1.0));
    ising_expansion(n, &linear, pairs, graph.n_edges() as f64, SpinConvention::OneIsPlusOne)
}

/// `sum_E E_ij (X_i X_j + Y_i Y_j) - sum_V E_ii Z_i`.
pub fn build_ht_observable(graph: &GraphInstance) -> Result<Observable> {
    let mut terms = Vec::new();
    for (&(i, j), &w) in &graph.edges {
        terms.push(PauliString::pair(i, Pauli::X, j, Pauli::X, w));
        terms.push(PauliString::pair(i, Pauli::Y, j, Pauli::Y, w));
    }
    for (i, &w) in graph.vertex_weights.iter().enumerate() {
        terms.push(PauliString::single(i, Pauli::Z, -w));
    }
    Observable::new(graph.n, terms, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{brute_force, ProblemKind};
    use std::collections::BTreeMap;
    use Pauli::*;

    fn generic(n: usize, quad: &[((usize, usize), f64)], diag: &[f64], linear: &[f64]) -> QuboInstance {
        QuboInstance::new(
            n,
            quad.iter().copied().collect::<BTreeMap<_, _>>(),
            diag.to_vec(),
            linear.to_vec(),
            ProblemKind::Generic,
            0,
        )
        .unwrap()
    }

    #[test]
    fn single_linear_variable() {
        let c = qubo_to_observable(&generic(1, &[], &[0.0], &[1.0]), SpinConvention::ZeroIsPlusOne).unwrap();
        assert_eq!(c.observable.coefficient(&[(0, Z)]), 0.5);
        assert_eq!(c.observable.terms().len(), 1);
        assert_eq!(c.offset, 0.5);
    }

    #[test]
    fn product_of_two_variables() {
        // a_01 = a_10 = 1/2 gives l(x) = x0 x1
        let c = qubo_to_observable(&generic(2, &[((0, 1), 0.5)], &[0.0; 2], &[0.0; 2]), SpinConvention::ZeroIsPlusOne)
            .unwrap();
        let o = &c.observable;
        assert_eq!(o.coefficient(&[(0, Z)]), 0.25);
        assert_eq!(o.coefficient(&[(1, Z)]), 0.25);
        assert_eq!(o.coefficient(&[(0, Z), (1, Z)]), 0.25);
        assert_eq!(c.offset, 0.25);
    }

    #[test]
    fn single_asset_risk() {
        let c = portfolio_observable(&[vec![1.0]], &[0.3], 1.0).unwrap();
        assert_eq!(c.observable.coefficient(&[(0, Z)]), 0.5);
        assert_eq!(c.offset, 0.5);
        assert_eq!(c.value_at(1), 1.0);
        assert_eq!(c.value_at(0), 0.0);
        assert!(portfolio_observable(&[vec![1.0]], &[0.3], 1.5).is_err());
    }

    #[test]
    fn pure_return_has_no_couplings() {
        let cov = vec![vec![0.2, 0.4], vec![0.4, 0.1]];
        let c = portfolio_observable(&cov, &[0.3, 0.6], 0.0).unwrap();
        assert!(c.observable.terms().iter().all(|t| t.weight() == 1));
    }

    #[test]
    fn single_edge_cover() {
        let g = GraphInstance::unweighted(2, [(0, 1)]).unwrap();
        let c = mvc_observable(&g, 1.0).unwrap();
        let o = &c.observable;
        assert_eq!(o.coefficient(&[(0, Z)]), -0.25);
        assert_eq!(o.coefficient(&[(1, Z)]), -0.25);
        assert_eq!(o.coefficient(&[(0, Z), (1, Z)]), 0.25);
        assert_eq!(o.terms().len(), 3);
    }

    #[test]
    fn edgeless_cover_is_vertex_field() {
        let g = GraphInstance::unweighted(3, []).unwrap();
        let c = mvc_observable(&g, 2.0).unwrap();
        for q in 0..3 {
            assert_eq!(c.observable.coefficient(&[(q, Z)]), -1.0);
        }
        assert_eq!(c.observable.terms().len(), 3);
    }

    #[test]
    fn triangle_cover_matches_objective() {
        let g = GraphInstance::unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = mvc_observable(&g, 1.0).unwrap();
        for x in 0..8usize {
            let bits: Vec<f64> = (0..3).map(|i| (x >> i & 1) as f64).collect();
            let direct: f64 = g.edges.keys().map(|&(i, j)| (1.0 - bits[i]) * (1.0 - bits[j])).sum::<f64>()
                + bits.iter().sum::<f64>();
            assert!((c.value_at(x) - direct).abs() < 1e-12);
        }
        let inst = crate::problems::mvc_qubo(&g, 1.0, 0).unwrap();
        let via_qubo = qubo_to_observable(&inst, SpinConvention::OneIsPlusOne).unwrap();
        assert_eq!(via_qubo, c);
        assert_eq!(brute_force(&inst).unwrap().optimal_value, 2.0);
    }

    #[test]
    fn ht_terms() {
        let g = GraphInstance::unweighted(2, [(0, 1)]).unwrap();
        let h = build_ht_observable(&g).unwrap();
        assert_eq!(h.terms().len(), 2);
        assert_eq!(h.coefficient(&[(0, X), (1, X)]), 1.0);
        assert_eq!(h.coefficient(&[(0, Y), (1, Y)]), 1.0);

        let g = GraphInstance::new(1, BTreeMap::new(), vec![2.0]).unwrap();
        let h = build_ht_observable(&g).unwrap();
        assert_eq!(h.coefficient(&[(0, Z)]), -2.0);

        let g = GraphInstance::unweighted(3, [(1, 0), (0, 2)]).unwrap();
        let h = build_ht_observable(&g).unwrap();
        assert_eq!(h.terms().len(), 4);
        assert!(h.terms().iter().all(|t| t.weight() == 2));
    }
}
