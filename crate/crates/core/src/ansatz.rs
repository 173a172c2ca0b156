//! QGOA and QAOA circuit construction and gate-cost accounting.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::observables::Observable;
use crate::problems::GraphInstance;
use crate::sim::{Circuit, Gate, GateKind, InitialState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Qgoa,
    Qaoa,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Qgoa => "qgoa",
            Algorithm::Qaoa => "qaoa",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qgoa" => Ok(Algorithm::Qgoa),
            "qaoa" => Ok(Algorithm::Qaoa),
            other => invalid(format!("unknown algorithm {other:?}")),
        }
    }
}

/// Problem family for the closed-form cost model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CostProblem {
    Portfolio,
    Mvc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParamLabel {
    ThetaY { layer: usize, qubit: usize },
    ThetaZ { layer: usize, qubit: usize },
    Eta { layer: usize },
    Gamma { layer: usize },
    Beta { layer: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamLayout {
    pub labels: Vec<ParamLabel>,
}

impl ParamLayout {
    pub fn n_params(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub singles: usize,
    pub doubles: usize,
}

/// Per layer: `RY`, then `RZ` on every qubit, then the aggregation block
/// `exp(-i eta H)` with `H = sum_E E_ij (XX + YY) - sum_V E_ii Z` split into
/// an XX block and a YY block. All edge gates of a layer share one `eta`.
pub fn build_qgoa(graph: &GraphInstance, layers: usize) -> Result<(Circuit, ParamLayout)> {
    if layers == 0 {
        return invalid("QGOA needs at least one layer");
    }
    let n = graph.n;
    if n == 0 {
        return invalid("QGOA needs a non-empty graph");
    }
    let per_layer = 2 * n + 1;
    let mut circuit = Circuit::new(n, per_layer * layers, InitialState::AllZero)?;
    let mut labels = Vec::with_capacity(per_layer * layers);
    for layer in 0..layers {
        let base = layer * per_layer;
        labels.extend((0..n).map(|qubit| ParamLabel::ThetaY { layer, qubit }));
        labels.extend((0..n).map(|qubit| ParamLabel::ThetaZ { layer, qubit }));
        labels.push(ParamLabel::Eta { layer });

        for q in 0..n {
            circuit.push(Gate::bound(GateKind::RY(q), base + q, 1.0))?;
        }
        for q in 0..n {
            circuit.push(Gate::bound(GateKind::RZ(q), base + n + q, 1.0))?;
        }
        push_aggregation(&mut circuit, graph, base + 2 * n)?;
    }
    Ok((circuit, ParamLayout { labels }))
}

/// First-order aggregation block bound to parameter `eta`.
pub(crate) fn push_aggregation(circuit: &mut Circuit, graph: &GraphInstance, eta: usize) -> Result<()> {
    for (&(i, j), &w) in &graph.edges {
        circuit.push(Gate::bound(GateKind::XX(i, j), eta, 2.0 * w))?;
    }
    for (&(i, j), &w) in &graph.edges {
        circuit.push(Gate::bound(GateKind::YY(i, j), eta, 2.0 * w))?;
    }
    for (q, &w) in graph.vertex_weights.iter().enumerate() {
        if w != 0.0 {
            // exp(+i eta w Z) = RZ(-2 eta w)
            circuit.push(Gate::bound(GateKind::RZ(q), eta, -2.0 * w))?;
        }
    }
    Ok(())
}

/// Standard QAOA from `|+>^n`: per layer the cost evolution `exp(-i gamma C)`
/// (one ZZ gate per coupling, one RZ per qubit) and the mixer `exp(-i beta
/// sum X)`. Every qubit gets a cost RZ, with scale 0 where its field vanishes.
pub fn build_qaoa(cost: &Observable, layers: usize) -> Result<(Circuit, ParamLayout)> {
    if layers == 0 {
        return invalid("QAOA needs at least one layer");
    }
    if let Some(t) = cost.terms().iter().find(|t| !t.is_diagonal() || t.weight() > 2) {
        return invalid(format!("QAOA cost must contain only Z and ZZ terms, found {:?}", t.ops));
    }
    let n = cost.n_qubits();
    let mut fields = vec![0.0; n];
    let mut couplings = Vec::new();
    for t in cost.terms() {
        let qs: Vec<usize> = t.ops.keys().copied().collect();
        match qs[..] {
            [q] => fields[q] += t.coefficient,
            [a, b] => couplings.push((a, b, t.coefficient)),
            _ => unreachable!("weights checked above"),
        }
    }
    let mut circuit = Circuit::new(n, 2 * layers, InitialState::AllPlus)?;
    let mut labels = Vec::with_capacity(2 * layers);
    for layer in 0..layers {
        let (gamma, beta) = (2 * layer, 2 * layer + 1);
        labels.push(ParamLabel::Gamma { layer });
        labels.push(ParamLabel::Beta { layer });
        for &(a, b, w) in &couplings {
            circuit.push(Gate::bound(GateKind::ZZ(a, b), gamma, 2.0 * w))?;
        }
        for (q, &h) in fields.iter().enumerate() {
            circuit.push(Gate::bound(GateKind::RZ(q), gamma, 2.0 * h))?;
        }
        for q in 0..n {
            circuit.push(Gate::bound(GateKind::RX(q), beta, 2.0))?;
        }
    }
    Ok((circuit, ParamLayout { labels }))
}

/// Gate counts by arity. Preparing `|+>^n` counts as `n` Hadamards.
pub fn count_gates(circuit: &Circuit) -> GateCounts {
    let prep = match circuit.initial_state {
        InitialState::AllPlus => circuit.n_qubits(),
        InitialState::AllZero => 0,
    };
    let doubles = circuit.gates.iter().filter(|g| g.kind.arity() == 2).count();
    GateCounts {
        singles: circuit.gates.len() - doubles + prep,
        doubles,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModel {
    pub counts: GateCounts,
    pub n_params: usize,
}

/// Closed-form resource counts as tabulated for the two benchmark problems.
pub fn paper_cost_model(alg: Algorithm, problem: CostProblem, n_qubits: usize, n_edges: usize, layers: usize) -> CostModel {
    let (nq, ne, l) = (n_qubits, n_edges, layers);
    match alg {
        Algorithm::Qgoa => {
            let singles = match problem {
                CostProblem::Portfolio => (2 * nq + ne) * l,
                CostProblem::Mvc => 2 * nq * l,
            };
            CostModel {
                counts: GateCounts {
                    singles,
                    doubles: 2 * ne * l,
                },
                n_params: (2 * nq + 1) * l,
            }
        }
        Algorithm::Qaoa => CostModel {
            counts: GateCounts {
                singles: 2 * nq * l + nq,
                doubles: ne * l,
            },
            n_params: 2 * l,
        },
    }
}
