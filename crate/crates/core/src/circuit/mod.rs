//! LR-QAOA circuit construction.
//!
//! Gate-angle convention: `RZZ(theta) = exp(-i theta/2 Z(x)Z)` and
//! `RX(theta) = exp(-i theta/2 X)`. The cost layer applies
//! `RZZ(-2 * gamma_k * w)` per edge and the mixer `RX(2 * beta_k)` per
//! qubit; with the ramp of the schedule module this steers the uniform
//! superposition toward maximum-cut configurations.
//!
//! Within each cost layer, edges are emitted grouped into disjoint
//! sublayers (a proper edge coloring: optimal for bipartite graphs,
//! greedy otherwise) with canonical edge order inside each sublayer.
//! ZZ terms commute, so the grouping leaves the unitary unchanged while
//! letting the emitted order realize the closed-form two-qubit depths.

mod coloring;
mod counts;
mod decompose;
mod export;
mod swap_network;

pub use coloring::color_classes;
pub use counts::{count_report, predicted_counts, CountBasis, CountReport};
pub use decompose::decompose_to_basis;
pub use export::{read_circuit, write_circuit, write_qasm2};
pub use swap_network::transpile_swap_network;

use serde::{Deserialize, Serialize};

use crate::problems::ProblemInstance;
use crate::schedule::RampSchedule;

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    Rx { theta: f64, q: usize },
    Rz { theta: f64, q: usize },
    Rzz { theta: f64, a: usize, b: usize },
    Cz { a: usize, b: usize },
    Cx { control: usize, target: usize },
    Swap { a: usize, b: usize },
    MeasureAll,
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::Rx { .. } => "rx",
            Gate::Rz { .. } => "rz",
            Gate::Rzz { .. } => "rzz",
            Gate::Cz { .. } => "cz",
            Gate::Cx { .. } => "cx",
            Gate::Swap { .. } => "swap",
            Gate::MeasureAll => "measure",
        }
    }

    pub fn single_qubit_operand(&self) -> Option<usize> {
        match *self {
            Gate::H(q) | Gate::Rx { q, .. } | Gate::Rz { q, .. } => Some(q),
            _ => None,
        }
    }

    pub fn two_qubit_operands(&self) -> Option<(usize, usize)> {
        match *self {
            Gate::Rzz { a, b, .. } | Gate::Cz { a, b } | Gate::Swap { a, b } => Some((a, b)),
            Gate::Cx { control, target } => Some((control, target)),
            _ => None,
        }
    }
}

/// Gate alphabet a circuit is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// {H, RZZ, RX} as built; routed circuits additionally contain SWAP.
    #[serde(rename = "abstract-zz")]
    AbstractZz,
    /// Native RZZ/RX hardware (fractional gates); same alphabet, no SWAP.
    #[serde(rename = "fractional-zz")]
    FractionalZz,
    /// CZ two-qubit basis.
    #[serde(rename = "cz")]
    Cz,
    /// CNOT two-qubit basis.
    #[serde(rename = "cnot")]
    Cnot,
}

impl Basis {
    pub fn name(&self) -> &'static str {
        match self {
            Basis::AbstractZz => "abstract-zz",
            Basis::FractionalZz => "fractional-zz",
            Basis::Cz => "cz",
            Basis::Cnot => "cnot",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "abstract-zz" => Some(Basis::AbstractZz),
            "fractional-zz" => Some(Basis::FractionalZz),
            "cz" => Some(Basis::Cz),
            "cnot" => Some(Basis::Cnot),
            _ => None,
        }
    }
}

/// An ordered gate list over `n_qubits` wires.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
    pub basis: Basis,
    /// `layout[node] = wire` holding that node at measurement time.
    /// Identity for direct builds; records the net SWAP-network
    /// permutation for routed builds.
    pub layout: Vec<usize>,
    /// Number of logical ZZ interactions realized (layers times edges);
    /// preserved through routing and decomposition.
    pub zz_logical: usize,
}

impl Circuit {
    pub fn identity_layout(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    pub fn has_identity_layout(&self) -> bool {
        self.layout.iter().enumerate().all(|(i, &w)| i == w)
    }
}

/// Phase-separator angle for one edge at ramp value `gamma`.
pub fn zz_angle(gamma: f64, weight: f64) -> f64 {
    -2.0 * gamma * weight
}

/// Mixer angle at ramp value `beta`.
pub fn mixer_angle(beta: f64) -> f64 {
    2.0 * beta
}

/// Build the LR-QAOA circuit for an instance: Hadamards, then per layer
/// the ZZ cost sublayers followed by the RX mixer, then measurement.
pub fn build_lr_qaoa(instance: &ProblemInstance, schedule: &RampSchedule) -> Circuit {
    let n = instance.graph.n_nodes;
    let classes = color_classes(n, &instance.graph.edges);
    let mut gates = Vec::with_capacity(n + schedule.p * (instance.graph.n_edges() + n) + 1);
    for q in 0..n {
        gates.push(Gate::H(q));
    }
    for k in 0..schedule.p {
        for class in &classes {
            for &(u, v, w) in class {
                gates.push(Gate::Rzz {
                    theta: zz_angle(schedule.gammas[k], w),
                    a: u,
                    b: v,
                });
            }
        }
        for q in 0..n {
            gates.push(Gate::Rx {
                theta: mixer_angle(schedule.betas[k]),
                q,
            });
        }
    }
    gates.push(Gate::MeasureAll);
    Circuit {
        n_qubits: n,
        gates,
        basis: Basis::AbstractZz,
        layout: Circuit::identity_layout(n),
        zz_logical: schedule.p * instance.graph.n_edges(),
    }
}
