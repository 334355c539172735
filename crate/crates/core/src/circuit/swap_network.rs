//! Odd-even SWAP-network routing for fully connected problems on a line.
//!
//! Each cost layer runs `n` rounds of alternating adjacent-pair blocks.
//! A block applies `RZZ(-2 gamma_k w_ab)` for the pair of logical nodes
//! currently resident on the two wires, followed by a SWAP. After a full
//! layer every node pair has interacted exactly once and the logical
//! order along the line is reversed; the next layer simply runs on the
//! reversed arrangement instead of undoing it.

use super::{mixer_angle, zz_angle, Basis, Circuit, Gate};
use crate::problems::ProblemInstance;
use crate::schedule::RampSchedule;
use crate::{Error, Result};

/// Route a fully connected instance through the linear SWAP network.
/// `chain_order[i]` names the logical node initially placed on wire `i`.
pub fn transpile_swap_network(
    instance: &ProblemInstance,
    schedule: &RampSchedule,
    chain_order: &[usize],
) -> Result<Circuit> {
    if !instance.topology.is_fully_connected() {
        return Err(Error::NotFullyConnected);
    }
    let n = instance.graph.n_nodes;
    {
        let mut sorted = chain_order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::BadChainOrder { n });
        }
    }

    let mut weight = vec![0.0f64; n * n];
    for &(u, v, w) in &instance.graph.edges {
        weight[u * n + v] = w;
        weight[v * n + u] = w;
    }

    let mut wire_to_node = chain_order.to_vec();
    let pairs_per_layer = n * (n - 1) / 2;
    let mut gates = Vec::with_capacity(n + schedule.p * (2 * pairs_per_layer + n) + 1);
    for q in 0..n {
        gates.push(Gate::H(q));
    }
    for k in 0..schedule.p {
        for round in 0..n {
            let mut i = round % 2;
            while i + 1 < n {
                let (a, b) = (wire_to_node[i], wire_to_node[i + 1]);
                gates.push(Gate::Rzz {
                    theta: zz_angle(schedule.gammas[k], weight[a * n + b]),
                    a: i,
                    b: i + 1,
                });
                gates.push(Gate::Swap { a: i, b: i + 1 });
                wire_to_node.swap(i, i + 1);
                i += 2;
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

    let mut layout = vec![0usize; n];
    for (wire, &node) in wire_to_node.iter().enumerate() {
        layout[node] = wire;
    }
    Ok(Circuit {
        n_qubits: n,
        gates,
        basis: Basis::AbstractZz,
        layout,
        zz_logical: schedule.p * pairs_per_layer,
    })
}
