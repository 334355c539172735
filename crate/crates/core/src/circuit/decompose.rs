//! Basis decomposition with two-qubit peephole cancellation.
//!
//! `RZZ(theta) -> CX . RZ(theta) . CX` and `SWAP -> 3 CX`; when a routed
//! RZZ/SWAP block is expanded the inner CX pair cancels, leaving three
//! two-qubit gates per block. The CZ basis conjugates each CX by H on the
//! target. The peephole removes adjacent identical self-inverse two-qubit
//! gates only; single-qubit simplification is out of scope.

use super::{Basis, Circuit, Gate};
use crate::{Error, Result};

pub fn decompose_to_basis(c: &Circuit, basis: Basis) -> Result<Circuit> {
    if basis == c.basis {
        return Ok(c.clone());
    }
    let from_zz = matches!(c.basis, Basis::AbstractZz | Basis::FractionalZz);
    if !from_zz {
        return Err(Error::BadDecomposition {
            from: c.basis.name().into(),
            to: basis.name().into(),
        });
    }
    let gates = match basis {
        Basis::AbstractZz | Basis::FractionalZz => {
            if let Some(swap) = c.gates.iter().find(|g| matches!(g, Gate::Swap { .. })) {
                return Err(Error::Inexpressible {
                    gate: swap.name().into(),
                    format: format!("{} basis", basis.name()),
                });
            }
            c.gates.clone()
        }
        Basis::Cnot => to_cnot(&c.gates)?,
        Basis::Cz => to_cnot(&c.gates)?
            .into_iter()
            .flat_map(|g| match g {
                Gate::Cx { control, target } => vec![
                    Gate::H(target),
                    Gate::Cz { a: control, b: target },
                    Gate::H(target),
                ],
                other => vec![other],
            })
            .collect(),
    };
    Ok(Circuit {
        n_qubits: c.n_qubits,
        gates,
        basis,
        layout: c.layout.clone(),
        zz_logical: c.zz_logical,
    })
}

fn to_cnot(gates: &[Gate]) -> Result<Vec<Gate>> {
    let mut out = Vec::with_capacity(gates.len() * 3);
    for g in gates {
        match *g {
            Gate::H(_) | Gate::Rx { .. } | Gate::Rz { .. } | Gate::MeasureAll => {
                out.push(g.clone())
            }
            Gate::Rzz { theta, a, b } => {
                out.push(Gate::Cx { control: a, target: b });
                out.push(Gate::Rz { theta, q: b });
                out.push(Gate::Cx { control: a, target: b });
            }
            Gate::Swap { a, b } => {
                out.push(Gate::Cx { control: a, target: b });
                out.push(Gate::Cx { control: b, target: a });
                out.push(Gate::Cx { control: a, target: b });
            }
            Gate::Cz { .. } | Gate::Cx { .. } => {
                return Err(Error::BadDecomposition {
                    from: g.name().into(),
                    to: "cnot".into(),
                })
            }
        }
    }
    Ok(peephole_cancel(out))
}

fn cancels(a: &Gate, b: &Gate) -> bool {
    match (a, b) {
        (Gate::Cx { control: c1, target: t1 }, Gate::Cx { control: c2, target: t2 }) => {
            c1 == c2 && t1 == t2
        }
        (Gate::Cz { a: a1, b: b1 }, Gate::Cz { a: a2, b: b2 })
        | (Gate::Swap { a: a1, b: b1 }, Gate::Swap { a: a2, b: b2 }) => {
            (a1, b1) == (a2, b2) || (a1, b1) == (b2, a2)
        }
        _ => false,
    }
}

/// Remove adjacent identical self-inverse two-qubit gates (nothing acting
/// on either operand in between).
fn peephole_cancel(gates: Vec<Gate>) -> Vec<Gate> {
    let n = gates
        .iter()
        .flat_map(|g| {
            g.two_qubit_operands()
                .map(|(a, b)| a.max(b))
                .or(g.single_qubit_operand())
        })
        .max()
        .map_or(0, |m| m + 1);
    let mut kept: Vec<Option<Gate>> = Vec::with_capacity(gates.len());
    let mut touch: Vec<Vec<usize>> = vec![Vec::new(); n];
    for g in gates {
        if let Some((a, b)) = g.two_qubit_operands() {
            let ta = touch[a].last().copied();
            let tb = touch[b].last().copied();
            if let (Some(i), Some(j)) = (ta, tb) {
                if i == j && kept[i].as_ref().is_some_and(|prev| cancels(prev, &g)) {
                    kept[i] = None;
                    touch[a].pop();
                    touch[b].pop();
                    continue;
                }
            }
            let idx = kept.len();
            kept.push(Some(g));
            touch[a].push(idx);
            touch[b].push(idx);
        } else if let Some(q) = g.single_qubit_operand() {
            let idx = kept.len();
            kept.push(Some(g));
            touch[q].push(idx);
        } else {
            // measurement touches every wire
            let idx = kept.len();
            kept.push(Some(g));
            for t in touch.iter_mut() {
                t.push(idx);
            }
        }
    }
    kept.into_iter().flatten().collect()
}
