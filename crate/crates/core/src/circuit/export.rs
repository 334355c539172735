//! Circuit text formats.
//!
//! Neutral format: one header line
//! `lrq-circuit v1 nq=<n> basis=<tag> zz=<count> [perm=<w0,w1,...>]`
//! then one gate per line (`h <q>`, `rx <theta> <q>`, `rz <theta> <q>`,
//! `rzz <theta> <q1> <q2>`, `cz <q1> <q2>`, `cx <q1> <q2>`,
//! `swap <q1> <q2>`, `measure all`). Angles carry 17 significant digits
//! and round-trip exactly. `perm` appears only when the measurement
//! layout is not the identity; entry `i` is the wire measured for node
//! `i` (bit order: node 0 first).
//!
//! OpenQASM 2 export covers {h, rx, rz, cx, cz, measure}.

use super::{Basis, Circuit, Gate};
use crate::{Error, Result};

fn fmt_angle(theta: f64) -> String {
    format!("{theta:.16e}")
}

/// Serialize to the neutral line format.
pub fn write_circuit(c: &Circuit) -> String {
    let mut out = format!(
        "lrq-circuit v1 nq={} basis={} zz={}",
        c.n_qubits,
        c.basis.name(),
        c.zz_logical
    );
    if !c.has_identity_layout() {
        let perm: Vec<String> = c.layout.iter().map(|w| w.to_string()).collect();
        out.push_str(&format!(" perm={}", perm.join(",")));
    }
    out.push('\n');
    for g in &c.gates {
        let line = match *g {
            Gate::H(q) => format!("h {q}"),
            Gate::Rx { theta, q } => format!("rx {} {q}", fmt_angle(theta)),
            Gate::Rz { theta, q } => format!("rz {} {q}", fmt_angle(theta)),
            Gate::Rzz { theta, a, b } => format!("rzz {} {a} {b}", fmt_angle(theta)),
            Gate::Cz { a, b } => format!("cz {a} {b}"),
            Gate::Cx { control, target } => format!("cx {control} {target}"),
            Gate::Swap { a, b } => format!("swap {a} {b}"),
            Gate::MeasureAll => "measure all".to_string(),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn malformed(line: usize, msg: impl Into<String>) -> Error {
    Error::Malformed {
        line,
        msg: msg.into(),
    }
}

/// Parse the neutral line format back into a circuit.
pub fn read_circuit(text: &str) -> Result<Circuit> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| malformed(1, "empty circuit file"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("lrq-circuit") || tokens.next() != Some("v1") {
        return Err(malformed(1, "expected header `lrq-circuit v1 ...`"));
    }
    let mut nq = None;
    let mut basis = None;
    let mut zz = None;
    let mut perm = None;
    for tok in tokens {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| malformed(1, format!("bad header token {tok:?}")))?;
        match key {
            "nq" => {
                nq = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| malformed(1, format!("bad qubit count {value:?}")))?,
                )
            }
            "basis" => {
                basis = Some(
                    Basis::parse(value)
                        .ok_or_else(|| malformed(1, format!("unknown basis {value:?}")))?,
                )
            }
            "zz" => {
                zz = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| malformed(1, format!("bad zz count {value:?}")))?,
                )
            }
            "perm" => {
                let wires: std::result::Result<Vec<usize>, _> =
                    value.split(',').map(|s| s.parse::<usize>()).collect();
                perm = Some(wires.map_err(|_| malformed(1, "bad perm list"))?);
            }
            _ => {} // tolerate unknown header extensions
        }
    }
    let n = nq.ok_or_else(|| malformed(1, "header missing nq="))?;
    let basis = basis.ok_or_else(|| malformed(1, "header missing basis="))?;

    let mut gates = Vec::new();
    let mut n_rzz = 0usize;
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut t = line.split_whitespace();
        let kind = t.next().unwrap();
        let rest: Vec<&str> = t.collect();
        let qubit = |s: &str| -> Result<usize> {
            let q: usize = s
                .parse()
                .map_err(|_| malformed(line_no, format!("bad qubit index {s:?}")))?;
            if q >= n {
                return Err(malformed(line_no, format!("qubit {q} out of range for nq={n}")));
            }
            Ok(q)
        };
        let angle = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|_| malformed(line_no, format!("bad angle {s:?}")))
        };
        let expect_len = |want: usize| -> Result<()> {
            if rest.len() != want {
                return Err(malformed(
                    line_no,
                    format!("`{kind}` takes {want} arguments, got {}", rest.len()),
                ));
            }
            Ok(())
        };
        let gate = match kind {
            "h" => {
                expect_len(1)?;
                Gate::H(qubit(rest[0])?)
            }
            "rx" => {
                expect_len(2)?;
                Gate::Rx { theta: angle(rest[0])?, q: qubit(rest[1])? }
            }
            "rz" => {
                expect_len(2)?;
                Gate::Rz { theta: angle(rest[0])?, q: qubit(rest[1])? }
            }
            "rzz" => {
                expect_len(3)?;
                n_rzz += 1;
                let (a, b) = (qubit(rest[1])?, qubit(rest[2])?);
                if a == b {
                    return Err(malformed(line_no, "rzz operands must differ"));
                }
                Gate::Rzz { theta: angle(rest[0])?, a, b }
            }
            "cz" | "cx" | "swap" => {
                expect_len(2)?;
                let (a, b) = (qubit(rest[0])?, qubit(rest[1])?);
                if a == b {
                    return Err(malformed(line_no, format!("{kind} operands must differ")));
                }
                match kind {
                    "cz" => Gate::Cz { a, b },
                    "cx" => Gate::Cx { control: a, target: b },
                    _ => Gate::Swap { a, b },
                }
            }
            "measure" => {
                if rest != ["all"] {
                    return Err(malformed(line_no, "expected `measure all`"));
                }
                Gate::MeasureAll
            }
            other => return Err(malformed(line_no, format!("unknown gate {other:?}"))),
        };
        gates.push(gate);
    }
    let layout = match perm {
        Some(p) => {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if sorted != (0..n).collect::<Vec<_>>() {
                return Err(malformed(1, "perm is not a permutation of the wires"));
            }
            p
        }
        None => Circuit::identity_layout(n),
    };
    Ok(Circuit {
        n_qubits: n,
        gates,
        basis,
        layout,
        zz_logical: zz.unwrap_or(n_rzz),
    })
}

/// OpenQASM 2 export for circuits in the {h, rx, rz, cx, cz} alphabet.
pub fn write_qasm2(c: &Circuit) -> Result<String> {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    out.push_str(&format!("qreg q[{0}];\ncreg c[{0}];\n", c.n_qubits));
    for g in &c.gates {
        let line = match *g {
            Gate::H(q) => format!("h q[{q}];"),
            Gate::Rx { theta, q } => format!("rx({}) q[{q}];", fmt_angle(theta)),
            Gate::Rz { theta, q } => format!("rz({}) q[{q}];", fmt_angle(theta)),
            Gate::Cx { control, target } => format!("cx q[{control}],q[{target}];"),
            Gate::Cz { a, b } => format!("cz q[{a}],q[{b}];"),
            Gate::MeasureAll => "measure q -> c;".to_string(),
            Gate::Rzz { .. } | Gate::Swap { .. } => {
                return Err(Error::Inexpressible {
                    gate: g.name().into(),
                    format: "OpenQASM 2 export".into(),
                })
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}
