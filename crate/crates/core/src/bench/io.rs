//! Sample files, benchmark records, and CSV outputs.
//!
//! Sample format: header `lrq-samples v1 nq=<n> shots=<s>`, then one
//! `<bitstring> <count>` line per outcome. Bit `i` of a string is node
//! `i` (node 0 first). Duplicate bitstring lines merge additively.

use std::path::Path;

use crate::problems::ProblemInstance;
use crate::simulator::SampleSet;
use crate::{Error, Result};

/// Serialize a sample set.
pub fn write_samples(set: &SampleSet) -> String {
    let mut out = format!("lrq-samples v1 nq={} shots={}\n", set.n_qubits, set.shots);
    for (bits, count) in &set.counts {
        out.push_str(&format!("{bits} {count}\n"));
    }
    out
}

fn malformed(line: usize, msg: impl Into<String>) -> Error {
    Error::Malformed {
        line,
        msg: msg.into(),
    }
}

/// Parse a sample file.
pub fn read_samples(text: &str) -> Result<SampleSet> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| malformed(1, "empty sample file"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("lrq-samples") || tokens.next() != Some("v1") {
        return Err(malformed(1, "expected header `lrq-samples v1 nq=<n> shots=<s>`"));
    }
    let mut nq = None;
    let mut shots = None;
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
            "shots" => {
                shots = Some(
                    value
                        .parse::<u64>()
                        .map_err(|_| malformed(1, format!("bad shot count {value:?}")))?,
                )
            }
            _ => {}
        }
    }
    let n = nq.ok_or_else(|| malformed(1, "header missing nq="))?;
    let declared = shots.ok_or_else(|| malformed(1, "header missing shots="))?;

    let mut set = SampleSet::new(n);
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (bits, count) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| malformed(line_no, "expected `<bitstring> <count>`"))?;
        if bits.len() != n {
            return Err(malformed(
                line_no,
                format!("bitstring has {} bits, header says nq={n}", bits.len()),
            ));
        }
        if let Some(bad) = bits.chars().find(|c| *c != '0' && *c != '1') {
            return Err(malformed(line_no, format!("non-binary character {bad:?}")));
        }
        let count: u64 = count
            .trim()
            .parse()
            .map_err(|_| malformed(line_no, format!("bad count {count:?}")))?;
        if count == 0 {
            return Err(malformed(line_no, "counts must be >= 1"));
        }
        let entry = set.counts.entry(bits.to_string()).or_insert(0);
        *entry = entry
            .checked_add(count)
            .ok_or_else(|| malformed(line_no, "count overflow"))?;
        set.shots = set
            .shots
            .checked_add(count)
            .ok_or_else(|| malformed(line_no, "total shot count overflow"))?;
    }
    if set.shots == 0 {
        return Err(malformed(1, "sample file has no data lines"));
    }
    if set.shots != declared {
        return Err(malformed(
            1,
            format!("header declares shots={declared} but lines sum to {}", set.shots),
        ));
    }
    Ok(set)
}

/// Load a sample file and check it against an instance's width.
pub fn ingest_samples(path: &Path, instance: &ProblemInstance) -> Result<SampleSet> {
    let set = read_samples(&std::fs::read_to_string(path)?)?;
    if set.n_qubits != instance.graph.n_nodes {
        return Err(Error::LengthMismatch {
            got: set.n_qubits,
            expected: instance.graph.n_nodes,
        });
    }
    Ok(set)
}
