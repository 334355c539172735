//! Instance file format (JSON).
//!
//! ```json
//! {
//!   "version": 1,
//!   "bit_order": "node0-first",
//!   "topology": {"type": "chain"},
//!   "n": 4,
//!   "seed": 7,
//!   "weight_set": [0.1, 0.2, 0.3, 0.5, 1.0],
//!   "edges": [[0, 1, 0.5], [1, 2, 1.0], [2, 3, 0.1]],
//!   "optimum": {"bits": "0101", "value": 1.6}
//! }
//! ```
//!
//! Edges are written in canonical order and tolerated unordered on read.
//! `optimum` may be `null`; `optimum.bits` may be `null` when only the
//! value is known (externally solved instances above the brute-force cap).

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Bitstring, Optimum, ProblemInstance, Topology, WeightedGraph};
use crate::fsutil::atomic_write;
use crate::{Error, Result};

pub const INSTANCE_FORMAT_VERSION: u32 = 1;
pub const BIT_ORDER: &str = "node0-first";

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    version: u32,
    bit_order: String,
    topology: Topology,
    n: usize,
    seed: u64,
    weight_set: Vec<f64>,
    edges: Vec<(usize, usize, f64)>,
    optimum: Option<OptimumFile>,
}

#[derive(Serialize, Deserialize)]
struct OptimumFile {
    bits: Option<String>,
    value: f64,
}

impl ProblemInstance {
    pub fn to_json(&self) -> Result<String> {
        let file = InstanceFile {
            version: INSTANCE_FORMAT_VERSION,
            bit_order: BIT_ORDER.to_string(),
            topology: self.topology.clone(),
            n: self.graph.n_nodes,
            seed: self.seed,
            weight_set: self.weight_set.clone(),
            edges: self.graph.edges.clone(),
            optimum: self.optimum.as_ref().map(|o| OptimumFile {
                bits: o.bits.as_ref().map(|b| b.to_string()),
                value: o.value,
            }),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        if file.version != INSTANCE_FORMAT_VERSION {
            return Err(Error::InvalidConfig(format!(
                "unsupported instance version {}",
                file.version
            )));
        }
        if file.bit_order != BIT_ORDER {
            return Err(Error::InvalidConfig(format!(
                "unsupported bit order {:?}; this tool uses {BIT_ORDER:?}",
                file.bit_order
            )));
        }
        let graph = WeightedGraph::new(file.n, file.edges)?;
        for &(u, v, w) in &graph.edges {
            if !file.weight_set.contains(&w) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) weight {w} is not in the weight set"
                )));
            }
        }
        let expected = file.topology.edges(file.n)?;
        let actual: Vec<(usize, usize)> = graph.edges.iter().map(|&(u, v, _)| (u, v)).collect();
        if expected != actual {
            return Err(Error::InvalidGraph(
                "edge set does not match the declared topology".into(),
            ));
        }
        let optimum = match file.optimum {
            None => None,
            Some(o) => {
                let bits = o.bits.as_deref().map(Bitstring::parse).transpose()?;
                if let Some(b) = &bits {
                    if b.len() != file.n {
                        return Err(Error::LengthMismatch {
                            got: b.len(),
                            expected: file.n,
                        });
                    }
                    let inst = ProblemInstance {
                        graph: graph.clone(),
                        topology: file.topology.clone(),
                        seed: file.seed,
                        weight_set: file.weight_set.clone(),
                        optimum: None,
                    };
                    let c = super::cost(&inst, b)?;
                    if (c - o.value).abs() > 1e-9 {
                        return Err(Error::InvalidConfig(format!(
                            "optimum value {} does not match its bitstring's cost {c}",
                            o.value
                        )));
                    }
                }
                Some(Optimum {
                    bits,
                    value: o.value,
                })
            }
        };
        Ok(ProblemInstance {
            graph,
            topology: file.topology,
            seed: file.seed,
            weight_set: file.weight_set,
            optimum,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        atomic_write(path, &(self.to_json()? + "\n"))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
