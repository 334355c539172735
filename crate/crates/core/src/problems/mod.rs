//! Weighted MaxCut instances on the benchmark topologies.
//!
//! An instance is a weighted graph plus the topology tag and seed that
//! produced it. Edge weights are drawn uniformly from a weight set using
//! a platform-stable seeded generator, so identical inputs yield
//! bit-identical instances everywhere.

mod io;
mod oracle;
mod topology;

pub use io::{BIT_ORDER, INSTANCE_FORMAT_VERSION};
pub use oracle::{bipartite_coloring, exact_optimum, exact_optimum_with_cap, DEFAULT_BRUTE_FORCE_CAP};
pub use topology::{HeavyHexTemplate, Topology};

use serde::{Deserialize, Serialize};

use crate::rng::{self, packed_bit};
use crate::{Error, Result};

/// Weight set used throughout the benchmark unless overridden.
pub const DEFAULT_WEIGHT_SET: [f64; 5] = [0.1, 0.2, 0.3, 0.5, 1.0];

/// A partition label per node: bit `i` is node `i`'s side of the cut.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitstring(Vec<u8>);

impl Bitstring {
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidGraph("bitstring values must be 0 or 1".into()));
        }
        Ok(Self(bits))
    }

    /// Parse "0110..."; character `i` is node `i`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => {
                    return Err(Error::InvalidGraph(format!(
                        "non-binary character {c:?} in bitstring"
                    )))
                }
            }
        }
        Ok(Self(bits))
    }

    /// Bit `i` of `index` becomes node `i`.
    pub fn from_index(index: u64, n: usize) -> Self {
        Self((0..n).map(|i| ((index >> i) & 1) as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|b| 1 - b).collect())
    }
}

impl std::fmt::Display for Bitstring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Weighted graph with a canonical (sorted by `(u, v)`) edge list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedGraph {
    pub n_nodes: usize,
    /// `(u, v, w)` with `u < v`, sorted, no duplicates, all `w > 0`.
    pub edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    /// Build a graph, normalizing edge endpoints and sorting the edge list.
    pub fn new(n_nodes: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut norm = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            if u >= n_nodes || v >= n_nodes {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n_nodes} nodes"
                )));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has non-positive weight {w}"
                )));
            }
            norm.push((u.min(v), u.max(v), w));
        }
        norm.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        if norm.windows(2).any(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        Ok(Self { n_nodes, edges: norm })
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// Cut value of a partition given as packed bits (bit `i` = node `i`).
    pub fn cut_value_packed(&self, words: &[u64]) -> f64 {
        let mut c = 0.0;
        for &(u, v, w) in &self.edges {
            if packed_bit(words, u) != packed_bit(words, v) {
                c += w;
            }
        }
        c
    }
}

/// Known optimum of an instance. `bits` may be absent for externally
/// supplied optima where only the value is known.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub bits: Option<Bitstring>,
    pub value: f64,
}

/// The benchmark unit: graph, provenance, and (optionally) its optimum.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemInstance {
    pub graph: WeightedGraph,
    pub topology: Topology,
    pub seed: u64,
    pub weight_set: Vec<f64>,
    pub optimum: Option<Optimum>,
}

impl ProblemInstance {
    pub fn n_nodes(&self) -> usize {
        self.graph.n_nodes
    }

    /// The optimum value, if known.
    pub fn optimum_value(&self) -> Result<f64> {
        self.optimum.as_ref().map(|o| o.value).ok_or(Error::MissingOptimum)
    }

    /// Compute and cache the exact optimum if the oracle can reach it.
    pub fn ensure_optimum(&mut self) -> Result<()> {
        if self.optimum.is_none() {
            let (bits, value) = exact_optimum(self)?;
            self.optimum = Some(Optimum { bits: Some(bits), value });
        }
        Ok(())
    }
}

fn validate_weight_set(weight_set: &[f64]) -> Result<()> {
    if weight_set.is_empty() {
        return Err(Error::InvalidWeightSet("weight set is empty".into()));
    }
    if weight_set.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
        return Err(Error::InvalidWeightSet(
            "weights must be positive and finite".into(),
        ));
    }
    Ok(())
}

/// Generate a seeded instance: the edge set comes from the topology, and
/// each edge weight is an independent uniform draw from `weight_set` in
/// canonical edge order.
pub fn generate_instance(
    topology: &Topology,
    n: usize,
    weight_set: &[f64],
    seed: u64,
) -> Result<ProblemInstance> {
    validate_weight_set(weight_set)?;
    if n < 2 {
        return Err(Error::SizeMismatch {
            topology: topology.name(),
            n,
            valid: "n >= 2".into(),
        });
    }
    let edges = topology.edges(n)?;
    let mut rng = rng::stream(seed);
    let weighted = edges
        .into_iter()
        .map(|(u, v)| (u, v, weight_set[rng::uniform_index(&mut rng, weight_set.len())]))
        .collect();
    Ok(ProblemInstance {
        graph: WeightedGraph::new(n, weighted)?,
        topology: topology.clone(),
        seed,
        weight_set: weight_set.to_vec(),
        optimum: None,
    })
}

/// WMC cost of a partition: total weight of cut edges.
pub fn cost(instance: &ProblemInstance, x: &Bitstring) -> Result<f64> {
    if x.len() != instance.graph.n_nodes {
        return Err(Error::LengthMismatch {
            got: x.len(),
            expected: instance.graph.n_nodes,
        });
    }
    let mut c = 0.0;
    for &(u, v, w) in &instance.graph.edges {
        c += w * f64::from(x.bit(u) ^ x.bit(v));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize, seed: u64) -> ProblemInstance {
        generate_instance(&Topology::Chain, n, &DEFAULT_WEIGHT_SET, seed).unwrap()
    }

    #[test]
    fn chain_n2_is_single_edge() {
        let inst = generate_instance(&Topology::Chain, 2, &[1.0], 0).unwrap();
        assert_eq!(inst.graph.edges, vec![(0, 1, 1.0)]);
    }

    #[test]
    fn eagle_template_has_127_nodes_and_144_edges() {
        let t = Topology::HeavyHex {
            template: HeavyHexTemplate::Eagle127,
        };
        let inst = generate_instance(&t, 127, &DEFAULT_WEIGHT_SET, 5).unwrap();
        assert_eq!(inst.graph.n_nodes, 127);
        assert_eq!(inst.graph.n_edges(), 144);
    }

    #[test]
    fn heron_templates_match_published_sizes() {
        for (template, n, e) in [
            (HeavyHexTemplate::HeronR1_133, 133, 150),
            (HeavyHexTemplate::HeronR2_156, 156, 176),
        ] {
            let inst = generate_instance(
                &Topology::HeavyHex { template },
                n,
                &DEFAULT_WEIGHT_SET,
                1,
            )
            .unwrap();
            assert_eq!(inst.graph.n_nodes, n);
            assert_eq!(inst.graph.n_edges(), e);
        }
    }

    #[test]
    fn heavy_hex_rejects_wrong_size() {
        let t = Topology::HeavyHex {
            template: HeavyHexTemplate::Eagle127,
        };
        let err = generate_instance(&t, 100, &DEFAULT_WEIGHT_SET, 0).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("127"), "error should list the valid size: {msg}");
    }

    #[test]
    fn fully_connected_n20_has_190_uniformish_weights() {
        let inst =
            generate_instance(&Topology::FullyConnected, 20, &DEFAULT_WEIGHT_SET, 7).unwrap();
        assert_eq!(inst.graph.n_edges(), 190);
        // chi-square sanity: 190 draws over 5 bins, expected 38 per bin
        let mut tally = [0usize; 5];
        for &(_, _, w) in &inst.graph.edges {
            let k = DEFAULT_WEIGHT_SET.iter().position(|&x| x == w).unwrap();
            tally[k] += 1;
        }
        let chi2: f64 = tally
            .iter()
            .map(|&t| {
                let d = t as f64 - 38.0;
                d * d / 38.0
            })
            .sum();
        // 99.9% quantile of chi2 with 4 dof is 18.5
        assert!(chi2 < 18.5, "chi2 = {chi2}, tally = {tally:?}");
    }

    #[test]
    fn generation_is_reproducible() {
        let a = chain(50, 123);
        let b = chain(50, 123);
        assert_eq!(a, b);
        let c = chain(50, 124);
        assert_ne!(a.graph.edges, c.graph.edges);
    }

    #[test]
    fn cost_matches_hand_examples() {
        let mut inst = generate_instance(&Topology::Chain, 3, &[1.0], 0).unwrap();
        inst.graph = WeightedGraph::new(3, vec![(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let x = Bitstring::parse("010").unwrap();
        assert_eq!(cost(&inst, &x).unwrap(), 2.0);
        let zeros = Bitstring::parse("000").unwrap();
        assert_eq!(cost(&inst, &zeros).unwrap(), 0.0);
    }

    #[test]
    fn triangle_cost_and_optimum_by_enumeration() {
        let graph =
            WeightedGraph::new(3, vec![(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]).unwrap();
        let inst = ProblemInstance {
            graph,
            topology: Topology::Custom {
                couplings: vec![(0, 1), (0, 2), (1, 2)],
            },
            seed: 0,
            weight_set: vec![1.0],
            optimum: None,
        };
        // independent oracle: enumerate all 8 bitstrings
        let mut best = 0.0f64;
        for z in 0..8u64 {
            let c = cost(&inst, &Bitstring::from_index(z, 3)).unwrap();
            best = best.max(c);
        }
        assert_eq!(best, 2.0);
        assert_eq!(cost(&inst, &Bitstring::parse("011").unwrap()).unwrap(), 2.0);
        let (_, opt) = exact_optimum(&inst).unwrap();
        assert_eq!(opt, 2.0);
    }

    #[test]
    fn cost_length_mismatch_errors() {
        let inst = chain(4, 0);
        let err = cost(&inst, &Bitstring::parse("010").unwrap()).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { .. }));
    }

    #[test]
    fn cut_symmetry_under_complement() {
        let inst = chain(9, 3);
        for z in [0u64, 5, 100, 300] {
            let x = Bitstring::from_index(z, 9);
            assert_eq!(
                cost(&inst, &x).unwrap(),
                cost(&inst, &x.complement()).unwrap()
            );
        }
    }

    #[test]
    fn empty_weight_set_rejected() {
        let err = generate_instance(&Topology::Chain, 3, &[], 0).unwrap_err();
        assert!(matches!(err, Error::InvalidWeightSet(_)));
    }
}
