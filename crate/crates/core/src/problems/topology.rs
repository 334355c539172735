//! Benchmark graph topologies.
//!
//! Heavy-hex layouts ship as three fixed templates matching the deployed
//! device generations (127 nodes / 144 edges, 133/150, 156/176); arbitrary
//! device layouts go through [`Topology::Custom`].

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HeavyHexTemplate {
    #[serde(rename = "eagle-127")]
    Eagle127,
    #[serde(rename = "heron-r1-133")]
    HeronR1_133,
    #[serde(rename = "heron-r2-156")]
    HeronR2_156,
}

impl HeavyHexTemplate {
    pub fn n_nodes(&self) -> usize {
        match self {
            Self::Eagle127 => 127,
            Self::HeronR1_133 => 133,
            Self::HeronR2_156 => 156,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Eagle127 => "eagle-127",
            Self::HeronR1_133 => "heron-r1-133",
            Self::HeronR2_156 => "heron-r2-156",
        }
    }

    pub fn all() -> [Self; 3] {
        [Self::Eagle127, Self::HeronR1_133, Self::HeronR2_156]
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::all().into_iter().find(|t| t.name() == s)
    }

    fn params(&self) -> HeavyHexParams {
        match self {
            // 7 rows of 15 with the first row trimmed at the right end and
            // the last row trimmed at the left end; 6 bridge gaps.
            Self::Eagle127 => HeavyHexParams {
                rows: 7,
                row_len: 15,
                trim_first_row_end: true,
                trim_last_row_start: true,
                pendant_group: false,
            },
            // 7 full rows of 15 plus a pendant bridge group below the last row.
            Self::HeronR1_133 => HeavyHexParams {
                rows: 7,
                row_len: 15,
                trim_first_row_end: false,
                trim_last_row_start: false,
                pendant_group: true,
            },
            // 8 full rows of 16; 7 bridge gaps.
            Self::HeronR2_156 => HeavyHexParams {
                rows: 8,
                row_len: 16,
                trim_first_row_end: false,
                trim_last_row_start: false,
                pendant_group: false,
            },
        }
    }

    /// Coupling list of the template, canonical order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let p = self.params();
        // columns present in each row
        let row_cols: Vec<Vec<usize>> = (0..p.rows)
            .map(|r| {
                let start = if r == p.rows - 1 && p.trim_last_row_start { 1 } else { 0 };
                let end = if r == 0 && p.trim_first_row_end {
                    p.row_len - 1
                } else {
                    p.row_len
                };
                (start..end).collect()
            })
            .collect();

        // assign node ids: each row left to right, then the bridge group
        // below it (including the pendant group, when present)
        let mut id_of = vec![vec![usize::MAX; p.row_len]; p.rows];
        let mut bridges: Vec<(usize, usize, Option<usize>)> = Vec::new(); // (id, gap, col)
        let mut next = 0usize;
        let n_gaps = p.rows - 1 + usize::from(p.pendant_group);
        for r in 0..p.rows {
            for &c in &row_cols[r] {
                id_of[r][c] = next;
                next += 1;
            }
            if r < n_gaps {
                for &c in gap_columns(r).iter() {
                    let in_upper = row_cols[r].contains(&c);
                    let in_lower = r + 1 < p.rows && row_cols[r + 1].contains(&c);
                    let pendant = r == p.rows - 1;
                    if in_upper && (in_lower || pendant) && c < p.row_len {
                        bridges.push((next, r, Some(c)));
                        next += 1;
                    }
                }
            }
        }

        let mut edges = Vec::new();
        // horizontal row edges
        for r in 0..p.rows {
            for w in row_cols[r].windows(2) {
                edges.push((id_of[r][w[0]], id_of[r][w[1]]));
            }
        }
        // vertical bridge edges
        for &(id, gap, col) in &bridges {
            let c = col.unwrap();
            edges.push((id_of[gap][c], id));
            if gap + 1 < p.rows {
                edges.push((id, id_of[gap + 1][c]));
            }
        }
        canonicalize(edges)
    }
}

struct HeavyHexParams {
    rows: usize,
    row_len: usize,
    trim_first_row_end: bool,
    trim_last_row_start: bool,
    pendant_group: bool,
}

/// Bridge columns alternate between gaps, spaced four columns apart.
fn gap_columns(gap: usize) -> [usize; 4] {
    if gap % 2 == 0 {
        [0, 4, 8, 12]
    } else {
        [2, 6, 10, 14]
    }
}

fn canonicalize(edges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    out.sort_unstable();
    out
}

/// Graph family of an instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Topology {
    Chain,
    HeavyHex { template: HeavyHexTemplate },
    SquareGrid { rows: usize, cols: usize },
    FullyConnected,
    Custom { couplings: Vec<(usize, usize)> },
}

impl Topology {
    pub fn name(&self) -> String {
        match self {
            Self::Chain => "chain".into(),
            Self::HeavyHex { template } => format!("heavy-hex:{}", template.name()),
            Self::SquareGrid { rows, cols } => format!("square-grid:{rows}x{cols}"),
            Self::FullyConnected => "fully-connected".into(),
            Self::Custom { .. } => "custom".into(),
        }
    }

    /// Edge set over `n` nodes, canonical order. Errors when the topology
    /// does not admit `n` nodes.
    pub fn edges(&self, n: usize) -> Result<Vec<(usize, usize)>> {
        match self {
            Self::Chain => {
                if n < 2 {
                    return Err(self.size_error(n, "n >= 2"));
                }
                Ok((0..n - 1).map(|i| (i, i + 1)).collect())
            }
            Self::HeavyHex { template } => {
                if n != template.n_nodes() {
                    let valid = HeavyHexTemplate::all()
                        .iter()
                        .map(|t| format!("{} ({})", t.n_nodes(), t.name()))
                        .collect::<Vec<_>>()
                        .join(", ");
                    return Err(self.size_error(n, &valid));
                }
                Ok(template.edges())
            }
            Self::SquareGrid { rows, cols } => {
                if *rows == 0 || *cols == 0 || n != rows * cols || n < 2 {
                    return Err(self.size_error(n, &format!("rows*cols = {}", rows * cols)));
                }
                let mut edges = Vec::new();
                let id = |r: usize, c: usize| r * cols + c;
                for r in 0..*rows {
                    for c in 0..*cols {
                        if c + 1 < *cols {
                            edges.push((id(r, c), id(r, c + 1)));
                        }
                        if r + 1 < *rows {
                            edges.push((id(r, c), id(r + 1, c)));
                        }
                    }
                }
                Ok(canonicalize(edges))
            }
            Self::FullyConnected => {
                if n < 2 {
                    return Err(self.size_error(n, "n >= 2"));
                }
                let mut edges = Vec::with_capacity(n * (n - 1) / 2);
                for u in 0..n {
                    for v in u + 1..n {
                        edges.push((u, v));
                    }
                }
                Ok(edges)
            }
            Self::Custom { couplings } => {
                for &(u, v) in couplings {
                    if u >= n || v >= n || u == v {
                        return Err(self.size_error(n, "all couplings within 0..n, no self-loops"));
                    }
                }
                let out = canonicalize(couplings.clone());
                if out.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::InvalidGraph("duplicate coupling".into()));
                }
                Ok(out)
            }
        }
    }

    fn size_error(&self, n: usize, valid: &str) -> Error {
        Error::SizeMismatch {
            topology: self.name(),
            n,
            valid: valid.to_string(),
        }
    }

    pub fn is_fully_connected(&self) -> bool {
        matches!(self, Self::FullyConnected)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degree_histogram(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
        let mut d = vec![0usize; n];
        for &(u, v) in edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    #[test]
    fn chain_edges() {
        let e = Topology::Chain.edges(4).unwrap();
        assert_eq!(e, vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn fully_connected_count() {
        assert_eq!(Topology::FullyConnected.edges(20).unwrap().len(), 190);
    }

    #[test]
    fn square_grid_count() {
        // rows*(cols-1) + (rows-1)*cols
        let e = Topology::SquareGrid { rows: 3, cols: 4 }.edges(12).unwrap();
        assert_eq!(e.len(), 3 * 3 + 2 * 4);
    }

    #[test]
    fn heavy_hex_degrees_are_at_most_three() {
        for t in HeavyHexTemplate::all() {
            let e = t.edges();
            let d = degree_histogram(t.n_nodes(), &e);
            assert!(d.iter().all(|&x| (1..=3).contains(&x)), "{:?}", t);
        }
    }

    #[test]
    fn heavy_hex_edge_counts() {
        assert_eq!(HeavyHexTemplate::Eagle127.edges().len(), 144);
        assert_eq!(HeavyHexTemplate::HeronR1_133.edges().len(), 150);
        assert_eq!(HeavyHexTemplate::HeronR2_156.edges().len(), 176);
    }

    #[test]
    fn heavy_hex_ids_are_compact() {
        for t in HeavyHexTemplate::all() {
            let e = t.edges();
            let max = e.iter().map(|&(u, v)| u.max(v)).max().unwrap();
            assert_eq!(max + 1, t.n_nodes());
        }
    }

    #[test]
    fn custom_rejects_out_of_range() {
        let t = Topology::Custom {
            couplings: vec![(0, 5)],
        };
        assert!(t.edges(4).is_err());
    }
}
