//! Linear-ramp parameter schedules.
//!
//! For `k = 0..p-1`:
//!
//! ```text
//! beta_k  = (1 - k/p) * delta_beta      (decreasing to delta_beta / p)
//! gamma_k = ((k + 1) / p) * delta_gamma (increasing to delta_gamma)
//! ```

use serde::{Deserialize, Serialize};

use crate::problems::Topology;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RampSchedule {
    pub p: usize,
    pub delta_beta: f64,
    pub delta_gamma: f64,
    pub betas: Vec<f64>,
    pub gammas: Vec<f64>,
}

impl RampSchedule {
    /// Two-column table (`beta_k gamma_k`, one row per layer).
    pub fn table(&self) -> String {
        let mut out = String::from("k\tbeta_k\tgamma_k\n");
        for k in 0..self.p {
            out.push_str(&format!("{k}\t{:.6}\t{:.6}\n", self.betas[k], self.gammas[k]));
        }
        out
    }
}

/// Build the ramp schedule for `p` layers.
pub fn build_schedule(p: usize, delta_beta: f64, delta_gamma: f64) -> Result<RampSchedule> {
    if p == 0 {
        return Err(Error::EmptySchedule);
    }
    for d in [delta_beta, delta_gamma] {
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::BadDelta(d));
        }
    }
    let pf = p as f64;
    let betas = (0..p).map(|k| (1.0 - k as f64 / pf) * delta_beta).collect();
    let gammas = (0..p).map(|k| ((k + 1) as f64 / pf) * delta_gamma).collect();
    Ok(RampSchedule {
        p,
        delta_beta,
        delta_gamma,
        betas,
        gammas,
    })
}

/// Ramp scale used in the experiments, keyed by `(backend_class, n)` for
/// fully connected problems above 15 qubits.
const FC_DELTA_TABLE: &[(&str, usize, f64)] = &[
    ("ibm_torino", 17, 0.4),
    ("ibm_torino", 20, 0.3),
    ("ibm_brisbane", 16, 0.5),
    ("ibm_brisbane", 17, 0.4),
    ("ibm_brisbane", 20, 0.3),
    ("h1-1e", 20, 0.3),
    ("h2-1e", 25, 0.5),
    ("h2-1e", 30, 0.4),
    ("h2-1", 40, 0.2),
    ("h2-1", 50, 0.2),
    ("h2-1", 56, 0.2),
    ("ionq_aria_2", 17, 0.63),
    ("ionq_aria_2", 20, 0.3),
    ("qasm_simulator", 20, 0.3),
    ("qasm_simulator", 25, 0.4),
];

fn fc_table_lookup(backend: &str, n: usize) -> Option<f64> {
    let b = backend.trim().to_ascii_lowercase();
    // fez/marrakesh class keeps 0.63 for every n above 15
    if (b == "ibm_fez" || b == "ibm_marrakesh") && n > 15 {
        return Some(0.63);
    }
    FC_DELTA_TABLE
        .iter()
        .find(|(name, nn, _)| *name == b && *nn == n)
        .map(|&(_, _, d)| d)
}

/// Default ramp scale: 1.0 for chain and native-layout topologies; for
/// fully connected problems 0.63 up to 15 qubits, then a per-backend
/// table lookup that falls back to 0.63 (with a warning) when the pair
/// `(backend_class, n)` is unknown.
pub fn default_delta(topology: &Topology, n: usize, backend_class: &str) -> f64 {
    match topology {
        Topology::FullyConnected => {
            if n <= 15 {
                0.63
            } else {
                fc_table_lookup(backend_class, n).unwrap_or_else(|| {
                    log::warn!(
                        "no tabulated ramp scale for backend {backend_class:?} at n={n}; \
                         falling back to 0.63"
                    );
                    0.63
                })
            }
        }
        _ => 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn p3_unit_deltas() {
        let s = build_schedule(3, 1.0, 1.0).unwrap();
        assert_eq!(s.betas, vec![1.0, 2.0 / 3.0, 1.0 / 3.0]);
        assert_eq!(s.gammas, vec![1.0 / 3.0, 2.0 / 3.0, 1.0]);
    }

    #[test]
    fn p1_is_flat() {
        let s = build_schedule(1, 0.63, 0.63).unwrap();
        assert_eq!(s.betas, vec![0.63]);
        assert_eq!(s.gammas, vec![0.63]);
    }

    #[test]
    fn p100_endpoints() {
        let s = build_schedule(100, 1.0, 1.0).unwrap();
        assert_relative_eq!(s.betas[99], 0.01, max_relative = 1e-12);
        assert_relative_eq!(s.gammas[0], 0.01, max_relative = 1e-12);
        assert_eq!(s.betas[0], 1.0);
        assert_eq!(s.gammas[99], 1.0);
    }

    #[test]
    fn p0_errors() {
        assert!(matches!(build_schedule(0, 1.0, 1.0), Err(Error::EmptySchedule)));
    }

    #[test]
    fn nonpositive_delta_errors() {
        assert!(build_schedule(3, 0.0, 1.0).is_err());
        assert!(build_schedule(3, 1.0, -0.2).is_err());
    }

    #[test]
    fn delta_defaults() {
        assert_eq!(default_delta(&Topology::Chain, 100, "anything"), 1.0);
        assert_eq!(
            default_delta(
                &Topology::HeavyHex {
                    template: crate::problems::HeavyHexTemplate::Eagle127
                },
                127,
                "ibm_brisbane"
            ),
            1.0
        );
        assert_eq!(default_delta(&Topology::FullyConnected, 15, "any"), 0.63);
        assert_eq!(default_delta(&Topology::FullyConnected, 50, "H2-1"), 0.2);
        assert_eq!(default_delta(&Topology::FullyConnected, 20, "ibm_torino"), 0.3);
        assert_eq!(default_delta(&Topology::FullyConnected, 17, "ionq_aria_2"), 0.63);
        assert_eq!(default_delta(&Topology::FullyConnected, 24, "ibm_fez"), 0.63);
        // unkeyed pair falls back
        assert_eq!(default_delta(&Topology::FullyConnected, 33, "unknown_qpu"), 0.63);
    }

    proptest! {
        #[test]
        fn ramps_are_monotone_and_symmetric(
            p in 2usize..200,
            db in 0.05f64..2.0,
            dg in 0.05f64..2.0,
        ) {
            let s = build_schedule(p, db, dg).unwrap();
            for k in 1..p {
                prop_assert!(s.betas[k] < s.betas[k - 1]);
                prop_assert!(s.gammas[k] > s.gammas[k - 1]);
            }
            prop_assert!((s.betas[0] - db).abs() < 1e-12);
            prop_assert!((s.gammas[p - 1] - dg).abs() < 1e-12);
            let pf = p as f64;
            for k in 0..p {
                // reversal: betas[k]/db mirrors gammas[p-1-k]/dg
                let lhs = s.betas[k] * pf / db;
                let rhs = s.gammas[p - 1 - k] * pf / dg;
                prop_assert!((lhs - rhs).abs() < 1e-9);
                // same-index sum: (p - k) + (k + 1) = p + 1
                let sum = s.betas[k] * pf / db + s.gammas[k] * pf / dg;
                prop_assert!((sum - (pf + 1.0)).abs() < 1e-9);
            }
        }
    }
}
