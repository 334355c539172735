//! LR-QAOA benchmarking toolkit for weighted MaxCut.
//!
//! The crate is organized around the benchmark pipeline:
//!
//! - [`problems`]: seeded weighted MaxCut instances on chain, heavy-hex,
//!   square-grid, fully connected, and custom topologies, with an exact
//!   optimum oracle (bipartite fast path + brute force).
//! - [`schedule`]: linear-ramp `(beta_k, gamma_k)` schedules and the
//!   per-topology ramp-scale defaults.
//! - [`circuit`]: LR-QAOA circuit construction, SWAP-network routing for
//!   fully connected problems on a line, basis decomposition with CNOT
//!   cancellation, gate/depth accounting, and text/QASM export.
//! - [`simulator`]: statevector simulation with optional two-qubit
//!   depolarizing noise (stochastic Pauli trajectories) and sampling.
//! - [`stats`]: approximation ratios, random-sampler baselines, regime
//!   classification, effective ratios, and correlation matrices.
//! - [`bench`]: depth sweeps, performance diagrams, cost estimators,
//!   sample-file ingestion, and benchmark records.
//!
//! Bit-order convention used everywhere, including all file formats:
//! bit `i` of a sample string corresponds to node/qubit `i`, and strings
//! are written with node 0 first (most significant node last).

pub mod bench;
pub mod circuit;
mod error;
pub mod fsutil;
pub mod problems;
pub mod rng;
pub mod schedule;
pub mod simulator;
pub mod stats;

pub use error::{Error, Result};
