//! Two-qubit depolarizing noise and bitstring sampling.
//!
//! Noise is simulated with stochastic Pauli trajectories: after every
//! two-qubit gate, with probability `eps_2q` one of the 15 non-identity
//! two-qubit Paulis (uniformly chosen) is applied to the gate's operands.
//! Single-qubit gates and readout are noiseless. One trajectory per shot
//! by default; `shots_per_trajectory > 1` reuses a trajectory for several
//! shots, trading accuracy for speed.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_shots, expected_cost, simulate, StateVector};
use crate::circuit::{Circuit, Gate};
use crate::problems::ProblemInstance;
use crate::rng::{self, derive_seed};
use crate::{Error, Result};

fn default_spt() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Depolarizing probability per two-qubit gate.
    pub eps_2q: f64,
    /// Seed of the Pauli-insertion stream.
    pub rng_seed: u64,
    /// Shots sharing one trajectory (default 1).
    #[serde(default = "default_spt")]
    pub shots_per_trajectory: usize,
}

impl NoiseModel {
    pub fn noiseless() -> Self {
        Self {
            eps_2q: 0.0,
            rng_seed: 0,
            shots_per_trajectory: 1,
        }
    }

    pub fn depolarizing(eps_2q: f64, rng_seed: u64) -> Self {
        Self {
            eps_2q,
            rng_seed,
            shots_per_trajectory: 1,
        }
    }

    pub fn is_noiseless(&self) -> bool {
        self.eps_2q == 0.0
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.eps_2q) {
            return Err(Error::InvalidConfig(format!(
                "eps_2q must be in [0, 1], got {}",
                self.eps_2q
            )));
        }
        if self.shots_per_trajectory == 0 {
            return Err(Error::InvalidConfig(
                "shots_per_trajectory must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Measured bitstrings with multiplicities. Keys follow the node-order
/// convention: character `i` is node `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub n_qubits: usize,
    pub counts: BTreeMap<String, u64>,
    pub shots: u64,
}

impl SampleSet {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            counts: BTreeMap::new(),
            shots: 0,
        }
    }

    pub fn record(&mut self, bits: String, count: u64) {
        *self.counts.entry(bits).or_insert(0) += count;
        self.shots += count;
    }
}

/// Propagate one noisy trajectory to its final state.
fn run_trajectory(c: &Circuit, eps: f64, noise_stream: &mut rng::Stream) -> StateVector {
    let mut sv = StateVector::zero(c.n_qubits);
    for g in &c.gates {
        sv.apply(g);
        if eps > 0.0 {
            if let Some((a, b)) = g.two_qubit_operands() {
                if rng::uniform_f64(noise_stream) < eps {
                    let idx = rng::uniform_index(noise_stream, 15) + 1;
                    sv.apply_pauli((idx / 4) as u8, a);
                    sv.apply_pauli((idx % 4) as u8, b);
                }
            }
        }
    }
    sv
}

/// Draw `shots` basis states from a probability vector (sorted-uniform
/// sweep; deterministic for a fixed stream).
fn draw_outcomes(probs: &[f64], shots: u64, stream: &mut rng::Stream) -> Vec<usize> {
    let mut us: Vec<f64> = (0..shots).map(|_| rng::uniform_f64(stream)).collect();
    us.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(us.len());
    let mut acc = 0.0;
    let mut z = 0usize;
    for u in us {
        while u >= acc + probs[z] && z + 1 < probs.len() {
            acc += probs[z];
            z += 1;
        }
        out.push(z);
    }
    out
}

/// Basis index over wires -> node-ordered bitstring per the layout.
fn index_to_node_string(z: usize, layout: &[usize]) -> String {
    layout
        .iter()
        .map(|&wire| if z & (1 << wire) != 0 { '1' } else { '0' })
        .collect()
}

/// Sample measured bitstrings. Deterministic for fixed
/// `(circuit, shots, noise, seed)`; trajectories run in parallel with
/// per-trajectory derived streams.
pub fn sample(c: &Circuit, shots: u64, noise: &NoiseModel, seed: u64) -> Result<SampleSet> {
    noise.validate()?;
    check_shots(shots)?;
    let mut set = SampleSet::new(c.n_qubits);
    if noise.is_noiseless() {
        // one exact propagation serves every shot
        let sv = simulate(c)?;
        let probs = sv.probabilities();
        let mut stream = rng::stream(seed);
        let identity = Circuit::identity_layout(c.n_qubits);
        for z in draw_outcomes(&probs, shots, &mut stream) {
            set.record(index_to_node_string(z, &identity), 1);
        }
        return Ok(set);
    }
    super::check_cap_pub(c.n_qubits)?;
    let spt = noise.shots_per_trajectory as u64;
    let n_traj = shots.div_ceil(spt);
    let per_traj: Vec<Vec<String>> = (0..n_traj)
        .into_par_iter()
        .map(|t| {
            let mut noise_stream = rng::stream(derive_seed(noise.rng_seed, t));
            let sv = run_trajectory(c, noise.eps_2q, &mut noise_stream);
            let probs = sv.probabilities();
            let mut meas_stream = rng::stream(derive_seed(seed, t));
            let traj_shots = spt.min(shots - t * spt);
            draw_outcomes(&probs, traj_shots, &mut meas_stream)
                .into_iter()
                .map(|z| index_to_node_string(z, &c.layout))
                .collect()
        })
        .collect();
    for strings in per_traj {
        for s in strings {
            set.record(s, 1);
        }
    }
    Ok(set)
}

/// Mean expected approximation ratio over noisy trajectories (the
/// infinite-shot limit of per-trajectory sampling).
pub fn expected_ratio_noisy(
    c: &Circuit,
    instance: &ProblemInstance,
    noise: &NoiseModel,
    trajectories: u64,
    _seed: u64,
) -> Result<f64> {
    noise.validate()?;
    check_shots(trajectories)?;
    if noise.is_noiseless() {
        let sv = simulate(c)?;
        return super::expected_ratio(&sv, instance);
    }
    super::check_cap_pub(c.n_qubits)?;
    let optimum = instance.optimum_value()?;
    let total: f64 = (0..trajectories)
        .into_par_iter()
        .map(|t| {
            let mut noise_stream = rng::stream(derive_seed(noise.rng_seed, t));
            let sv = run_trajectory(c, noise.eps_2q, &mut noise_stream)
                .permuted_to_nodes(&c.layout);
            expected_cost(&sv, instance).expect("dimensions checked above")
        })
        .sum();
    Ok(total / trajectories as f64 / optimum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_lr_qaoa, Basis};
    use crate::problems::{generate_instance, Topology, DEFAULT_WEIGHT_SET};
    use crate::schedule::build_schedule;
    use crate::stats;

    fn chain_circuit(n: usize, p: usize, seed: u64) -> (ProblemInstance, Circuit) {
        let mut inst = generate_instance(&Topology::Chain, n, &DEFAULT_WEIGHT_SET, seed).unwrap();
        inst.ensure_optimum().unwrap();
        let sched = build_schedule(p, 1.0, 1.0).unwrap();
        let c = build_lr_qaoa(&inst, &sched);
        (inst, c)
    }

    #[test]
    fn uniform_superposition_sampling_is_uniform() {
        let c = Circuit {
            n_qubits: 3,
            gates: vec![Gate::H(0), Gate::H(1), Gate::H(2), Gate::MeasureAll],
            basis: Basis::AbstractZz,
            layout: Circuit::identity_layout(3),
            zz_logical: 0,
        };
        let set = sample(&c, 8192, &NoiseModel::noiseless(), 11).unwrap();
        assert_eq!(set.shots, 8192);
        assert_eq!(set.counts.len(), 8);
        // each outcome ~ Binomial(8192, 1/8): 5 sigma ~ 158
        for (_, &count) in &set.counts {
            let dev = (count as f64 - 1024.0).abs();
            assert!(dev < 5.0 * (8192.0f64 * 0.125 * 0.875).sqrt(), "dev {dev}");
        }
    }

    #[test]
    fn noiseless_deep_chain_converges() {
        let (inst, c) = chain_circuit(10, 50, 7);
        let set = sample(&c, 4096, &NoiseModel::noiseless(), 3).unwrap();
        let r = stats::approximation_ratio(&set, &inst).unwrap();
        assert!(r > 0.95, "r = {r}");
    }

    #[test]
    fn heavy_noise_lands_in_the_random_band() {
        let (inst, c) = chain_circuit(10, 50, 7);
        let noise = NoiseModel::depolarizing(0.1, 99);
        let set = sample(&c, 300, &noise, 3).unwrap();
        let r = stats::approximation_ratio(&set, &inst).unwrap();
        let baseline = stats::random_baseline(&inst, 300, 100, 17).unwrap();
        let regime = stats::classify_regime(r, &baseline);
        assert_eq!(regime, stats::RegimeLabel::WithinRandom, "r = {r}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let (_, c) = chain_circuit(6, 10, 1);
        let noise = NoiseModel::depolarizing(0.02, 5);
        let a = sample(&c, 200, &noise, 9).unwrap();
        let b = sample(&c, 200, &noise, 9).unwrap();
        assert_eq!(a, b);
        let c2 = sample(&c, 200, &noise, 10).unwrap();
        assert_ne!(a, c2);
    }

    #[test]
    fn sampling_matches_born_probabilities() {
        // triangle via custom topology, p = 3
        let mut inst = generate_instance(
            &Topology::Custom {
                couplings: vec![(0, 1), (0, 2), (1, 2)],
            },
            3,
            &[1.0],
            0,
        )
        .unwrap();
        inst.ensure_optimum().unwrap();
        let sched = build_schedule(3, 0.63, 0.63).unwrap();
        let c = build_lr_qaoa(&inst, &sched);
        let sv = simulate(&c).unwrap();
        let exact = expected_cost(&sv, &inst).unwrap() / inst.optimum_value().unwrap();
        let shots = 1_000_000u64;
        let set = sample(&c, shots, &NoiseModel::noiseless(), 123).unwrap();
        let sampled = stats::approximation_ratio(&set, &inst).unwrap();
        // 3 sigma of the sample mean, sigma bounded by the max cost
        let sigma = 0.5 / (shots as f64).sqrt();
        assert!(
            (sampled - exact).abs() < 3.0 * sigma,
            "sampled {sampled} vs exact {exact}"
        );
    }

    #[test]
    fn mean_ratio_is_monotone_in_noise() {
        let (inst, c) = chain_circuit(6, 10, 2);
        let mut last = f64::INFINITY;
        for eps in [0.0, 0.05, 0.3] {
            let noise = NoiseModel::depolarizing(eps, 4);
            let r = expected_ratio_noisy(&c, &inst, &noise, 300, 0).unwrap();
            assert!(
                r < last + 0.02,
                "expected non-increasing r within sampling error: {r} after {last} at eps={eps}"
            );
            last = r;
        }
    }

    #[test]
    fn shots_per_trajectory_mode_is_deterministic_and_cheaper() {
        let (_, c) = chain_circuit(5, 8, 3);
        let mut noise = NoiseModel::depolarizing(0.05, 21);
        noise.shots_per_trajectory = 50;
        let a = sample(&c, 120, &noise, 2).unwrap();
        let b = sample(&c, 120, &noise, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.shots, 120);
    }

    #[test]
    fn invalid_noise_parameters_are_rejected() {
        let (_, c) = chain_circuit(3, 1, 0);
        let bad = NoiseModel::depolarizing(1.5, 0);
        assert!(sample(&c, 10, &bad, 0).is_err());
        assert!(sample(&c, 0, &NoiseModel::noiseless(), 0).is_err());
    }
}
