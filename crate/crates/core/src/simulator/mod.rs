//! Statevector simulation.
//!
//! Amplitudes are stored little-endian by wire: bit `i` of the basis
//! index is wire `i`. [`simulate`] reorders the final state so that bit
//! `i` corresponds to problem node `i` (undoing any routing permutation
//! recorded in the circuit); [`simulate_raw`] leaves wires as-is.

mod noise;

pub use noise::{sample, expected_ratio_noisy, NoiseModel, SampleSet};

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::problems::ProblemInstance;
use crate::{Error, Result};

/// Default largest circuit the simulator will attempt.
pub const DEFAULT_SIM_CAP: usize = 24;

/// Simulation cap: `LRQ_SIM_CAP` when set, else 24 qubits.
pub fn sim_cap() -> usize {
    std::env::var("LRQ_SIM_CAP")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(DEFAULT_SIM_CAP)
}

#[derive(Clone, Debug)]
pub struct StateVector {
    pub n_qubits: usize,
    pub amps: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros computational basis state.
    pub fn zero(n_qubits: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Self { n_qubits, amps }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Apply one gate in place.
    pub fn apply(&mut self, gate: &Gate) {
        let n = self.n_qubits;
        match *gate {
            Gate::H(q) => {
                let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
                self.for_each_pair(q, |a, b| {
                    (inv_sqrt2 * (a + b), inv_sqrt2 * (a - b))
                });
            }
            Gate::Rx { theta, q } => {
                let c = (theta / 2.0).cos();
                let s = Complex64::new(0.0, -(theta / 2.0).sin());
                self.for_each_pair(q, |a, b| (c * a + s * b, s * a + c * b));
            }
            Gate::Rz { theta, q } => {
                let m = Complex64::from_polar(1.0, -theta / 2.0);
                let p = Complex64::from_polar(1.0, theta / 2.0);
                let mask = 1usize << q;
                for (z, amp) in self.amps.iter_mut().enumerate() {
                    *amp *= if z & mask == 0 { m } else { p };
                }
            }
            Gate::Rzz { theta, a, b } => {
                let equal = Complex64::from_polar(1.0, -theta / 2.0);
                let differ = Complex64::from_polar(1.0, theta / 2.0);
                let (ma, mb) = (1usize << a, 1usize << b);
                for (z, amp) in self.amps.iter_mut().enumerate() {
                    let same = (z & ma == 0) == (z & mb == 0);
                    *amp *= if same { equal } else { differ };
                }
            }
            Gate::Cz { a, b } => {
                let mask = (1usize << a) | (1usize << b);
                for (z, amp) in self.amps.iter_mut().enumerate() {
                    if z & mask == mask {
                        *amp = -*amp;
                    }
                }
            }
            Gate::Cx { control, target } => {
                let (mc, mt) = (1usize << control, 1usize << target);
                for z in 0..self.amps.len() {
                    if z & mc != 0 && z & mt == 0 {
                        self.amps.swap(z, z | mt);
                    }
                }
            }
            Gate::Swap { a, b } => {
                let (ma, mb) = (1usize << a, 1usize << b);
                for z in 0..self.amps.len() {
                    if z & ma != 0 && z & mb == 0 {
                        self.amps.swap(z, z ^ ma ^ mb);
                    }
                }
            }
            Gate::MeasureAll => {}
        }
        debug_assert!(n >= 1);
    }

    /// Apply a Pauli operator (0 = I, 1 = X, 2 = Y, 3 = Z) to one qubit.
    pub fn apply_pauli(&mut self, pauli: u8, q: usize) {
        let mask = 1usize << q;
        match pauli {
            0 => {}
            1 => {
                for z in 0..self.amps.len() {
                    if z & mask == 0 {
                        self.amps.swap(z, z | mask);
                    }
                }
            }
            2 => {
                let i = Complex64::new(0.0, 1.0);
                let ni = Complex64::new(0.0, -1.0);
                for z in 0..self.amps.len() {
                    if z & mask == 0 {
                        let a = self.amps[z];
                        let b = self.amps[z | mask];
                        // Y|0> = i|1>, Y|1> = -i|0>
                        self.amps[z] = ni * b;
                        self.amps[z | mask] = i * a;
                    }
                }
            }
            3 => {
                for (z, amp) in self.amps.iter_mut().enumerate() {
                    if z & mask != 0 {
                        *amp = -*amp;
                    }
                }
            }
            _ => unreachable!("pauli index must be 0..4"),
        }
    }

    /// Reindex amplitudes from wire order to node order per `layout`
    /// (`layout[node] = wire`).
    pub fn permuted_to_nodes(&self, layout: &[usize]) -> StateVector {
        if layout.iter().enumerate().all(|(i, &w)| i == w) {
            return self.clone();
        }
        let n = self.n_qubits;
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for z_node in 0..self.amps.len() {
            let mut z_wire = 0usize;
            for (node, &wire) in layout.iter().enumerate() {
                if z_node & (1 << node) != 0 {
                    z_wire |= 1 << wire;
                }
            }
            amps[z_node] = self.amps[z_wire];
        }
        StateVector { n_qubits: n, amps }
    }

    fn for_each_pair(
        &mut self,
        q: usize,
        f: impl Fn(Complex64, Complex64) -> (Complex64, Complex64),
    ) {
        let stride = 1usize << q;
        let dim = self.amps.len();
        let mut base = 0;
        while base < dim {
            for off in base..base + stride {
                let i0 = off;
                let i1 = off | stride;
                let (a, b) = (self.amps[i0], self.amps[i1]);
                let (na, nb) = f(a, b);
                self.amps[i0] = na;
                self.amps[i1] = nb;
            }
            base += stride << 1;
        }
    }
}

fn check_cap(n: usize) -> Result<()> {
    let cap = sim_cap();
    if n > cap {
        return Err(Error::SimCapExceeded { n, cap });
    }
    Ok(())
}

pub(crate) fn check_cap_pub(n: usize) -> Result<()> {
    check_cap(n)
}

pub(crate) fn check_shots(shots: u64) -> Result<()> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    Ok(())
}

/// Exact statevector over the circuit's wires, measurement ignored.
pub fn simulate_raw(c: &Circuit) -> Result<StateVector> {
    check_cap(c.n_qubits)?;
    let mut sv = StateVector::zero(c.n_qubits);
    for g in &c.gates {
        sv.apply(g);
    }
    let drift = (sv.norm_sqr() - 1.0).abs();
    if drift > 1e-8 {
        log::warn!("statevector norm drifted by {drift:.3e}; renormalizing");
        let scale = 1.0 / sv.norm_sqr().sqrt();
        for a in sv.amps.iter_mut() {
            *a *= scale;
        }
    }
    Ok(sv)
}

/// Exact statevector with bit `i` = node `i` (routing permutation undone).
pub fn simulate(c: &Circuit) -> Result<StateVector> {
    Ok(simulate_raw(c)?.permuted_to_nodes(&c.layout))
}

/// Expected cut value under the state's Born distribution: bit `i` of the
/// amplitude index must be node `i` (the convention of [`simulate`]).
pub fn expected_cost(sv: &StateVector, instance: &ProblemInstance) -> Result<f64> {
    if sv.n_qubits != instance.graph.n_nodes {
        return Err(Error::LengthMismatch {
            got: sv.n_qubits,
            expected: instance.graph.n_nodes,
        });
    }
    let mut total = 0.0;
    for &(u, v, w) in &instance.graph.edges {
        let (mu, mv) = (1usize << u, 1usize << v);
        let mut cut_prob = 0.0;
        for (z, amp) in sv.amps.iter().enumerate() {
            if (z & mu == 0) != (z & mv == 0) {
                cut_prob += amp.norm_sqr();
            }
        }
        total += w * cut_prob;
    }
    Ok(total)
}

/// Expected approximation ratio of a statevector.
pub fn expected_ratio(sv: &StateVector, instance: &ProblemInstance) -> Result<f64> {
    Ok(expected_cost(sv, instance)? / instance.optimum_value()?)
}
