//! Orchestration: depth sweeps, performance diagrams, certification of
//! external sample files, and persisted benchmark records.

pub mod estimate;
pub mod io;

pub use estimate::{hqc_estimate, runtime_projection, CostEstimate, DeviceClass};
pub use io::{ingest_samples, read_samples, write_samples};

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::circuit::{
    build_lr_qaoa, count_report, decompose_to_basis, transpile_swap_network, write_circuit,
    Basis, Circuit, CountReport,
};
use crate::fsutil::atomic_write;
use crate::problems::ProblemInstance;
use crate::rng::derive_seed;
use crate::schedule::{build_schedule, default_delta, RampSchedule};
use crate::simulator::{sample, simulate, NoiseModel, SampleSet};
use crate::stats::{
    approximation_ratio, classify_regime, effective_ratio, random_baseline, BaselineStats,
    RegimeLabel,
};
use crate::{Error, Result};

pub const RECORD_FORMAT_VERSION: u32 = 1;

/// Where the instance of a run comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum InstanceSource {
    /// Load an instance file.
    Path { path: PathBuf },
    /// Generate on the fly.
    Generate {
        topology: crate::problems::Topology,
        n: usize,
        seed: u64,
        #[serde(default)]
        weight_set: Option<Vec<f64>>,
    },
}

pub fn resolve_instance(source: &InstanceSource) -> Result<ProblemInstance> {
    match source {
        InstanceSource::Path { path } => ProblemInstance::load(path),
        InstanceSource::Generate {
            topology,
            n,
            seed,
            weight_set,
        } => {
            let ws = weight_set
                .clone()
                .unwrap_or_else(|| crate::problems::DEFAULT_WEIGHT_SET.to_vec());
            crate::problems::generate_instance(topology, *n, &ws, *seed)
        }
    }
}

/// Ramp scale: a number, or `"default"` for the per-topology defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DeltaSpec {
    Value(f64),
    Named(String),
}

impl Default for DeltaSpec {
    fn default() -> Self {
        DeltaSpec::Named("default".into())
    }
}

impl DeltaSpec {
    pub fn resolve(&self, instance: &ProblemInstance, backend_class: &str) -> Result<f64> {
        match self {
            DeltaSpec::Value(v) => {
                if !(*v > 0.0) || !v.is_finite() {
                    return Err(Error::BadDelta(*v));
                }
                Ok(*v)
            }
            DeltaSpec::Named(name) if name == "default" => Ok(default_delta(
                &instance.topology,
                instance.graph.n_nodes,
                backend_class,
            )),
            DeltaSpec::Named(other) => Err(Error::InvalidConfig(format!(
                "unknown delta spec {other:?}; use a number or \"default\""
            ))),
        }
    }
}

fn default_subsets() -> usize {
    100
}

/// One depth sweep: everything needed to reproduce a record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub instance: InstanceSource,
    pub p_list: Vec<usize>,
    #[serde(default)]
    pub delta: DeltaSpec,
    #[serde(default)]
    pub backend_class: Option<String>,
    pub basis: Basis,
    pub shots: u64,
    #[serde(default)]
    pub noise: Option<NoiseModel>,
    #[serde(default)]
    pub sample_seed: u64,
    #[serde(default)]
    pub baseline_seed: u64,
    #[serde(default = "default_subsets")]
    pub baseline_subsets: usize,
    /// Random draws per baseline subset; defaults to `shots`.
    #[serde(default)]
    pub baseline_shots: Option<u64>,
    /// Initial logical-to-wire placement for routed fully connected runs.
    #[serde(default)]
    pub chain_order: Option<Vec<usize>>,
    /// Emit circuits and counts without simulating.
    #[serde(default)]
    pub export_only: bool,
    /// Where exported circuits are written (export-only mode).
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if self.p_list.is_empty() {
            return Err(Error::InvalidConfig("p_list is empty".into()));
        }
        if self.p_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(
                "p_list must be strictly ascending".into(),
            ));
        }
        if self.shots == 0 {
            return Err(Error::ZeroShots);
        }
        Ok(())
    }

    fn backend(&self) -> &str {
        self.backend_class.as_deref().unwrap_or("")
    }
}

/// Build the circuit for one `(instance, p, delta, basis)` point: fully
/// connected instances route through the SWAP network for the CZ/CNOT
/// bases and run natively otherwise.
pub fn build_circuit(
    instance: &ProblemInstance,
    p: usize,
    delta: f64,
    basis: Basis,
    chain_order: Option<&[usize]>,
) -> Result<(RampSchedule, Circuit)> {
    let schedule = build_schedule(p, delta, delta)?;
    let n = instance.graph.n_nodes;
    let circuit = if instance.topology.is_fully_connected()
        && matches!(basis, Basis::Cz | Basis::Cnot)
    {
        let identity: Vec<usize> = (0..n).collect();
        let order = chain_order.unwrap_or(&identity);
        let routed = transpile_swap_network(instance, &schedule, order)?;
        decompose_to_basis(&routed, basis)?
    } else {
        decompose_to_basis(&build_lr_qaoa(instance, &schedule), basis)?
    };
    Ok((schedule, circuit))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RunStatus {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "export-only")]
    ExportOnly,
    #[serde(rename = "error")]
    Error,
}

/// Result of a single depth within a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PResult {
    pub p: usize,
    pub delta: f64,
    pub status: RunStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<CountReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_eff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<RegimeLabel>,
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circuit_file: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub topology: String,
    pub n: usize,
    pub n_edges: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum_value: Option<f64>,
}

/// Persisted result of a depth sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRecord {
    #[serde(rename = "lrq-record")]
    pub format: u32,
    pub tool_version: String,
    pub timestamp: String,
    /// Bit-order convention of every bitstring in this record.
    pub bit_order: String,
    pub config: RunConfig,
    pub instance: InstanceSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<BaselineStats>,
    pub results: Vec<PResult>,
}

impl BenchmarkRecord {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        atomic_write(path, &(self.to_json()? + "\n"))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

/// Run a depth sweep, stamping the record with the current time.
pub fn run_depth_sweep(config: &RunConfig) -> Result<BenchmarkRecord> {
    run_depth_sweep_at(config, &chrono::Utc::now().to_rfc3339())
}

/// Run a depth sweep with a caller-provided timestamp (everything else
/// in the record is a pure function of the config).
pub fn run_depth_sweep_at(config: &RunConfig, timestamp: &str) -> Result<BenchmarkRecord> {
    config.validate()?;
    let mut instance = resolve_instance(&config.instance)?;
    let delta = config.delta.resolve(&instance, config.backend())?;

    let baseline = if config.export_only {
        None
    } else {
        instance.ensure_optimum()?;
        Some(random_baseline(
            &instance,
            config.baseline_shots.unwrap_or(config.shots),
            config.baseline_subsets,
            config.baseline_seed,
        )?)
    };

    let mut results = Vec::with_capacity(config.p_list.len());
    for &p in &config.p_list {
        let start = Instant::now();
        let outcome = run_one_depth(config, &instance, baseline.as_ref(), p, delta);
        let wall_time_s = start.elapsed().as_secs_f64();
        results.push(match outcome {
            Ok(mut r) => {
                r.wall_time_s = wall_time_s;
                r
            }
            Err(e) => PResult {
                p,
                delta,
                status: RunStatus::Error,
                counts: None,
                r: None,
                r_eff: None,
                regime: None,
                wall_time_s,
                error: Some(e.to_string()),
                circuit_file: None,
            },
        });
    }

    Ok(BenchmarkRecord {
        format: RECORD_FORMAT_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: timestamp.to_string(),
        bit_order: crate::problems::BIT_ORDER.to_string(),
        config: config.clone(),
        instance: InstanceSummary {
            topology: instance.topology.name(),
            n: instance.graph.n_nodes,
            n_edges: instance.graph.n_edges(),
            seed: instance.seed,
            optimum_value: instance.optimum.as_ref().map(|o| o.value),
        },
        baseline,
        results,
    })
}

fn run_one_depth(
    config: &RunConfig,
    instance: &ProblemInstance,
    baseline: Option<&BaselineStats>,
    p: usize,
    delta: f64,
) -> Result<PResult> {
    let (_, circuit) = build_circuit(
        instance,
        p,
        delta,
        config.basis,
        config.chain_order.as_deref(),
    )?;
    let counts = count_report(&circuit);
    let mut result = PResult {
        p,
        delta,
        status: RunStatus::ExportOnly,
        counts: Some(counts),
        r: None,
        r_eff: None,
        regime: None,
        wall_time_s: 0.0,
        error: None,
        circuit_file: None,
    };
    if config.export_only {
        if let Some(dir) = &config.out_dir {
            let path = dir.join(format!("circuit_p{p}.lrq"));
            atomic_write(&path, &write_circuit(&circuit))?;
            result.circuit_file = Some(path.to_string_lossy().into_owned());
        }
        return Ok(result);
    }
    let baseline = baseline.expect("baseline exists when simulating");
    let noise = config
        .noise
        .clone()
        .map(|n| NoiseModel {
            rng_seed: derive_seed(n.rng_seed, p as u64),
            ..n
        })
        .unwrap_or_else(NoiseModel::noiseless);
    let samples = sample(
        &circuit,
        config.shots,
        &noise,
        derive_seed(config.sample_seed, p as u64),
    )?;
    let r = approximation_ratio(&samples, instance)?;
    result.status = RunStatus::Ok;
    result.r = Some(r);
    result.r_eff = Some(effective_ratio(r, baseline)?);
    result.regime = Some(classify_regime(r, baseline));
    Ok(result)
}

/// Flat CSV of a record: `p,r,r_eff,regime,n_2q,depth`.
pub fn sweep_csv(record: &BenchmarkRecord) -> String {
    let mut out = String::from("p,r,r_eff,regime,n_2q,depth\n");
    for res in &record.results {
        let fmt_opt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x}"));
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            res.p,
            fmt_opt(res.r),
            fmt_opt(res.r_eff),
            res.regime.map_or("", |g| g.name()),
            res.counts.map_or(String::new(), |c| c.n_two_qubit.to_string()),
            res.counts
                .map_or(String::new(), |c| c.two_qubit_depth.to_string()),
        ));
    }
    out
}

/// Approximation-ratio surface over a `(p, delta)` grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramResult {
    pub p_grid: Vec<usize>,
    pub delta_grid: Vec<f64>,
    /// `r[p_index][delta_index]`
    pub r: Vec<Vec<f64>>,
    /// `(p, delta, r)` of the best cell (first in row-major order on ties).
    pub argmax: (usize, f64, f64),
}

impl DiagramResult {
    /// CSV with one row per `p`, one column per delta.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p");
        for d in &self.delta_grid {
            out.push_str(&format!(",delta={d}"));
        }
        out.push('\n');
        for (i, &p) in self.p_grid.iter().enumerate() {
            out.push_str(&p.to_string());
            for v in &self.r[i] {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Sweep the `(p, delta)` grid. `shots = 0` computes the exact
/// infinite-shot ratio (noiseless only); otherwise each cell is sampled
/// with the same per-`p` derived seeds as [`run_depth_sweep`], so a 1x1
/// grid reproduces the sweep's `r` exactly.
pub fn performance_diagram(
    instance: &ProblemInstance,
    p_grid: &[usize],
    delta_grid: &[f64],
    shots: u64,
    noise: Option<&NoiseModel>,
    basis: Basis,
    sample_seed: u64,
) -> Result<DiagramResult> {
    if p_grid.is_empty() || delta_grid.is_empty() {
        return Err(Error::InvalidConfig("empty diagram grid".into()));
    }
    let exact = shots == 0;
    if exact && noise.is_some_and(|n| !n.is_noiseless()) {
        return Err(Error::InvalidConfig(
            "exact mode (shots = 0) requires a noiseless model".into(),
        ));
    }
    let optimum = instance.optimum_value()?;
    let mut r = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        let mut row = Vec::with_capacity(delta_grid.len());
        for &delta in delta_grid {
            let (_, circuit) = build_circuit(instance, p, delta, basis, None)?;
            let value = if exact {
                crate::simulator::expected_cost(&simulate(&circuit)?, instance)? / optimum
            } else {
                let noise_p = noise
                    .cloned()
                    .map(|n| NoiseModel {
                        rng_seed: derive_seed(n.rng_seed, p as u64),
                        ..n
                    })
                    .unwrap_or_else(NoiseModel::noiseless);
                let samples = sample(&circuit, shots, &noise_p, derive_seed(sample_seed, p as u64))?;
                approximation_ratio(&samples, instance)?
            };
            row.push(value);
        }
        r.push(row);
    }
    let mut argmax = (p_grid[0], delta_grid[0], r[0][0]);
    for (i, &p) in p_grid.iter().enumerate() {
        for (j, &d) in delta_grid.iter().enumerate() {
            if r[i][j] > argmax.2 {
                argmax = (p, d, r[i][j]);
            }
        }
    }
    Ok(DiagramResult {
        p_grid: p_grid.to_vec(),
        delta_grid: delta_grid.to_vec(),
        r,
        argmax,
    })
}

/// Baseline parameters for certification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineConfig {
    /// Defaults to the sample set's shot count.
    pub shots_per_subset: Option<u64>,
    pub n_subsets: usize,
    pub seed: u64,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self {
            shots_per_subset: None,
            n_subsets: 100,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub r: f64,
    pub r_eff: f64,
    pub regime: RegimeLabel,
    /// Pass means the ratio exceeds the 99.73% random threshold.
    pub pass: bool,
    pub baseline: BaselineStats,
}

/// Certify a sample set against the random-sampler baseline.
pub fn certify(
    samples: &SampleSet,
    instance: &ProblemInstance,
    config: &BaselineConfig,
) -> Result<Certification> {
    let r = approximation_ratio(samples, instance)?;
    let baseline = random_baseline(
        instance,
        config.shots_per_subset.unwrap_or(samples.shots),
        config.n_subsets,
        config.seed,
    )?;
    let r_eff = effective_ratio(r, &baseline)?;
    let regime = classify_regime(r, &baseline);
    Ok(Certification {
        r,
        r_eff,
        regime,
        pass: regime == RegimeLabel::AboveRandom,
        baseline,
    })
}
