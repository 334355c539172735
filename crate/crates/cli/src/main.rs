//! `lrq`: generate weighted MaxCut instances, run LR-QAOA depth sweeps
//! and performance diagrams on the built-in simulator, export circuits
//! for external execution, certify sample files against the
//! random-sampler baseline, and estimate hardware costs.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use lrq_core::bench::{
    self, certify, hqc_estimate, ingest_samples, performance_diagram, run_depth_sweep,
    runtime_projection, sweep_csv, BaselineConfig, DeltaSpec, DeviceClass, InstanceSource,
    RunConfig,
};
use lrq_core::circuit::{build_lr_qaoa, count_report, write_circuit, write_qasm2, Basis};
use lrq_core::fsutil::atomic_write;
use lrq_core::problems::{
    generate_instance, HeavyHexTemplate, ProblemInstance, Topology, DEFAULT_WEIGHT_SET,
};
use lrq_core::schedule::build_schedule;
use lrq_core::simulator::NoiseModel;

#[derive(Parser)]
#[command(
    name = "lrq",
    version,
    about = "LR-QAOA weighted MaxCut benchmarking toolkit",
    after_help = "Bit order: in every file format, bit i of a sample string is node i \
                  (node 0 written first). Set LRQ_SIM_CAP to override the 24-qubit \
                  simulation cap."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a problem instance file
    Gen(GenArgs),
    /// Run a depth sweep on the built-in simulator
    Run(RunArgs),
    /// Sweep a (p x delta) grid and write the r-surface as CSV
    Diagram(DiagramArgs),
    /// Export circuits without simulating
    Export(ExportArgs),
    /// Certify sample files against the random-sampler baseline
    Certify(CertifyArgs),
    /// Closed-form cost estimates (HQC and runtime projections)
    Estimate(EstimateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TopologyKind {
    Chain,
    #[value(name = "heavy-hex")]
    HeavyHex,
    #[value(name = "square-grid")]
    SquareGrid,
    #[value(name = "fully-connected")]
    FullyConnected,
    Custom,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    #[value(name = "abstract-zz")]
    AbstractZz,
    #[value(name = "fractional-zz")]
    FractionalZz,
    Cz,
    Cnot,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::AbstractZz => Basis::AbstractZz,
            BasisArg::FractionalZz => Basis::FractionalZz,
            BasisArg::Cz => Basis::Cz,
            BasisArg::Cnot => Basis::Cnot,
        }
    }
}

/// Flags shared by every command that names or builds an instance.
#[derive(Args)]
struct InstanceArgs {
    /// Instance file to load
    #[arg(long, conflicts_with_all = ["topology", "nq"])]
    instance: Option<PathBuf>,
    /// Topology to generate
    #[arg(long, value_enum)]
    topology: Option<TopologyKind>,
    /// Heavy-hex template (eagle-127, heron-r1-133, heron-r2-156)
    #[arg(long)]
    template: Option<String>,
    /// Grid shape as ROWSxCOLS, e.g. 4x5
    #[arg(long)]
    grid: Option<String>,
    /// Coupling list for custom topologies, e.g. 0-1,1-2,0-2
    #[arg(long)]
    couplings: Option<String>,
    /// Number of nodes/qubits
    #[arg(long)]
    nq: Option<usize>,
    /// Instance seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated weight set
    #[arg(long)]
    weights: Option<String>,
}

impl InstanceArgs {
    fn topology(&self) -> Result<Topology> {
        let kind = self
            .topology
            .ok_or_else(|| anyhow!("--topology is required when no --instance is given"))?;
        Ok(match kind {
            TopologyKind::Chain => Topology::Chain,
            TopologyKind::FullyConnected => Topology::FullyConnected,
            TopologyKind::HeavyHex => {
                let name = self
                    .template
                    .as_deref()
                    .ok_or_else(|| anyhow!("--template is required for heavy-hex"))?;
                let template = HeavyHexTemplate::parse(name).ok_or_else(|| {
                    anyhow!("unknown template {name:?}; expected eagle-127, heron-r1-133, or heron-r2-156")
                })?;
                Topology::HeavyHex { template }
            }
            TopologyKind::SquareGrid => {
                let spec = self
                    .grid
                    .as_deref()
                    .ok_or_else(|| anyhow!("--grid ROWSxCOLS is required for square-grid"))?;
                let (r, c) = spec
                    .split_once('x')
                    .ok_or_else(|| anyhow!("--grid must look like 4x5"))?;
                Topology::SquareGrid {
                    rows: r.parse().context("bad grid rows")?,
                    cols: c.parse().context("bad grid cols")?,
                }
            }
            TopologyKind::Custom => {
                let list = self
                    .couplings
                    .as_deref()
                    .ok_or_else(|| anyhow!("--couplings is required for custom topologies"))?;
                let mut couplings = Vec::new();
                for pair in list.split(',') {
                    let (u, v) = pair
                        .split_once('-')
                        .ok_or_else(|| anyhow!("bad coupling {pair:?}; expected u-v"))?;
                    couplings.push((u.parse()?, v.parse()?));
                }
                Topology::Custom { couplings }
            }
        })
    }

    fn weight_set(&self) -> Result<Vec<f64>> {
        match &self.weights {
            None => Ok(DEFAULT_WEIGHT_SET.to_vec()),
            Some(w) => w
                .split(',')
                .map(|s| s.trim().parse::<f64>().context("bad weight"))
                .collect(),
        }
    }

    fn nq(&self) -> Result<usize> {
        let explicit = self.nq;
        if let Some(n) = explicit {
            return Ok(n);
        }
        // heavy-hex templates imply their size
        if let Some(name) = self.template.as_deref() {
            if let Some(t) = HeavyHexTemplate::parse(name) {
                return Ok(t.n_nodes());
            }
        }
        if let Some(grid) = self.grid.as_deref() {
            if let Some((r, c)) = grid.split_once('x') {
                return Ok(r.parse::<usize>()? * c.parse::<usize>()?);
            }
        }
        bail!("--nq is required")
    }

    fn source(&self) -> Result<InstanceSource> {
        if let Some(path) = &self.instance {
            return Ok(InstanceSource::Path { path: path.clone() });
        }
        Ok(InstanceSource::Generate {
            topology: self.topology()?,
            n: self.nq()?,
            seed: self.seed,
            weight_set: self.weights.as_ref().map(|_| self.weight_set()).transpose()?,
        })
    }

    fn load(&self) -> Result<ProblemInstance> {
        Ok(bench::resolve_instance(&self.source()?)?)
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Skip computing the exact optimum
    #[arg(long)]
    no_optimum: bool,
    /// Output path for the instance JSON
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Full run-config JSON (overrides the other flags)
    #[arg(long, conflicts_with_all = ["p", "shots"])]
    config: Option<PathBuf>,
    /// Comma-separated ascending layer counts, e.g. 3,10,30,100
    #[arg(long)]
    p: Option<String>,
    /// Ramp scale, or "default"
    #[arg(long, default_value = "default")]
    delta: String,
    /// Backend class for the default-delta table (e.g. h2-1, ibm_fez)
    #[arg(long)]
    backend_class: Option<String>,
    #[arg(long, value_enum, default_value = "abstract-zz")]
    basis: BasisArg,
    #[arg(long, default_value_t = 1000)]
    shots: u64,
    /// Two-qubit depolarizing probability
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    noise_seed: u64,
    /// Shots sharing one noise trajectory
    #[arg(long, default_value_t = 1)]
    shots_per_trajectory: usize,
    #[arg(long, default_value_t = 0)]
    sample_seed: u64,
    #[arg(long, default_value_t = 0)]
    baseline_seed: u64,
    #[arg(long, default_value_t = 100)]
    baseline_subsets: usize,
    #[arg(long)]
    baseline_shots: Option<u64>,
    /// Initial wire order for routed fully connected runs, e.g. 0,2,1,3
    #[arg(long)]
    chain_order: Option<String>,
    /// Build and export circuits without simulating
    #[arg(long)]
    export_only: bool,
    /// Directory for exported circuits (export-only mode)
    #[arg(long)]
    circuit_dir: Option<PathBuf>,
    /// Record JSON output path
    #[arg(long)]
    out: PathBuf,
    /// Also write a flat CSV next to the record
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct DiagramArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Comma-separated layer counts
    #[arg(long)]
    p: String,
    /// Comma-separated delta grid
    #[arg(long)]
    delta: String,
    /// Shots per cell; 0 = exact infinite-shot ratio (noiseless only)
    #[arg(long, default_value_t = 0)]
    shots: u64,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    noise_seed: u64,
    #[arg(long, value_enum, default_value = "abstract-zz")]
    basis: BasisArg,
    #[arg(long, default_value_t = 0)]
    sample_seed: u64,
    /// CSV output path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Layer count
    #[arg(long)]
    p: usize,
    /// Ramp scale, or "default"
    #[arg(long, default_value = "default")]
    delta: String,
    #[arg(long)]
    backend_class: Option<String>,
    #[arg(long, value_enum, default_value = "abstract-zz")]
    basis: BasisArg,
    /// Output format: lrq (neutral text) or qasm (OpenQASM 2)
    #[arg(long, default_value = "lrq")]
    format: String,
    #[arg(long)]
    chain_order: Option<String>,
    /// Print the (beta_k, gamma_k) table to stdout
    #[arg(long)]
    print_schedule: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Sample file(s); several files are certified and ranked by r
    #[arg(long, required = true)]
    samples: Vec<PathBuf>,
    /// Baseline draws per subset (defaults to each file's shot count)
    #[arg(long)]
    baseline_shots: Option<u64>,
    #[arg(long, default_value_t = 100)]
    baseline_subsets: usize,
    #[arg(long, default_value_t = 0)]
    baseline_seed: u64,
    /// Optional JSON report output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long)]
    nq: usize,
    #[arg(long)]
    p: usize,
    #[arg(long)]
    shots: u64,
    /// Two-qubit gate duration in seconds (e.g. 68e-9)
    #[arg(long, default_value_t = 68e-9)]
    t2q: f64,
    /// fixed-layout or sequential
    #[arg(long, default_value = "fixed-layout")]
    device_class: String,
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().context("bad integer list"))
        .collect()
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().context("bad number list"))
        .collect()
}

fn parse_delta(s: &str) -> DeltaSpec {
    match s.parse::<f64>() {
        Ok(v) => DeltaSpec::Value(v),
        Err(_) => DeltaSpec::Named(s.to_string()),
    }
}

fn noise_of(eps: f64, seed: u64, shots_per_trajectory: usize) -> Option<NoiseModel> {
    if eps == 0.0 {
        None
    } else {
        let mut n = NoiseModel::depolarizing(eps, seed);
        n.shots_per_trajectory = shots_per_trajectory;
        Some(n)
    }
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let mut instance = generate_instance(
        &args.instance.topology()?,
        args.instance.nq()?,
        &args.instance.weight_set()?,
        args.instance.seed,
    )?;
    if !args.no_optimum {
        instance.ensure_optimum()?;
    }
    instance.save(&args.out)?;
    println!(
        "wrote {} ({} nodes, {} edges{})",
        args.out.display(),
        instance.graph.n_nodes,
        instance.graph.n_edges(),
        instance
            .optimum
            .as_ref()
            .map(|o| format!(", optimum {}", o.value))
            .unwrap_or_default()
    );
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let config = if let Some(path) = &args.config {
        serde_json::from_str(&std::fs::read_to_string(path)?)?
    } else {
        RunConfig {
            instance: args.instance.source()?,
            p_list: parse_usize_list(
                args.p
                    .as_deref()
                    .ok_or_else(|| anyhow!("--p is required (e.g. --p 3,10,30)"))?,
            )?,
            delta: parse_delta(&args.delta),
            backend_class: args.backend_class.clone(),
            basis: args.basis.into(),
            shots: args.shots,
            noise: noise_of(args.eps, args.noise_seed, args.shots_per_trajectory),
            sample_seed: args.sample_seed,
            baseline_seed: args.baseline_seed,
            baseline_subsets: args.baseline_subsets,
            baseline_shots: args.baseline_shots,
            chain_order: args
                .chain_order
                .as_deref()
                .map(parse_usize_list)
                .transpose()?,
            export_only: args.export_only,
            out_dir: args.circuit_dir.clone(),
        }
    };
    let record = run_depth_sweep(&config)?;
    record.save(&args.out)?;
    if let Some(csv_path) = &args.csv {
        atomic_write(csv_path, &sweep_csv(&record))?;
    }
    for res in &record.results {
        let line = match res.status {
            bench::RunStatus::Ok => format!(
                "p={:<5} r={:.4} r_eff={:+.4} regime={}",
                res.p,
                res.r.unwrap(),
                res.r_eff.unwrap(),
                res.regime.unwrap().name()
            ),
            bench::RunStatus::ExportOnly => format!(
                "p={:<5} exported ({} two-qubit gates, depth {})",
                res.p,
                res.counts.map_or(0, |c| c.n_two_qubit),
                res.counts.map_or(0, |c| c.two_qubit_depth)
            ),
            bench::RunStatus::Error => {
                format!("p={:<5} error: {}", res.p, res.error.as_deref().unwrap_or(""))
            }
        };
        println!("{line}");
    }
    println!("record: {}", args.out.display());
    Ok(())
}

fn cmd_diagram(args: DiagramArgs) -> Result<()> {
    let mut instance = args.instance.load()?;
    instance.ensure_optimum()?;
    let noise = noise_of(args.eps, args.noise_seed, 1);
    let diagram = performance_diagram(
        &instance,
        &parse_usize_list(&args.p)?,
        &parse_f64_list(&args.delta)?,
        args.shots,
        noise.as_ref(),
        args.basis.into(),
        args.sample_seed,
    )?;
    atomic_write(&args.out, &diagram.to_csv())?;
    let (p, d, r) = diagram.argmax;
    println!("best cell: p={p}, delta={d}, r={r:.4}");
    println!("diagram: {}", args.out.display());
    Ok(())
}

fn cmd_export(args: ExportArgs) -> Result<()> {
    let instance = args.instance.load()?;
    let delta = parse_delta(&args.delta).resolve(
        &instance,
        args.backend_class.as_deref().unwrap_or(""),
    )?;
    let chain_order = args
        .chain_order
        .as_deref()
        .map(parse_usize_list)
        .transpose()?;
    let (schedule, circuit) = bench::build_circuit(
        &instance,
        args.p,
        delta,
        args.basis.into(),
        chain_order.as_deref(),
    )?;
    if args.print_schedule {
        print!("{}", schedule.table());
    }
    let text = match args.format.as_str() {
        "lrq" => write_circuit(&circuit),
        "qasm" => write_qasm2(&circuit)?,
        other => bail!("unknown format {other:?}; expected lrq or qasm"),
    };
    atomic_write(&args.out, &text)?;
    let counts = count_report(&circuit);
    println!(
        "wrote {} ({} two-qubit gates, depth {}, {} single-qubit)",
        args.out.display(),
        counts.n_two_qubit,
        counts.two_qubit_depth,
        counts.n_single_qubit
    );
    Ok(())
}

fn cmd_certify(args: CertifyArgs) -> Result<()> {
    let mut instance = args.instance.load()?;
    instance.ensure_optimum()?;
    let config = BaselineConfig {
        shots_per_subset: args.baseline_shots,
        n_subsets: args.baseline_subsets,
        seed: args.baseline_seed,
    };
    let mut rows = Vec::new();
    for path in &args.samples {
        let samples = ingest_samples(path, &instance)?;
        let cert = certify(&samples, &instance, &config)?;
        rows.push((path.clone(), samples.shots, cert));
    }
    rows.sort_by(|a, b| b.2.r.total_cmp(&a.2.r));
    for (path, shots, cert) in &rows {
        println!(
            "{}: r={:.4} r_eff={:+.4} regime={} threshold={:.4} shots={} -> {}",
            path.display(),
            cert.r,
            cert.r_eff,
            cert.regime.name(),
            cert.baseline.threshold,
            shots,
            if cert.pass { "PASS" } else { "FAIL" }
        );
    }
    if let Some(out) = &args.out {
        let report: Vec<serde_json::Value> = rows
            .iter()
            .map(|(path, shots, cert)| {
                serde_json::json!({
                    "samples": path.to_string_lossy(),
                    "shots": shots,
                    "certification": cert,
                })
            })
            .collect();
        atomic_write(out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
        println!("report: {}", out.display());
    }
    Ok(())
}

fn cmd_estimate(args: EstimateArgs) -> Result<()> {
    let class = DeviceClass::parse(&args.device_class)
        .ok_or_else(|| anyhow!("device class must be fixed-layout or sequential"))?;
    let hqc = hqc_estimate(args.nq, args.p, args.shots)?;
    let estimate = runtime_projection(args.nq, args.p, args.shots, args.t2q, class)?;
    println!(
        "fully connected LR-QAOA, n={} p={} shots={}",
        args.nq, args.p, args.shots
    );
    println!("HQC = {hqc:.1} (single-qubit count includes the initial Hadamard layer)");
    println!(
        "runtime (parallel, fixed-layout): {:.4} s",
        estimate.runtime_parallel_s
    );
    println!(
        "runtime (sequential, ion-trap):   {:.4} s",
        estimate.runtime_sequential_s
    );
    println!(
        "projected for {}: {:.4} s",
        class.name(),
        estimate.projected(class)
    );
    Ok(())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Diagram(args) => cmd_diagram(args),
        Command::Export(args) => cmd_export(args),
        Command::Certify(args) => cmd_certify(args),
        Command::Estimate(args) => cmd_estimate(args),
    }
}

// keep the builder import used even when only lrq-format exports are exercised
#[allow(unused_imports)]
use build_lr_qaoa as _build_lr_qaoa_for_docs;

#[allow(dead_code)]
fn _schedule_table_demo() -> String {
    build_schedule(3, 1.0, 1.0).map(|s| s.table()).unwrap_or_default()
}
