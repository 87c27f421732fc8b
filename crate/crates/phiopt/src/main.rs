//! Command-line front end: evaluate integrated information for a TPM
//! file, run the search methods, sample populations, and compare node
//! counts with a two-sample test.
//!
//! Exit codes: 0 success, 1 invalid or conflicting arguments, 2 invalid
//! TPM, 3 infeasible network or state, 4 node-count guardrail exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::RngCore;
use serde_json::json;

use phiopt::io::{load_state, load_tpm, write_json, write_tpm, RunManifest};
use phiopt::net::{first_feasible_state, Network, SamplingMode};
use phiopt::search::{
    grid_search, prior_guided_search, random_search, SearchConfig, SearchResult, DEFAULT_KAPPA,
};
use phiopt::stats::{run_inference_experiment, sample_population};
use phiopt::system::{big_phi_with_limit, DEFAULT_MAX_NODES};
use phiopt::PhiError;

#[derive(Parser)]
#[command(name = "phiopt", version, about = "Integrated information for small binary networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Master seed: an integer, or "random" for an entropy-derived seed
    #[arg(long, global = true, default_value = "42")]
    seed: String,
    /// Output directory for machine-readable artifacts
    #[arg(long, global = true, default_value = "phiopt-out")]
    out: PathBuf,
    /// Worker thread cap (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Guardrail: refuse evaluations beyond this node count
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate big Phi for a TPM file
    Phi {
        tpm_file: PathBuf,
        /// State file (JSON array of 0/1); defaults to the first feasible state
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Optimize Phi over TPM space
    Search(SearchArgs),
    /// Sample a population of random TPMs at one node count
    Population {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Mode::Binary)]
        mode: Mode,
    },
    /// Two-sample Welch test between node counts
    Compare {
        /// First group as nodes:samples, e.g. 3:100
        #[arg(long)]
        a: String,
        /// Second group as nodes:samples, e.g. 4:100
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = Mode::Binary)]
        mode: Mode,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    method: Method,
    /// Dimension range as min:max, e.g. 3:4
    #[arg(long)]
    nodes: String,
    /// Total evaluation budget T
    #[arg(long, default_value_t = 50)]
    iters: usize,
    /// Batch size between prior updates
    #[arg(long, default_value_t = 5)]
    batch: usize,
    /// Learning rate (prior method only)
    #[arg(long)]
    mu: Option<f64>,
    /// Prior smoothing (prior method only)
    #[arg(long)]
    kappa: Option<f64>,
    /// Initial dimension prior as comma-separated floats (prior method only)
    #[arg(long)]
    prior: Option<String>,
    /// Independent repetitions (seeds seed, seed+1, ...)
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, value_enum, default_value_t = Mode::Binary)]
    mode: Mode,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Prior,
    Random,
    Grid,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Prior => "prior",
            Method::Random => "random",
            Method::Grid => "grid",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Binary,
    Probabilistic,
}

impl From<Mode> for SamplingMode {
    fn from(m: Mode) -> SamplingMode {
        match m {
            Mode::Binary => SamplingMode::Binary,
            Mode::Probabilistic => SamplingMode::Probabilistic,
        }
    }
}

fn exit_code_for(err: &PhiError) -> u8 {
    match err {
        PhiError::InvalidShape { .. } | PhiError::OutOfRange { .. } => 2,
        PhiError::InfeasibleState | PhiError::StateMismatch { .. } => 3,
        PhiError::Budget { .. } => 4,
        _ => 1,
    }
}

fn parse_seed(raw: &str) -> Result<u64, PhiError> {
    if raw == "random" {
        return Ok(rand::rng().next_u64());
    }
    raw.parse()
        .map_err(|_| PhiError::InvalidConfig(format!("seed must be an integer or \"random\", got {raw:?}")))
}

fn parse_pair(raw: &str, what: &str) -> Result<(usize, usize), PhiError> {
    let parts: Vec<&str> = raw.split(':').collect();
    let parsed = (parts.len() == 2)
        .then(|| Ok::<_, std::num::ParseIntError>((parts[0].parse()?, parts[1].parse()?)))
        .and_then(|r| r.ok());
    parsed.ok_or_else(|| PhiError::InvalidConfig(format!("{what} must look like a:b, got {raw:?}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn run(cli: Cli) -> Result<(), PhiError> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| PhiError::InvalidConfig(format!("thread pool: {e}")))?;
    }
    let seed = parse_seed(&cli.seed)?;
    std::fs::create_dir_all(&cli.out)
        .map_err(|e| PhiError::InvalidConfig(format!("cannot create {}: {e}", cli.out.display())))?;
    let started = chrono::Utc::now().to_rfc3339();

    let (name, config) = match &cli.command {
        Command::Phi { tpm_file, state } => {
            let config = json!({
                "tpm_file": tpm_file,
                "state_file": state,
                "max_nodes": cli.max_nodes,
            });
            cmd_phi(tpm_file, state.as_deref(), &cli.out, cli.max_nodes)?;
            ("phi", config)
        }
        Command::Search(args) => {
            let config = cmd_search(args, seed, &cli.out, cli.max_nodes)?;
            ("search", config)
        }
        Command::Population { nodes, samples, mode } => {
            let config = json!({
                "nodes": nodes,
                "samples": samples,
                "mode": match mode { Mode::Binary => "binary", Mode::Probabilistic => "probabilistic" },
                "max_nodes": cli.max_nodes,
            });
            cmd_population(*nodes, *samples, (*mode).into(), seed, &cli.out, cli.max_nodes)?;
            ("population", config)
        }
        Command::Compare { a, b, mode } => {
            let spec_a = parse_pair(a, "--a")?;
            let spec_b = parse_pair(b, "--b")?;
            let config = json!({
                "a": {"nodes": spec_a.0, "samples": spec_a.1},
                "b": {"nodes": spec_b.0, "samples": spec_b.1},
                "mode": match mode { Mode::Binary => "binary", Mode::Probabilistic => "probabilistic" },
                "max_nodes": cli.max_nodes,
            });
            cmd_compare(spec_a, spec_b, (*mode).into(), seed, &cli.out, cli.max_nodes)?;
            ("compare", config)
        }
    };

    let manifest = RunManifest {
        command: name.to_string(),
        config,
        seed,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        started,
        finished: chrono::Utc::now().to_rfc3339(),
    };
    write_json(&cli.out.join("manifest.json"), &manifest)
}

fn cmd_phi(
    tpm_file: &Path,
    state_file: Option<&Path>,
    out: &Path,
    max_nodes: usize,
) -> Result<(), PhiError> {
    let tpm = load_tpm(tpm_file)?;
    let network = Network::new(tpm);
    let state = match state_file {
        Some(path) => load_state(path)?,
        None => first_feasible_state(&network)
            .first_feasible_state
            .ok_or(PhiError::InfeasibleState)?,
    };
    let result = big_phi_with_limit(&network, &state, max_nodes)?;
    println!("state: {:?}", result.state.0);
    println!("big_phi: {:.10}", result.big_phi);
    match &result.mip_cut {
        Some(cut) => println!(
            "minimizing cut: severed {:?} -> {:?}",
            cut.severed_from.members(),
            cut.severed_to.members()
        ),
        None => println!("minimizing cut: none (trivial system)"),
    }
    println!("concepts ({}):", result.constellation.concepts.len());
    println!("  mechanism        phi   cause purview  effect purview");
    for c in &result.constellation.concepts {
        println!(
            "  {:<12} {:>9.6}  {:<14} {:<14}",
            format!("{:?}", c.mechanism.members()),
            c.phi,
            format!("{:?}", c.cause.purview.members()),
            format!("{:?}", c.effect.purview.members()),
        );
    }
    write_json(&out.join("phi_result.json"), &result)
}

fn cmd_search(
    args: &SearchArgs,
    seed: u64,
    out: &Path,
    max_nodes: usize,
) -> Result<serde_json::Value, PhiError> {
    if args.method != Method::Prior
        && (args.mu.is_some() || args.kappa.is_some() || args.prior.is_some())
    {
        return Err(PhiError::InvalidConfig(
            "--mu, --kappa, and --prior apply only to --method prior".into(),
        ));
    }
    if args.reps == 0 {
        return Err(PhiError::InvalidConfig("--reps must be positive".into()));
    }
    let (d_min, d_max) = parse_pair(&args.nodes, "--nodes")?;
    let mut config = SearchConfig::new(d_min, d_max, args.iters);
    config.batch_size = args.batch;
    config.learning_rate = args.mu.unwrap_or(0.1);
    config.smoothing = args.kappa.unwrap_or(DEFAULT_KAPPA);
    config.mode = args.mode.into();
    config.max_nodes = max_nodes;
    if let Some(raw) = &args.prior {
        let theta: std::result::Result<Vec<f64>, _> =
            raw.split(',').map(|p| p.trim().parse::<f64>()).collect();
        config.initial_prior =
            theta.map_err(|e| PhiError::InvalidConfig(format!("bad --prior: {e}")))?;
    }
    config.seed = seed;
    config.validate()?;

    let mut results: Vec<SearchResult> = Vec::with_capacity(args.reps);
    for rep in 0..args.reps {
        let mut rep_config = config.clone();
        rep_config.seed = seed.wrapping_add(rep as u64);
        let result = match args.method {
            Method::Prior => prior_guided_search(&rep_config)?,
            Method::Random => random_search(&rep_config)?,
            Method::Grid => grid_search(&rep_config)?,
        };
        let suffix = if args.reps > 1 { format!("_rep{rep}") } else { String::new() };
        let lines: Vec<String> = result
            .trajectory
            .iter()
            .map(|rec| serde_json::to_string(rec).expect("record serializes"))
            .collect();
        std::fs::write(out.join(format!("trajectory{suffix}.jsonl")), lines.join("\n") + "\n")
            .map_err(|e| PhiError::InvalidConfig(format!("cannot write trajectory: {e}")))?;
        if args.method == Method::Prior {
            let history: Vec<&[f64]> =
                result.prior_history.iter().map(|p| p.theta.as_slice()).collect();
            write_json(&out.join(format!("prior_history{suffix}.json")), &history)?;
        }
        results.push(result);
    }

    let best = results
        .iter()
        .max_by(|a, b| a.best_phi.partial_cmp(&b.best_phi).expect("phi is finite"))
        .expect("at least one repetition");
    println!("method: {}", args.method.name());
    println!("best_phi: {:.10}", best.best_phi);
    if let Some(tpm) = &best.best_tpm {
        println!("best dimension: {}", tpm.node_count());
        write_tpm(&out.join("best_tpm.json"), tpm)?;
        write_json(&out.join("best_cm.json"), Network::new(tpm.clone()).cm())?;
    }
    if let Some(state) = &best.best_state {
        write_json(&out.join("best_state.json"), &state.0)?;
    }

    if args.reps > 1 {
        let curves: Vec<Vec<f64>> = results.iter().map(|r| r.best_so_far()).collect();
        let mut csv = String::from("iteration,mean_best_phi,method\n");
        for i in 0..args.iters {
            let mean: f64 =
                curves.iter().map(|c| c[i]).sum::<f64>() / curves.len() as f64;
            csv.push_str(&format!("{i},{mean},{}\n", args.method.name()));
        }
        std::fs::write(out.join("mean_trajectory.csv"), csv)
            .map_err(|e| PhiError::InvalidConfig(format!("cannot write CSV: {e}")))?;
        let final_mean: f64 =
            curves.iter().map(|c| *c.last().unwrap()).sum::<f64>() / curves.len() as f64;
        println!("mean final best_phi over {} reps: {:.10}", args.reps, final_mean);
    }

    Ok(json!({
        "method": args.method.name(),
        "d_min": config.d_min,
        "d_max": config.d_max,
        "iters": config.total_iters,
        "batch": config.batch_size,
        "mu": config.learning_rate,
        "kappa": config.smoothing,
        "prior": config.initial_prior,
        "reps": args.reps,
        "mode": match args.mode { Mode::Binary => "binary", Mode::Probabilistic => "probabilistic" },
        "max_nodes": max_nodes,
    }))
}

fn cmd_population(
    nodes: usize,
    samples: usize,
    mode: SamplingMode,
    seed: u64,
    out: &Path,
    max_nodes: usize,
) -> Result<(), PhiError> {
    let stats = sample_population(nodes, samples, mode, seed, max_nodes)?;
    println!("nodes: {nodes}  samples: {samples}");
    println!(
        "feasible: {} ({:.2}% infeasible)",
        stats.phi_values.len(),
        100.0 * stats.infeasible_rate
    );
    println!(
        "mean phi (feasible only): {:.6}  ci95: [{:.6}, {:.6}]",
        stats.mean, stats.ci95.0, stats.ci95.1
    );
    println!(
        "mean phi (zeros included): {:.6}  ci95: [{:.6}, {:.6}]",
        stats.mean_with_zeros, stats.ci95_with_zeros.0, stats.ci95_with_zeros.1
    );
    let mut csv = String::from("phi\n");
    for v in &stats.phi_values {
        csv.push_str(&format!("{v}\n"));
    }
    std::fs::write(out.join("phi_values.csv"), csv)
        .map_err(|e| PhiError::InvalidConfig(format!("cannot write CSV: {e}")))?;
    write_json(&out.join("population.json"), &stats)
}

fn cmd_compare(
    a: (usize, usize),
    b: (usize, usize),
    mode: SamplingMode,
    seed: u64,
    out: &Path,
    max_nodes: usize,
) -> Result<(), PhiError> {
    let report = run_inference_experiment(a, b, mode, seed, max_nodes)?;
    println!(
        "group a: {} nodes, mean phi {:.6}; group b: {} nodes, mean phi {:.6}",
        a.0, report.group_a.mean, b.0, report.group_b.mean
    );
    println!(
        "t = {:.4}, dof = {:.2}, p = {:.3e}",
        report.test.t_statistic, report.test.dof, report.test.p_value
    );
    println!(
        "decision at alpha=0.01: {} the null hypothesis of equal means",
        if report.reject_at_001 { "reject" } else { "fail to reject" }
    );
    for (name, group) in [("a", &report.group_a), ("b", &report.group_b)] {
        let mut csv = String::from("phi\n");
        for v in &group.phi_values {
            csv.push_str(&format!("{v}\n"));
        }
        std::fs::write(out.join(format!("phi_values_{name}.csv")), csv)
            .map_err(|e| PhiError::InvalidConfig(format!("cannot write CSV: {e}")))?;
    }
    write_json(&out.join("test_report.json"), &report)
}
