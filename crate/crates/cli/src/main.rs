//! spanlab: build, verify, and measure weighted lower-bound instances for
//! light spanners.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spanlab_cli::commands::{self, CliError};
use spanlab_cli::config::ExperimentConfig;

#[derive(Parser)]
#[command(
    name = "spanlab",
    version,
    about = "Weighted lower-bound instances for light spanners: generators, certificates, and experiment sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a base graph, embed it, prune light cycles, and write all
    /// artifacts with provenance.
    Generate(CommonArgs),
    /// Recompute an instance's weighted girth from scratch and check it
    /// against the claimed bound.
    Verify(VerifyArgs),
    /// Run the full pipeline over a grid of bases/epsilons and emit
    /// CSV/JSON reports with slope aggregates.
    Sweep(CommonArgs),
    /// Estimate the light-image probability of a fixed base cycle over an
    /// epsilon grid.
    Montecarlo(CommonArgs),
    /// Run the greedy spanner against an instance (must keep every edge)
    /// or a plain graph file.
    Compare(CompareArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Key-value config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Stretch parameter: instances target weighted girth > (1+eps)*2k.
    #[arg(long)]
    k: Option<usize>,
    /// Exact fraction 1/r, or "auto" to solve for the threshold.
    #[arg(long)]
    epsilon: Option<String>,
    /// Target spanning-cycle size driving the epsilon solver.
    #[arg(long = "n-target")]
    n_target: Option<u64>,
    /// Base generator spec: biclique:side=S | pg2:q=Q | random-alteration:n=N,kappa=K
    #[arg(long)]
    base: Option<String>,
    /// Seed list "1,2,3" or inclusive range "1..20".
    #[arg(long)]
    seeds: Option<String>,
    /// Named constant override, repeatable: name=value.
    #[arg(long = "constant")]
    constants: Vec<String>,
    /// Output directory (default: $SPANLAB_OUT or ./spanlab-out).
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv | json | both
    #[arg(long)]
    format: Option<String>,
    /// Sweep: semicolon-separated base specs.
    #[arg(long = "grid-base")]
    grid_base: Option<String>,
    /// Comma-separated epsilon list (sweep, montecarlo).
    #[arg(long = "grid-epsilon")]
    grid_epsilon: Option<String>,
    /// Sweep: comma-separated divisors applied to the solved 1/epsilon.
    #[arg(long = "grid-eps-scale")]
    grid_eps_scale: Option<String>,
    /// Monte Carlo trials per grid point.
    #[arg(long)]
    trials: Option<u64>,
    /// Cycle-length excess parameter c (length 2k+2c).
    #[arg(long)]
    c: Option<usize>,
    /// Bipartize/regularize the base before embedding.
    #[arg(long)]
    regularize: bool,
    /// Include wall-clock timings in report files (breaks byte-identical
    /// reruns).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance stem (the path without .edges/.layout).
    #[arg(long)]
    instance: PathBuf,
    /// Override the sidecar's k when computing the bound.
    #[arg(long)]
    k: Option<usize>,
    /// Override the sidecar's epsilon when computing the bound.
    #[arg(long)]
    epsilon: Option<String>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Certified instance stem; greedy must keep every edge.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Plain edge-list file to compare at --stretch.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Stretch t for --graph mode (fraction).
    #[arg(long)]
    stretch: Option<String>,
}

fn resolve_config(args: &CommonArgs) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(k) = args.k {
        cfg.apply("k", &k.to_string())?;
    }
    if let Some(e) = &args.epsilon {
        cfg.apply("epsilon", e)?;
    }
    if let Some(n) = args.n_target {
        cfg.apply("n_target", &n.to_string())?;
    }
    if let Some(b) = &args.base {
        cfg.apply("base", b)?;
    }
    if let Some(s) = &args.seeds {
        cfg.apply("seeds", s)?;
    }
    for c in &args.constants {
        cfg.apply("constant", c)?;
    }
    if let Some(o) = &args.out {
        cfg.out = o.clone();
    }
    if let Some(f) = &args.format {
        cfg.apply("format", f)?;
    }
    if let Some(g) = &args.grid_base {
        cfg.apply("grid_base", g)?;
    }
    if let Some(g) = &args.grid_epsilon {
        cfg.apply("grid_epsilon", g)?;
    }
    if let Some(g) = &args.grid_eps_scale {
        cfg.apply("grid_eps_scale", g)?;
    }
    if let Some(t) = args.trials {
        cfg.apply("trials", &t.to_string())?;
    }
    if let Some(c) = args.c {
        cfg.apply("c", &c.to_string())?;
    }
    if args.regularize {
        cfg.regularize = true;
    }
    if args.timings {
        cfg.timings = true;
    }
    Ok(cfg)
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate(args) => {
            let cfg = resolve_config(&args)?;
            let files = commands::generate::run(&cfg)?;
            println!(
                "wrote {} artifact set(s) under {}",
                files.len(),
                cfg.out.display()
            );
            Ok(())
        }
        Command::Verify(args) => {
            commands::verify::run(&args.instance, args.k, args.epsilon.as_deref())?;
            Ok(())
        }
        Command::Sweep(args) => {
            let cfg = resolve_config(&args)?;
            let out = commands::sweep::run(&cfg)?;
            println!(
                "sweep: {} ok, {} failed; slope(lightness~N)={:?} slope(lightness~eps)={:?}",
                out.aggregates.rows_ok,
                out.aggregates.rows_failed,
                out.aggregates.slope_lightness_vs_n,
                out.aggregates.slope_lightness_vs_epsilon
            );
            for (scale, mean) in &out.aggregates.mean_surviving_by_scale {
                println!("  eps_scale {scale}: mean surviving fraction {mean:.4}");
            }
            Ok(())
        }
        Command::Montecarlo(args) => {
            let cfg = resolve_config(&args)?;
            let out = commands::montecarlo::run(&cfg)?;
            for row in &out.rows {
                println!(
                    "epsilon={} trials={} events={} p={:.3e} wilson=[{:.3e}, {:.3e}]",
                    row.epsilon, row.trials, row.events, row.p_hat, row.wilson_lo, row.wilson_hi
                );
            }
            println!(
                "fitted_constant={:?} slope={:?} (target {})",
                out.aggregates.fitted_constant, out.aggregates.slope, out.aggregates.slope_target
            );
            Ok(())
        }
        Command::Compare(args) => {
            let cfg = resolve_config(&args.common)?;
            match (&args.instance, &args.graph) {
                (Some(stem), None) => {
                    commands::compare::run_instance(&cfg, stem)?;
                    Ok(())
                }
                (None, Some(path)) => {
                    let stretch = args.stretch.as_deref().ok_or_else(|| {
                        CliError::Config(spanlab_cli::config::ConfigError(
                            "--graph mode needs --stretch".into(),
                        ))
                    })?;
                    commands::compare::run_graph(&cfg, path, stretch)?;
                    Ok(())
                }
                _ => Err(CliError::Config(spanlab_cli::config::ConfigError(
                    "compare needs exactly one of --instance or --graph".into(),
                ))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
