//! `adft`: generate transform matrices, verify invariants and emit
//! complexity and analysis reports.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use adft_core::Variant;
use config::{Format, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "adft", version, about = "Approximate DFT toolkit")]
struct Cli {
    /// Output directory for generated files.
    #[arg(long, global = true, env = "ADFT_OUT_DIR")]
    out: Option<PathBuf>,

    /// Key-value config file (`key = value` per line).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Use the published settings: 8192-point grid, 10^5 replicates, 3M3A costing.
    #[arg(long, global = true)]
    paper_mode: bool,

    /// Report file format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the 32-point factors and/or the dense 1024-point matrix.
    GenMatrix {
        #[arg(long, value_parser = parse_variant)]
        variant: Option<Variant>,
        #[arg(long, value_enum, default_value_t = What::Both)]
        what: What,
    },
    /// Run the invariant checks; exits 1 if any fails.
    Verify {
        /// Restrict to these check groups.
        #[arg(long, value_enum, value_delimiter = ',')]
        only: Vec<commands::CheckGroup>,
        #[arg(long, hide = true)]
        corrupt_w7: bool,
    },
    /// Sequential and circuit operation counts for every variant.
    Complexity {
        #[arg(long, value_enum)]
        model: Option<Model>,
        /// Charge trivial twiddles at full cost.
        #[arg(long)]
        count_trivial: bool,
    },
    /// Row-wise frequency-response error and side-lobe levels.
    Filterbank {
        #[arg(long, value_parser = parse_variant)]
        variant: Option<Variant>,
        /// Number of frequency points over [-π, π).
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Monte-Carlo SNR per bin.
    Snr {
        #[arg(long, value_parser = parse_variant)]
        variant: Option<Variant>,
        #[arg(long)]
        replicates: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        bins: BinSelection,
        /// Complex noise variance per input element.
        #[arg(long, default_value_t = 1.0)]
        noise_var: f64,
    },
    /// Beam patterns of selected bins on a half-wavelength array.
    Beams {
        #[arg(long, value_parser = parse_variant)]
        variant: Option<Variant>,
        #[arg(long, value_delimiter = ',', default_value = "200,201,202,203",
              value_parser = clap::value_parser!(u64).range(..1024))]
        bins: Vec<u64>,
        /// Number of angles over [-π/2, π/2].
        #[arg(long, default_value_t = 4096)]
        angles: usize,
    },
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct BinSelection {
    /// Comma-separated bins (default: all 1024).
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(..1024))]
    bins: Vec<u64>,
    /// Evenly spaced sample of this many bins.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1024))]
    sample: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Factors,
    Dense,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Paper,
    Gauss,
    Direct,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: adft_core::Error| e.to_string())
}

/// Failure classes and their exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, config or arguments: exit 2.
    Usage(anyhow::Error),
    /// A verification check failed: exit 1.
    Invariant(Vec<String>),
    /// I/O or computation error: exit 1.
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path).map_err(Failure::Usage)?;
    }
    if cli.paper_mode {
        cfg.apply_paper_mode();
    }
    if let Some(out) = &cli.out {
        cfg.out_dir = out.clone();
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), Failure> {
    use adft_core::complexity::ComplexMultScheme;

    let mut cfg = build_config(&cli)?;
    match cli.command {
        Command::GenMatrix { variant, what } => {
            cfg.variant = variant.unwrap_or(cfg.variant);
            let (factors, dense) = match what {
                What::Factors => (true, false),
                What::Dense => (false, true),
                What::Both => (true, true),
            };
            commands::gen_matrix(&cfg, factors, dense)
        }
        Command::Verify { only, corrupt_w7 } => commands::verify(&only, corrupt_w7),
        Command::Complexity {
            model,
            count_trivial,
        } => {
            if let Some(m) = model {
                cfg.cost_model = match m {
                    Model::Paper => ComplexMultScheme::Paper3M3A,
                    Model::Gauss => ComplexMultScheme::Gauss3M5A,
                    Model::Direct => ComplexMultScheme::Direct4M2A,
                };
            }
            commands::complexity(&cfg, count_trivial)
        }
        Command::Filterbank { variant, grid } => {
            cfg.variant = variant.unwrap_or(cfg.variant);
            cfg.grid_size = grid.unwrap_or(cfg.grid_size);
            commands::filterbank(&cfg)
        }
        Command::Snr {
            variant,
            replicates,
            seed,
            bins,
            noise_var,
        } => {
            cfg.variant = variant.unwrap_or(cfg.variant);
            cfg.replicates = replicates.unwrap_or(cfg.replicates);
            cfg.seed = seed.unwrap_or(cfg.seed);
            let bins: Vec<usize> = match bins.sample {
                Some(n) => adft_core::analysis::evenly_spaced_bins(n as usize),
                None if bins.bins.is_empty() => (0..1024).collect(),
                None => bins.bins.iter().map(|&b| b as usize).collect(),
            };
            commands::snr(&cfg, &bins, noise_var)
        }
        Command::Beams {
            variant,
            bins,
            angles,
        } => {
            cfg.variant = variant.unwrap_or(cfg.variant);
            let bins: Vec<usize> = bins.iter().map(|&b| b as usize).collect();
            commands::beams(&cfg, &bins, angles)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(failed)) => {
            eprintln!("{} check(s) failed:", failed.len());
            for f in failed {
                eprintln!("  {f}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
