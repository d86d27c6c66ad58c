use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

/// Exact error-probability bounds for hypothesis testing and block codes
/// over the binary symmetric channel.
#[derive(Debug, Parser)]
#[command(name = "pvlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Write the data stream here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// MAP error, asymptotic and tilted Poor-Verdú bounds, and Verdú-Han
    /// bounds of a joint distribution file.
    Bounds {
        #[arg(long, value_name = "PATH")]
        dist: PathBuf,
        /// Tilting exponents for the generalized bound (defaults to 1 when
        /// `--alpha` is given).
        #[arg(long, value_delimiter = ',', value_name = "INT[,INT...]")]
        theta: Vec<u32>,
        #[arg(long, value_delimiter = ',', value_name = "RAT[,RAT...]")]
        alpha: Vec<String>,
    },
    /// Tilted bound for theta = 1..theta-max, with the asymptotic bound as a
    /// footer row.
    SweepTheta {
        #[arg(long, value_name = "PATH")]
        dist: PathBuf,
        #[arg(long, value_name = "RAT")]
        alpha: String,
        #[arg(long, value_name = "INT", default_value_t = 20)]
        theta_max: u32,
    },
    /// Exact tie / no-tie report of a code over the BSC, with its
    /// certificates.
    Bsc {
        #[arg(long, value_name = "PATH")]
        code: PathBuf,
        #[arg(long, value_name = "RAT")]
        p: String,
    },
    /// Closed forms for one codeword pair at distance d.
    Pairwise {
        #[arg(long, value_name = "INT")]
        n: usize,
        #[arg(long, value_name = "INT")]
        d: usize,
        #[arg(long, value_name = "RAT")]
        p: String,
    },
    /// Exponent series of a code family over a blocklength grid.
    Exponent {
        #[arg(long, value_enum, default_value_t = Family::Antipodal)]
        family: Family,
        /// Codewords per code (random family).
        #[arg(long, value_name = "INT", default_value_t = 4)]
        m: usize,
        #[arg(long, value_name = "U64", default_value_t = 1)]
        seed: u64,
        #[arg(long, value_name = "RAT")]
        p: String,
        #[arg(long, value_name = "INT", default_value_t = 2)]
        n_min: usize,
        #[arg(long, value_name = "INT", default_value_t = 16)]
        n_max: usize,
        #[arg(long, value_name = "INT", default_value_t = 2)]
        n_step: usize,
    },
    /// `bsc` certificates plus the pairwise checks for every codeword pair.
    Verify {
        #[arg(long, value_name = "PATH")]
        code: PathBuf,
        #[arg(long, value_name = "RAT")]
        p: String,
    },
    /// Export the joint distribution of a code over the BSC (`--p`) or the
    /// erasure channel (`--epsilon`) as a distribution file.
    Joint {
        #[arg(long, value_name = "PATH")]
        code: PathBuf,
        #[arg(long, value_name = "RAT", conflicts_with = "epsilon", required_unless_present = "epsilon")]
        p: Option<String>,
        #[arg(long, value_name = "RAT")]
        epsilon: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Antipodal,
    Random,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match commands::run(cli.command, &cli.output) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
