use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lfix_cli::{cmd_catalog, cmd_dcpo, cmd_fixpoint, cmd_hom, cmd_join, cmd_sweep, cmd_validate, Format, SweepArgs};

/// Finite frames, L-ordered sets and fixpoints of monotone maps.
#[derive(Parser)]
#[command(name = "lfix", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Load an instance file and validate every structure in it.
    Validate { file: PathBuf },
    /// Join, meet, max, min and directedness of a fuzzy subset.
    Join {
        file: PathBuf,
        #[arg(long)]
        subset: String,
    },
    /// Fixpoint analysis of a monotone endomap.
    Fixpoint {
        file: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// Run the theorem sweep over the standard catalog.
    Sweep {
        /// JSON sweep configuration; defaults apply to omitted keys.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Largest number of fuzzy subsets scanned exhaustively.
        #[arg(long)]
        bound: Option<usize>,
        /// Restrict to these theorem ids (repeatable).
        #[arg(long = "theorem")]
        theorems: Vec<String>,
        #[arg(long)]
        threads: Option<usize>,
        /// Write one JSON record per line to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List the monotone maps between two L-ordered sets.
    Hom {
        file: PathBuf,
        #[arg(long)]
        domain: String,
        /// Defaults to the domain.
        #[arg(long)]
        codomain: Option<String>,
        /// Largest number of candidate maps enumerated.
        #[arg(long, default_value_t = lfix_core::maps::MAP_BOUND)]
        bound: usize,
    },
    /// Decide whether an L-ordered set is a fuzzy dcpo.
    Dcpo {
        file: PathBuf,
        #[arg(long)]
        lorder: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of fuzzy subsets scanned exhaustively.
        #[arg(long, default_value_t = lfix_core::dcpo::SUBSET_BOUND)]
        bound: usize,
        /// Directed subsets drawn when the scan is sampled.
        #[arg(long, default_value_t = lfix_core::dcpo::DIRECTED_SAMPLES)]
        samples: usize,
    },
    /// Describe the standard catalog, or export it as an instance file.
    Catalog {
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    let result = match &cli.command {
        Command::Validate { file } => cmd_validate(file, format),
        Command::Join { file, subset } => cmd_join(file, subset, format),
        Command::Fixpoint { file, map } => cmd_fixpoint(file, map, format),
        Command::Sweep {
            config,
            seed,
            bound,
            theorems,
            threads,
            report,
        } => cmd_sweep(
            &SweepArgs {
                config: config.as_deref(),
                seed: *seed,
                bound: *bound,
                theorems: theorems.clone(),
                threads: *threads,
                report: report.as_deref(),
            },
            format,
        ),
        Command::Hom {
            file,
            domain,
            codomain,
            bound,
        } => cmd_hom(file, domain, codomain.as_deref().unwrap_or(domain), *bound, format),
        Command::Dcpo {
            file,
            lorder,
            seed,
            bound,
            samples,
        } => cmd_dcpo(file, lorder, *bound, *samples, *seed, format),
        Command::Catalog { export } => cmd_catalog(export.as_deref(), format),
    };
    match result {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
