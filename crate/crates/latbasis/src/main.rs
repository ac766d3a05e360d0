use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use latbasis::cli::{
    render_report, run_basis, run_det, run_frac, Algorithm, BasisOptions, CliError,
};
use latbasis::instances::{generate_instance, GenConfig};
use latbasis::io::{read_matrix_file, write_matrix};
use latbasis::oracles::{enumerate_parallelepiped, DEFAULT_ENUM_CAP};

/// Exact lattice basis computation from integer generators.
#[derive(Parser)]
#[command(name = "latbasis", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Matrix file; columns are the generators
    file: PathBuf,
    /// Treat file rows as generators instead of columns
    #[arg(long)]
    transpose: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LowrankMode {
    /// Project onto independent rows when the rank is deficient
    Auto,
    /// Fail with a rank error instead
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a lattice basis for the generators
    Basis {
        #[command(flatten)]
        input: InputArgs,
        /// Use the exchange-based reference algorithm
        #[arg(long, conflicts_with = "fast")]
        basic: bool,
        /// Use the translate-chain algorithm (default)
        #[arg(long)]
        fast: bool,
        /// Behavior on rank-deficient input
        #[arg(long, value_enum, default_value_t = LowrankMode::Auto)]
        lowrank: LowrankMode,
        /// Also compute a size-reduced basis
        #[arg(long)]
        reduce: bool,
        /// Check the result against brute-force oracles
        #[arg(long)]
        verify: bool,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Determinant of a square generator matrix
    Det {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Brute-force fractionality of one coordinate over the
    /// parallelepiped of the generators
    Frac {
        #[command(flatten)]
        input: InputArgs,
        /// Coordinate to measure, 1-based
        #[arg(long)]
        index: usize,
        /// Enumeration candidate cap
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u64,
    },
    /// Count (or list) the integral points of the half-open
    /// parallelepiped spanned by the generators
    Enumerate {
        #[command(flatten)]
        input: InputArgs,
        /// Enumeration candidate cap
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u64,
        /// Print every point instead of only the count
        #[arg(long)]
        points: bool,
    },
    /// Generate a random instance file
    Gen {
        /// Ambient dimension (rows)
        #[arg(long)]
        rows: usize,
        /// Number of generators (columns)
        #[arg(long)]
        cols: usize,
        /// Entries are drawn from [-max-entry, max-entry]
        #[arg(long, default_value_t = 50)]
        max_entry: u64,
        /// RNG seed; equal seeds give equal instances
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Target rank (defaults to maximal)
        #[arg(long)]
        rank: Option<usize>,
        /// Write to a file instead of stdout
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Basis { input, basic, fast: _, lowrank, reduce, verify, json } => {
            let m = read_matrix_file(&input.file, input.transpose)?;
            let opts = BasisOptions {
                algorithm: if basic { Algorithm::Basic } else { Algorithm::Fast },
                allow_lowrank: lowrank == LowrankMode::Auto,
                reduce,
                verify,
            };
            let report = run_basis(&m, &opts)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report)
                        .expect("report serialization cannot fail")
                );
            } else {
                print!("{}", render_report(&report));
            }
            if let Some(v) = &report.verification {
                if !v.pass {
                    return Err(CliError::Verification(
                        "computed basis failed verification".into(),
                    ));
                }
            }
            Ok(())
        }
        Command::Det { input } => {
            let m = read_matrix_file(&input.file, input.transpose)?;
            println!("{}", run_det(&m)?);
            Ok(())
        }
        Command::Frac { input, index, cap } => {
            let m = read_matrix_file(&input.file, input.transpose)?;
            println!("{}", run_frac(&m, index, cap)?);
            Ok(())
        }
        Command::Enumerate { input, cap, points } => {
            let m = read_matrix_file(&input.file, input.transpose)?;
            let census = enumerate_parallelepiped(&m, cap).map_err(CliError::from)?;
            println!("{}", census.count());
            if points {
                for p in &census.points {
                    let entries: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                    println!("{}", entries.join(" "));
                }
            }
            Ok(())
        }
        Command::Gen { rows, cols, max_entry, seed, rank, output } => {
            let cfg = GenConfig { rows, cols, max_entry, seed, rank };
            let m = generate_instance(&cfg)?;
            let text = write_matrix(&m);
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| {
                    CliError::Parse(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{text}"),
            }
            Ok(())
        }
    }
}
