use std::fs;
use std::path::{Path, PathBuf};
use std::process;

use clap::{Parser, Subcommand, ValueEnum};

use uncert_cli::instance::{parse_matrix_file, InstanceFile};
use uncert_cli::output;
use uncert_cli::CliError;
use uncert_core::bounds::bound_report;
use uncert_core::linalg::numerical_radius_sweep;
use uncert_core::search::{
    pauli_suite, properties_suite, tightness_search, BoundTarget, SearchConfig,
};
use uncert_core::RadiusOptions;

#[derive(Parser)]
#[command(
    name = "uncert",
    version,
    about = "Deviation products and numerical-radius lower bounds for quantum observables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    Pauli,
    Properties,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetName {
    Theorem22,
    Theorem41,
    Theorem43,
}

impl From<TargetName> for BoundTarget {
    fn from(value: TargetName) -> Self {
        match value {
            TargetName::Theorem22 => BoundTarget::Theorem22,
            TargetName::Theorem41 => BoundTarget::Theorem41,
            TargetName::Theorem43 => BoundTarget::Theorem43,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute every bound for a problem instance
    Bounds {
        /// Instance JSON file
        input: PathBuf,
        /// Also maximize the chain radius over all observable orderings
        #[arg(long)]
        permute: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Numerical radius of a matrix by angle sweep
    Radius {
        /// Matrix JSON file: nested [re, im] rows, bare or under "matrix"
        input: PathBuf,
        /// Number of coarse sweep angles
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        /// Angle-interval width at which refinement stops
        #[arg(long, default_value_t = 1e-12)]
        refine: f64,
    },
    /// Run a named verification suite
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteName,
        /// Random points or instances (default: 1000 for pauli, 100 for properties)
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Scales every pass tolerance (testing hook)
        #[arg(long, default_value_t = 1.0)]
        tolerance_scale: f64,
    },
    /// Sample states to measure how tight a bound is
    Search {
        /// Instance JSON file; the state field is ignored
        input: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Hill-climbing iterations after sampling
        #[arg(long, default_value_t = 0)]
        refine: usize,
        #[arg(long, value_enum, default_value_t = TargetName::Theorem22)]
        target: TargetName,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".to_string())
}

fn cmd_bounds(input: &Path, permute: bool, format: Format) -> Result<i32, CliError> {
    let text = read_file(input)?;
    let instance = InstanceFile::parse(&text)?;
    let observables = instance.to_observables()?;
    let state = instance.to_state()?;
    let report = bound_report(&observables, &state, permute)?;
    if let Some(violation) = report.ordering_violation() {
        return Err(CliError::Internal(violation));
    }
    let stem = file_stem(input);
    let id = instance.id_or(&stem);
    match format {
        Format::Text => print!("{}", output::bound_report_text(id, &report)),
        Format::Json => println!("{}", output::to_json_pretty(&report)?),
        Format::Csv => println!("{}", output::bound_report_csv(id, &report)),
    }
    Ok(0)
}

fn cmd_radius(input: &Path, grid: usize, refine: f64) -> Result<i32, CliError> {
    let matrix = parse_matrix_file(&read_file(input)?)?;
    let opts = RadiusOptions {
        coarse_grid: grid,
        refine_tolerance: refine,
        ..RadiusOptions::default()
    };
    let w = numerical_radius_sweep(&matrix, &opts)?;
    println!("{w}");
    Ok(0)
}

fn cmd_verify(
    suite: SuiteName,
    samples: Option<usize>,
    seed: u64,
    format: Format,
    tolerance_scale: f64,
) -> Result<i32, CliError> {
    let report = match suite {
        SuiteName::Pauli => pauli_suite(samples.unwrap_or(1000), seed, tolerance_scale)?,
        SuiteName::Properties => properties_suite(samples.unwrap_or(100), seed, tolerance_scale)?,
    };
    match format {
        Format::Json => println!("{}", output::to_json_pretty(&report)?),
        _ => print!("{}", output::suite_report_text(&report)),
    }
    Ok(if report.passed { 0 } else { 1 })
}

fn cmd_search(
    input: &Path,
    samples: usize,
    seed: u64,
    refine: usize,
    target: TargetName,
    format: Format,
) -> Result<i32, CliError> {
    let text = read_file(input)?;
    let instance = InstanceFile::parse(&text)?;
    let observables = instance.to_observables()?;
    let cfg = SearchConfig {
        samples,
        seed,
        refine_steps: refine,
        target: target.into(),
    };
    let result = tightness_search(&observables, &cfg)?;
    match format {
        Format::Text => print!("{}", output::tightness_text(&result)),
        _ => println!("{}", output::to_json_pretty(&result)?),
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Bounds {
            input,
            permute,
            format,
        } => cmd_bounds(&input, permute, format),
        Command::Radius {
            input,
            grid,
            refine,
        } => cmd_radius(&input, grid, refine),
        Command::Verify {
            suite,
            samples,
            seed,
            format,
            tolerance_scale,
        } => cmd_verify(suite, samples, seed, format, tolerance_scale),
        Command::Search {
            input,
            samples,
            seed,
            refine,
            target,
            format,
        } => cmd_search(&input, samples, seed, refine, target, format),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            process::exit(err.exit_code());
        }
    }
}
