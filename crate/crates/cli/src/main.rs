//! `k3mod`: command-line access to fiber classification, the invariants
//! `r96`, `k552`, `delta264`, the verification harness, Hilbert series and
//! q-series.
//!
//! Exit codes: 0 success, 1 a negative answer (not in U, failed
//! verification, vanishing resultant), 2 usage, input or I/O errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use k3mod::conventions::{DEFAULT_SEED, ORACLE_BOUND, TRIALS};
use k3mod::error::AlgebraError;
use k3mod::hilbert::{character_series, molien_series, oracle_table};
use k3mod::invariants::{delta264, k552, r96, InvariantName};
use k3mod::io::{hilbert_rows, parse_surface_params, qseries_rows};
use k3mod::modp::{check_modulus, DEFAULT_PRIME};
use k3mod::qseries::{borcherds_input, cusp_combination, eisenstein};
use k3mod::verify::{run_verification, StandardEngine, VerifyConfig};
use k3mod::weierstrass::{fiber_profile, SurfaceParams};

#[derive(Parser)]
#[command(name = "k3mod", version, about = "Exact computations on Weierstrass elliptic K3 surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the singular fibers of a Weierstrass model.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the seeded verification harness for r96, k552 and delta264.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Pointwise factorization trials.
        #[arg(long, default_value_t = TRIALS.pointwise)]
        trials: usize,
        #[arg(long, default_value_t = TRIALS.homogeneity)]
        homogeneity_trials: usize,
        #[arg(long, default_value_t = TRIALS.sl2)]
        sl2_trials: usize,
        #[arg(long, default_value_t = 1)]
        slices: usize,
        /// Prime used by the homogeneity checks.
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        modulus: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Hilbert series of the SL2-invariants.
    Hilbert {
        #[arg(long, default_value_t = 24)]
        max_degree: usize,
        /// Add the raising-operator kernel dimensions as an independent column.
        #[arg(long)]
        oracle: bool,
        /// Add the series extended by the weight-132 generator.
        #[arg(long)]
        with_characters: bool,
        /// Written as CSV when the name ends in `.csv`, JSON otherwise.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Coefficient table of a q-series.
    Qseries {
        /// Number of coefficients, starting at the leading exponent.
        #[arg(long, default_value_t = 4)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = SeriesChoice::Borcherds)]
        series: SeriesChoice,
        /// Written as CSV when the name ends in `.csv`, JSON otherwise.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate r96, k552 or delta264 at a point.
    Invariant {
        #[arg(value_parser = ["r96", "k552", "delta264"])]
        name: String,
        #[arg(long)]
        input: PathBuf,
        /// Reduce the point modulo this prime first.
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesChoice {
    /// 1728 E4 / (E4^3 - E6^2)
    Borcherds,
    E4,
    E6,
    /// E4^3 - E6^2
    Cusp,
}

/// A failure that ends the run with a diagnostic and exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

type Outcome = Result<bool, Fatal>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Classify { input, output } => classify(&input, output.as_deref()),
        Command::Verify { seed, trials, homogeneity_trials, sl2_trials, slices, modulus, output } => {
            if trials == 0 {
                return Err(Fatal("--trials must be at least 1".into()));
            }
            check_modulus(modulus)?;
            let cfg = VerifyConfig {
                seed,
                pointwise: trials,
                homogeneity: homogeneity_trials,
                sl2: sl2_trials,
                slices,
                modulus,
                ..VerifyConfig::default()
            };
            let report = run_verification(&cfg, &StandardEngine)?;
            emit(output.as_deref(), &report.to_json())?;
            Ok(report.passed())
        }
        Command::Hilbert { max_degree, oracle, with_characters, output } => {
            hilbert(max_degree, oracle, with_characters, output.as_deref())
        }
        Command::Qseries { terms, series, output } => qseries(terms, series, output.as_deref()),
        Command::Invariant { name, input, modulus, output } => invariant(&name, &input, modulus, output.as_deref()),
    }
}

fn read_params(path: &Path) -> Result<SurfaceParams, Fatal> {
    let text = fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    parse_surface_params(&text).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Fatal> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Fatal(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn is_csv(path: Option<&Path>) -> bool {
    path.and_then(Path::extension).is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, Fatal> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Fatal(e.to_string()))?;
    Ok(String::from_utf8(bytes)?.trim_end().to_string())
}

fn classify(input: &Path, output: Option<&Path>) -> Outcome {
    let u = read_params(input)?;
    let report = fiber_profile(&u)?;
    emit(output, &to_json(&report))?;
    Ok(report.in_u)
}

#[derive(Serialize)]
struct HilbertOutput {
    max_degree: usize,
    rows: Vec<k3mod::io::HilbertRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_agrees: Option<bool>,
}

fn hilbert(max_degree: usize, oracle: bool, with_characters: bool, output: Option<&Path>) -> Outcome {
    if oracle && max_degree > ORACLE_BOUND {
        return Err(Fatal(AlgebraError::OracleBound { degree: max_degree, bound: ORACLE_BOUND }.to_string()));
    }
    let (plain, with) = if with_characters {
        let (p, w) = character_series(max_degree)?;
        (p, Some(w))
    } else {
        (molien_series(max_degree)?, None)
    };
    let dims: Option<Vec<usize>> =
        if oracle { Some(oracle_table(max_degree)?.into_iter().map(|r| r.kernel_dim).collect()) } else { None };
    let agrees = dims.as_ref().map(|d| d.iter().enumerate().all(|(k, &v)| plain.get(k) == v as u128));
    let rows = hilbert_rows(&plain, with.as_ref(), dims.as_deref());
    let text = if is_csv(output) { to_csv(&rows)? } else { to_json(&HilbertOutput { max_degree, rows, oracle_agrees: agrees }) };
    emit(output, &text)?;
    Ok(agrees.unwrap_or(true))
}

#[derive(Serialize)]
struct QSeriesOutput {
    series: &'static str,
    coefficients: Vec<k3mod::io::QRow>,
}

fn qseries(terms: usize, choice: SeriesChoice, output: Option<&Path>) -> Outcome {
    if terms == 0 {
        return Err(Fatal("--terms must be at least 1".into()));
    }
    let (name, f) = match choice {
        // the leading exponent is -1, so `terms` coefficients reach q^(terms - 2)
        SeriesChoice::Borcherds => ("1728*E4/(E4^3-E6^2)", borcherds_input(terms.saturating_sub(2))?),
        SeriesChoice::E4 => ("E4", eisenstein(4, terms - 1)?),
        SeriesChoice::E6 => ("E6", eisenstein(6, terms - 1)?),
        // the leading exponent is 1
        SeriesChoice::Cusp => ("E4^3-E6^2", cusp_combination(terms)?),
    };
    let mut rows = qseries_rows(&f);
    rows.truncate(terms);
    let text = if is_csv(output) { to_csv(&rows)? } else { to_json(&QSeriesOutput { series: name, coefficients: rows }) };
    emit(output, &text)?;
    Ok(true)
}

fn invariant(name: &str, input: &Path, modulus: Option<u64>, output: Option<&Path>) -> Outcome {
    let mut u = read_params(input)?;
    if let Some(p) = modulus {
        check_modulus(p)?;
        u = u.reduce_mod(p)?;
    }
    let result = match InvariantName::parse(name).expect("validated by clap") {
        InvariantName::R96 => r96(&u),
        InvariantName::K552 => k552(&u),
        InvariantName::Delta264 => delta264(&u),
    };
    match result {
        Ok(v) => {
            emit(output, &to_json(&v))?;
            Ok(true)
        }
        Err(e @ (AlgebraError::ResultantVanishes | AlgebraError::DegenerateFamily)) => {
            eprintln!("{e}");
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}
