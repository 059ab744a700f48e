//! Command-line front end over the library: lattice inspection, dual and
//! Tanner-graph export, single-word decoding, operation-count reports, and
//! seeded word-error-rate sweeps.
//!
//! Every subcommand takes the lattice either as a generator matrix file
//! (`--matrix`) or as a nested binary code file (`--codes`); the text
//! formats are documented in [`crate::io`]. All flags are long-form. The
//! dispatcher is a plain function from argv to exit status so tests can
//! drive it without spawning a process.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::complexity::{self, ComplexityReport};
use crate::decoder::{decode, DecodeResult, DEFAULT_MAX_ITERATIONS};
use crate::error::Result;
use crate::io::{format_matrix, parse_real_vector};
use crate::lattice::LatticeModel;
use crate::sweep::{run_sweep, rows_to_csv, LatticeSource, NoiseGrid, SweepConfig};
use crate::tanner::build_graph;

/// Search-radius cap used when a subcommand wants the coding gain; above
/// it (or above the dimension guard) the gain is reported as unavailable.
const GAIN_RADIUS_LIMIT: u64 = 64;

// --- argument grammar -----------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "lattice-minsum",
    version,
    about = "Construction D lattices, their Tanner graphs, and iterative min-sum decoding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a lattice summary: dimension, determinant, label groups, degrees, coding gain.
    Info(InfoArgs),
    /// Print the dual basis (the parity-check matrix) in matrix text format.
    Dual(DualArgs),
    /// Print the Tanner graph, as DOT by default.
    Graph(GraphArgs),
    /// Decode one received word with the min-sum algorithm.
    Decode(DecodeArgs),
    /// Print the per-iteration operation counts, closed forms, and bounds.
    Complexity(ComplexityArgs),
    /// Run a seeded word-error-rate sweep over a noise grid and print CSV.
    Sweep(SweepArgs),
}

/// Lattice input: exactly one of a matrix file or a code file.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct LatticeArgs {
    /// Generator matrix file (dimension line, then rational rows).
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    /// Nested binary code file (header line, then 0/1 rows per level).
    #[arg(long, value_name = "FILE")]
    codes: Option<PathBuf>,
}

impl LatticeArgs {
    fn source(&self) -> LatticeSource {
        match (&self.matrix, &self.codes) {
            (Some(path), None) => LatticeSource::MatrixFile(path.clone()),
            (None, Some(path)) => LatticeSource::CodeFile(path.clone()),
            _ => unreachable!("argument group enforces exactly one source"),
        }
    }

    fn load(&self) -> Result<LatticeModel> {
        self.source().load()
    }
}

#[derive(Args, Debug)]
struct InfoArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
}

#[derive(Args, Debug)]
struct DualArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
}

#[derive(Args, Debug)]
struct GraphArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Print a per-check adjacency listing instead of DOT.
    #[arg(long)]
    adjacency: bool,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Received word: whitespace- or comma-separated real coordinates.
    #[arg(long, value_name = "NUMS", allow_hyphen_values = true)]
    word: String,
    /// Iteration budget.
    #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS, value_name = "N")]
    max_iters: u32,
    /// Emit the decode record as JSON instead of key=value lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ComplexityArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Also decode this word with live counters and report measured work.
    #[arg(long, value_name = "NUMS", allow_hyphen_values = true)]
    word: Option<String>,
    /// Iteration budget for the measured decode.
    #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS, value_name = "N")]
    max_iters: u32,
    /// Emit one CSV row (with header) instead of the aligned report.
    #[arg(long)]
    csv: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("grid").required(true).multiple(false)))]
struct SweepArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Noise grid as standard deviations, whitespace- or comma-separated.
    #[arg(long, value_name = "NUMS", group = "grid", allow_hyphen_values = true)]
    sigma_grid: Option<String>,
    /// Noise grid as per-dimension SNR values in dB (converted against the
    /// lattice's normalized volume).
    #[arg(long, value_name = "NUMS", group = "grid", allow_hyphen_values = true)]
    snr_grid: Option<String>,
    /// Decode trials per grid point.
    #[arg(long, default_value_t = 100, value_name = "N")]
    trials: u32,
    /// Iteration budget per decode.
    #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS, value_name = "N")]
    max_iters: u32,
    /// Root seed for reproducible trials.
    #[arg(long, default_value_t = 0, value_name = "SEED")]
    seed: u64,
    /// Also write the CSV to this file.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

// --- dispatch -------------------------------------------------------------------

/// Parses argv, runs the subcommand, and prints its output. Returns the
/// process exit status: 0 on success, 1 on runtime errors, 2 on usage
/// errors (clap's convention).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn execute(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Info(args) => info_text(args),
        Command::Dual(args) => Ok(format_matrix(args.lattice.load()?.dual())),
        Command::Graph(args) => graph_text(args),
        Command::Decode(args) => decode_text(args),
        Command::Complexity(args) => complexity_text(args),
        Command::Sweep(args) => sweep_text(args),
    }
}

// --- subcommand bodies ------------------------------------------------------------

fn aligned(out: &mut String, key: &str, value: impl std::fmt::Display) {
    out.push_str(&format!("{key:<24}{value}\n"));
}

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses a whitespace- or comma-separated list of reals from a flag value.
fn parse_number_list(text: &str, flag: &str) -> Result<Vec<f64>> {
    parse_real_vector(&text.replace(',', " "), flag)
}

fn info_text(args: InfoArgs) -> Result<String> {
    let mut model = args.lattice.load()?;
    let graph = build_graph(&model)?;
    let mut out = String::new();
    aligned(&mut out, "dimension", model.n());
    aligned(&mut out, "determinant", model.determinant());
    aligned(
        &mut out,
        "label-group-sizes",
        join(model.labels().iter().map(|l| l.g)),
    );
    aligned(
        &mut out,
        "cross-section-spacings",
        join(model.labels().iter().map(|l| &l.m)),
    );
    aligned(
        &mut out,
        "projection-spacings",
        join(model.labels().iter().map(|l| &l.p)),
    );
    aligned(&mut out, "symbol-degrees", join(graph.symbol_degrees()));
    aligned(&mut out, "check-degrees", join(graph.check_degrees()));
    aligned(&mut out, "edges", graph.edge_count());
    match model.compute_coding_gain(GAIN_RADIUS_LIMIT) {
        Ok(record) => {
            aligned(&mut out, "coding-gain", record.gain);
            aligned(&mut out, "dual-coding-gain", record.dual_gain);
            aligned(&mut out, "combined-gain", record.combined);
        }
        Err(_) => aligned(
            &mut out,
            "coding-gain",
            "unavailable (exact shortest-vector search is guarded in this dimension)",
        ),
    }
    Ok(out)
}

fn graph_text(args: GraphArgs) -> Result<String> {
    let model = args.lattice.load()?;
    let graph = build_graph(&model)?;
    Ok(if args.adjacency {
        graph.format_adjacency()
    } else {
        graph.export_dot()
    })
}

fn decode_record_text(result: &DecodeResult) -> String {
    let mut out = String::new();
    out.push_str(&format!("status={}\n", result.status));
    out.push_str(&format!("labels={}\n", join(&result.labels)));
    out.push_str(&format!("point={}\n", join(&result.point)));
    out.push_str(&format!("weight={}\n", result.weight));
    out.push_str(&format!("iterations={}\n", result.iterations));
    out.push_str(&format!("operations={}\n", result.total_operations));
    out
}

fn decode_text(args: DecodeArgs) -> Result<String> {
    let model = args.lattice.load()?;
    let graph = build_graph(&model)?;
    let word = parse_number_list(&args.word, "--word")?;
    let result = decode(&model, &graph, &word, args.max_iters)?;
    Ok(if args.json {
        let mut text = serde_json::to_string_pretty(&result).expect("decode record serializes");
        text.push('\n');
        text
    } else {
        decode_record_text(&result)
    })
}

fn complexity_report_text(report: &ComplexityReport) -> String {
    let mut out = String::new();
    aligned(&mut out, "dimension", report.params.n);
    aligned(
        &mut out,
        "label-group-sizes",
        join(&report.params.group_sizes),
    );
    aligned(
        &mut out,
        "termination-comparisons",
        report.termination_comparisons,
    );
    aligned(&mut out, "symbol-summations", report.symbol_summations);
    aligned(&mut out, "check-operations", report.check_operations);
    aligned(&mut out, "per-iteration-total", report.per_iteration_total);
    aligned(&mut out, "upper-bound", report.upper_bound);
    match (report.lower_bound, report.params.gamma) {
        (Some(lower), Some(gamma)) => {
            aligned(&mut out, "lower-bound", lower);
            aligned(&mut out, "combined-gain", gamma);
        }
        _ => aligned(&mut out, "lower-bound", "unavailable (no coding gain)"),
    }
    if let Some(measured) = &report.measured {
        aligned(&mut out, "measured-symbol", measured.symbol_additions);
        aligned(&mut out, "measured-check", measured.check_operations);
        aligned(
            &mut out,
            "measured-termination",
            measured.termination_comparisons,
        );
        aligned(&mut out, "measured-total", measured.total());
        aligned(
            &mut out,
            "measured-consistent",
            report.measured_consistent(),
        );
    }
    out
}

fn complexity_csv_row(report: &ComplexityReport) -> String {
    let lower = report
        .lower_bound
        .map(|v| v.to_string())
        .unwrap_or_default();
    format!(
        "n,termination_comparisons,symbol_summations,check_operations,per_iteration_total,upper_bound,lower_bound\n{},{},{},{},{},{},{}\n",
        report.params.n,
        report.termination_comparisons,
        report.symbol_summations,
        report.check_operations,
        report.per_iteration_total,
        report.upper_bound,
        lower
    )
}

fn complexity_text(args: ComplexityArgs) -> Result<String> {
    let mut model = args.lattice.load()?;
    let graph = build_graph(&model)?;
    let gamma = model
        .compute_coding_gain(GAIN_RADIUS_LIMIT)
        .ok()
        .map(|record| record.combined);
    let report = match &args.word {
        Some(text) => {
            let word = parse_number_list(text, "--word")?;
            complexity::instrument_and_compare(&model, &graph, &word, args.max_iters, gamma)?
        }
        None => ComplexityReport::closed_form(&model, &graph, gamma),
    };
    Ok(if args.csv {
        complexity_csv_row(&report)
    } else {
        complexity_report_text(&report)
    })
}

fn sweep_text(args: SweepArgs) -> Result<String> {
    let grid = match (&args.sigma_grid, &args.snr_grid) {
        (Some(text), None) => NoiseGrid::Sigmas(parse_number_list(text, "--sigma-grid")?),
        (None, Some(text)) => NoiseGrid::SnrDb(parse_number_list(text, "--snr-grid")?),
        _ => unreachable!("argument group enforces exactly one grid"),
    };
    let config = SweepConfig {
        source: args.lattice.source(),
        grid,
        trials: args.trials,
        max_iterations: args.max_iters,
        seed: args.seed,
        out: args.out,
    };
    let rows = run_sweep(&config)?;
    Ok(rows_to_csv(&rows))
}
