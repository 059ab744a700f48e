//! Word-error-rate sweeps over an additive-Gaussian-noise grid.
//!
//! A sweep fixes a lattice and a noise grid, runs a batch of seeded decode
//! trials at every grid point, and tallies word errors, convergence
//! failures, and mean work per trial. Each `(grid point, trial)` cell owns
//! an independent random stream derived from the root seed, so results
//! never depend on execution order and identical configurations reproduce
//! identical output bytes.
//!
//! Trials transmit the all-zeros lattice point by default: the lattice's
//! translation symmetry makes error statistics independent of the
//! transmitted point, and tests cross-check that convention against random
//! lattice-point transmission.

use std::fs;
use std::path::PathBuf;

use rand::Rng;
use serde::Serialize;

use crate::channel::{awgn_sample, trial_rng};
use crate::decoder::{decode, DecodeStatus};
use crate::error::{Error, Result};
use crate::io::{load_codes, load_matrix};
use crate::lattice::LatticeModel;
use crate::rational::rational_to_f64;
use crate::tanner::{build_graph, TannerGraph};

/// Fixed CSV column order for sweep output.
pub const CSV_HEADER: &str = "sigma,trials,word_errors,wer,mean_iterations,mean_ops,nonconverged";

/// Tolerance for declaring a decoded point equal to the transmitted one.
const POINT_MATCH_TOLERANCE: f64 = 1e-6;

// --- parameters ---------------------------------------------------------------

/// What each trial transmits.
#[derive(Clone, Copy, Debug)]
pub enum Transmission {
    /// The all-zeros lattice point.
    ZeroPoint,
    /// A fresh lattice point per trial, with integer basis coefficients
    /// drawn uniformly from `-range..=range`.
    RandomLatticePoint {
        /// Half-width of the coefficient box.
        range: i64,
    },
}

/// Knobs for `sweep_model`.
#[derive(Clone, Debug)]
pub struct SweepParams {
    /// Noise levels, one grid point each, swept in order.
    pub sigmas: Vec<f64>,
    /// Decode trials per grid point.
    pub trials: u32,
    /// Iteration budget per decode.
    pub max_iterations: u32,
    /// Root seed for the per-cell random streams.
    pub seed: u64,
    /// Transmission convention.
    pub transmission: Transmission,
}

impl SweepParams {
    /// Standard zero-point sweep.
    pub fn new(sigmas: Vec<f64>, trials: u32, max_iterations: u32, seed: u64) -> Self {
        SweepParams {
            sigmas,
            trials,
            max_iterations,
            seed,
            transmission: Transmission::ZeroPoint,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.sigmas.is_empty() {
            return Err(Error::InvalidArgument("noise grid is empty".into()));
        }
        if let Some(bad) = self
            .sigmas
            .iter()
            .find(|s| !s.is_finite() || **s <= 0.0)
        {
            return Err(Error::InvalidArgument(format!(
                "noise level must be positive and finite, got {bad}"
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("need at least one trial".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidArgument(
                "iteration budget must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// One grid point's tallies.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    /// Noise level of this grid point.
    pub sigma: f64,
    /// Trials run.
    pub trials: u32,
    /// Trials whose decode did not return the transmitted point.
    pub word_errors: u32,
    /// `word_errors / trials`.
    pub wer: f64,
    /// Mean iterations per trial.
    pub mean_iterations: f64,
    /// Mean total operations per trial.
    pub mean_ops: f64,
    /// Trials that did not converge (always counted as word errors too).
    pub nonconverged: u32,
}

// --- sweeping ------------------------------------------------------------------

/// A lattice point with integer basis coefficients drawn uniformly from
/// `-range..=range`.
pub fn random_lattice_point<R: Rng>(model: &LatticeModel, rng: &mut R, range: i64) -> Vec<f64> {
    let n = model.n();
    let mut point = vec![0.0; n];
    for k in 0..n {
        let c = rng.gen_range(-range..=range) as f64;
        if c != 0.0 {
            for (i, v) in model.generator().row(k) {
                point[*i] += c * rational_to_f64(v);
            }
        }
    }
    point
}

/// Runs the grid in order and tallies one row per noise level.
pub fn sweep_model(
    model: &LatticeModel,
    graph: &TannerGraph,
    params: &SweepParams,
) -> Result<Vec<SweepRow>> {
    params.validate()?;
    let zero = vec![0.0; model.n()];
    let mut rows = Vec::with_capacity(params.sigmas.len());
    for (point_index, &sigma) in params.sigmas.iter().enumerate() {
        let mut word_errors = 0u32;
        let mut nonconverged = 0u32;
        let mut iteration_sum = 0u64;
        let mut ops_sum = 0u64;
        for trial in 0..params.trials {
            let mut rng = trial_rng(params.seed, point_index, trial as usize);
            let transmitted = match params.transmission {
                Transmission::ZeroPoint => zero.clone(),
                Transmission::RandomLatticePoint { range } => {
                    random_lattice_point(model, &mut rng, range)
                }
            };
            let received = awgn_sample(&transmitted, sigma, &mut rng);
            let result = decode(model, graph, &received, params.max_iterations)?;
            iteration_sum += u64::from(result.iterations);
            ops_sum += result.total_operations;
            let converged = result.status == DecodeStatus::Converged;
            if !converged {
                nonconverged += 1;
            }
            let matches = converged
                && result
                    .point
                    .iter()
                    .zip(&transmitted)
                    .all(|(a, b)| (a - b).abs() <= POINT_MATCH_TOLERANCE);
            if !matches {
                word_errors += 1;
            }
        }
        let trials = f64::from(params.trials);
        rows.push(SweepRow {
            sigma,
            trials: params.trials,
            word_errors,
            wer: f64::from(word_errors) / trials,
            mean_iterations: iteration_sum as f64 / trials,
            mean_ops: ops_sum as f64 / trials,
            nonconverged,
        });
    }
    Ok(rows)
}

/// Renders rows as CSV with the fixed header, one row per grid point, in
/// grid order. Numbers use shortest-round-trip formatting, so identical
/// results are identical bytes.
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.sigma,
            row.trials,
            row.word_errors,
            row.wer,
            row.mean_iterations,
            row.mean_ops,
            row.nonconverged
        ));
    }
    out
}

// --- file-driven configuration --------------------------------------------------

/// Where the swept lattice comes from.
#[derive(Clone, Debug)]
pub enum LatticeSource {
    /// A generator matrix in the matrix text format.
    MatrixFile(PathBuf),
    /// A nested binary code chain in the code text format.
    CodeFile(PathBuf),
}

impl LatticeSource {
    /// Loads and constructs the lattice model.
    pub fn load(&self) -> Result<LatticeModel> {
        match self {
            LatticeSource::MatrixFile(path) => {
                LatticeModel::from_generator(load_matrix(path)?)
            }
            LatticeSource::CodeFile(path) => LatticeModel::from_codes(&load_codes(path)?),
        }
    }
}

/// The noise grid, directly in sigma or as per-dimension signal-to-noise
/// ratios in decibels.
#[derive(Clone, Debug)]
pub enum NoiseGrid {
    /// Noise standard deviations, used as-is.
    Sigmas(Vec<f64>),
    /// Ratios `s` in dB relative to the lattice's normalized volume:
    /// `sigma^2 = det^{2/n} / 10^{s/10}`.
    SnrDb(Vec<f64>),
}

impl NoiseGrid {
    /// Resolves the grid to sigma values for a concrete lattice.
    pub fn resolve(&self, model: &LatticeModel) -> Vec<f64> {
        match self {
            NoiseGrid::Sigmas(v) => v.clone(),
            NoiseGrid::SnrDb(v) => {
                let det = rational_to_f64(&model.determinant()).abs();
                let normalized_volume = det.powf(2.0 / model.n() as f64);
                v.iter()
                    .map(|s| (normalized_volume / 10f64.powf(s / 10.0)).sqrt())
                    .collect()
            }
        }
    }
}

/// A complete sweep description, ready to run from files.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Lattice to decode on.
    pub source: LatticeSource,
    /// Noise grid.
    pub grid: NoiseGrid,
    /// Decode trials per grid point.
    pub trials: u32,
    /// Iteration budget per decode.
    pub max_iterations: u32,
    /// Root seed.
    pub seed: u64,
    /// CSV destination; `None` leaves writing to the caller.
    pub out: Option<PathBuf>,
}

/// Loads the lattice, runs the sweep, and writes the CSV when an output
/// path is configured. Returns the rows either way.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    let model = config.source.load()?;
    let graph = build_graph(&model)?;
    let params = SweepParams::new(
        config.grid.resolve(&model),
        config.trials,
        config.max_iterations,
        config.seed,
    );
    let rows = sweep_model(&model, &graph, &params)?;
    if let Some(path) = &config.out {
        fs::write(path, rows_to_csv(&rows))?;
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::format_matrix;
    use crate::testutil::example_generator;

    fn example() -> (LatticeModel, TannerGraph) {
        let model = LatticeModel::from_generator(example_generator()).unwrap();
        let graph = build_graph(&model).unwrap();
        (model, graph)
    }

    #[test]
    fn tiny_noise_never_errs() {
        let (model, graph) = example();
        let params = SweepParams::new(vec![0.01], 100, 50, 1);
        let rows = sweep_model(&model, &graph, &params).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].word_errors, 0);
        assert_eq!(rows[0].wer, 0.0);
        assert_eq!(rows[0].nonconverged, 0);
        assert_eq!(rows[0].mean_iterations, 1.0);
        assert!(rows[0].mean_ops > 0.0);
    }

    #[test]
    fn identical_seeds_reproduce_identical_csv_bytes() {
        let (model, graph) = example();
        let params = SweepParams::new(vec![0.45, 0.25], 50, 50, 99);
        let a = rows_to_csv(&sweep_model(&model, &graph, &params).unwrap());
        let b = rows_to_csv(&sweep_model(&model, &graph, &params).unwrap());
        assert_eq!(a, b);
        let single = SweepParams::new(vec![0.45], 1, 50, 7);
        let c = rows_to_csv(&sweep_model(&model, &graph, &single).unwrap());
        let d = rows_to_csv(&sweep_model(&model, &graph, &single).unwrap());
        assert_eq!(c, d);
    }

    #[test]
    fn wer_trends_down_as_noise_shrinks() {
        let (model, graph) = example();
        let params = SweepParams::new(vec![0.5, 0.35, 0.25, 0.15, 0.05], 300, 50, 7);
        let rows = sweep_model(&model, &graph, &params).unwrap();
        for pair in rows.windows(2) {
            let (noisier, quieter) = (&pair[0], &pair[1]);
            let p = noisier.wer;
            let slack = 3.0 * (p * (1.0 - p) / f64::from(noisier.trials)).sqrt();
            assert!(
                quieter.wer <= noisier.wer + slack + 1e-12,
                "wer rose from {} (sigma {}) to {} (sigma {})",
                noisier.wer,
                noisier.sigma,
                quieter.wer,
                quieter.sigma
            );
        }
        assert_eq!(rows.last().unwrap().word_errors, 0);
    }

    #[test]
    fn zero_and_random_transmission_agree_statistically() {
        let (model, graph) = example();
        let mut zero_params = SweepParams::new(vec![0.3, 0.2], 400, 50, 11);
        let zero_rows = sweep_model(&model, &graph, &zero_params).unwrap();
        zero_params.transmission = Transmission::RandomLatticePoint { range: 2 };
        zero_params.seed = 12;
        let random_rows = sweep_model(&model, &graph, &zero_params).unwrap();
        for (z, r) in zero_rows.iter().zip(&random_rows) {
            let pooled = (z.wer + r.wer) / 2.0;
            let se = (pooled * (1.0 - pooled) * 2.0 / 400.0).sqrt();
            assert!(
                (z.wer - r.wer).abs() <= 3.0 * se + 1e-12,
                "sigma {}: zero-point wer {} vs random-point wer {}",
                z.sigma,
                z.wer,
                r.wer
            );
        }
    }

    #[test]
    fn csv_has_fixed_header_and_grid_order() {
        let (model, graph) = example();
        let params = SweepParams::new(vec![0.4, 0.1, 0.2], 5, 50, 3);
        let rows = sweep_model(&model, &graph, &params).unwrap();
        let sigmas: Vec<f64> = rows.iter().map(|r| r.sigma).collect();
        assert_eq!(sigmas, vec![0.4, 0.1, 0.2]);
        let csv = rows_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.count(), 3);
        assert!(csv.lines().nth(1).unwrap().starts_with("0.4,5,"));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let (model, graph) = example();
        let bad = [
            SweepParams::new(vec![], 10, 50, 0),
            SweepParams::new(vec![0.1], 0, 50, 0),
            SweepParams::new(vec![0.0], 10, 50, 0),
            SweepParams::new(vec![-0.5], 10, 50, 0),
            SweepParams::new(vec![f64::NAN], 10, 50, 0),
            SweepParams::new(vec![0.1], 10, 0, 0),
        ];
        for params in bad {
            assert!(
                matches!(
                    sweep_model(&model, &graph, &params),
                    Err(Error::InvalidArgument(_))
                ),
                "expected rejection for {params:?}"
            );
        }
    }

    #[test]
    fn snr_grid_resolves_against_the_normalized_volume() {
        let (model, _) = example();
        // Determinant 8 in dimension 7: normalized volume is 8^(2/7).
        let volume = 8f64.powf(2.0 / 7.0);
        let grid = NoiseGrid::SnrDb(vec![0.0, 10.0]);
        let sigmas = grid.resolve(&model);
        assert!((sigmas[0] - volume.sqrt()).abs() <= 1e-12);
        assert!((sigmas[1] - (volume / 10.0).sqrt()).abs() <= 1e-12);
        let direct = NoiseGrid::Sigmas(vec![0.3]).resolve(&model);
        assert_eq!(direct, vec![0.3]);
    }

    #[test]
    fn random_lattice_points_are_lattice_members() {
        let (model, _) = example();
        let mut rng = crate::channel::trial_rng(5, 0, 0);
        for _ in 0..20 {
            let point = random_lattice_point(&model, &mut rng, 3);
            assert!(model.is_lattice_point(&point, 1e-9).unwrap());
        }
    }

    #[test]
    fn file_driven_sweep_runs_end_to_end() {
        let dir = std::env::temp_dir().join("lattice-minsum-sweep-test");
        fs::create_dir_all(&dir).unwrap();
        let matrix_path = dir.join("b.matrix");
        fs::write(&matrix_path, format_matrix(&example_generator())).unwrap();
        let out_path = dir.join("rows.csv");
        let config = SweepConfig {
            source: LatticeSource::MatrixFile(matrix_path),
            grid: NoiseGrid::Sigmas(vec![0.2, 0.1]),
            trials: 10,
            max_iterations: 50,
            seed: 13,
            out: Some(out_path.clone()),
        };
        let rows = run_sweep(&config).unwrap();
        assert_eq!(rows.len(), 2);
        let written = fs::read_to_string(&out_path).unwrap();
        assert_eq!(written, rows_to_csv(&rows));
    }
}
