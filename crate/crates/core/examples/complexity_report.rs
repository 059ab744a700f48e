//! Evaluates the closed-form per-iteration operation counts, the coding
//! gain based bounds, and live counter measurements for one decode.
//!
//! Run with `cargo run --example complexity_report`.

use lattice_minsum::channel::{awgn_sample, trial_rng};
use lattice_minsum::complexity::{instrument_and_compare, ComplexityReport};
use lattice_minsum::error::Result;
use lattice_minsum::lattice::LatticeModel;
use lattice_minsum::rational::RationalMatrix;
use lattice_minsum::tanner::build_graph;

fn main() -> Result<()> {
    let generator = RationalMatrix::from_int_rows(&[
        &[1, 0, 0, 0, 1, 1, 0],
        &[0, 1, 0, 0, 0, 1, 1],
        &[0, 0, 1, 0, 1, 1, 1],
        &[0, 0, 0, 1, 1, 0, 1],
        &[0, 0, 0, 0, 2, 0, 0],
        &[0, 0, 0, 0, 0, 2, 0],
        &[0, 0, 0, 0, 0, 0, 2],
    ])?;
    let mut model = LatticeModel::from_generator(generator)?;
    let graph = build_graph(&model)?;

    // The combined coding gain of the lattice and its dual feeds the lower
    // bound; it comes from an exact shortest-vector search (guarded, so it
    // is only attempted in small dimension).
    let gamma = model.compute_coding_gain(64)?.combined;
    println!("combined coding gain: {gamma:.6}");
    println!();

    let closed = ComplexityReport::closed_form(&model, &graph, Some(gamma));
    println!("closed forms, per iteration:");
    println!("  termination comparisons: {}", closed.termination_comparisons);
    println!("  symbol summations:       {}", closed.symbol_summations);
    println!("  check operations:        {}", closed.check_operations);
    println!("  total:                   {}", closed.per_iteration_total);
    println!(
        "  bounds: {:.4} <= {} <= {}",
        closed.lower_bound.unwrap(),
        closed.per_iteration_total,
        closed.upper_bound
    );
    println!();

    // Decode one noisy word with live counters and compare.
    let mut rng = trial_rng(9, 0, 0);
    let word = awgn_sample(&vec![0.0; model.n()], 0.1, &mut rng);
    let report = instrument_and_compare(&model, &graph, &word, 50, Some(gamma))?;
    let measured = report.measured.expect("instrumented decode measures counts");
    println!("measured on one decode, per iteration:");
    println!("  symbol additions:        {}", measured.symbol_additions);
    println!("  check operations:        {}", measured.check_operations);
    println!("  termination comparisons: {}", measured.termination_comparisons);
    println!(
        "  consistent with closed forms: {}",
        report.measured_consistent()
    );
    println!();

    // Block-diagonal doubling doubles every count: the per-iteration cost
    // grows linearly with dimension at fixed degrees and group sizes.
    let doubled = model.direct_sum(&model)?;
    let doubled_graph = build_graph(&doubled)?;
    let doubled_report = ComplexityReport::closed_form(&doubled, &doubled_graph, None);
    println!(
        "after block-diagonal doubling (n = {}): total {} = 2 x {}",
        doubled.n(),
        doubled_report.per_iteration_total,
        closed.per_iteration_total
    );
    Ok(())
}
