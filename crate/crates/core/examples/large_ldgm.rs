//! Decodes on a 2000-dimensional lattice built from a random sparse
//! single-level code. Sparse generator rows keep the Tanner-graph degrees
//! small, so each min-sum iteration stays cheap and one word decodes in
//! milliseconds.
//!
//! Run with `cargo run --release --example large_ldgm`.

use std::time::Instant;

use lattice_minsum::channel::{awgn_sample, trial_rng};
use lattice_minsum::codes::random_ldgm_codes;
use lattice_minsum::complexity::ComplexityReport;
use lattice_minsum::decoder::{decode, DecodeStatus};
use lattice_minsum::error::Result;
use lattice_minsum::lattice::LatticeModel;
use lattice_minsum::tanner::build_graph;

fn main() -> Result<()> {
    let n = 2000;
    // Systematic [I | P] generator with at most 3 ones per row of P and at
    // most 5 per column: symbol degrees stay at most 4 and check degrees
    // at most 6.
    let codes = random_ldgm_codes(n, n / 2, 3, 5, 2026)?;
    let build_start = Instant::now();
    let model = LatticeModel::from_codes(&codes)?;
    let graph = build_graph(&model)?;
    println!(
        "built n = {} lattice and graph in {:.2?}",
        model.n(),
        build_start.elapsed()
    );
    println!(
        "max symbol degree {}, max check degree {}, {} edges",
        graph.symbol_degrees().iter().max().unwrap(),
        graph.check_degrees().iter().max().unwrap(),
        graph.edge_count()
    );

    let mut rng = trial_rng(8, 0, 0);
    let word = awgn_sample(&vec![0.0; n], 0.05, &mut rng);
    let decode_start = Instant::now();
    let result = decode(&model, &graph, &word, 50)?;
    let elapsed = decode_start.elapsed();

    println!();
    println!("decoded one word at sigma = 0.05 in {elapsed:.2?}");
    println!("status: {}, iterations: {}", result.status, result.iterations);
    println!(
        "output verified as a lattice point: {}",
        result.status == DecodeStatus::Converged
            && model.is_lattice_point(&result.point, 1e-6)?
    );

    let report = ComplexityReport::closed_form(&model, &graph, None);
    println!();
    println!(
        "per-iteration operations: measured {} vs worst-case bound {:.0}",
        result.counts.total(),
        report.upper_bound
    );
    Ok(())
}
