//! Decodes a noisy word with the iterative min-sum algorithm and checks
//! the answer against the brute-force nearest-point search.
//!
//! Run with `cargo run --example decode_word`.

use lattice_minsum::channel::{awgn_sample, trial_rng};
use lattice_minsum::decoder::{decode, initial_weights, ml_oracle_decode, ReceivedWord};
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
    let model = LatticeModel::from_generator(generator)?;
    let graph = build_graph(&model)?;

    // Transmit a lattice point (the sum of the first and third generator
    // rows) and corrupt it with seeded Gaussian noise.
    let transmitted = vec![1.0, 0.0, 1.0, 0.0, 2.0, 2.0, 1.0];
    let mut rng = trial_rng(42, 0, 0);
    let received = awgn_sample(&transmitted, 0.2, &mut rng);
    println!("transmitted: {transmitted:?}");
    println!("received:    {received:?}");
    println!();

    // Per-coordinate starting weights: squared distance from the received
    // coordinate to the nearest point of each label's coset.
    let word = ReceivedWord::new(&model, &received)?;
    let weights = initial_weights(&model, &word);
    println!("starting weights per coordinate (one entry per label):");
    for (i, row) in weights.iter().enumerate() {
        let rounded: Vec<String> = row.iter().map(|w| format!("{w:.4}")).collect();
        println!("  coordinate {}: [{}]", i + 1, rounded.join(", "));
    }
    println!();

    let result = decode(&model, &graph, &received, 50)?;
    println!("status:     {}", result.status);
    println!("labels:     {:?}", result.labels);
    println!("point:      {:?}", result.point);
    println!("weight:     {:.6}", result.weight);
    println!("iterations: {}", result.iterations);
    println!("operations: {} total", result.total_operations);
    println!();

    // The exhaustive search agrees on this word.
    let (oracle_point, oracle_distance2) = ml_oracle_decode(&model, &received, 2)?;
    println!("exhaustive nearest point: {oracle_point:?} (squared distance {oracle_distance2:.6})");
    let agrees = result
        .point
        .iter()
        .zip(&oracle_point)
        .all(|(a, b)| (a - b).abs() <= 1e-9);
    println!("min-sum agrees with exhaustive search: {agrees}");
    Ok(())
}
