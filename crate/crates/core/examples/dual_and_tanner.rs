//! Derives the dual basis of a lattice and builds the Tanner graph whose
//! checks are the dual's rows: symbol degrees, check degrees, and the
//! GraphViz rendering.
//!
//! Run with `cargo run --example dual_and_tanner`.

use lattice_minsum::error::Result;
use lattice_minsum::io::format_matrix;
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

    // The dual basis is the transposed inverse of the generator, computed
    // with exact rational arithmetic; it doubles as the parity check:
    // x is a lattice point exactly when (dual)x is an integer vector.
    println!("dual basis:");
    print!("{}", format_matrix(model.dual()));
    println!();

    let graph = build_graph(&model)?;
    println!("symbol degrees: {:?}", graph.symbol_degrees());
    println!("check degrees:  {:?}", graph.check_degrees());
    println!("edges:          {}", graph.edge_count());
    println!();

    println!("adjacency (check: symbols, 1-based):");
    print!("{}", graph.format_adjacency());
    println!();

    println!("GraphViz DOT (pipe into `dot -Tsvg` to render):");
    print!("{}", graph.export_dot());
    Ok(())
}
