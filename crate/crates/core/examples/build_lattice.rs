//! Builds a lattice from a nested chain of binary codes and inspects its
//! structure: the triangular generator, the determinant, and the label
//! group attached to every coordinate.
//!
//! Run with `cargo run --example build_lattice`.

use lattice_minsum::codes::{BinaryCode, NestedBinaryCodes};
use lattice_minsum::error::Result;
use lattice_minsum::io::format_matrix;
use lattice_minsum::lattice::LatticeModel;
use lattice_minsum::rational::ratio;
use num_traits::Zero;

fn main() -> Result<()> {
    // A single-level chain holding the Hamming [7,4] code. The construction
    // keeps the code rows at scale 1 and fills the remaining coordinates
    // with doubled unit vectors, so the generator is upper triangular.
    let hamming = BinaryCode::from_strings(&["1000110", "0100011", "0010111", "0001101"])?;
    let chain = NestedBinaryCodes::new(vec![hamming])?;
    let model = LatticeModel::from_codes(&chain)?;

    println!("generator matrix (dimension line, then rows):");
    print!("{}", format_matrix(model.generator()));
    println!();
    println!("determinant: {}", model.determinant());
    println!();

    println!("label groups, one per coordinate:");
    for info in model.labels() {
        println!(
            "  coordinate {}: cross-section spacing m = {}, projection spacing p = {}, group size g = {}",
            info.index + 1,
            info.m,
            info.p,
            info.g
        );
    }
    println!();

    // Exact membership tests against the dual basis: a point belongs to the
    // lattice exactly when the dual maps it to integers. The first code row
    // is a member; zeroing one of its ones is not.
    let inside = [1, 0, 0, 0, 1, 1, 0].map(|v| ratio(v, 1));
    let mut outside = inside.clone();
    outside[5] = ratio(0, 1);
    let zero_check = vec![lattice_minsum::rational::Rational::zero(); 7];
    println!(
        "membership: origin {}, (1,0,0,0,1,1,0) {}, (1,0,0,0,1,0,0) {}",
        model.is_lattice_point_exact(&zero_check)?,
        model.is_lattice_point_exact(&inside)?,
        model.is_lattice_point_exact(&outside)?,
    );

    // Two-level chains sharpen the label groups: stacking the length-4
    // even-weight code over the repetition code gives group size 4.
    let big = BinaryCode::from_strings(&["1100", "0110", "0011"])?;
    let small = BinaryCode::from_strings(&["1111"])?;
    let two_level = LatticeModel::from_codes(&NestedBinaryCodes::new(vec![big, small])?)?;
    let sizes: Vec<u64> = two_level.labels().iter().map(|l| l.g).collect();
    println!();
    println!(
        "two-level chain on length 4: determinant {}, label group sizes {:?}",
        two_level.determinant(),
        sizes
    );
    Ok(())
}
