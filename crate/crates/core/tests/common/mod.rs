//! Fixtures shared by the integration suites: the worked 7-dimensional
//! single-level lattice, its hand-derived dual, and small helpers for
//! randomized lattices.

#![allow(dead_code)]

use std::path::PathBuf;

use lattice_minsum::codes::{BinaryCode, NestedBinaryCodes};
use lattice_minsum::lattice::LatticeModel;
use lattice_minsum::rational::{ratio, Rational, RationalMatrix};
use num_traits::{One, Zero};
use rand::Rng;

/// Generator of the 7-dimensional example lattice: Hamming [7,4] rows on
/// top, doubled unit rows filling coordinates 5 to 7.
pub fn example_generator() -> RationalMatrix {
    RationalMatrix::from_int_rows(&[
        &[1, 0, 0, 0, 1, 1, 0],
        &[0, 1, 0, 0, 0, 1, 1],
        &[0, 0, 1, 0, 1, 1, 1],
        &[0, 0, 0, 1, 1, 0, 1],
        &[0, 0, 0, 0, 2, 0, 0],
        &[0, 0, 0, 0, 0, 2, 0],
        &[0, 0, 0, 0, 0, 0, 2],
    ])
    .unwrap()
}

/// Transposed inverse of [`example_generator`], derived by hand with exact
/// back-substitution and frozen here as the golden reference.
pub fn example_dual() -> RationalMatrix {
    let h = || ratio(1, 2);
    let nh = || ratio(-1, 2);
    let z = Rational::zero;
    let o = Rational::one;
    RationalMatrix::from_rows(vec![
        vec![o(), z(), z(), z(), z(), z(), z()],
        vec![z(), o(), z(), z(), z(), z(), z()],
        vec![z(), z(), o(), z(), z(), z(), z()],
        vec![z(), z(), z(), o(), z(), z(), z()],
        vec![nh(), z(), nh(), nh(), h(), z(), z()],
        vec![nh(), nh(), nh(), z(), z(), h(), z()],
        vec![z(), nh(), nh(), nh(), z(), z(), h()],
    ])
    .unwrap()
}

/// The example lattice as a full model.
pub fn example_model() -> LatticeModel {
    LatticeModel::from_generator(example_generator()).unwrap()
}

/// Two-level chain on length 4 (even-weight code over the repetition
/// code); every coordinate's label group has size 4.
pub fn two_level_model() -> LatticeModel {
    let big = BinaryCode::from_strings(&["1100", "0110", "0011"]).unwrap();
    let small = BinaryCode::from_strings(&["1111"]).unwrap();
    let codes = NestedBinaryCodes::new(vec![big, small]).unwrap();
    LatticeModel::from_codes(&codes).unwrap()
}

/// A random invertible upper-triangular generator with small dyadic
/// entries, for randomized cross-checks.
pub fn random_triangular_generator<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    let diagonal_choices = [(1, 1), (2, 1), (4, 1), (1, 2), (3, 2)];
    let upper_choices = [(1, 2), (-1, 2), (1, 1), (-1, 1), (3, 2), (-3, 2), (2, 1)];
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![Rational::zero(); n];
        let (num, den) = diagonal_choices[rng.gen_range(0..diagonal_choices.len())];
        row[i] = ratio(num, den);
        for entry in row.iter_mut().skip(i + 1) {
            if rng.gen_bool(0.4) {
                let (num, den) = upper_choices[rng.gen_range(0..upper_choices.len())];
                *entry = ratio(num, den);
            }
        }
        rows.push(row);
    }
    RationalMatrix::from_rows(rows).unwrap()
}

/// Path of a fixture file shipped with the crate.
pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}
