//! Shared fixtures for unit tests: the worked 7-dimensional single-level
//! example and a small two-level chain.

use crate::codes::{BinaryCode, NestedBinaryCodes};
use crate::rational::{ratio, Rational, RationalMatrix};
use num_traits::{One, Zero};

/// Generator of the 7-dimensional example lattice: Hamming [7,4] rows on
/// top, doubled unit rows filling coordinates 5 to 7.
pub(crate) fn example_generator() -> RationalMatrix {
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
/// back-substitution and frozen here.
pub(crate) fn example_dual() -> RationalMatrix {
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

/// Single-level chain holding the Hamming [7,4] code.
pub(crate) fn hamming_chain() -> NestedBinaryCodes {
    let code = BinaryCode::from_strings(&["1000110", "0100011", "0010111", "0001101"]).unwrap();
    NestedBinaryCodes::new(vec![code]).unwrap()
}

/// Two-level chain on length 4: even-weight code over the repetition code.
pub(crate) fn two_level_chain() -> NestedBinaryCodes {
    let big = BinaryCode::from_strings(&["1100", "0110", "0011"]).unwrap();
    let small = BinaryCode::from_strings(&["1111"]).unwrap();
    NestedBinaryCodes::new(vec![big, small]).unwrap()
}
