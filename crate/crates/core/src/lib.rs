//! Lattices built from nested binary codes, decoded by iterative min-sum
//! message passing on the Tanner graph of the dual basis.
//!
//! The crate is organized around one pipeline:
//!
//! - [`codes`] validates nested chains of binary linear codes and
//!   [`lattice`] turns a chain (or any rational generator matrix) into a
//!   [`lattice::LatticeModel`]: generator, exact dual basis, determinant,
//!   and the finite label group attached to every coordinate.
//! - [`tanner`] reads the dual as a parity check and builds the bipartite
//!   symbol/check graph, including the per-check sets of valid label
//!   configurations.
//! - [`decoder`] runs the min-sum algorithm over those labels: squared
//!   distances to coset representatives as weights, extrinsic symbol and
//!   check updates, and a hard decision verified against the checks. A
//!   brute-force nearest-point oracle backs it in tests.
//! - [`complexity`] evaluates closed-form per-iteration operation counts
//!   and coding-gain bounds, and checks them against live counters.
//! - [`channel`] and [`sweep`] add seeded Gaussian noise and run
//!   byte-reproducible word-error-rate sweeps; [`io`] holds the matrix
//!   and code text formats; [`cli`] exposes everything as subcommands.
//!
//! Structure is exact: matrices, determinants, label spacings, and
//! membership tests use arbitrary-precision rationals ([`rational`]).
//! Floating point appears only where the channel does.

pub mod channel;
pub mod cli;
pub mod codes;
pub mod complexity;
pub mod decoder;
pub mod error;
pub mod gain;
pub mod io;
pub mod lattice;
pub mod rational;
pub mod sweep;
pub mod tanner;

#[cfg(test)]
pub(crate) mod testutil;
