//! Shortest-vector enumeration and coding gain.
//!
//! The coding gain of a lattice with generator `B` is
//! `d_min^2 / det(B)^{2/n}`: squared minimum distance normalized by volume.
//! Minimum distance is found by exact branch-and-bound enumeration, which
//! is only tractable in small dimension, so everything here is guarded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{rational_to_f64, Rational, RationalMatrix};

/// Dimension above which enumeration is refused.
pub const MAX_ENUMERATION_DIMENSION: usize = 14;

/// Squared length of the shortest nonzero lattice vector, exact.
///
/// The lattice is scaled to an integral one, a known lattice vector caps
/// the search (the shortest basis row or cross-section vector, whichever
/// is shorter), and integer vectors inside the resulting ball are walked
/// with membership tested through the scaled dual. Fails when `n` exceeds
/// [`MAX_ENUMERATION_DIMENSION`] or the per-coordinate search range would
/// exceed `radius_limit`.
pub fn shortest_vector_norm2(b: &RationalMatrix, radius_limit: u64) -> Result<Rational> {
    let n = b.n();
    if n > MAX_ENUMERATION_DIMENSION {
        return Err(Error::GuardExceeded {
            what: "shortest-vector enumeration",
            limit: MAX_ENUMERATION_DIMENSION,
            n,
        });
    }
    // Scale all entries to integers: c = lcm of denominators.
    let mut c = BigInt::one();
    for (_, _, v) in b.iter_entries() {
        c = c.lcm(v.denom());
    }
    let c_rat = Rational::from_integer(c.clone());
    let b_int = b.scale(&c_rat);
    let norm2_int = shortest_integral_norm2(&b_int, radius_limit)?;
    Ok(Rational::new(norm2_int.into(), &c * &c))
}

/// Coding gain `d_min^2 / det^{2/n}`, volume-normalized so that scaling the
/// lattice leaves it unchanged.
pub fn coding_gain(b: &RationalMatrix, radius_limit: u64) -> Result<f64> {
    let d2 = shortest_vector_norm2(b, radius_limit)?;
    let det = rational_to_f64(&b.determinant().abs());
    Ok(rational_to_f64(&d2) / det.powf(2.0 / b.n() as f64))
}

fn to_i128(v: &BigInt, context: &'static str) -> Result<i128> {
    v.to_i128().ok_or(Error::InvalidArgument(format!(
        "{context}: value does not fit in 128 bits"
    )))
}

/// Shortest nonzero vector of an integral lattice, squared.
fn shortest_integral_norm2(b_int: &RationalMatrix, radius_limit: u64) -> Result<i128> {
    let n = b_int.n();
    let bstar = b_int.invert_transpose()?;

    // Membership: x is a lattice point iff M x ≡ 0 (mod d), where M is the
    // dual scaled integral by d.
    let mut d = BigInt::one();
    for (_, _, v) in bstar.iter_entries() {
        d = d.lcm(v.denom());
    }
    let d_i128 = to_i128(&d, "membership modulus")?;
    let mut m_rows = vec![vec![0i128; n]; n];
    for (i, j, v) in bstar.iter_entries() {
        let scaled = v * Rational::from_integer(d.clone());
        debug_assert!(scaled.is_integer());
        m_rows[i][j] = to_i128(&scaled.to_integer(), "membership matrix entry")?;
    }

    // Upper bound from known lattice vectors: basis rows, and the
    // cross-section vectors m_i e_i read off the dual columns.
    let mut budget: Option<i128> = None;
    for i in 0..n {
        let row_norm2: Rational = b_int.row(i).iter().map(|(_, v)| v * v).sum();
        debug_assert!(row_norm2.is_integer());
        let r = to_i128(&row_norm2.to_integer(), "basis row norm")?;
        budget = Some(budget.map_or(r, |b| b.min(r)));
    }
    let mut bstar_col_dens: Vec<BigInt> = vec![BigInt::one(); n];
    let mut bstar_col_nums: Vec<BigInt> = vec![BigInt::zero(); n];
    for (_, j, v) in bstar.iter_entries() {
        bstar_col_dens[j] = bstar_col_dens[j].lcm(v.denom());
        bstar_col_nums[j] = bstar_col_nums[j].gcd(&v.numer().abs());
    }
    for i in 0..n {
        // m_i = lcm(denominators) / gcd(numerators) of dual column i.
        let m = Rational::new(bstar_col_dens[i].clone(), bstar_col_nums[i].clone());
        let m2 = &m * &m;
        if m2.is_integer() {
            let v = to_i128(&m2.to_integer(), "cross-section norm")?;
            budget = Some(budget.map_or(v, |b| b.min(v)));
        }
    }
    let budget = budget.expect("positive dimension");
    debug_assert!(budget > 0);

    let radius = (budget as f64).sqrt().floor() as i128;
    if radius as u64 > radius_limit {
        return Err(Error::RadiusLimitExceeded {
            needed: radius as u64,
            limit: radius_limit,
        });
    }

    let mut search = Search {
        n,
        m_rows: &m_rows,
        modulus: d_i128,
        best: budget,
        x: vec![0; n],
    };
    search.descend(0, 0);
    Ok(search.best)
}

struct Search<'a> {
    n: usize,
    m_rows: &'a [Vec<i128>],
    modulus: i128,
    best: i128,
    x: Vec<i128>,
}

impl Search<'_> {
    /// Depth-first scan over integer vectors with squared norm below
    /// `best`, tightening `best` at every member found.
    fn descend(&mut self, depth: usize, partial: i128) {
        if depth == self.n {
            if self.x.iter().all(|&v| v == 0) {
                return;
            }
            if self.is_member() {
                self.best = partial;
            }
            return;
        }
        let headroom = self.best - 1 - partial;
        if headroom < 0 {
            return;
        }
        let bound = (headroom as f64).sqrt().floor() as i128;
        for v in -bound..=bound {
            self.x[depth] = v;
            self.descend(depth + 1, partial + v * v);
        }
        self.x[depth] = 0;
    }

    fn is_member(&self) -> bool {
        self.m_rows.iter().all(|row| {
            let s: i128 = row.iter().zip(&self.x).map(|(a, b)| a * b).sum();
            s.rem_euclid(self.modulus) == 0
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn integer_lattice_has_unit_gain() {
        let id = RationalMatrix::identity(5);
        assert_eq!(shortest_vector_norm2(&id, 1000).unwrap(), ratio(1, 1));
        let g = coding_gain(&id, 1000).unwrap();
        assert!((g - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scaling_does_not_change_the_gain() {
        let b = crate::testutil::example_generator();
        let g1 = coding_gain(&b, 1000).unwrap();
        let g2 = coding_gain(&b.scale(&ratio(3, 1)), 1000).unwrap();
        let g3 = coding_gain(&b.scale(&ratio(1, 4)), 1000).unwrap();
        assert!((g1 - g2).abs() < 1e-12);
        assert!((g1 - g3).abs() < 1e-12);
    }

    #[test]
    fn checkerboard_shortest_vector_is_root_two() {
        let b = RationalMatrix::from_int_rows(&[&[1, 1], &[0, 2]]).unwrap();
        assert_eq!(shortest_vector_norm2(&b, 1000).unwrap(), ratio(2, 1));
    }

    #[test]
    fn example_lattice_matches_brute_force() {
        let b = crate::testutil::example_generator();
        let d2 = shortest_vector_norm2(&b, 1000).unwrap();

        // Independent oracle: scan all integer vectors with entries in
        // [-2, 2] through exact membership on the dual.
        let model = crate::lattice::LatticeModel::from_generator(b.clone()).unwrap();
        let mut best: Option<i64> = None;
        let mut x = [0i64; 7];
        scan(&mut x, 0, &mut |x| {
            if x.iter().all(|&v| v == 0) {
                return;
            }
            let xr: Vec<Rational> = x.iter().map(|&v| ratio(v, 1)).collect();
            if model.is_lattice_point_exact(&xr).unwrap() {
                let norm: i64 = x.iter().map(|&v| v * v).sum();
                best = Some(best.map_or(norm, |b| b.min(norm)));
            }
        });
        // Hamming [7,4] has minimum weight 3, and those codewords embed as
        // lattice points, so they beat the doubled unit vectors (norm 4).
        assert_eq!(d2, ratio(best.unwrap(), 1));
        assert_eq!(d2, ratio(3, 1));

        fn scan(x: &mut [i64; 7], depth: usize, f: &mut impl FnMut(&[i64; 7])) {
            if depth == 7 {
                f(x);
                return;
            }
            for v in -2..=2 {
                x[depth] = v;
                scan(x, depth + 1, f);
            }
            x[depth] = 0;
        }
    }

    #[test]
    fn example_gains_combine_to_root_three() {
        let b = crate::testutil::example_generator();
        let bstar = b.invert_transpose().unwrap();
        // Primal: d_min^2 = 3 (weight-3 codewords), det = 8. Dual:
        // d_min^2 = 1 (e_5 is a dual point: B e_5 is integral), det = 1/8.
        let d2_dual = shortest_vector_norm2(&bstar, 1000).unwrap();
        assert_eq!(d2_dual, ratio(1, 1));
        let g = coding_gain(&b, 1000).unwrap();
        let gd = coding_gain(&bstar, 1000).unwrap();
        let expected = 3.0 / 8f64.powf(2.0 / 7.0);
        let expected_dual = 8f64.powf(2.0 / 7.0);
        assert!((g - expected).abs() < 1e-12, "primal gain {g} vs {expected}");
        assert!((gd - expected_dual).abs() < 1e-12, "dual gain {gd} vs {expected_dual}");
        // The determinants cancel in the product, leaving d_min^2(Λ) times
        // d_min^2(Λ*) under the square root.
        let combined = (g * gd).sqrt();
        assert!((combined - 3f64.sqrt()).abs() < 1e-12, "combined {combined}");
    }

    #[test]
    fn dimension_guard_triggers() {
        let id = RationalMatrix::identity(15);
        assert!(matches!(
            shortest_vector_norm2(&id, 1000),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn radius_guard_triggers() {
        let b = RationalMatrix::diagonal(&[ratio(1000, 1), ratio(1000, 1)]);
        assert!(matches!(
            shortest_vector_norm2(&b, 10),
            Err(Error::RadiusLimitExceeded { .. })
        ));
    }
}
