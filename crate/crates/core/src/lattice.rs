//! Lattices built from nested binary codes, their dual bases, and the
//! per-coordinate label groups the decoder works over.
//!
//! A lattice is held as a generator matrix `B` (rows are basis vectors)
//! together with `B* = (B^{-1})^T`. The rows of `B*` act as parity checks:
//! a real vector `x` lies in the lattice exactly when `B* x^T` is integral.
//!
//! Per coordinate `i` the model records
//!
//! * `m_i`: spacing of the cross-section `{t : t e_i ∈ Λ}`,
//! * `p_i`: spacing of the projection of `Λ` onto coordinate `i`,
//! * `g_i = m_i / p_i`: the label group order, always an integer,
//! * offsets `a_j = j / g_i` of the coset representatives in `m_i` units.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::codes::{BitRow, NestedBinaryCodes};
use crate::error::{Error, Result};
use crate::gain;
use crate::rational::{rational_to_f64, Rational, RationalMatrix};

// ---------------------------------------------------------------------------
// Construction from nested codes
// ---------------------------------------------------------------------------

/// Builds a generator matrix from a nested chain `C_1 ⊇ … ⊇ C_a`.
///
/// A nested echelon basis is selected starting from the innermost code, so
/// that every basis row of `C_l` extends the basis of `C_{l+1}`. A row
/// first selected at input level `l` (1-based, largest code first) is
/// scaled by `2^{a-l}`; coordinates without a pivot get the filler row
/// `2^a e_i`. Rows are ordered by pivot column, which makes the result
/// upper triangular with determinant `2^{Σ_l (n - k_l)}`.
///
/// Generator rows that repeat material from an inner level reduce to zero
/// during selection and are skipped; within-level dependencies were already
/// rejected by [`NestedBinaryCodes::new`].
pub fn build_construction_d(codes: &NestedBinaryCodes) -> Result<RationalMatrix> {
    let n = codes.n();
    let a = codes.level_count();
    // (echelon row, pivot, scale exponent)
    let mut selected: Vec<(BitRow, usize, u32)> = Vec::new();
    for l in (0..a).rev() {
        let exp = (a - 1 - l) as u32;
        for row in codes.level(l).rows() {
            let mut r = row.clone();
            for (s, p, _) in &selected {
                if r.get(*p) {
                    r.xor_assign(s);
                }
            }
            if let Some(pivot) = r.leading_one() {
                selected.push((r, pivot, exp));
            }
        }
    }
    let mut is_pivot = vec![false; n];
    for (_, p, _) in &selected {
        debug_assert!(!is_pivot[*p]);
        is_pivot[*p] = true;
    }
    let filler = BigInt::one() << a;
    let mut rows: Vec<(usize, Vec<(usize, Rational)>)> = Vec::with_capacity(n);
    for (r, pivot, exp) in &selected {
        let scale = Rational::from_integer(BigInt::one() << *exp);
        let entries = r.ones().into_iter().map(|j| (j, scale.clone())).collect();
        rows.push((*pivot, entries));
    }
    for i in (0..n).filter(|&i| !is_pivot[i]) {
        rows.push((i, vec![(i, Rational::from_integer(filler.clone()))]));
    }
    rows.sort_by_key(|&(pivot, _)| pivot);
    Ok(RationalMatrix::from_sparse_rows(
        n,
        rows.into_iter().map(|(_, r)| r).collect(),
    ))
}

// ---------------------------------------------------------------------------
// Label groups
// ---------------------------------------------------------------------------

/// Per-coordinate label-group data.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateLabelInfo {
    /// Coordinate index, 0-based.
    pub index: usize,
    /// Cross-section spacing: least `t > 0` with `t e_i` in the lattice.
    pub m: Rational,
    /// Projection spacing of the lattice onto coordinate `i`.
    pub p: Rational,
    /// Label group order `m / p`.
    pub g: u64,
    /// Coset offsets `a_j = j / g` in `m_i` units, exact.
    pub offsets: Vec<Rational>,
    /// `m` as a float, cached for the decoder.
    pub m_f64: f64,
    /// `offsets` as floats, cached for the decoder.
    pub offsets_f64: Vec<f64>,
}

/// Rational gcd: largest `d` with every input an integer multiple of `d`.
fn rational_gcd(values: &[&Rational]) -> Rational {
    debug_assert!(!values.is_empty());
    let lcm_den = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let gcd_num = values.iter().fold(BigInt::zero(), |acc, v| {
        acc.gcd(&(v.numer() * (&lcm_den / v.denom())).abs())
    });
    Rational::new(gcd_num, lcm_den)
}

/// Least positive `t` such that `t * v` is integral for every `v` in
/// `values`: lcm of denominators over gcd of numerators.
fn least_integralizer(values: &[&Rational]) -> Rational {
    debug_assert!(!values.is_empty());
    let lcm_den = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let gcd_num = values.iter().fold(BigInt::zero(), |acc, v| {
        acc.gcd(&v.numer().abs())
    });
    Rational::new(lcm_den, gcd_num)
}

/// Computes `(m_i, p_i, g_i)` and the coset offsets for every coordinate.
///
/// `m_i` comes from column `i` of the dual basis (`t e_i` is a lattice
/// point exactly when `t` clears all denominators of that column), `p_i`
/// is the rational gcd of column `i` of the generator. Fails when some
/// `m_i / p_i` is not a positive integer, which would break the label
/// group structure the decoder relies on.
pub fn label_group_params(
    b: &RationalMatrix,
    bstar: &RationalMatrix,
) -> Result<Vec<CoordinateLabelInfo>> {
    let n = b.n();
    if bstar.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bstar.n(),
        });
    }
    let mut b_cols: Vec<Vec<&Rational>> = vec![Vec::new(); n];
    for (_, j, v) in b.iter_entries() {
        b_cols[j].push(v);
    }
    let mut bstar_cols: Vec<Vec<&Rational>> = vec![Vec::new(); n];
    for (_, j, v) in bstar.iter_entries() {
        bstar_cols[j].push(v);
    }
    let mut infos = Vec::with_capacity(n);
    for i in 0..n {
        if b_cols[i].is_empty() || bstar_cols[i].is_empty() {
            return Err(Error::ModelViolation {
                coordinate: i,
                reason: "zero column in basis or dual basis".into(),
            });
        }
        let m = least_integralizer(&bstar_cols[i]);
        let p = rational_gcd(&b_cols[i]);
        let g_rat = &m / &p;
        if !g_rat.is_integer() || !g_rat.is_positive() {
            return Err(Error::ModelViolation {
                coordinate: i,
                reason: format!("m/p = {g_rat} is not a positive integer"),
            });
        }
        let g = g_rat.to_integer().to_u64().ok_or_else(|| Error::ModelViolation {
            coordinate: i,
            reason: "label group order exceeds u64".into(),
        })?;
        let offsets: Vec<Rational> = (0..g)
            .map(|j| Rational::new(BigInt::from(j), BigInt::from(g)))
            .collect();
        let offsets_f64 = offsets.iter().map(rational_to_f64).collect();
        infos.push(CoordinateLabelInfo {
            index: i,
            m_f64: rational_to_f64(&m),
            offsets_f64,
            m,
            p,
            g,
            offsets,
        });
    }
    Ok(infos)
}

// ---------------------------------------------------------------------------
// The model
// ---------------------------------------------------------------------------

/// How a coding-gain record came to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GainProvenance {
    Computed,
    UserSupplied,
}

/// Coding gains of a lattice and its dual, plus their geometric mean.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CodingGainRecord {
    pub gain: f64,
    pub dual_gain: f64,
    /// `sqrt(gain * dual_gain)`.
    pub combined: f64,
    pub provenance: GainProvenance,
}

/// A lattice with its dual basis and label-group data.
#[derive(Clone, Debug)]
pub struct LatticeModel {
    b: RationalMatrix,
    bstar: RationalMatrix,
    labels: Vec<CoordinateLabelInfo>,
    coding_gain: Option<CodingGainRecord>,
    /// Sparse float copy of the dual rows, for the membership hot path.
    bstar_rows_f64: Vec<Vec<(usize, f64)>>,
}

impl LatticeModel {
    /// Builds a model from a nonsingular generator matrix.
    pub fn from_generator(b: RationalMatrix) -> Result<Self> {
        let bstar = b.invert_transpose()?;
        let labels = label_group_params(&b, &bstar)?;
        let bstar_rows_f64 = (0..bstar.n())
            .map(|i| {
                bstar
                    .row(i)
                    .iter()
                    .map(|(j, v)| (*j, rational_to_f64(v)))
                    .collect()
            })
            .collect();
        Ok(Self {
            b,
            bstar,
            labels,
            coding_gain: None,
            bstar_rows_f64,
        })
    }

    /// Builds the lattice of a nested binary code chain.
    pub fn from_codes(codes: &NestedBinaryCodes) -> Result<Self> {
        Self::from_generator(build_construction_d(codes)?)
    }

    /// Lattice dimension.
    pub fn n(&self) -> usize {
        self.b.n()
    }

    /// Generator matrix `B`; rows are basis vectors.
    pub fn generator(&self) -> &RationalMatrix {
        &self.b
    }

    /// Dual basis `B* = (B^{-1})^T`; rows are parity checks.
    pub fn dual(&self) -> &RationalMatrix {
        &self.bstar
    }

    /// Label-group data for every coordinate.
    pub fn labels(&self) -> &[CoordinateLabelInfo] {
        &self.labels
    }

    /// Label-group data for coordinate `i`.
    pub fn label(&self, i: usize) -> &CoordinateLabelInfo {
        &self.labels[i]
    }

    /// Lattice determinant `|det B|`.
    pub fn determinant(&self) -> Rational {
        self.b.determinant().abs()
    }

    /// Exact membership: `x` is a lattice point when `B* x^T` is integral.
    pub fn is_lattice_point_exact(&self, x: &[Rational]) -> Result<bool> {
        let syndrome = self.bstar.apply(x)?;
        Ok(syndrome.iter().all(Rational::is_integer))
    }

    /// Float membership: every entry of `B* x^T` within `tol` of an integer.
    pub fn is_lattice_point(&self, x: &[f64], tol: f64) -> Result<bool> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        Ok(self.bstar_rows_f64.iter().all(|row| {
            let s: f64 = row.iter().map(|&(j, v)| v * x[j]).sum();
            (s - s.round()).abs() <= tol
        }))
    }

    /// Labels of an exact lattice point: `k_i = (x_i / p_i) mod g_i`.
    pub fn point_labels_exact(&self, x: &[Rational]) -> Result<Vec<u32>> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        let mut labels = Vec::with_capacity(x.len());
        for (xi, info) in x.iter().zip(&self.labels) {
            let q = xi / &info.p;
            if !q.is_integer() {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {} is not a multiple of the projection spacing",
                    info.index
                )));
            }
            let g = BigInt::from(info.g);
            let k = q.to_integer().mod_floor(&g);
            labels.push(k.to_u32().expect("label below g fits in u32"));
        }
        Ok(labels)
    }

    /// Block-diagonal sum of two lattices.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        Self::from_generator(self.b.direct_sum(&other.b))
    }

    /// Coding-gain record, when one has been computed or supplied.
    pub fn coding_gain(&self) -> Option<&CodingGainRecord> {
        self.coding_gain.as_ref()
    }

    /// Computes coding gains of the lattice and its dual by shortest-vector
    /// enumeration and stores the record. See [`gain::coding_gain`] for the
    /// guards.
    pub fn compute_coding_gain(&mut self, radius_limit: u64) -> Result<&CodingGainRecord> {
        let g = gain::coding_gain(&self.b, radius_limit)?;
        let gd = gain::coding_gain(&self.bstar, radius_limit)?;
        self.coding_gain = Some(CodingGainRecord {
            gain: g,
            dual_gain: gd,
            combined: (g * gd).sqrt(),
            provenance: GainProvenance::Computed,
        });
        Ok(self.coding_gain.as_ref().unwrap())
    }

    /// Stores externally known coding gains.
    pub fn set_coding_gain(&mut self, gain: f64, dual_gain: f64) {
        self.coding_gain = Some(CodingGainRecord {
            gain,
            dual_gain,
            combined: (gain * dual_gain).sqrt(),
            provenance: GainProvenance::UserSupplied,
        });
    }
}
