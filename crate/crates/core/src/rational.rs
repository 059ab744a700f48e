//! Exact rational matrices.
//!
//! Entries are arbitrary-precision rationals, always kept in reduced form
//! with a positive denominator. Rows are stored sparsely (sorted column
//! index plus value) so that large, mostly-zero generator matrices stay
//! cheap; dense algorithms are used only where a matrix has no exploitable
//! structure.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// Shorthand for building a rational from an integer pair.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Nearest `f64` to an exact rational.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY * sign_of(r.numer()));
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn sign_of(x: &BigInt) -> f64 {
    if x.is_negative() {
        -1.0
    } else {
        1.0
    }
}

/// Square matrix of exact rationals with sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    /// Per row: (column, value) pairs sorted by column, zeros omitted.
    rows: Vec<Vec<(usize, Rational)>>,
}

impl RationalMatrix {
    /// Builds a matrix from dense rows. Rows must form a square matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument("matrix must have at least one row".into()));
        }
        let mut sparse = Vec::with_capacity(n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            let mut r: Vec<(usize, Rational)> = Vec::new();
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    r.push((j, v.clone()));
                }
            }
            sparse.push(r);
        }
        Ok(Self { n, rows: sparse })
    }

    /// Builds a matrix from integer rows, mostly useful in tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        let dense = rows
            .iter()
            .map(|r| r.iter().map(|&v| ratio(v, 1)).collect())
            .collect();
        Self::from_rows(dense)
    }

    /// Builds from pre-sparsified rows; used by construction code that
    /// already knows the nonzero pattern.
    pub(crate) fn from_sparse_rows(n: usize, mut rows: Vec<Vec<(usize, Rational)>>) -> Self {
        debug_assert_eq!(rows.len(), n);
        for row in &mut rows {
            row.retain(|(_, v)| !v.is_zero());
            row.sort_by_key(|&(j, _)| j);
            debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(row.iter().all(|&(j, _)| j < n));
        }
        Self { n, rows }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        Self { n, rows }
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(entries: &[Rational]) -> Self {
        let rows = entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| vec![(i, v.clone())])
            .collect::<Vec<_>>();
        let mut full = vec![Vec::new(); entries.len()];
        for row in rows {
            let i = row[0].0;
            full[i] = row;
        }
        Self {
            n: entries.len(),
            rows: full,
        }
    }

    /// Matrix dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Entry `(i, j)`, zero when absent.
    pub fn entry(&self, i: usize, j: usize) -> Rational {
        match self.rows[i].binary_search_by_key(&j, |&(c, _)| c) {
            Ok(pos) => self.rows[i][pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Sparse view of row `i`: (column, value) pairs sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    /// Iterates over all nonzero entries as `(row, col, value)`.
    pub fn iter_entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    /// Dense copy of the matrix.
    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut dense = vec![vec![Rational::zero(); self.n]; self.n];
        for (i, j, v) in self.iter_entries() {
            dense[i][j] = v.clone();
        }
        dense
    }

    /// Dense copy converted to `f64`.
    pub fn to_f64_dense(&self) -> Vec<Vec<f64>> {
        let mut dense = vec![vec![0.0; self.n]; self.n];
        for (i, j, v) in self.iter_entries() {
            dense[i][j] = rational_to_f64(v);
        }
        dense
    }

    /// Transposed copy.
    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.n];
        for (i, j, v) in self.iter_entries() {
            rows[j].push((i, v.clone()));
        }
        Self::from_sparse_rows(self.n, rows)
    }

    /// True when every nonzero entry sits on or above the diagonal.
    pub fn is_upper_triangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().all(|&(j, _)| j >= i))
    }

    /// Matrix times column vector.
    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().map(|(j, v)| v * &x[*j]).sum())
            .collect())
    }

    /// Row vector times matrix (`x · A`).
    pub fn apply_transpose(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.n];
        for (i, j, v) in self.iter_entries() {
            if !x[i].is_zero() {
                out[j] += v * &x[i];
            }
        }
        Ok(out)
    }

    /// Matrix times column vector in floating point.
    pub fn apply_f64(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().map(|(j, v)| rational_to_f64(v) * x[*j]).sum())
            .collect())
    }

    /// Block-diagonal sum: `self` in the top-left corner, `other` in the
    /// bottom-right.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut rows = Vec::with_capacity(n);
        rows.extend(self.rows.iter().cloned());
        for row in &other.rows {
            rows.push(
                row.iter()
                    .map(|(j, v)| (j + self.n, v.clone()))
                    .collect(),
            );
        }
        Self { n, rows }
    }

    /// Every entry multiplied by `c`.
    pub fn scale(&self, c: &Rational) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(j, v)| (*j, v * c)).collect())
            .collect();
        Self::from_sparse_rows(self.n, rows)
    }

    /// Exact determinant.
    pub fn determinant(&self) -> Rational {
        if self.is_upper_triangular() {
            let mut det = Rational::one();
            for i in 0..self.n {
                let d = self.entry(i, i);
                if d.is_zero() {
                    return Rational::zero();
                }
                det *= d;
            }
            return det;
        }
        let mut a = self.to_dense();
        let n = self.n;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det *= &pivot;
            for r in (c + 1)..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &pivot;
                let (head, tail) = a.split_at_mut(r);
                let source = &head[c];
                for (target, s) in tail[0].iter_mut().skip(c).zip(source.iter().skip(c)) {
                    let sub = &f * s;
                    *target -= sub;
                }
            }
        }
        det
    }

    /// Transposed inverse `(A^{-1})^T`.
    ///
    /// Upper-triangular matrices (the shape produced by the lattice
    /// construction) are inverted by sparse back-substitution, one output
    /// row at a time; anything else falls back to dense Gauss-Jordan
    /// elimination. Fails with the elimination step at which no nonzero
    /// pivot exists.
    pub fn invert_transpose(&self) -> Result<Self> {
        if self.is_upper_triangular() {
            self.invert_transpose_triangular()
        } else {
            self.invert_transpose_dense()
        }
    }

    fn invert_transpose_triangular(&self) -> Result<Self> {
        let n = self.n;
        let mut diag_inv = Vec::with_capacity(n);
        for i in 0..n {
            let d = self.entry(i, i);
            if d.is_zero() {
                return Err(Error::SingularMatrix { step: i });
            }
            diag_inv.push(d.recip());
        }
        // Strictly-above-diagonal entries grouped by column.
        let mut col_adj: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
        for (i, j, v) in self.iter_entries() {
            if j > i {
                col_adj[j].push((i, v.clone()));
            }
        }
        // Solving A x = e_j makes x the j-th column of A^{-1}, which is
        // exactly the j-th row of the transposed inverse.
        let mut out_rows = Vec::with_capacity(n);
        for j in 0..n {
            let mut solved: Vec<(usize, Rational)> = Vec::new();
            let mut pending: BTreeMap<usize, Rational> = BTreeMap::new();
            let xj = diag_inv[j].clone();
            for (i, v) in &col_adj[j] {
                let c = v * &xj;
                *pending.entry(*i).or_insert_with(Rational::zero) += c;
            }
            solved.push((j, xj));
            while let Some((&i, _)) = pending.last_key_value() {
                let s = pending.remove(&i).unwrap();
                if s.is_zero() {
                    continue;
                }
                let xi = -s * &diag_inv[i];
                for (i2, v) in &col_adj[i] {
                    let c = v * &xi;
                    *pending.entry(*i2).or_insert_with(Rational::zero) += c;
                }
                solved.push((i, xi));
            }
            out_rows.push(solved);
        }
        Ok(Self::from_sparse_rows(n, out_rows))
    }

    fn invert_transpose_dense(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.to_dense();
        let mut inv: Vec<Vec<Rational>> = RationalMatrix::identity(n).to_dense();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[r][c].is_zero())
                .ok_or(Error::SingularMatrix { step: c })?;
            a.swap(p, c);
            inv.swap(p, c);
            let pivot_inv = a[c][c].recip();
            for j in 0..n {
                a[c][j] *= &pivot_inv;
                inv[c][j] *= &pivot_inv;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..n {
                    let s = &f * &a[c][j];
                    a[r][j] -= s;
                    let s = &f * &inv[c][j];
                    inv[r][j] -= s;
                }
            }
        }
        // Row j of the result is column j of the inverse.
        let mut rows = vec![Vec::new(); n];
        for (i, inv_row) in inv.iter().enumerate() {
            for (j, v) in inv_row.iter().enumerate() {
                if !v.is_zero() {
                    rows[j].push((i, v.clone()));
                }
            }
        }
        Ok(Self::from_sparse_rows(n, rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{example_dual, example_generator};

    #[test]
    fn identity_inverts_to_identity() {
        let id = RationalMatrix::identity(4);
        assert_eq!(id.invert_transpose().unwrap(), id);
    }

    #[test]
    fn diagonal_inverts_entrywise() {
        let d = RationalMatrix::diagonal(&[ratio(2, 1), ratio(2, 1)]);
        let expected = RationalMatrix::diagonal(&[ratio(1, 2), ratio(1, 2)]);
        assert_eq!(d.invert_transpose().unwrap(), expected);
    }

    #[test]
    fn example_generator_inverts_to_frozen_dual() {
        let b = example_generator();
        let dual = b.invert_transpose().unwrap();
        assert_eq!(dual, example_dual());
        // Spot checks, 0-based: (4,0) and (4,4).
        assert_eq!(dual.entry(4, 0), ratio(-1, 2));
        assert_eq!(dual.entry(4, 4), ratio(1, 2));
    }

    #[test]
    fn dual_of_dual_restores_the_generator() {
        let b = example_generator();
        let back = b.invert_transpose().unwrap().invert_transpose().unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn dense_path_handles_permutation() {
        let p = RationalMatrix::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert!(!p.is_upper_triangular());
        assert_eq!(p.invert_transpose().unwrap(), p);
        assert_eq!(p.determinant(), ratio(-1, 1));
    }

    #[test]
    fn singular_matrix_reports_failed_step() {
        let s = RationalMatrix::from_int_rows(&[&[1, 1], &[1, 1]]).unwrap();
        match s.invert_transpose() {
            Err(Error::SingularMatrix { step }) => assert_eq!(step, 1),
            other => panic!("expected singular error, got {other:?}"),
        }
        let t = RationalMatrix::from_int_rows(&[&[1, 5], &[0, 0]]).unwrap();
        match t.invert_transpose() {
            Err(Error::SingularMatrix { step }) => assert_eq!(step, 1),
            other => panic!("expected singular error, got {other:?}"),
        }
    }

    #[test]
    fn determinant_of_example_is_eight() {
        assert_eq!(example_generator().determinant(), ratio(8, 1));
    }

    #[test]
    fn direct_sum_places_blocks() {
        let a = RationalMatrix::identity(2);
        let b = RationalMatrix::diagonal(&[ratio(3, 1)]);
        let s = a.direct_sum(&b);
        assert_eq!(s.n(), 3);
        assert_eq!(s.entry(0, 0), ratio(1, 1));
        assert_eq!(s.entry(2, 2), ratio(3, 1));
        assert_eq!(s.entry(2, 0), Rational::zero());
        assert_eq!(s.determinant(), ratio(3, 1));
    }

    #[test]
    fn apply_multiplies_by_column_vector() {
        let b = example_generator();
        let x: Vec<Rational> = (1..=7).map(|v| ratio(v, 1)).collect();
        let y = b.apply(&x).unwrap();
        // Row 0 is (1,0,0,0,1,1,0): 1 + 5 + 6 = 12.
        assert_eq!(y[0], ratio(12, 1));
        // Row 6 is (0,...,0,2): 2 * 7 = 14.
        assert_eq!(y[6], ratio(14, 1));
    }

    #[test]
    fn apply_transpose_multiplies_row_vector() {
        let b = example_generator();
        let mut z = vec![Rational::zero(); 7];
        z[0] = Rational::one();
        z[4] = Rational::one();
        let x = b.apply_transpose(&z).unwrap();
        // Row 0 plus row 4: (1,0,0,0,3,1,0).
        let expected: Vec<Rational> = [1, 0, 0, 0, 3, 1, 0].iter().map(|&v| ratio(v, 1)).collect();
        assert_eq!(x, expected);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let b = RationalMatrix::identity(3);
        match b.apply(&[Rational::one()]) {
            Err(Error::DimensionMismatch { expected, found }) => {
                assert_eq!((expected, found), (3, 1));
            }
            other => panic!("expected dimension mismatch, got {other:?}"),
        }
    }

    #[test]
    fn rational_to_f64_is_exact_for_dyadics() {
        assert_eq!(rational_to_f64(&ratio(-1, 2)), -0.5);
        assert_eq!(rational_to_f64(&ratio(3, 4)), 0.75);
    }
}
