//! Binary linear codes over GF(2) and nested chains of them.
//!
//! A chain `C_1 ⊇ C_2 ⊇ … ⊇ C_a` of binary codes, largest first, is the
//! input to the lattice construction in [`crate::lattice`]. Codewords are
//! bit rows packed into `u64` blocks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Bit rows
// ---------------------------------------------------------------------------

/// A length-`n` vector over GF(2), bit-packed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow {
    n: usize,
    blocks: Vec<u64>,
}

impl BitRow {
    /// All-zeros row of length `n`.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            blocks: vec![0; n.div_ceil(64)],
        }
    }

    /// Builds a row from 0/1 bytes.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut row = Self::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                row.set(i);
            }
        }
        row
    }

    /// Parses a row from a string of `0` and `1` characters.
    pub fn parse(s: &str) -> Result<Self> {
        let mut row = Self::zero(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => row.set(i),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "codeword rows must contain only 0 and 1, found {other:?}"
                    )))
                }
            }
        }
        Ok(row)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Index of the first set bit.
    pub fn leading_one(&self) -> Option<usize> {
        for (bi, &b) in self.blocks.iter().enumerate() {
            if b != 0 {
                return Some(bi * 64 + b.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Number of set bits.
    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.get(i)).collect()
    }
}

/// Clears every pivot of `basis` from `word` by row additions.
fn reduce_by(word: &mut BitRow, basis: &[(BitRow, usize)]) {
    for (row, pivot) in basis {
        if word.get(*pivot) {
            word.xor_assign(row);
        }
    }
}

// ---------------------------------------------------------------------------
// Single codes
// ---------------------------------------------------------------------------

/// A binary linear code given by a generator matrix (one codeword per row).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    n: usize,
    rows: Vec<BitRow>,
}

impl BinaryCode {
    /// Builds a code from generator rows, all of length `n`.
    pub fn new(n: usize, rows: Vec<BitRow>) -> Result<Self> {
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        Ok(Self { n, rows })
    }

    /// Builds a code from `0`/`1` strings.
    pub fn from_strings(rows: &[&str]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        let parsed = rows.iter().map(|r| BitRow::parse(r)).collect::<Result<Vec<_>>>()?;
        Self::new(n, parsed)
    }

    /// Block length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generator rows.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    /// Forward echelon basis with pivot columns. Fails on the first
    /// generator row that is dependent on earlier ones.
    fn echelon_basis(&self) -> std::result::Result<Vec<(BitRow, usize)>, usize> {
        let mut basis: Vec<(BitRow, usize)> = Vec::with_capacity(self.rows.len());
        for (idx, row) in self.rows.iter().enumerate() {
            let mut r = row.clone();
            reduce_by(&mut r, &basis);
            match r.leading_one() {
                Some(pivot) => basis.push((r, pivot)),
                None => return Err(idx),
            }
        }
        Ok(basis)
    }

    /// True when `word` is a codeword.
    pub fn contains(&self, word: &BitRow) -> bool {
        let basis = match self.echelon_basis() {
            Ok(b) => b,
            Err(_) => {
                // Dependent generators still span the same space; rebuild
                // tolerantly.
                let mut basis: Vec<(BitRow, usize)> = Vec::new();
                for row in &self.rows {
                    let mut r = row.clone();
                    reduce_by(&mut r, &basis);
                    if let Some(p) = r.leading_one() {
                        basis.push((r, p));
                    }
                }
                basis
            }
        };
        let mut w = word.clone();
        reduce_by(&mut w, &basis);
        w.is_zero()
    }
}

// ---------------------------------------------------------------------------
// Nested chains
// ---------------------------------------------------------------------------

/// A validated chain `C_1 ⊇ C_2 ⊇ … ⊇ C_a` of binary codes of common
/// length `n`, largest code first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedBinaryCodes {
    n: usize,
    levels: Vec<BinaryCode>,
}

impl NestedBinaryCodes {
    /// Validates and wraps a chain of codes.
    ///
    /// Checks, in order: at least one level, equal block lengths,
    /// non-increasing dimensions, full row rank within each level, and
    /// containment of every level in the previous one.
    pub fn new(levels: Vec<BinaryCode>) -> Result<Self> {
        let Some(first) = levels.first() else {
            return Err(Error::InvalidCodeChain {
                reason: "need at least one level".into(),
            });
        };
        let n = first.n();
        if n == 0 {
            return Err(Error::InvalidCodeChain {
                reason: "block length must be positive".into(),
            });
        }
        for (l, code) in levels.iter().enumerate() {
            if code.n() != n {
                return Err(Error::InvalidCodeChain {
                    reason: format!(
                        "level {} has block length {}, level 1 has {}",
                        l + 1,
                        code.n(),
                        n
                    ),
                });
            }
            if code.k() == 0 {
                return Err(Error::InvalidCodeChain {
                    reason: format!("level {} has no generator rows", l + 1),
                });
            }
            if code.k() > n {
                return Err(Error::InvalidCodeChain {
                    reason: format!("level {} has more rows than columns", l + 1),
                });
            }
            if let Err(row) = code.echelon_basis() {
                return Err(Error::DependentRows { level: l + 1, row });
            }
        }
        for w in levels.windows(2) {
            if w[1].k() > w[0].k() {
                return Err(Error::InvalidCodeChain {
                    reason: "level dimensions must be non-increasing".into(),
                });
            }
        }
        for l in 1..levels.len() {
            for (row_idx, row) in levels[l].rows().iter().enumerate() {
                if !levels[l - 1].contains(row) {
                    return Err(Error::NonNestedCodes {
                        level: l + 1,
                        outer: l,
                        row: row_idx,
                    });
                }
            }
        }
        Ok(Self { n, levels })
    }

    /// Builds an `a`-level chain by taking row prefixes of one code:
    /// level `l` keeps the first `dims[l]` rows. `dims[0]` must equal the
    /// full row count.
    pub fn from_row_prefixes(code: BinaryCode, dims: &[usize]) -> Result<Self> {
        if dims.first() != Some(&code.k()) {
            return Err(Error::InvalidCodeChain {
                reason: "dims[0] must equal the generator row count".into(),
            });
        }
        let levels = dims
            .iter()
            .map(|&k| BinaryCode::new(code.n(), code.rows()[..k].to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(levels)
    }

    /// Block length shared by all levels.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of levels `a`.
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// Level `l`, 0-based, largest code at index 0.
    pub fn level(&self, l: usize) -> &BinaryCode {
        &self.levels[l]
    }

    pub fn levels(&self) -> &[BinaryCode] {
        &self.levels
    }

    /// Dimensions `k_1 ≥ k_2 ≥ …`.
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(BinaryCode::k).collect()
    }
}

// ---------------------------------------------------------------------------
// Random code generators
// ---------------------------------------------------------------------------

/// Generates a single-level systematic low-density code `[I_k | P]` with at
/// most `row_weight` ones per row of `P` and at most `max_col_weight` ones
/// per column of `P`. Deterministic in `seed`.
///
/// The identity block keeps the rows independent for any `P`, and the
/// sparsity caps translate into graph degree caps: symbol degrees stay at
/// most `row_weight + 1` and check degrees at most `max_col_weight + 1`.
pub fn random_ldgm_codes(
    n: usize,
    k: usize,
    row_weight: usize,
    max_col_weight: usize,
    seed: u64,
) -> Result<NestedBinaryCodes> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "need 0 < k < n, got k={k}, n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spare = n - k;
    let mut col_weight = vec![0usize; spare];
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = BitRow::zero(n);
        row.set(i);
        let mut eligible: Vec<usize> =
            (0..spare).filter(|&c| col_weight[c] < max_col_weight).collect();
        let picks = row_weight.min(eligible.len());
        for _ in 0..picks {
            let idx = rand::Rng::gen_range(&mut rng, 0..eligible.len());
            let c = eligible.swap_remove(idx);
            col_weight[c] += 1;
            row.set(k + c);
        }
        rows.push(row);
    }
    let code = BinaryCode::new(n, rows)?;
    NestedBinaryCodes::new(vec![code])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming74() -> BinaryCode {
        BinaryCode::from_strings(&["1000110", "0100011", "0010111", "0001101"]).unwrap()
    }

    #[test]
    fn bitrow_roundtrips_through_parse() {
        let r = BitRow::parse("0100011").unwrap();
        assert_eq!(r.ones(), vec![1, 5, 6]);
        assert_eq!(r.weight(), 3);
        assert_eq!(r.leading_one(), Some(1));
    }

    #[test]
    fn bitrow_rejects_non_binary_characters() {
        assert!(BitRow::parse("01x").is_err());
    }

    #[test]
    fn xor_cancels_and_leading_one_moves() {
        let mut a = BitRow::parse("1100").unwrap();
        let b = BitRow::parse("1010").unwrap();
        a.xor_assign(&b);
        assert_eq!(a.ones(), vec![1, 2]);
    }

    #[test]
    fn hamming_contains_its_codewords() {
        let code = hamming74();
        assert_eq!(code.k(), 4);
        // Sum of rows 0 and 1.
        assert!(code.contains(&BitRow::parse("1100101").unwrap()));
        assert!(!code.contains(&BitRow::parse("1000000").unwrap()));
        assert!(code.contains(&BitRow::zero(7)));
    }

    #[test]
    fn single_level_chain_validates() {
        let chain = NestedBinaryCodes::new(vec![hamming74()]).unwrap();
        assert_eq!(chain.level_count(), 1);
        assert_eq!(chain.dims(), vec![4]);
    }

    #[test]
    fn nested_chain_validates_containment() {
        // Even-weight [4,3] contains repetition [4,1].
        let big = BinaryCode::from_strings(&["1100", "0110", "0011"]).unwrap();
        let small = BinaryCode::from_strings(&["1111"]).unwrap();
        let chain = NestedBinaryCodes::new(vec![big.clone(), small]).unwrap();
        assert_eq!(chain.dims(), vec![3, 1]);

        let outside = BinaryCode::from_strings(&["1000"]).unwrap();
        match NestedBinaryCodes::new(vec![big, outside]) {
            Err(Error::NonNestedCodes { level, outer, row }) => {
                assert_eq!((level, outer, row), (2, 1, 0));
            }
            other => panic!("expected nesting error, got {other:?}"),
        }
    }

    #[test]
    fn dependent_rows_are_rejected_with_position() {
        let code = BinaryCode::from_strings(&["1100", "0110", "1010"]).unwrap();
        match NestedBinaryCodes::new(vec![code]) {
            Err(Error::DependentRows { level, row }) => assert_eq!((level, row), (1, 2)),
            other => panic!("expected dependent-rows error, got {other:?}"),
        }
    }

    #[test]
    fn increasing_dimensions_are_rejected() {
        let small = BinaryCode::from_strings(&["1111"]).unwrap();
        let big = BinaryCode::from_strings(&["1100", "0110", "0011"]).unwrap();
        assert!(matches!(
            NestedBinaryCodes::new(vec![small, big]),
            Err(Error::InvalidCodeChain { .. })
        ));
    }

    #[test]
    fn row_prefix_chain_is_nested_by_construction() {
        let code = BinaryCode::from_strings(&["1100", "0110", "0011"]).unwrap();
        let chain = NestedBinaryCodes::from_row_prefixes(code, &[3, 1]).unwrap();
        assert_eq!(chain.dims(), vec![3, 1]);
        assert_eq!(chain.level(1).rows()[0].ones(), vec![0, 1]);
    }

    #[test]
    fn ldgm_respects_weight_caps_and_is_deterministic() {
        let a = random_ldgm_codes(40, 20, 3, 5, 9).unwrap();
        let b = random_ldgm_codes(40, 20, 3, 5, 9).unwrap();
        assert_eq!(a, b);
        let code = a.level(0);
        assert_eq!(code.k(), 20);
        let mut col_weight = [0usize; 20];
        for (i, row) in code.rows().iter().enumerate() {
            assert!(row.get(i));
            assert!(row.weight() <= 4);
            for c in row.ones() {
                if c >= 20 {
                    col_weight[c - 20] += 1;
                }
            }
        }
        assert!(col_weight.iter().all(|&w| w <= 5));

        let c = random_ldgm_codes(40, 20, 3, 5, 10).unwrap();
        assert_ne!(a, c, "different seeds should give different codes");
    }
}
