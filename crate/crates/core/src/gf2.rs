//! Linear algebra over GF(2) for spin-flip groups.
//!
//! A product of single-spin `σ^x` flips is identified with its support, a
//! [`FlipVector`]. Multiplying two flips is XOR of supports, every element is
//! its own inverse, and a generating set is a [`Gf2Matrix`] whose row space is
//! the group. Group orders are powers of two: `|G| = 2^rank`.
//!
//! All eliminations pivot on the lowest column index first, so echelon forms
//! and row-space enumeration order are reproducible.

use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default cap on `rank` for [`Gf2Matrix::enumerate_row_space`] (2^20 elements).
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

/// Support of a spin-flip operator: bit `i` set means spin (link) `i` is flipped.
///
/// Stored as packed 64-bit words; bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlipVector {
    words: Vec<u64>,
    len: usize,
}

impl FlipVector {
    /// The identity flip on `len` spins.
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; word_count(len)],
            len,
        }
    }

    /// Flip of every spin.
    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.clear_tail();
        v
    }

    pub fn from_indices(len: usize, indices: &[usize]) -> Result<Self> {
        let mut v = Self::zeros(len);
        for &i in indices {
            if i >= len {
                return Err(Error::input(format!(
                    "index {i} out of range for {len} spins"
                )));
            }
            v.set(i, true);
        }
        Ok(v)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of at most 64 spins from a bitmask (bit `i` = spin `i`).
    pub fn from_u64(len: usize, mask: u64) -> Self {
        assert!(len <= 64, "from_u64 supports at most 64 spins, got {len}");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = mask;
            v.clear_tail();
        }
        v
    }

    /// The bitmask form when the vector fits in one word.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// # Panics
    /// Panics if `i >= len`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of flipped spins.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of spins flipped by both `self` and `other`.
    pub fn overlap(&self, other: &FlipVector) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Whether the two flips share an even number of spins.
    pub fn commutes_with(&self, other: &FlipVector) -> bool {
        self.overlap(other).is_multiple_of(2)
    }

    /// Every spin not flipped by `self`.
    pub fn complement(&self) -> FlipVector {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.clear_tail();
        out
    }

    /// Indices of the flipped spins, ascending.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Lowest flipped index.
    pub fn lowest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for FlipVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FlipVector(")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, ")")
    }
}

impl BitXorAssign<&FlipVector> for FlipVector {
    fn bitxor_assign(&mut self, rhs: &FlipVector) {
        assert_eq!(self.len, rhs.len, "length mismatch in GF(2) addition");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor<&FlipVector> for &FlipVector {
    type Output = FlipVector;

    fn bitxor(self, rhs: &FlipVector) -> FlipVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl BitAnd<&FlipVector> for &FlipVector {
    type Output = FlipVector;

    fn bitand(self, rhs: &FlipVector) -> FlipVector {
        assert_eq!(self.len, rhs.len, "length mismatch in GF(2) mask");
        FlipVector {
            words: self
                .words
                .iter()
                .zip(&rhs.words)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }
}

/// Reduced row echelon form: rows sorted by pivot, each pivot column clear in
/// every other row.
#[derive(Debug, Clone)]
struct Echelon {
    rows: Vec<FlipVector>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn build(rows: &[FlipVector], n_cols: usize) -> Self {
        let mut basis: Vec<FlipVector> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for row in rows {
            let mut v = row.clone();
            reduce_sorted(&mut v, &basis, &pivots);
            if let Some(p) = v.lowest() {
                // clear the new pivot from existing rows to stay fully reduced
                for b in basis.iter_mut() {
                    if b.get(p) {
                        *b ^= &v;
                    }
                }
                let at = pivots.partition_point(|&q| q < p);
                pivots.insert(at, p);
                basis.insert(at, v);
            }
        }
        debug_assert!(basis.iter().all(|b| b.len() == n_cols));
        Echelon {
            rows: basis,
            pivots,
        }
    }
}

/// Reduces `v` by a basis sorted by ascending pivot where each row is zero
/// below its pivot.
fn reduce_sorted(v: &mut FlipVector, basis: &[FlipVector], pivots: &[usize]) {
    for (b, &p) in basis.iter().zip(pivots) {
        if v.get(p) {
            *v ^= b;
        }
    }
}

/// Rank of a flat row-major block of `n_rows` rows, `words` words each.
/// The block is destroyed.
fn rank_in_place(block: &mut [u64], words: usize) -> usize {
    if words == 0 {
        return 0;
    }
    let n_rows = block.len() / words;
    let mut rank = 0;
    for w in 0..words {
        for bit in 0..64 {
            let mask = 1u64 << bit;
            let Some(pivot) = (rank..n_rows).find(|&r| block[r * words + w] & mask != 0) else {
                continue;
            };
            if pivot != rank {
                for c in 0..words {
                    block.swap(pivot * words + c, rank * words + c);
                }
            }
            for r in (rank + 1)..n_rows {
                if block[r * words + w] & mask != 0 {
                    for c in w..words {
                        let x = block[rank * words + c];
                        block[r * words + c] ^= x;
                    }
                }
            }
            rank += 1;
            if rank == n_rows {
                return rank;
            }
        }
    }
    rank
}

/// A generating set of flips; its row space over GF(2) is the group it generates.
///
/// The echelon form is computed on first use and cached. Mutating methods take
/// `&mut self` and drop the cache, so a shared `&Gf2Matrix` is safe to query
/// from many threads.
#[derive(Clone)]
pub struct Gf2Matrix {
    n_cols: usize,
    rows: Vec<FlipVector>,
    echelon: OnceLock<Echelon>,
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gf2Matrix")
            .field("n_cols", &self.n_cols)
            .field("rows", &self.rows)
            .finish()
    }
}

impl Gf2Matrix {
    pub fn new(n_cols: usize) -> Self {
        Self {
            n_cols,
            rows: Vec::new(),
            echelon: OnceLock::new(),
        }
    }

    pub fn from_rows(n_cols: usize, rows: Vec<FlipVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(Error::input(format!(
                "row of length {} in a matrix with {n_cols} columns",
                bad.len()
            )));
        }
        Ok(Self {
            n_cols,
            rows,
            echelon: OnceLock::new(),
        })
    }

    /// Identity matrix: generators of the full flip group on `n` spins.
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut v = FlipVector::zeros(n);
                v.set(i, true);
                v
            })
            .collect();
        Self::from_rows(n, rows).expect("identity rows have matching length")
    }

    pub fn push_row(&mut self, row: FlipVector) -> Result<()> {
        if row.len() != self.n_cols {
            return Err(Error::input(format!(
                "row of length {} in a matrix with {} columns",
                row.len(),
                self.n_cols
            )));
        }
        self.rows.push(row);
        self.echelon = OnceLock::new();
        Ok(())
    }

    pub fn remove_row(&mut self, index: usize) -> FlipVector {
        self.echelon = OnceLock::new();
        self.rows.remove(index)
    }

    pub fn rows(&self) -> &[FlipVector] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    fn echelon(&self) -> &Echelon {
        self.echelon
            .get_or_init(|| Echelon::build(&self.rows, self.n_cols))
    }

    /// Reduced echelon basis of the row space.
    pub fn basis(&self) -> &[FlipVector] {
        &self.echelon().rows
    }

    /// Pivot column of each basis row, ascending.
    pub fn pivots(&self) -> &[usize] {
        &self.echelon().pivots
    }

    /// Dimension of the row space; `|G| = 2^rank`.
    pub fn rank(&self) -> usize {
        self.echelon().rows.len()
    }

    /// Number of dependent generators, `rows - rank`.
    pub fn constraint_count(&self) -> usize {
        self.rows.len() - self.rank()
    }

    /// Rank after zeroing every column outside `cols`.
    pub fn restricted_rank(&self, cols: &[usize]) -> Result<usize> {
        let mask = FlipVector::from_indices(self.n_cols, cols)?;
        Ok(self.restricted_rank_mask(&mask))
    }

    /// [`Gf2Matrix::restricted_rank`] with the column set given as a mask.
    pub fn restricted_rank_mask(&self, mask: &FlipVector) -> usize {
        assert_eq!(mask.len(), self.n_cols, "column mask length mismatch");
        // the echelon basis spans the same space and is never longer than rows
        let basis = self.basis();
        let words = mask.words().len();
        let mut block = Vec::with_capacity(basis.len() * words);
        for row in basis {
            block.extend(row.words().iter().zip(mask.words()).map(|(a, m)| a & m));
        }
        rank_in_place(&mut block, words)
    }

    /// `log2` of the order of the subgroup supported inside `support`.
    pub fn trivial_on_dimension(&self, support: &[usize]) -> Result<usize> {
        let mask = FlipVector::from_indices(self.n_cols, support)?;
        Ok(self.trivial_on_dimension_mask(&mask))
    }

    pub fn trivial_on_dimension_mask(&self, support: &FlipVector) -> usize {
        self.rank() - self.restricted_rank_mask(&support.complement())
    }

    /// Row-space membership.
    pub fn contains(&self, v: &FlipVector) -> Result<bool> {
        if v.len() != self.n_cols {
            return Err(Error::input(format!(
                "vector of length {} against a matrix with {} columns",
                v.len(),
                self.n_cols
            )));
        }
        let ech = self.echelon();
        let mut r = v.clone();
        reduce_sorted(&mut r, &ech.rows, &ech.pivots);
        Ok(r.is_zero())
    }

    /// All `2^rank` row-space elements, refusing when `rank` exceeds
    /// [`DEFAULT_ENUMERATION_CAP`].
    pub fn enumerate_row_space(&self) -> Result<RowSpace> {
        self.enumerate_row_space_capped(DEFAULT_ENUMERATION_CAP)
    }

    pub fn enumerate_row_space_capped(&self, max_rank: usize) -> Result<RowSpace> {
        let rank = self.rank();
        if rank > max_rank || rank >= 64 {
            return Err(Error::resource(format!(
                "row space of rank {rank} exceeds enumeration cap of rank {max_rank}"
            )));
        }
        Ok(RowSpace {
            basis: self.basis().to_vec(),
            current: FlipVector::zeros(self.n_cols),
            step: 0,
            total: 1u64 << rank,
        })
    }
}

/// Gray-code walk over a row space: consecutive elements differ by one basis row.
#[derive(Debug, Clone)]
pub struct RowSpace {
    basis: Vec<FlipVector>,
    current: FlipVector,
    step: u64,
    total: u64,
}

impl RowSpace {
    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for RowSpace {
    type Item = FlipVector;

    fn next(&mut self) -> Option<FlipVector> {
        if self.step >= self.total {
            return None;
        }
        if self.step > 0 {
            let flip = self.step.trailing_zeros() as usize;
            self.current ^= &self.basis[flip];
        }
        self.step += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.step) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for RowSpace {}
