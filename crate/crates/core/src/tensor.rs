//! Dense zero patterns of nonnegative tensors.
//!
//! A [`BooleanTensor`] of order `m` and dimension `n` stores one bit per entry,
//! `1` meaning "strictly positive". Entries are laid out row-major with the last
//! index varying fastest, so the entry `(i_1, ..., i_m)` (0-based) lives at
//! linear position `sum_j i_j * n^(m-j)`. The first index selects a slice, the
//! remaining `m - 1` indices select a *column*.
//!
//! External interfaces ([`MultiIndex`], file formats, the CLI) are 1-based.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BooleanMatrix;

/// Largest number of entries a dense pattern may hold.
pub const STORAGE_GUARD_BITS: u64 = 1 << 34;

/// Largest dimension for which [`BooleanTensor::canonical_key`] enumerates `n!` relabelings.
pub const CANONICAL_MAX_DIM: usize = 8;

pub(crate) fn checked_len(order: usize, dim: usize) -> Result<usize> {
    if dim == 0 {
        return Err(Error::InvalidDim);
    }
    let mut len: u64 = 1;
    for _ in 0..order {
        len = len
            .checked_mul(dim as u64)
            .filter(|&l| l <= STORAGE_GUARD_BITS)
            .ok_or(Error::TooLarge { order, dim })?;
    }
    Ok(len as usize)
}

/// A 1-based multi-index, either a column `α ∈ [n]^(m-1)` or a full entry position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Self {
        MultiIndex(components)
    }

    pub fn from_zero_based(components: &[usize]) -> Self {
        MultiIndex(components.iter().map(|&c| c + 1).collect())
    }

    /// `(j, j, ..., j)` of the given length, `j` 1-based.
    pub fn repeated(j: usize, len: usize) -> Self {
        MultiIndex(vec![j; len])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|&c| c - 1).collect()
    }

    /// Checks the length and that every component lies in `1..=dim`.
    pub fn validate(&self, dim: usize, expected_len: usize) -> Result<()> {
        if self.0.len() != expected_len {
            return Err(Error::IndexLength {
                got: self.0.len(),
                expected: expected_len,
            });
        }
        match self.0.iter().find(|&&c| c == 0 || c > dim) {
            Some(&value) => Err(Error::IndexOutOfRange { value, dim }),
            None => Ok(()),
        }
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `1,2,2`, `(1,2,2)` or, for single-digit components, `122`.
impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let bad = || Error::Format(format!("cannot parse multi-index {s:?}"));
        let parts: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        if parts.is_empty() {
            return Err(bad());
        }
        Ok(MultiIndex(parts))
    }
}

/// A bijection on `[n]`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotPermutation { dim: n });
            }
        }
        Ok(Permutation(images))
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if images.contains(&0) {
            return Err(Error::NotPermutation { dim: n });
        }
        Self::from_zero_based(images.iter().map(|&x| x - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// All `n!` permutations in lexicographic order of their image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = vec![Permutation(cur.clone())];
        loop {
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Permutation(cur.clone()));
        }
    }
}

/// Orbit representative of a pattern under simultaneous relabeling.
///
/// Keys compare as unsigned integers whose bit `p` is the entry at linear
/// position `p`; the canonical key is the minimum over all relabelings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalKey {
    len: usize,
    words: Vec<u64>,
}

impl CanonicalKey {
    pub fn bit_len(&self) -> usize {
        self.len
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Big-endian hex, `ceil(len / 4)` digits.
    pub fn to_hex(&self) -> String {
        words_to_hex(&self.words, self.len)
    }
}

impl Ord for CanonicalKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for CanonicalKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn words_to_hex(words: &[u64], len: usize) -> String {
    let digits = len.div_ceil(4).max(1);
    let mut s = String::with_capacity(digits);
    for d in (0..digits).rev() {
        let bit = d * 4;
        let nibble = (words.get(bit / 64).copied().unwrap_or(0) >> (bit % 64)) & 0xf;
        s.push(char::from_digit(nibble as u32, 16).unwrap());
    }
    s
}

/// Zero pattern of an order-`m`, dimension-`n` nonnegative tensor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanTensor {
    order: usize,
    dim: usize,
    len: usize,
    words: Vec<u64>,
}

impl fmt::Debug for BooleanTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BooleanTensor")
            .field("order", &self.order)
            .field("dim", &self.dim)
            .field("bits", &self.to_dense_string())
            .finish()
    }
}

impl BooleanTensor {
    /// All-zero pattern. Order 1 is accepted so that slices of matrices are representable.
    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder { order, min: 1 });
        }
        let len = checked_len(order, dim)?;
        Ok(BooleanTensor {
            order,
            dim,
            len,
            words: vec![0; len.div_ceil(64)],
        })
    }

    /// The all-ones pattern `J`.
    pub fn ones(order: usize, dim: usize) -> Result<Self> {
        let mut t = Self::zeros(order, dim)?;
        t.words.iter_mut().for_each(|w| *w = !0);
        t.clear_tail();
        Ok(t)
    }

    /// Pattern with ones exactly at the listed 1-based positions. Duplicates are harmless.
    pub fn from_ones(order: usize, dim: usize, ones: &[MultiIndex]) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder { order, min: 2 });
        }
        let mut t = Self::zeros(order, dim)?;
        for idx in ones {
            idx.validate(dim, order)?;
            let p = t.linear_index(&idx.to_zero_based());
            t.set_linear(p, true);
        }
        Ok(t)
    }

    /// Builds a pattern from a predicate over 0-based entry positions.
    pub fn from_fn(order: usize, dim: usize, mut f: impl FnMut(&[usize]) -> bool) -> Result<Self> {
        let mut t = Self::zeros(order, dim)?;
        let mut idx = vec![0; order];
        for p in 0..t.len {
            if f(&idx) {
                t.set_linear(p, true);
            }
            advance(&mut idx, dim);
        }
        Ok(t)
    }

    /// Pattern whose bit `p` is bit `p` of `bits`; needs `n^m <= 64`.
    pub fn from_pattern(order: usize, dim: usize, bits: u64) -> Result<Self> {
        let mut t = Self::zeros(order, dim)?;
        if t.len > 64 {
            return Err(Error::InvalidParameter(format!(
                "{} entries do not fit a 64-bit pattern",
                t.len
            )));
        }
        t.words[0] = bits;
        t.clear_tail();
        Ok(t)
    }

    /// Inverse of [`from_pattern`](Self::from_pattern).
    pub fn pattern(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.words[0])
    }

    /// Parses a string of `'0'`/`'1'` of length `n^m` in linear order.
    pub fn from_dense_str(order: usize, dim: usize, dense: &str) -> Result<Self> {
        let mut t = Self::zeros(order, dim)?;
        let bytes = dense.as_bytes();
        if bytes.len() != t.len {
            return Err(Error::Format(format!(
                "dense string has length {}, expected {}",
                bytes.len(),
                t.len
            )));
        }
        for (p, &b) in bytes.iter().enumerate() {
            match b {
                b'0' => {}
                b'1' => t.set_linear(p, true),
                _ => {
                    return Err(Error::Format(format!(
                        "invalid dense character {:?}",
                        b as char
                    )))
                }
            }
        }
        Ok(t)
    }

    pub fn to_dense_string(&self) -> String {
        (0..self.len)
            .map(|p| if self.get_linear(p) { '1' } else { '0' })
            .collect()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of entries, `n^m`.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of columns, `n^(m-1)`.
    #[inline]
    pub fn column_count(&self) -> usize {
        self.len / self.dim
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    pub fn get_linear(&self, p: usize) -> bool {
        debug_assert!(p < self.len);
        (self.words[p / 64] >> (p % 64)) & 1 == 1
    }

    #[inline]
    pub(crate) fn set_linear(&mut self, p: usize, v: bool) {
        let (w, b) = (p / 64, p % 64);
        if v {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    /// Linear position of a 0-based full index.
    #[inline]
    pub fn linear_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.order);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    /// Linear column number of a 0-based column index `α`.
    #[inline]
    pub fn column_number(&self, alpha: &[usize]) -> usize {
        debug_assert_eq!(alpha.len() + 1, self.order);
        alpha.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    /// Decodes a linear position into a 0-based full index.
    pub fn decode(&self, mut p: usize) -> Vec<usize> {
        let mut idx = vec![0; self.order];
        for slot in idx.iter_mut().rev() {
            *slot = p % self.dim;
            p /= self.dim;
        }
        idx
    }

    /// Entry at a 0-based full index.
    #[inline]
    pub fn get(&self, idx: &[usize]) -> bool {
        self.get_linear(self.linear_index(idx))
    }

    /// Entry at row `i` and column number `c`, both 0-based.
    #[inline]
    pub fn get_row_col(&self, i: usize, c: usize) -> bool {
        self.get_linear(i * self.column_count() + c)
    }

    /// Entry at a 1-based position.
    pub fn entry(&self, idx: &MultiIndex) -> Result<bool> {
        idx.validate(self.dim, self.order)?;
        Ok(self.get(&idx.to_zero_based()))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_all_ones(&self) -> bool {
        self.count_ones() == self.len
    }

    /// 1-based positions of the ones, in linear order.
    pub fn ones_positions(&self) -> Vec<MultiIndex> {
        (0..self.len)
            .filter(|&p| self.get_linear(p))
            .map(|p| MultiIndex::from_zero_based(&self.decode(p)))
            .collect()
    }

    /// 1-based positions of the zeros, in linear order.
    pub fn zero_positions(&self) -> Vec<MultiIndex> {
        (0..self.len)
            .filter(|&p| !self.get_linear(p))
            .map(|p| MultiIndex::from_zero_based(&self.decode(p)))
            .collect()
    }

    fn slice_range(&self, i: usize) -> std::ops::Range<usize> {
        let c = self.column_count();
        i * c..(i + 1) * c
    }

    /// Whether slice `i` (0-based) has no positive entry.
    pub(crate) fn slice_is_zero(&self, i: usize) -> bool {
        !self.slice_range(i).any(|p| self.get_linear(p))
    }

    /// Whether slice `i` (0-based) is all ones.
    pub(crate) fn slice_is_full(&self, i: usize) -> bool {
        self.slice_range(i).all(|p| self.get_linear(p))
    }

    /// The `i`-th slice (1-based): the order `m-1` pattern `(i_2..i_m) ↦ a_{i i_2..i_m}`.
    pub fn slice(&self, i: usize) -> Result<BooleanTensor> {
        if i == 0 || i > self.dim {
            return Err(Error::IndexOutOfRange {
                value: i,
                dim: self.dim,
            });
        }
        if self.order < 2 {
            return Err(Error::InvalidOrder {
                order: self.order,
                min: 2,
            });
        }
        let mut s = BooleanTensor::zeros(self.order - 1, self.dim)?;
        for (q, p) in self.slice_range(i - 1).enumerate() {
            if self.get_linear(p) {
                s.set_linear(q, true);
            }
        }
        Ok(s)
    }

    /// Linear column number of the diagonal column `(j, ..., j)`, `j` 0-based.
    #[inline]
    pub fn diagonal_column(&self, j: usize) -> usize {
        (0..self.order - 1).fold(0, |acc, _| acc * self.dim + j)
    }

    /// The majorization matrix `M_ij = a_{i j j ... j}`.
    pub fn majorization(&self) -> BooleanMatrix {
        let n = self.dim;
        let mut m = BooleanMatrix::zeros(n);
        for j in 0..n {
            let c = self.diagonal_column(j);
            for i in 0..n {
                if self.get_row_col(i, c) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Every `a_{i j ... j}` is positive.
    pub fn is_essentially_positive(&self) -> bool {
        self.majorization().is_all_ones()
    }

    /// Simultaneous relabeling: the result has `(i_1..i_m) ↦ a_{σ(i_1)..σ(i_m)}`.
    pub fn relabel(&self, perm: &Permutation) -> Result<BooleanTensor> {
        if perm.len() != self.dim {
            return Err(Error::NotPermutation { dim: self.dim });
        }
        let mut out = BooleanTensor::zeros(self.order, self.dim)?;
        let mut idx = vec![0; self.order];
        for p in 0..self.len {
            let src = idx.iter().fold(0, |acc, &i| acc * self.dim + perm.apply(i));
            if self.get_linear(src) {
                out.set_linear(p, true);
            }
            advance(&mut idx, self.dim);
        }
        Ok(out)
    }

    fn key(&self) -> CanonicalKey {
        CanonicalKey {
            len: self.len,
            words: self.words.clone(),
        }
    }

    /// The minimal key over all `n!` relabelings; equal keys iff same orbit.
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        Ok(self.canonical_form()?.0)
    }

    /// Canonical key together with the orbit size (number of distinct relabelings).
    pub fn canonical_form(&self) -> Result<(CanonicalKey, usize)> {
        if self.dim > CANONICAL_MAX_DIM {
            return Err(Error::CanonicalGuard {
                dim: self.dim,
                max: CANONICAL_MAX_DIM,
            });
        }
        let mut images: Vec<CanonicalKey> = Permutation::all(self.dim)
            .iter()
            .map(|p| self.relabel(p).map(|t| t.key()))
            .collect::<Result<_>>()?;
        images.sort();
        images.dedup();
        let size = images.len();
        Ok((images.swap_remove(0), size))
    }
}

/// Odometer increment of a 0-based index, last component fastest.
pub(crate) fn advance(idx: &mut [usize], dim: usize) {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < dim {
            return;
        }
        *slot = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn example_2_3() -> BooleanTensor {
        let zeros = ["111", "222", "333", "233", "311"].map(mi);
        BooleanTensor::from_fn(3, 3, |idx| {
            !zeros.contains(&MultiIndex::from_zero_based(idx))
        })
        .unwrap()
    }

    #[test]
    fn from_ones_lists_every_position_but_the_five_zeros() {
        let zeros = ["111", "222", "333", "233", "311"].map(mi);
        let ones: Vec<MultiIndex> = (0..27)
            .map(|p| {
                let t = BooleanTensor::zeros(3, 3).unwrap();
                MultiIndex::from_zero_based(&t.decode(p))
            })
            .filter(|i| !zeros.contains(i))
            .collect();
        let t = BooleanTensor::from_ones(3, 3, &ones).unwrap();
        assert_eq!(t, example_2_3());
        assert_eq!(t.count_ones(), 22);
    }

    #[test]
    fn empty_and_single_entry() {
        let z = BooleanTensor::from_ones(2, 2, &[]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.len(), 4);
        let one = BooleanTensor::from_ones(3, 2, &[mi("122"), mi("122")]).unwrap();
        assert_eq!(one.len(), 8);
        assert_eq!(one.count_ones(), 1);
        assert!(one.entry(&mi("122")).unwrap());
    }

    #[test]
    fn from_ones_rejects_bad_indices() {
        assert_eq!(
            BooleanTensor::from_ones(3, 2, &[mi("132")]),
            Err(Error::IndexOutOfRange { value: 3, dim: 2 })
        );
        assert_eq!(
            BooleanTensor::from_ones(3, 2, &[mi("12")]),
            Err(Error::IndexLength {
                got: 2,
                expected: 3
            })
        );
        assert!(BooleanTensor::from_ones(3, 2, &[MultiIndex::new(vec![0, 1, 1])]).is_err());
    }

    #[test]
    fn storage_guard() {
        assert!(matches!(
            BooleanTensor::zeros(35, 2),
            Err(Error::TooLarge { .. })
        ));
        assert!(BooleanTensor::zeros(34, 2).is_ok() || cfg!(target_pointer_width = "32"));
        assert_eq!(BooleanTensor::zeros(2, 0), Err(Error::InvalidDim));
    }

    #[test]
    fn entries_of_example_2_3() {
        let t = example_2_3();
        assert!(!t.entry(&mi("233")).unwrap());
        assert!(t.entry(&mi("123")).unwrap());
        let z = BooleanTensor::zeros(3, 3).unwrap();
        assert!(z.zero_positions().iter().all(|i| !z.entry(i).unwrap()));
        assert!(t.entry(&mi("423")).is_err());
    }

    #[test]
    fn slice_two_of_example_2_3() {
        let s = example_2_3().slice(2).unwrap();
        assert_eq!(s.order(), 2);
        assert_eq!(s.zero_positions(), vec![mi("22"), mi("33")]);
        assert!(example_2_3().slice(4).is_err());
        assert!(BooleanTensor::ones(4, 3)
            .unwrap()
            .slice(1)
            .unwrap()
            .is_all_ones());
    }

    #[test]
    fn majorization_of_example_2_3() {
        let m = example_2_3().majorization();
        assert_eq!(
            m.to_rows(),
            vec![vec![0, 1, 1], vec![1, 0, 0], vec![0, 1, 0]]
        );
        assert!(!example_2_3().is_essentially_positive());
        assert!(BooleanTensor::ones(3, 4).unwrap().is_essentially_positive());
    }

    #[test]
    fn relabel_by_three_cycle_matches_reindexing() {
        let t = example_2_3();
        // σ = (1 2 3): 1 -> 2, 2 -> 3, 3 -> 1
        let sigma = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        let r = t.relabel(&sigma).unwrap();
        // zeros of r are positions whose image under σ is a zero of t
        let expect: Vec<MultiIndex> = t
            .zero_positions()
            .iter()
            .map(|z| {
                let inv = sigma.inverse();
                MultiIndex::new(
                    z.to_zero_based()
                        .iter()
                        .map(|&i| inv.apply(i) + 1)
                        .collect(),
                )
            })
            .collect();
        let mut got = r.zero_positions();
        let mut expect = expect;
        got.sort();
        expect.sort();
        assert_eq!(got, expect);
        assert_eq!(r.relabel(&sigma.inverse()).unwrap(), t);
        assert_eq!(t.relabel(&Permutation::identity(3)).unwrap(), t);
    }

    #[test]
    fn permutations_are_complete_and_validated() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert!(Permutation::from_one_based(&[1, 1, 2]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(example_2_3().relabel(&Permutation::identity(2)).is_err());
    }

    #[test]
    fn canonical_key_of_all_ones_is_itself() {
        let j = BooleanTensor::ones(3, 3).unwrap();
        let (k, size) = j.canonical_form().unwrap();
        assert_eq!(k.words(), &[j.pattern().unwrap()]);
        assert_eq!(size, 1);
        assert!(BooleanTensor::ones(2, 9).unwrap().canonical_key().is_err());
    }

    #[test]
    fn orbits_of_order_three_dimension_two() {
        // Independent count: pairwise relabel comparison without canonical keys.
        let perms = Permutation::all(2);
        let mut seen = [false; 256];
        let mut orbits = 0;
        for b in 0..256u64 {
            if seen[b as usize] {
                continue;
            }
            orbits += 1;
            let t = BooleanTensor::from_pattern(3, 2, b).unwrap();
            for p in &perms {
                seen[t.relabel(p).unwrap().pattern().unwrap() as usize] = true;
            }
        }
        assert_eq!(orbits, 136);
        let mut keys: Vec<CanonicalKey> = (0..256u64)
            .map(|b| {
                BooleanTensor::from_pattern(3, 2, b)
                    .unwrap()
                    .canonical_key()
                    .unwrap()
            })
            .collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 136);
    }

    #[test]
    fn hex_is_big_endian() {
        let t = BooleanTensor::from_pattern(3, 2, 0b1010_0001).unwrap();
        assert_eq!(t.key().to_hex(), "a1");
        let t = BooleanTensor::from_pattern(3, 3, 1 << 26).unwrap();
        assert_eq!(t.key().to_hex(), "4000000");
    }

    #[test]
    fn dense_round_trip_and_errors() {
        let t = example_2_3();
        let d = t.to_dense_string();
        assert_eq!(BooleanTensor::from_dense_str(3, 3, &d).unwrap(), t);
        assert!(BooleanTensor::from_dense_str(3, 3, "01").is_err());
        assert!(BooleanTensor::from_dense_str(2, 1, "2").is_err());
    }

    #[test]
    fn multi_index_parsing() {
        assert_eq!(mi("2,1,2"), MultiIndex::new(vec![2, 1, 2]));
        assert_eq!(mi("(1,1)"), MultiIndex::new(vec![1, 1]));
        assert_eq!(mi("2122"), MultiIndex::new(vec![2, 1, 2, 2]));
        assert!("x".parse::<MultiIndex>().is_err());
    }
}
