use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tensor::{BooleanTensor, MultiIndex};

/// Largest dimension a [`SupportSet`] can represent.
pub const MAX_SUPPORT_DIM: usize = 64;

/// Largest `n * (m - 1)` for which the contraction map uses a dense table.
pub const DENSE_TABLE_BITS: usize = 20;

/// A subset of `[n]` as a bit mask (bit `i` is the 0-based row `i`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSet(u64);

impl SupportSet {
    pub const EMPTY: SupportSet = SupportSet(0);

    pub fn from_mask(mask: u64) -> Self {
        SupportSet(mask)
    }

    pub fn full(n: usize) -> Self {
        SupportSet(full_mask(n))
    }

    pub fn singleton(i: usize) -> Self {
        SupportSet(1 << i)
    }

    /// From 1-based elements.
    pub fn from_one_based(elements: &[usize]) -> Self {
        SupportSet(elements.iter().fold(0, |m, &e| m | 1 << (e - 1)))
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub fn is_full(self, n: usize) -> bool {
        self.0 == full_mask(n)
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: SupportSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// 0-based elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                i
            })
        })
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Smallest 0-based row in `[n]` outside the set.
    pub fn first_missing(self, n: usize) -> Option<usize> {
        (0..n).find(|&i| !self.contains(i))
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for SupportSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SupportSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.iter().any(|&e| e == 0 || e > MAX_SUPPORT_DIM) {
            return Err(serde::de::Error::custom("support element out of range"));
        }
        Ok(SupportSet::from_one_based(&v))
    }
}

pub(crate) fn check_engine_shape(t: &BooleanTensor) -> Result<()> {
    if t.order() < 2 {
        return Err(Error::InvalidOrder {
            order: t.order(),
            min: 2,
        });
    }
    if t.dim() > MAX_SUPPORT_DIM {
        return Err(Error::EngineDim {
            dim: t.dim(),
            max: MAX_SUPPORT_DIM,
        });
    }
    Ok(())
}

/// `{ i : a_{iα} = 1 }` for a 1-based column `α`.
pub fn column_support(t: &BooleanTensor, alpha: &MultiIndex) -> Result<SupportSet> {
    check_engine_shape(t)?;
    alpha.validate(t.dim(), t.order() - 1)?;
    let c = t.column_number(&alpha.to_zero_based());
    Ok(column_support_at(t, c))
}

pub(crate) fn column_support_at(t: &BooleanTensor, c: usize) -> SupportSet {
    let mut mask = 0;
    for i in 0..t.dim() {
        if t.get_row_col(i, c) {
            mask |= 1 << i;
        }
    }
    SupportSet(mask)
}

/// `g(c_2..c_m) = { i : some a_{i i_2..i_m} = 1 with every i_j ∈ c_j }`.
///
/// When `c_j` is the column support of `A^(k-1)` at block `α_j`, the result is
/// the column support of `A^k` at `(α_2, ..., α_m)`.
pub fn g_map(t: &BooleanTensor, supports: &[SupportSet]) -> Result<SupportSet> {
    check_engine_shape(t)?;
    let mut map = SupportMap::new(t);
    if supports.len() != map.arity() {
        return Err(Error::Arity {
            expected: map.arity(),
            got: supports.len(),
        });
    }
    Ok(map.eval(supports))
}

enum Memo {
    /// Indexed by the concatenated masks; holds `g + 1`, with 0 marking an unfilled slot.
    Dense(Vec<u64>),
    Sparse(HashMap<Box<[u64]>, u64>),
}

/// Per-tensor evaluator of [`g_map`] with memoization.
pub struct SupportMap {
    dim: usize,
    arity: usize,
    columns: Vec<u64>,
    memo: Memo,
}

impl SupportMap {
    /// The tensor must satisfy the engine shape limits (order ≥ 2, `n ≤ 64`).
    pub fn new(t: &BooleanTensor) -> Self {
        let dim = t.dim();
        let arity = t.order() - 1;
        let columns = (0..t.column_count())
            .map(|c| column_support_at(t, c).mask())
            .collect();
        let memo = if dim * arity <= DENSE_TABLE_BITS {
            Memo::Dense(vec![0; 1 << (dim * arity)])
        } else {
            Memo::Sparse(HashMap::new())
        };
        SupportMap {
            dim,
            arity,
            columns,
            memo,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of supports `g` takes, `m - 1`.
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Column support at a linear column number.
    pub fn column(&self, c: usize) -> SupportSet {
        SupportSet(self.columns[c])
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn eval(&mut self, supports: &[SupportSet]) -> SupportSet {
        debug_assert_eq!(supports.len(), self.arity);
        let mut masks = [0u64; 8];
        if self.arity <= masks.len() {
            for (m, s) in masks.iter_mut().zip(supports) {
                *m = s.0;
            }
            SupportSet(self.eval_masks(&mut masks[..self.arity]))
        } else {
            let mut masks: Vec<u64> = supports.iter().map(|s| s.0).collect();
            SupportSet(self.eval_masks(&mut masks))
        }
    }

    /// `g(s, s, ..., s)`.
    pub fn eval_diagonal(&mut self, s: SupportSet) -> SupportSet {
        let v = vec![s; self.arity];
        self.eval(&v)
    }

    fn eval_masks(&mut self, masks: &mut [u64]) -> u64 {
        if masks.contains(&0) {
            return 0;
        }
        match &self.memo {
            Memo::Dense(table) => {
                let idx = dense_index(masks, self.dim);
                if table[idx] != 0 {
                    return table[idx] - 1;
                }
                let v = self.split(masks);
                if let Memo::Dense(table) = &mut self.memo {
                    table[idx] = v + 1;
                }
                v
            }
            Memo::Sparse(map) => {
                if let Some(&v) = map.get(&*masks) {
                    return v;
                }
                let v = self.enumerate(masks);
                if let Memo::Sparse(map) = &mut self.memo {
                    map.insert(masks.into(), v);
                }
                v
            }
        }
    }

    /// Splits the first non-singleton support at its lowest element; `g` is a
    /// union over each argument, so both halves combine by OR.
    fn split(&mut self, masks: &mut [u64]) -> u64 {
        match masks.iter().position(|m| m & (m - 1) != 0) {
            None => {
                let c = masks
                    .iter()
                    .fold(0, |acc, m| acc * self.dim + m.trailing_zeros() as usize);
                self.columns[c]
            }
            Some(p) => {
                let orig = masks[p];
                let low = orig & orig.wrapping_neg();
                masks[p] = orig & !low;
                let rest = self.eval_masks(masks);
                masks[p] = low;
                let single = self.eval_masks(masks);
                masks[p] = orig;
                rest | single
            }
        }
    }

    fn enumerate(&self, masks: &[u64]) -> u64 {
        fn go(map: &SupportMap, masks: &[u64], pos: usize, acc: usize, out: &mut u64) {
            if pos == masks.len() {
                *out |= map.columns[acc];
                return;
            }
            for i in SupportSet(masks[pos]).iter() {
                go(map, masks, pos + 1, acc * map.dim + i, out);
            }
        }
        let mut out = 0;
        go(self, masks, 0, 0, &mut out);
        out
    }
}

#[inline]
fn dense_index(masks: &[u64], dim: usize) -> usize {
    masks.iter().fold(0, |acc, &m| (acc << dim) | m as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{named_example, NamedExample};

    fn ex23() -> BooleanTensor {
        named_example(NamedExample::Example2_3).unwrap()
    }

    /// Straight from the definition: scan every entry of the slice.
    fn g_oracle(t: &BooleanTensor, supports: &[SupportSet]) -> SupportSet {
        let mut out = SupportSet::EMPTY;
        for p in 0..t.len() {
            let idx = t.decode(p);
            if t.get_linear(p) && idx[1..].iter().zip(supports).all(|(&i, s)| s.contains(i)) {
                out = SupportSet(out.0 | 1 << idx[0]);
            }
        }
        out
    }

    #[test]
    fn column_supports_of_example_2_3() {
        let t = ex23();
        let s = column_support(&t, &MultiIndex::new(vec![1, 1])).unwrap();
        assert_eq!(s, SupportSet::from_one_based(&[2]));
        for j in 1..=3 {
            let s = column_support(&t, &MultiIndex::repeated(j, 2)).unwrap();
            let m = t.majorization();
            assert_eq!(
                s.to_one_based(),
                (1..=3).filter(|&i| m.get(i - 1, j - 1)).collect::<Vec<_>>()
            );
        }
        let j = BooleanTensor::ones(4, 3).unwrap();
        assert!(column_support(&j, &MultiIndex::new(vec![1, 2, 3]))
            .unwrap()
            .is_full(3));
    }

    #[test]
    fn g_map_basic_cases() {
        let t = ex23();
        let one = SupportSet::from_one_based(&[1]);
        assert_eq!(
            g_map(&t, &[one, one]).unwrap(),
            SupportSet::from_one_based(&[2])
        );
        let full = SupportSet::full(3);
        let nonzero_slices: Vec<usize> = (0..3).filter(|&i| !t.slice_is_zero(i)).collect();
        assert_eq!(
            g_map(&t, &[full, full]).unwrap().iter().collect::<Vec<_>>(),
            nonzero_slices
        );
        assert_eq!(
            g_map(&t, &[SupportSet::EMPTY, full]).unwrap(),
            SupportSet::EMPTY
        );
        assert_eq!(
            g_map(&t, &[full]),
            Err(Error::Arity {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn dense_and_sparse_memo_agree_with_definition() {
        // n(m-1) = 6 uses the dense table, n(m-1) = 24 the sparse one.
        let mut state = 7u64;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state >> 33
        };
        for (order, dim) in [(3, 3), (4, 2), (4, 8), (2, 5)] {
            let t = BooleanTensor::from_fn(order, dim, |_| next() % 3 != 0).unwrap();
            let mut map = SupportMap::new(&t);
            for _ in 0..200 {
                let s: Vec<SupportSet> = (0..order - 1)
                    .map(|_| SupportSet(next() & full_mask(dim)))
                    .collect();
                assert_eq!(map.eval(&s), g_oracle(&t, &s));
            }
        }
    }

    #[test]
    fn support_set_helpers() {
        let s = SupportSet::from_one_based(&[1, 3]);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(s.first_missing(3), Some(1));
        assert_eq!(SupportSet::full(3).first_missing(3), None);
        assert!(s.is_subset(SupportSet::full(3)));
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3]");
        assert_eq!(serde_json::from_str::<SupportSet>("[1,3]").unwrap(), s);
        assert!(SupportSet::full(64).is_full(64));
    }

    #[test]
    fn engine_rejects_oversized_dimension() {
        let t = BooleanTensor::zeros(2, 65).unwrap();
        assert!(matches!(
            g_map(&t, &[SupportSet::EMPTY]),
            Err(Error::EngineDim { .. })
        ));
    }
}
