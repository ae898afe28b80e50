//! Structural necessary conditions, the `n = 2` classification, and explicit
//! zero-entry witnesses from the slice arguments.

use std::sync::Arc;

use serde::Serialize;

use crate::engine::support::column_support_at;
use crate::engine::NestedIndex;
use crate::error::{Error, Result};
use crate::tensor::{BooleanTensor, MultiIndex};

/// Bits of [`FilterReport::bits`]; a set bit means the check fired against the tensor.
pub mod bits {
    /// Some column of `A` is zero.
    pub const ZERO_COLUMN: u32 = 1 << 0;
    /// Some slice of `A` is zero.
    pub const ZERO_SLICE: u32 = 1 << 1;
    /// Some column of `M(A)` has no off-diagonal positive.
    pub const NO_OFF_DIAGONAL: u32 = 1 << 2;
    /// No column of `M(A)` has two positives.
    pub const NO_DOUBLE_COLUMN: u32 = 1 << 3;
    /// `M(A)` has an isolated 2-cycle.
    pub const ISOLATED_TWO_CYCLE: u32 = 1 << 4;
    /// Every `s` has a column supported inside `{s}`.
    pub const NEAR_SINGLETON_COLUMNS: u32 = 1 << 5;
}

/// Outcome of every structural check, `true` meaning the condition holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilterReport {
    /// Every column `α` has some `a_{iα} > 0`.
    pub prop_2_1: bool,
    /// Every slice has a positive entry.
    pub prop_2_9: bool,
    /// Every column `j` of `M(A)` has a positive entry off the diagonal.
    pub prop_2_5_1: bool,
    /// Some column of `M(A)` has at least two positive entries.
    pub prop_2_5_2: bool,
    /// Same condition as `prop_2_5_2`; it is necessary for strong primitivity
    /// but is not used on its own to reject anything.
    pub prop_2_6: bool,
    /// A pair `(i, j)`, 1-based, where column `i` of `M(A)` is supported on
    /// exactly `{j}` and column `j` on exactly `{i}`.
    pub prop_4_3: Option<(usize, usize)>,
    /// For each `s`, a column whose support lies in `{s}`.
    pub thm_4_2: Option<Vec<MultiIndex>>,
    pub not_primitive: bool,
    pub not_strongly_primitive: bool,
}

impl FilterReport {
    pub fn bits(&self) -> u32 {
        let mut b = 0;
        if !self.prop_2_1 {
            b |= bits::ZERO_COLUMN;
        }
        if !self.prop_2_9 {
            b |= bits::ZERO_SLICE;
        }
        if !self.prop_2_5_1 {
            b |= bits::NO_OFF_DIAGONAL;
        }
        if !self.prop_2_5_2 {
            b |= bits::NO_DOUBLE_COLUMN;
        }
        if self.prop_4_3.is_some() {
            b |= bits::ISOLATED_TWO_CYCLE;
        }
        if self.thm_4_2.is_some() {
            b |= bits::NEAR_SINGLETON_COLUMNS;
        }
        b
    }
}

/// Which verdicts a set of filter bits rules out: `(not_primitive, not_strongly_primitive)`.
pub fn conclusions(b: u32) -> (bool, bool) {
    let not_primitive =
        b & (bits::NO_OFF_DIAGONAL | bits::NO_DOUBLE_COLUMN | bits::ISOLATED_TWO_CYCLE) != 0;
    let not_strong = not_primitive
        || b & (bits::ZERO_COLUMN | bits::ZERO_SLICE | bits::NEAR_SINGLETON_COLUMNS) != 0;
    (not_primitive, not_strong)
}

/// Runs every check by direct scan. The majorization and near-singleton checks
/// only apply for `n >= 2`.
pub fn filter_report(t: &BooleanTensor) -> FilterReport {
    let n = t.dim();
    let cols = t.column_count();
    let mut prop_2_1 = true;
    let mut near: Vec<Option<usize>> = vec![None; n];
    let mut zero_col = None;
    for c in 0..cols {
        let s = column_support_at(t, c);
        if s.is_empty() {
            prop_2_1 = false;
            zero_col.get_or_insert(c);
        } else if s.len() == 1 {
            let e = s.iter().next().unwrap();
            near[e].get_or_insert(c);
        }
    }
    let prop_2_9 = (0..n).all(|i| !t.slice_is_zero(i));

    let mm = t.majorization();
    let (prop_2_5_1, prop_2_5_2, prop_4_3, thm_4_2);
    if n >= 2 {
        prop_2_5_1 = (0..n).all(|j| (0..n).any(|i| i != j && mm.get(i, j)));
        prop_2_5_2 = (0..n).any(|j| mm.column_count(j) >= 2);
        let only = |col: usize, row: usize| (0..n).all(|u| mm.get(u, col) == (u == row));
        prop_4_3 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && only(i, j) && only(j, i))
            .map(|(i, j)| (i + 1, j + 1));
        thm_4_2 = (0..n)
            .map(|s| near[s].or(zero_col))
            .collect::<Option<Vec<usize>>>()
            .map(|v| v.into_iter().map(|c| column_index(t, c)).collect());
    } else {
        prop_2_5_1 = true;
        prop_2_5_2 = true;
        prop_4_3 = None;
        thm_4_2 = None;
    }
    let mut r = FilterReport {
        prop_2_1,
        prop_2_9,
        prop_2_5_1,
        prop_2_5_2,
        prop_2_6: prop_2_5_2,
        prop_4_3,
        thm_4_2,
        not_primitive: false,
        not_strongly_primitive: false,
    };
    (r.not_primitive, r.not_strongly_primitive) = conclusions(r.bits());
    r
}

/// [`FilterReport::bits`] without building the report; used inside enumeration loops.
pub fn filter_bits(t: &BooleanTensor) -> u32 {
    let n = t.dim();
    let mut b = 0;
    let mut near = 0u64;
    let mut zero_col = false;
    for c in 0..t.column_count() {
        let s = column_support_at(t, c);
        if s.is_empty() {
            zero_col = true;
        } else if s.len() == 1 {
            near |= s.mask();
        }
    }
    if zero_col {
        b |= bits::ZERO_COLUMN;
    }
    if (0..n).any(|i| t.slice_is_zero(i)) {
        b |= bits::ZERO_SLICE;
    }
    if n >= 2 {
        let cols: Vec<u64> = (0..n)
            .map(|j| column_support_at(t, t.diagonal_column(j)).mask())
            .collect();
        if cols.iter().enumerate().any(|(j, &c)| c & !(1 << j) == 0) {
            b |= bits::NO_OFF_DIAGONAL;
        }
        if cols.iter().all(|c| c.count_ones() < 2) {
            b |= bits::NO_DOUBLE_COLUMN;
        }
        let cycle =
            (0..n).any(|i| (0..n).any(|j| i != j && cols[i] == 1 << j && cols[j] == 1 << i));
        if cycle {
            b |= bits::ISOLATED_TWO_CYCLE;
        }
        if zero_col || near.count_ones() as usize == n {
            b |= bits::NEAR_SINGLETON_COLUMNS;
        }
    }
    b
}

fn column_index(t: &BooleanTensor, mut c: usize) -> MultiIndex {
    let n = t.dim();
    let mut alpha = vec![0; t.order() - 1];
    for slot in alpha.iter_mut().rev() {
        *slot = c % n;
        c /= n;
    }
    MultiIndex::from_zero_based(&alpha)
}

/// The `n = 2` strong primitivity cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum N2Class {
    /// All ones.
    CaseA,
    /// Slice 1 all ones and `a_{21...1} = 1`.
    CaseB,
    /// Slice 2 all ones and `a_{12...2} = 1`.
    CaseC,
    NotStronglyPrimitive,
}

impl N2Class {
    pub fn is_strongly_primitive(self) -> bool {
        self != N2Class::NotStronglyPrimitive
    }
}

pub fn classify_n2(t: &BooleanTensor) -> Result<N2Class> {
    if t.dim() != 2 {
        return Err(Error::InvalidParameter(format!(
            "classification needs dimension 2, got {}",
            t.dim()
        )));
    }
    let m = t.order();
    Ok(if t.is_all_ones() {
        N2Class::CaseA
    } else if t.slice_is_full(0) && t.get(&diag(m, 1, 0)) {
        N2Class::CaseB
    } else if t.slice_is_full(1) && t.get(&diag(m, 0, 1)) {
        N2Class::CaseC
    } else {
        N2Class::NotStronglyPrimitive
    })
}

fn diag(m: usize, row: usize, col: usize) -> Vec<usize> {
    let mut v = vec![col; m];
    v[0] = row;
    v
}

fn entry_at(t: &BooleanTensor, row0: usize, alpha: &MultiIndex) -> bool {
    let mut idx = Vec::with_capacity(t.order());
    idx.push(row0);
    idx.extend(alpha.to_zero_based());
    t.get(&idx)
}

/// Zeros of `A^2` in rows 1 and 2 of an `n = 2` tensor with `a_{1α_1} = a_{2α_2} = 0`.
///
/// Block `t` of the row-1 column is `α_2` where the `t`-th letter of `α_1` is 1 and
/// `α_1` otherwise; the row-2 column is built the same way from the letters of `α_2`.
pub fn lemma_3_6_witness(
    t: &BooleanTensor,
    alpha1: &MultiIndex,
    alpha2: &MultiIndex,
) -> Result<(NestedIndex, NestedIndex)> {
    if t.dim() != 2 {
        return Err(Error::InvalidParameter("witness needs dimension 2".into()));
    }
    let arity = t.order() - 1;
    alpha1.validate(2, arity)?;
    alpha2.validate(2, arity)?;
    if entry_at(t, 0, alpha1) || entry_at(t, 1, alpha2) {
        return Err(Error::Precondition(format!(
            "need a_(1,{alpha1}) = a_(2,{alpha2}) = 0"
        )));
    }
    let c1 = Arc::new(NestedIndex::column(alpha1));
    let c2 = Arc::new(NestedIndex::column(alpha2));
    let build = |letters: &MultiIndex| {
        NestedIndex::node_shared(
            letters
                .as_slice()
                .iter()
                .map(|&l| if l == 1 { c2.clone() } else { c1.clone() })
                .collect(),
        )
    };
    Ok((build(alpha1), build(alpha2)))
}

/// One zero of `A^level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroWitness {
    pub level: usize,
    /// 1-based row.
    pub row: usize,
    /// The column is built from `α_k`; it is zero in every row except possibly `k`.
    pub k: usize,
    pub column: NestedIndex,
}

/// Zeros of `A^r` for `r = 1..=depth`, given columns `α_1, ..., α_n` with
/// `support(α_s) ⊆ {s}`.
///
/// The level-`r` column `ε_k` has block `t` equal to the level-`(r-1)` column
/// `ε_{j_t}`, where `α_k = j_2 ... j_m`; `(A^r)_{i ε_k} = 0` for every `i != k`.
pub fn thm_4_2_witness(
    t: &BooleanTensor,
    alphas: &[MultiIndex],
    depth: usize,
) -> Result<Vec<ZeroWitness>> {
    let n = t.dim();
    let arity = t.order() - 1;
    if alphas.len() != n {
        return Err(Error::InvalidParameter(format!(
            "need {n} columns, got {}",
            alphas.len()
        )));
    }
    for (s, a) in alphas.iter().enumerate() {
        a.validate(n, arity)?;
        if let Some(i) = (0..n).find(|&i| i != s && entry_at(t, i, a)) {
            return Err(Error::Precondition(format!(
                "column {a} is positive in row {} but may only be positive in row {}",
                i + 1,
                s + 1
            )));
        }
    }
    let mut level: Vec<Arc<NestedIndex>> = alphas
        .iter()
        .map(|a| Arc::new(NestedIndex::column(a)))
        .collect();
    let mut out = Vec::new();
    for r in 1..=depth {
        if r > 1 {
            level = alphas
                .iter()
                .map(|a| {
                    Arc::new(NestedIndex::node_shared(
                        a.as_slice().iter().map(|&j| level[j - 1].clone()).collect(),
                    ))
                })
                .collect();
        }
        for i in 0..n {
            for (k, col) in level.iter().enumerate() {
                if k != i {
                    out.push(ZeroWitness {
                        level: r,
                        row: i + 1,
                        k: k + 1,
                        column: (**col).clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// A column of each support `⊆ {s}`, when every `s` has one (1-based, in order of `s`).
pub fn near_singleton_columns(t: &BooleanTensor) -> Option<Vec<MultiIndex>> {
    filter_report(t).thm_4_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{a_k_tensor, named_example, NamedExample};
    use crate::engine::{eta, power_entry};

    #[test]
    fn a_k_fails_prop_2_1() {
        let r = filter_report(&a_k_tensor(3, 4, 1).unwrap());
        assert!(!r.prop_2_1);
        assert!(r.not_strongly_primitive);
        assert!(!r.not_primitive);
    }

    #[test]
    fn all_ones_passes_everything() {
        let r = filter_report(&BooleanTensor::ones(3, 3).unwrap());
        assert_eq!(r.bits(), 0);
        assert!(r.prop_2_1 && r.prop_2_9 && r.prop_2_5_1 && r.prop_2_5_2 && r.prop_2_6);
        assert!(!r.not_primitive && !r.not_strongly_primitive);
        assert_eq!(filter_bits(&BooleanTensor::ones(3, 1).unwrap()), 0);
    }

    #[test]
    fn one_zero_per_slice_is_caught() {
        let t = BooleanTensor::from_fn(3, 2, |i| i != [0, 1, 0] && i != [1, 0, 1]).unwrap();
        let r = filter_report(&t);
        assert_eq!(
            r.thm_4_2,
            Some(vec![
                MultiIndex::new(vec![1, 2]),
                MultiIndex::new(vec![2, 1])
            ])
        );
        assert!(r.not_strongly_primitive);
        assert!(eta(&t).unwrap().degree().is_none());
    }

    #[test]
    fn two_cycle_is_detected() {
        let t = BooleanTensor::from_fn(3, 2, |i| !(i[1] == i[2] && i[0] == i[1])).unwrap();
        assert_eq!(filter_report(&t).prop_4_3, Some((1, 2)));
        assert!(filter_report(&t).not_primitive);
    }

    #[test]
    fn fast_bits_match_the_report() {
        for p in 0..256u64 {
            let t = BooleanTensor::from_pattern(3, 2, p).unwrap();
            assert_eq!(filter_bits(&t), filter_report(&t).bits(), "{p:#x}");
        }
        for p in (0..1u64 << 27).step_by(99991) {
            let t = BooleanTensor::from_pattern(3, 3, p).unwrap();
            assert_eq!(filter_bits(&t), filter_report(&t).bits(), "{p:#x}");
        }
    }

    #[test]
    fn classify_cases() {
        let j = BooleanTensor::ones(3, 2).unwrap();
        assert_eq!(classify_n2(&j).unwrap(), N2Class::CaseA);
        let b = BooleanTensor::from_fn(3, 2, |i| i != [1, 1, 1]).unwrap();
        assert_eq!(classify_n2(&b).unwrap(), N2Class::CaseB);
        assert_eq!(eta(&b).unwrap().degree(), Some(2));
        let c = BooleanTensor::from_fn(3, 2, |i| i != [0, 0, 0]).unwrap();
        assert_eq!(classify_n2(&c).unwrap(), N2Class::CaseC);
        let z = BooleanTensor::from_fn(3, 2, |i| i != [0, 0, 0] && i != [1, 1, 1]).unwrap();
        assert_eq!(classify_n2(&z).unwrap(), N2Class::NotStronglyPrimitive);
        assert!(classify_n2(&BooleanTensor::ones(3, 3).unwrap()).is_err());
    }

    #[test]
    fn example_3_5_witnesses() {
        let t = named_example(NamedExample::Example3_5).unwrap();
        let a1: MultiIndex = "2122".parse().unwrap();
        let a2: MultiIndex = "1121".parse().unwrap();
        let (beta, gam) = lemma_3_6_witness(&t, &a1, &a2).unwrap();
        assert_eq!(
            beta.to_blocks_string(),
            "[2,1,2,2],[1,1,2,1],[2,1,2,2],[2,1,2,2]"
        );
        assert_eq!(
            gam.to_blocks_string(),
            "[1,1,2,1],[1,1,2,1],[2,1,2,2],[1,1,2,1]"
        );
        assert!(!power_entry(&t, 2, 1, &beta).unwrap());
        assert!(!power_entry(&t, 2, 2, &gam).unwrap());
        assert!(lemma_3_6_witness(&t, &a2, &a1).is_err());
    }

    #[test]
    fn theorem_witnesses_reduce_to_lemma_for_n2() {
        let t = named_example(NamedExample::Example3_5).unwrap();
        let a1: MultiIndex = "2122".parse().unwrap();
        let a2: MultiIndex = "1121".parse().unwrap();
        let (beta, gam) = lemma_3_6_witness(&t, &a1, &a2).unwrap();
        let w = thm_4_2_witness(&t, &[a2.clone(), a1.clone()], 2).unwrap();
        let level2: Vec<&ZeroWitness> = w.iter().filter(|z| z.level == 2).collect();
        assert_eq!(level2.len(), 2);
        assert_eq!((level2[0].row, &level2[0].column), (1, &beta));
        assert_eq!((level2[1].row, &level2[1].column), (2, &gam));
    }

    #[test]
    fn theorem_witnesses_for_n3() {
        // Columns (1,2), (2,3), (3,1) are supported on {1}, {2}, {3}.
        let keep = [[0usize, 0, 1], [1, 1, 2], [2, 2, 0]];
        let t = BooleanTensor::from_fn(3, 3, |i| {
            let (row, col) = (i[0], [i[1], i[2]]);
            match keep.iter().position(|k| k[1..] == col) {
                Some(s) => row == s,
                None => true,
            }
        })
        .unwrap();
        let alphas = near_singleton_columns(&t).unwrap();
        let w = thm_4_2_witness(&t, &alphas, 3).unwrap();
        assert_eq!(w.len(), 18);
        for z in &w {
            assert!(
                !power_entry(&t, z.level, z.row, &z.column).unwrap(),
                "{z:?}"
            );
        }
        assert!(eta(&t).unwrap().degree().is_none());
    }

    #[test]
    fn theorem_witnesses_reject_bad_columns() {
        let t = BooleanTensor::ones(3, 2).unwrap();
        let a = vec![MultiIndex::new(vec![1, 1]), MultiIndex::new(vec![1, 2])];
        assert!(matches!(
            thm_4_2_witness(&t, &a, 2),
            Err(Error::Precondition(_))
        ));
        let z = BooleanTensor::zeros(3, 3).unwrap();
        let a: Vec<MultiIndex> = (0..3).map(|_| MultiIndex::new(vec![1, 1])).collect();
        assert_eq!(thm_4_2_witness(&z, &a, 2).unwrap().len(), 12);
    }
}
