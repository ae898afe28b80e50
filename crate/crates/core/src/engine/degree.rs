//! Primitive degree `γ` and strongly primitive degree `η`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::engine::certificate::Certificate;
use crate::engine::family::{FamilyTrace, Realizer};
use crate::engine::nested::NestedIndex;
use crate::engine::support::{check_engine_shape, SupportMap, SupportSet};
use crate::error::Result;
use crate::matrix::wielandt_bound;
use crate::tensor::BooleanTensor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaResult {
    Degree(usize),
    NotStronglyPrimitive(Certificate),
}

impl EtaResult {
    pub fn degree(&self) -> Option<usize> {
        match self {
            EtaResult::Degree(k) => Some(*k),
            EtaResult::NotStronglyPrimitive(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            EtaResult::Degree(_) => None,
            EtaResult::NotStronglyPrimitive(c) => Some(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaResult {
    Degree(usize),
    NotPrimitive(Certificate),
}

impl GammaResult {
    pub fn degree(&self) -> Option<usize> {
        match self {
            GammaResult::Degree(r) => Some(*r),
            GammaResult::NotPrimitive(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            GammaResult::Degree(_) => None,
            GammaResult::NotPrimitive(c) => Some(c),
        }
    }
}

/// Least `k` with `A^k > 0`.
///
/// Iterates support families level by level. The step map is deterministic on
/// a finite state space, so either `{[n]}` is reached or a family repeats; a
/// repeat yields a [`Certificate::SupportCycle`]. No bound on `η` is assumed.
pub fn eta(t: &BooleanTensor) -> Result<EtaResult> {
    let mut trace = FamilyTrace::new(t)?;
    let n = t.dim();
    if let Some(Realizer::Column(alpha)) = trace.level(1).realizer_of(SupportSet::EMPTY) {
        return Ok(EtaResult::NotStronglyPrimitive(Certificate::ZeroColumn {
            column: alpha.clone(),
        }));
    }
    let mut seen: HashMap<Vec<SupportSet>, usize> = HashMap::new();
    loop {
        let k = trace.depth();
        let f = trace.last();
        if f.is_full_only(n) {
            return Ok(EtaResult::Degree(k));
        }
        match seen.entry(f.members().to_vec()) {
            Entry::Occupied(e) => {
                let start = *e.get();
                let member = trace
                    .level(start)
                    .first_non_full(n)
                    .expect("non-positive level has a non-full member");
                let column = trace.unfold(start, member).expect("member has a realizer");
                return Ok(EtaResult::NotStronglyPrimitive(Certificate::SupportCycle {
                    start,
                    period: k - start,
                    member,
                    column,
                }));
            }
            Entry::Vacant(e) => {
                e.insert(k);
            }
        }
        trace.advance();
    }
}

/// `η` without certificates; same verdicts as [`eta`], cheaper for bulk enumeration.
pub fn eta_degree(t: &BooleanTensor) -> Result<Option<usize>> {
    check_engine_shape(t)?;
    let n = t.dim();
    let mut map = SupportMap::new(t);
    let mut members: Vec<u64> = (0..map.column_count())
        .map(|c| map.column(c).mask())
        .collect();
    members.sort_unstable();
    members.dedup();
    if members[0] == 0 {
        return Ok(None);
    }
    let full = SupportSet::full(n).mask();
    let arity = map.arity();
    let mut seen: Vec<Vec<u64>> = Vec::new();
    let mut args = vec![SupportSet::EMPTY; arity];
    let mut idx = vec![0usize; arity];
    for k in 1.. {
        if members.len() == 1 && members[0] == full {
            return Ok(Some(k));
        }
        if seen.contains(&members) {
            return Ok(None);
        }
        let mut next: Vec<u64> = Vec::with_capacity(members.len());
        idx.iter_mut().for_each(|i| *i = 0);
        args.iter_mut()
            .for_each(|a| *a = SupportSet::from_mask(members[0]));
        'tuples: loop {
            let g = map.eval(&args).mask();
            if !next.contains(&g) {
                next.push(g);
            }
            let mut p = arity;
            loop {
                if p == 0 {
                    break 'tuples;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < members.len() {
                    args[p] = SupportSet::from_mask(members[idx[p]]);
                    break;
                }
                idx[p] = 0;
                args[p] = SupportSet::from_mask(members[0]);
            }
        }
        next.sort_unstable();
        seen.push(std::mem::replace(&mut members, next));
    }
    unreachable!()
}

/// Least `r` with `M(A^r) > 0`, capped at `(n-1)^2 + 1`.
///
/// Column `j` of `M(A^(k+1))` is `g(d, ..., d)` where `d` is column `j` of
/// `M(A^k)`, since the all-`j` column splits into `m - 1` all-`j` blocks.
pub fn gamma(t: &BooleanTensor) -> Result<GammaResult> {
    check_engine_shape(t)?;
    let n = t.dim();
    let cap = wielandt_bound(n);
    let mut map = SupportMap::new(t);
    let mut cols: Vec<SupportSet> = (0..n).map(|j| map.column(t.diagonal_column(j))).collect();
    for r in 1..=cap {
        if cols.iter().all(|s| s.is_full(n)) {
            return Ok(GammaResult::Degree(r));
        }
        if r < cap {
            for s in cols.iter_mut() {
                *s = map.eval_diagonal(*s);
            }
        }
    }
    let (j, s) = cols
        .iter()
        .enumerate()
        .find(|(_, s)| !s.is_full(n))
        .expect("some column is not full");
    Ok(GammaResult::NotPrimitive(Certificate::MajorizationZero {
        level: cap,
        row: s.first_missing(n).unwrap() + 1,
        column: j + 1,
    }))
}

/// A zero of `A^k` as `(row, column)`, or `None` when `A^k > 0`. `row` is 1-based.
pub fn zero_witness(t: &BooleanTensor, k: usize) -> Result<Option<(usize, NestedIndex)>> {
    if k == 0 {
        return Err(crate::error::Error::InvalidParameter(
            "power must be at least 1".into(),
        ));
    }
    let mut trace = FamilyTrace::new(t)?;
    trace.extend_to(k);
    let n = t.dim();
    Ok(trace.level(k).first_non_full(n).map(|member| {
        let column = trace.unfold(k, member).expect("member has a realizer");
        (member.first_missing(n).unwrap() + 1, column)
    }))
}
