use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::engine::nested::NestedIndex;
use crate::engine::support::{check_engine_shape, full_mask, SupportMap, SupportSet};
use crate::error::{Error, Result};
use crate::tensor::{BooleanTensor, MultiIndex};

/// How a member of a [`SupportFamily`] arises.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Realizer {
    /// Level 1: a column `α ∈ [n]^(m-1)` of `A`.
    Column(MultiIndex),
    /// Level `k > 1`: the `m - 1` block supports, members of level `k - 1`.
    Blocks(Vec<SupportSet>),
}

/// The set of all column supports of `A^k`, one realizer per member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFamily {
    level: usize,
    members: Vec<SupportSet>,
    realizers: Vec<Realizer>,
}

impl SupportFamily {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Members in increasing mask order.
    pub fn members(&self) -> &[SupportSet] {
        &self.members
    }

    pub fn realizers(&self) -> &[Realizer] {
        &self.realizers
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: SupportSet) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn realizer_of(&self, s: SupportSet) -> Option<&Realizer> {
        self.members
            .binary_search(&s)
            .ok()
            .map(|i| &self.realizers[i])
    }

    /// `A^k > 0` exactly when the family is `{[n]}`.
    pub fn is_full_only(&self, n: usize) -> bool {
        self.members.len() == 1 && self.members[0].is_full(n)
    }

    /// Smallest member that is not all of `[n]`.
    pub fn first_non_full(&self, n: usize) -> Option<SupportSet> {
        self.members.iter().copied().find(|s| !s.is_full(n))
    }
}

pub(crate) fn initial_with(map: &SupportMap, t: &BooleanTensor) -> SupportFamily {
    let mut first: HashMap<u64, usize> = HashMap::new();
    for c in 0..map.column_count() {
        first.entry(map.column(c).mask()).or_insert(c);
    }
    let mut found: Vec<(u64, usize)> = first.into_iter().collect();
    found.sort_unstable();
    let arity = t.order() - 1;
    let dim = t.dim();
    let (members, realizers) = found
        .into_iter()
        .map(|(mask, mut c)| {
            let mut alpha = vec![0; arity];
            for slot in alpha.iter_mut().rev() {
                *slot = c % dim;
                c /= dim;
            }
            (
                SupportSet::from_mask(mask),
                Realizer::Column(MultiIndex::from_zero_based(&alpha)),
            )
        })
        .unzip();
    SupportFamily {
        level: 1,
        members,
        realizers,
    }
}

pub(crate) fn step_with(map: &mut SupportMap, f: &SupportFamily) -> SupportFamily {
    let arity = map.arity();
    let len = f.members.len();
    let mut first: HashMap<u64, Vec<SupportSet>> = HashMap::new();
    if len > 0 {
        let mut idx = vec![0usize; arity];
        let mut args: Vec<SupportSet> = vec![f.members[0]; arity];
        'tuples: loop {
            let g = map.eval(&args).mask();
            first.entry(g).or_insert_with(|| args.clone());
            // odometer, last block fastest
            let mut p = arity;
            loop {
                if p == 0 {
                    break 'tuples;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < len {
                    args[p] = f.members[idx[p]];
                    break;
                }
                idx[p] = 0;
                args[p] = f.members[0];
            }
        }
    }
    let mut found: Vec<(u64, Vec<SupportSet>)> = first.into_iter().collect();
    found.sort_unstable_by_key(|(m, _)| *m);
    let (members, realizers) = found
        .into_iter()
        .map(|(m, b)| (SupportSet::from_mask(m), Realizer::Blocks(b)))
        .unzip();
    SupportFamily {
        level: f.level + 1,
        members,
        realizers,
    }
}

/// Level-1 family: the column supports of `A` itself.
pub fn initial_family(t: &BooleanTensor) -> Result<SupportFamily> {
    check_engine_shape(t)?;
    Ok(initial_with(&SupportMap::new(t), t))
}

/// Family of `A^(k+1)` from the family of `A^k`.
pub fn step_family(t: &BooleanTensor, f: &SupportFamily) -> Result<SupportFamily> {
    check_engine_shape(t)?;
    let full = full_mask(t.dim());
    if let Some(bad) = f.members.iter().find(|s| s.mask() & !full != 0) {
        return Err(Error::InvalidParameter(format!(
            "support {bad} is not a subset of [{}]",
            t.dim()
        )));
    }
    Ok(step_with(&mut SupportMap::new(t), f))
}

/// Families of `A, A^2, ..., A^k`, kept so that realizer chains can be unfolded.
pub struct FamilyTrace {
    map: SupportMap,
    dim: usize,
    arity: usize,
    levels: Vec<SupportFamily>,
}

impl FamilyTrace {
    pub fn new(t: &BooleanTensor) -> Result<Self> {
        check_engine_shape(t)?;
        let map = SupportMap::new(t);
        let first = initial_with(&map, t);
        Ok(FamilyTrace {
            map,
            dim: t.dim(),
            arity: t.order() - 1,
            levels: vec![first],
        })
    }

    /// Highest level computed so far.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Family of `A^k`, `k` 1-based and at most [`depth`](Self::depth).
    pub fn level(&self, k: usize) -> &SupportFamily {
        &self.levels[k - 1]
    }

    pub fn last(&self) -> &SupportFamily {
        self.levels.last().unwrap()
    }

    pub fn advance(&mut self) -> &SupportFamily {
        let next = step_with(&mut self.map, self.levels.last().unwrap());
        self.levels.push(next);
        self.last()
    }

    pub fn extend_to(&mut self, k: usize) {
        while self.levels.len() < k {
            self.advance();
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// A concrete column of `A^k` whose support is `member`, following realizers down to level 1.
    pub fn unfold(&self, k: usize, member: SupportSet) -> Option<NestedIndex> {
        let mut memo: HashMap<(usize, u64), Arc<NestedIndex>> = HashMap::new();
        self.unfold_rec(k, member, &mut memo)
            .map(|a| Arc::try_unwrap(a).unwrap_or_else(|a| (*a).clone()))
    }

    fn unfold_rec(
        &self,
        k: usize,
        member: SupportSet,
        memo: &mut HashMap<(usize, u64), Arc<NestedIndex>>,
    ) -> Option<Arc<NestedIndex>> {
        if let Some(a) = memo.get(&(k, member.mask())) {
            return Some(a.clone());
        }
        let node = match self.levels.get(k.checked_sub(1)?)?.realizer_of(member)? {
            Realizer::Column(alpha) => NestedIndex::column(alpha),
            Realizer::Blocks(blocks) => {
                debug_assert_eq!(blocks.len(), self.arity);
                NestedIndex::node_shared(
                    blocks
                        .iter()
                        .map(|&b| self.unfold_rec(k - 1, b, memo))
                        .collect::<Option<_>>()?,
                )
            }
        };
        let node = Arc::new(node);
        memo.insert((k, member.mask()), node.clone());
        Some(node)
    }
}
