//! Block-structured indices into tensor powers.
//!
//! A column of `A^k` is an element of `[n]^((m-1)^k)`, which splits into
//! `m - 1` blocks, each a column of `A^(k-1)`. A [`NestedIndex`] records that
//! tree: a leaf is one component in `[n]`, a node of depth `d` holds `m - 1`
//! subtrees of depth `d - 1`. Subtrees are reference counted so that repeated
//! blocks (e.g. the all-`j` column) stay linear in the depth.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::engine::support::{check_engine_shape, SupportMap, SupportSet};
use crate::error::{Error, Result};
use crate::tensor::{BooleanTensor, MultiIndex};

#[derive(Clone)]
pub enum NestedIndex {
    /// 1-based component.
    Leaf(usize),
    Node(Vec<Arc<NestedIndex>>),
}

impl PartialEq for NestedIndex {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (NestedIndex::Leaf(a), NestedIndex::Leaf(b)) => a == b,
            (NestedIndex::Node(a), NestedIndex::Node(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| Arc::ptr_eq(x, y) || x == y)
            }
            _ => false,
        }
    }
}

impl Eq for NestedIndex {}

impl NestedIndex {
    pub fn leaf(j: usize) -> Self {
        NestedIndex::Leaf(j)
    }

    pub fn node(children: Vec<NestedIndex>) -> Self {
        NestedIndex::Node(children.into_iter().map(Arc::new).collect())
    }

    pub fn node_shared(children: Vec<Arc<NestedIndex>>) -> Self {
        NestedIndex::Node(children)
    }

    /// Depth-1 column of `A` from a column multi-index.
    pub fn column(alpha: &MultiIndex) -> Self {
        Self::node(
            alpha
                .as_slice()
                .iter()
                .map(|&j| NestedIndex::Leaf(j))
                .collect(),
        )
    }

    /// The column `(j, j, ..., j)` of `A^depth`, with `arity` children per node.
    pub fn all_equal(j: usize, depth: usize, arity: usize) -> Self {
        let mut cur = Arc::new(NestedIndex::Leaf(j));
        for _ in 0..depth {
            cur = Arc::new(NestedIndex::Node(vec![cur; arity]));
        }
        Arc::try_unwrap(cur).unwrap_or_else(|a| (*a).clone())
    }

    pub fn children(&self) -> &[Arc<NestedIndex>] {
        match self {
            NestedIndex::Leaf(_) => &[],
            NestedIndex::Node(c) => c,
        }
    }

    /// Depth along the first branch.
    pub fn depth(&self) -> usize {
        let mut d = 0;
        let mut cur = self;
        while let NestedIndex::Node(c) = cur {
            d += 1;
            cur = match c.first() {
                Some(x) => x,
                None => break,
            };
        }
        d
    }

    /// Checks uniform depth `depth`, `arity` children per node and leaves in `1..=dim`.
    pub fn validate(&self, depth: usize, arity: usize, dim: usize) -> Result<()> {
        let mut seen: HashMap<*const NestedIndex, usize> = HashMap::new();
        self.validate_rec(depth, arity, dim, &mut seen)
    }

    fn validate_rec(
        &self,
        depth: usize,
        arity: usize,
        dim: usize,
        seen: &mut HashMap<*const NestedIndex, usize>,
    ) -> Result<()> {
        let key = self as *const _;
        if seen.get(&key) == Some(&depth) {
            return Ok(());
        }
        match self {
            NestedIndex::Leaf(j) => {
                if depth != 0 {
                    return Err(Error::MalformedIndex(format!(
                        "leaf {j} where a subtree of depth {depth} was expected"
                    )));
                }
                if *j == 0 || *j > dim {
                    return Err(Error::IndexOutOfRange { value: *j, dim });
                }
            }
            NestedIndex::Node(children) => {
                if depth == 0 {
                    return Err(Error::MalformedIndex(
                        "array where a single component was expected".into(),
                    ));
                }
                if children.len() != arity {
                    return Err(Error::MalformedIndex(format!(
                        "node has {} blocks, expected {arity}",
                        children.len()
                    )));
                }
                for c in children {
                    c.validate_rec(depth - 1, arity, dim, seen)?;
                }
            }
        }
        seen.insert(key, depth);
        Ok(())
    }

    /// Leaves in order; the flattened index in `[n]^((m-1)^depth)`.
    pub fn flatten(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        out
    }

    fn flatten_into(&self, out: &mut Vec<usize>) {
        match self {
            NestedIndex::Leaf(j) => out.push(*j),
            NestedIndex::Node(c) => c.iter().for_each(|x| x.flatten_into(out)),
        }
    }

    /// Rebuilds the depth-`depth` tree over a flat index.
    pub fn from_flat(flat: &[usize], depth: usize, arity: usize) -> Result<Self> {
        let expect = arity.checked_pow(depth as u32).unwrap_or(usize::MAX);
        if flat.len() != expect {
            return Err(Error::MalformedIndex(format!(
                "flat index has {} components, expected {expect}",
                flat.len()
            )));
        }
        fn build(flat: &[usize], depth: usize, arity: usize) -> NestedIndex {
            if depth == 0 {
                return NestedIndex::Leaf(flat[0]);
            }
            let chunk = flat.len() / arity;
            NestedIndex::node(
                flat.chunks(chunk)
                    .map(|c| build(c, depth - 1, arity))
                    .collect(),
            )
        }
        Ok(build(flat, depth, arity))
    }

    /// CLI form of a column: its blocks as comma-separated nested arrays.
    pub fn to_blocks_string(&self) -> String {
        match self {
            NestedIndex::Leaf(j) => j.to_string(),
            NestedIndex::Node(c) => c
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
        }
    }

    /// Parses the CLI form produced by [`to_blocks_string`](Self::to_blocks_string).
    pub fn parse_blocks(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(&format!("[{s}]"))
            .map_err(|e| Error::MalformedIndex(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|j| NestedIndex::Leaf(j as usize))
                .ok_or_else(|| Error::MalformedIndex(format!("bad component {n}"))),
            serde_json::Value::Array(a) => Ok(NestedIndex::node(
                a.iter().map(Self::from_json).collect::<Result<_>>()?,
            )),
            other => Err(Error::MalformedIndex(format!("unexpected {other}"))),
        }
    }
}

impl fmt::Display for NestedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NestedIndex::Leaf(j) => write!(f, "{j}"),
            NestedIndex::Node(c) => {
                f.write_str("[")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Debug for NestedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for NestedIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        match self {
            NestedIndex::Leaf(j) => s.serialize_u64(*j as u64),
            NestedIndex::Node(c) => {
                let mut seq = s.serialize_seq(Some(c.len()))?;
                for x in c {
                    seq.serialize_element(&**x)?;
                }
                seq.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for NestedIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        NestedIndex::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Evaluates column supports of tree-indexed columns of `A^k`, memoized per subtree.
pub struct ColumnEvaluator {
    map: SupportMap,
    memo: HashMap<*const NestedIndex, SupportSet>,
}

impl ColumnEvaluator {
    pub fn new(t: &BooleanTensor) -> Result<Self> {
        check_engine_shape(t)?;
        Ok(ColumnEvaluator {
            map: SupportMap::new(t),
            memo: HashMap::new(),
        })
    }

    /// Column support of a validated column tree of depth ≥ 1.
    pub fn support(&mut self, column: &NestedIndex) -> SupportSet {
        self.memo.clear();
        self.support_rec(column)
    }

    fn support_rec(&mut self, node: &NestedIndex) -> SupportSet {
        let key = node as *const _;
        if let Some(&s) = self.memo.get(&key) {
            return s;
        }
        let children = node.children();
        let s = if matches!(&*children[0], NestedIndex::Leaf(_)) {
            let dim = self.map.dim();
            let c = children.iter().fold(0, |acc, x| match &**x {
                NestedIndex::Leaf(j) => acc * dim + (j - 1),
                NestedIndex::Node(_) => unreachable!("validated uniform depth"),
            });
            self.map.column(c)
        } else {
            let blocks: Vec<SupportSet> = children.iter().map(|x| self.support_rec(x)).collect();
            self.map.eval(&blocks)
        };
        self.memo.insert(key, s);
        s
    }
}

/// Column support of `A^k` at a tree column of depth `k`.
pub fn column_support_of(t: &BooleanTensor, k: usize, column: &NestedIndex) -> Result<SupportSet> {
    check_engine_shape(t)?;
    if k == 0 {
        return Err(Error::InvalidParameter("power must be at least 1".into()));
    }
    column.validate(k, t.order() - 1, t.dim())?;
    Ok(ColumnEvaluator::new(t)?.support(column))
}

/// Entry of `A^k` at `(row, flatten(column))` without materializing the power.
///
/// `row` is 1-based; `column` is the node whose `m - 1` children are the blocks,
/// each of depth `k - 1`.
pub fn power_entry(t: &BooleanTensor, k: usize, row: usize, column: &NestedIndex) -> Result<bool> {
    if row == 0 || row > t.dim() {
        return Err(Error::IndexOutOfRange {
            value: row,
            dim: t.dim(),
        });
    }
    Ok(column_support_of(t, k, column)?.contains(row - 1))
}
