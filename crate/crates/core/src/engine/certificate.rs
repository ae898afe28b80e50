use serde::{Deserialize, Serialize};

use crate::engine::family::FamilyTrace;
use crate::engine::nested::{power_entry, ColumnEvaluator, NestedIndex};
use crate::engine::support::{check_engine_shape, column_support, SupportSet};
use crate::error::{Error, Result};
use crate::matrix::wielandt_bound;
use crate::tensor::{BooleanTensor, MultiIndex};

/// Checkable evidence for a negative verdict. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "certificate", rename_all = "snake_case")]
pub enum Certificate {
    /// Column `α` of `A` is all zero, so no power is positive.
    ZeroColumn { column: MultiIndex },
    /// The family of `A^start` recurs at `A^(start+period)` without any level
    /// in between being `{[n]}`; `column` realizes the non-full `member`.
    SupportCycle {
        start: usize,
        period: usize,
        member: SupportSet,
        column: NestedIndex,
    },
    /// `A^level` is zero at `(row, column)`.
    ZeroEntry {
        level: usize,
        row: usize,
        column: NestedIndex,
    },
    /// `M(A^level)` is zero at `(row, column)`, with `level` at least the Wielandt bound.
    MajorizationZero {
        level: usize,
        row: usize,
        column: usize,
    },
}

/// What a certificate establishes once it verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    NotStronglyPrimitive,
    NotPrimitive,
    PowerNotPositive(usize),
}

fn reject(msg: impl Into<String>) -> Error {
    Error::InvalidCertificate(msg.into())
}

impl Certificate {
    pub fn claim(&self) -> Claim {
        match self {
            Certificate::ZeroColumn { .. } | Certificate::SupportCycle { .. } => {
                Claim::NotStronglyPrimitive
            }
            Certificate::MajorizationZero { .. } => Claim::NotPrimitive,
            Certificate::ZeroEntry { level, .. } => Claim::PowerNotPositive(*level),
        }
    }

    /// Re-checks the certificate against `t`; `Err(InvalidCertificate)` if it does not hold.
    pub fn verify(&self, t: &BooleanTensor) -> Result<()> {
        check_engine_shape(t)?;
        let n = t.dim();
        match self {
            Certificate::ZeroColumn { column } => {
                if !column_support(t, column)?.is_empty() {
                    return Err(reject(format!("column {column} has a positive entry")));
                }
            }
            Certificate::ZeroEntry { level, row, column } => {
                if power_entry(t, *level, *row, column)? {
                    return Err(reject(format!(
                        "entry of A^{level} at row {row} is positive"
                    )));
                }
            }
            Certificate::MajorizationZero { level, row, column } => {
                if *level < wielandt_bound(n) {
                    return Err(reject(format!(
                        "level {level} is below the bound {}",
                        wielandt_bound(n)
                    )));
                }
                if *column == 0 || *column > n {
                    return Err(Error::IndexOutOfRange {
                        value: *column,
                        dim: n,
                    });
                }
                let col = NestedIndex::all_equal(*column, *level, t.order() - 1);
                if power_entry(t, *level, *row, &col)? {
                    return Err(reject(format!(
                        "M(A^{level}) is positive at ({row},{column})"
                    )));
                }
            }
            Certificate::SupportCycle {
                start,
                period,
                member,
                column,
            } => {
                if *start == 0 || *period == 0 {
                    return Err(reject("start and period must be positive"));
                }
                let end = start
                    .checked_add(*period)
                    .ok_or_else(|| reject("cycle bound overflows"))?;
                let mut trace = FamilyTrace::new(t)?;
                trace.extend_to(end);
                if let Some(k) = (1..end).find(|&k| trace.level(k).is_full_only(n)) {
                    return Err(reject(format!("A^{k} is positive")));
                }
                if trace.level(*start).members() != trace.level(end).members() {
                    return Err(reject(format!(
                        "families at levels {start} and {end} differ"
                    )));
                }
                if member.is_full(n) || !trace.level(*start).contains(*member) {
                    return Err(reject(format!(
                        "{member} is not a non-full member at level {start}"
                    )));
                }
                column.validate(*start, t.order() - 1, n)?;
                let s = ColumnEvaluator::new(t)?.support(column);
                if s != *member {
                    return Err(reject(format!("column realizes {s}, not {member}")));
                }
            }
        }
        Ok(())
    }
}
