//! Materialized Boolean tensor products and powers.
//!
//! This is the direct, definition-level computation: every output entry is an
//! OR over `(i_2, ..., i_m)` of the products of individual bits. It shares no
//! code with the support-family route and serves as its oracle.

use crate::error::{Error, Result};
use crate::tensor::{checked_len, BooleanTensor};

/// General product of an order-`m` pattern `a` with an order-`k` pattern `b`:
/// `d_{i α_1 .. α_{m-1}} = OR_{i_2..i_m} a_{i i_2 .. i_m} AND b_{i_2 α_1} AND .. AND b_{i_m α_{m-1}}`,
/// an order `(m-1)(k-1) + 1` pattern.
pub fn product(a: &BooleanTensor, b: &BooleanTensor) -> Result<BooleanTensor> {
    if a.dim() != b.dim() {
        return Err(Error::InvalidParameter(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    if a.order() < 2 {
        return Err(Error::InvalidOrder {
            order: a.order(),
            min: 2,
        });
    }
    let n = a.dim();
    let arity = a.order() - 1;
    let out_order = arity * (b.order() - 1) + 1;
    checked_len(out_order, n)?;
    let mut d = BooleanTensor::zeros(out_order, n)?;

    let b_cols = b.column_count();
    let a_cols = a.column_count();
    // Each output column is a tuple of `arity` columns of `b`.
    let out_cols = d.column_count();
    let mut blocks = vec![0usize; arity];
    let mut inner = vec![0usize; arity];
    for col in 0..out_cols {
        let mut c = col;
        for slot in blocks.iter_mut().rev() {
            *slot = c % b_cols;
            c /= b_cols;
        }
        for i in 0..n {
            let mut any = false;
            for ac in 0..a_cols {
                if !a.get_row_col(i, ac) {
                    continue;
                }
                let mut r = ac;
                for slot in inner.iter_mut().rev() {
                    *slot = r % n;
                    r /= n;
                }
                if inner
                    .iter()
                    .zip(&blocks)
                    .all(|(&it, &bc)| b.get_row_col(it, bc))
                {
                    any = true;
                    break;
                }
            }
            if any {
                d.set_linear(i * out_cols + col, true);
            }
        }
    }
    Ok(d)
}

/// `A^k = A · A^(k-1)`, an order `(m-1)^k + 1` pattern.
pub fn explicit_power(t: &BooleanTensor, k: usize) -> Result<BooleanTensor> {
    if k == 0 {
        return Err(Error::InvalidParameter("power must be at least 1".into()));
    }
    if t.order() < 2 {
        return Err(Error::InvalidOrder {
            order: t.order(),
            min: 2,
        });
    }
    let arity = t.order() - 1;
    let final_order = arity
        .checked_pow(k as u32)
        .and_then(|o| o.checked_add(1))
        .ok_or(Error::TooLarge {
            order: usize::MAX,
            dim: t.dim(),
        })?;
    checked_len(final_order, t.dim())?;
    let mut p = t.clone();
    for _ in 1..k {
        p = product(t, &p)?;
    }
    Ok(p)
}
