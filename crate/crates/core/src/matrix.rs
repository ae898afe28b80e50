//! Boolean square matrices and the primitive exponent.

use std::fmt;

use crate::error::{Error, Result};
use crate::tensor::BooleanTensor;

/// Square 0/1 matrix stored as packed row bitsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanMatrix {
    dim: usize,
    row_words: usize,
    words: Vec<u64>,
}

impl fmt::Debug for BooleanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanMatrix{:?}", self.to_rows())
    }
}

impl fmt::Display for BooleanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<&str> = (0..self.dim)
                .map(|j| if self.get(i, j) { "1" } else { "0" })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl BooleanMatrix {
    pub fn zeros(dim: usize) -> Self {
        let row_words = dim.div_ceil(64).max(1);
        BooleanMatrix {
            dim,
            row_words,
            words: vec![0; row_words * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, true);
        }
        m
    }

    pub fn ones(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, true);
            }
        }
        m
    }

    /// From 0/1 rows; any nonzero value counts as 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidDim);
        }
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "row {} has length {}, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        Ok(m)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at 0-based `(i, j)`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.words[i * self.row_words + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.words[i * self.row_words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.row_words..(i + 1) * self.row_words]
    }

    pub fn is_all_ones(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j)))
    }

    /// Number of positive entries in column `j`.
    pub fn column_count(&self, j: usize) -> usize {
        (0..self.dim).filter(|&i| self.get(i, j)).count()
    }

    /// Boolean product: `(AB)_ij = OR_k A_ik AND B_kj`.
    pub fn mul(&self, rhs: &BooleanMatrix) -> BooleanMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            let dst = i * out.row_words;
            for k in 0..self.dim {
                if self.get(i, k) {
                    for (d, s) in out.words[dst..dst + out.row_words]
                        .iter_mut()
                        .zip(rhs.row(k))
                    {
                        *d |= s;
                    }
                }
            }
        }
        out
    }

    /// The order-2 tensor with the same pattern.
    pub fn to_tensor(&self) -> BooleanTensor {
        BooleanTensor::from_fn(2, self.dim, |idx| self.get(idx[0], idx[1]))
            .expect("matrix dimension already validated")
    }

    pub fn from_tensor(t: &BooleanTensor) -> Result<Self> {
        if t.order() != 2 {
            return Err(Error::InvalidParameter(format!(
                "expected an order-2 pattern, got order {}",
                t.order()
            )));
        }
        let mut m = Self::zeros(t.dim());
        for i in 0..t.dim() {
            for j in 0..t.dim() {
                m.set(i, j, t.get(&[i, j]));
            }
        }
        Ok(m)
    }
}

/// Wielandt's bound `(n-1)^2 + 1`.
pub fn wielandt_bound(n: usize) -> usize {
    (n - 1) * (n - 1) + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixExpResult {
    Exponent(usize),
    NotPrimitive,
}

/// Least `e` with `M^e` all-positive, searched up to Wielandt's bound.
pub fn mat_exponent(m: &BooleanMatrix) -> MatrixExpResult {
    let cap = wielandt_bound(m.dim());
    let mut power = m.clone();
    for e in 1..=cap {
        if power.is_all_ones() {
            return MatrixExpResult::Exponent(e);
        }
        power = power.mul(m);
    }
    MatrixExpResult::NotPrimitive
}

pub fn is_primitive_matrix(m: &BooleanMatrix) -> bool {
    matches!(mat_exponent(m), MatrixExpResult::Exponent(_))
}
