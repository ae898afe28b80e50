//! Relabeling of patterns packed into a `u64`.

use crate::tensor::{BooleanTensor, Permutation};

/// Above this many permutations the byte tables are skipped.
const TABLE_MAX_PERMS: usize = 720;

/// Applies every simultaneous relabeling of `[n]` to `u64` patterns of shape `(m, n)`.
pub struct Relabeler {
    len: usize,
    n_perms: usize,
    /// `dest[s][q]`: where bit `q` moves under permutation `s` (identity excluded).
    dest: Vec<Vec<u8>>,
    /// `tables[s][b][v]`: image of byte `b` holding value `v`.
    tables: Vec<Vec<[u64; 256]>>,
}

impl Relabeler {
    /// Panics unless `n^m <= 64`.
    pub fn new(m: usize, n: usize) -> Self {
        let len = n.pow(m as u32);
        assert!(len <= 64, "pattern does not fit in 64 bits");
        let shape = BooleanTensor::zeros(m, n).expect("valid shape");
        let perms = Permutation::all(n);
        let mut dest = Vec::with_capacity(perms.len().saturating_sub(1));
        for p in perms.iter().skip(1) {
            // The relabeled pattern at idx reads the original at p(idx), so
            // original bit q lands at p^{-1}(q).
            let inv = p.inverse();
            let d: Vec<u8> = (0..len)
                .map(|q| {
                    let idx: Vec<usize> =
                        shape.decode(q).into_iter().map(|x| inv.apply(x)).collect();
                    shape.linear_index(&idx) as u8
                })
                .collect();
            dest.push(d);
        }
        let tables = if perms.len() <= TABLE_MAX_PERMS {
            let bytes = len.div_ceil(8);
            dest.iter()
                .map(|d| {
                    (0..bytes)
                        .map(|b| {
                            let mut t = [0u64; 256];
                            for (v, slot) in t.iter_mut().enumerate() {
                                for bit in 0..8 {
                                    let q = b * 8 + bit;
                                    if q < len && v >> bit & 1 == 1 {
                                        *slot |= 1 << d[q];
                                    }
                                }
                            }
                            t
                        })
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };
        Relabeler {
            len,
            n_perms: perms.len(),
            dest,
            tables,
        }
    }

    pub fn bit_len(&self) -> usize {
        self.len
    }

    /// Number of permutations including the identity.
    pub fn group_order(&self) -> usize {
        self.n_perms
    }

    fn image(&self, s: usize, p: u64) -> u64 {
        if let Some(t) = self.tables.get(s) {
            t.iter()
                .enumerate()
                .fold(0, |acc, (b, tb)| acc | tb[(p >> (8 * b) & 0xff) as usize])
        } else {
            let mut out = 0;
            let mut rest = p;
            while rest != 0 {
                let q = rest.trailing_zeros() as usize;
                out |= 1 << self.dest[s][q];
                rest &= rest - 1;
            }
            out
        }
    }

    /// Images of `p` under every non-identity permutation, in [`Permutation::all`] order.
    pub fn images(&self, p: u64) -> impl Iterator<Item = u64> + '_ {
        (0..self.dest.len()).map(move |s| self.image(s, p))
    }

    /// Orbit size when `p` is the smallest member of its orbit, else `None`.
    pub fn orbit_if_canonical(&self, p: u64) -> Option<u64> {
        let mut stab = 1u64;
        for q in self.images(p) {
            if q < p {
                return None;
            }
            if q == p {
                stab += 1;
            }
        }
        Some(self.n_perms as u64 / stab)
    }

    /// Smallest member of the orbit of `p`, and the orbit size.
    pub fn canonical(&self, p: u64) -> (u64, u64) {
        let mut best = p;
        let mut stab = 1u64;
        for q in self.images(p) {
            best = best.min(q);
            if q == p {
                stab += 1;
            }
        }
        (best, self.n_perms as u64 / stab)
    }
}
