#![allow(dead_code)]

use std::collections::BTreeSet;

use tprim_core::{BooleanMatrix, BooleanTensor};

// Oracles written straight from the definitions, sharing no code with the engine.

/// Rows where column `c` (a linear column number) of `t` is nonzero.
pub fn column_mask(t: &BooleanTensor, c: usize) -> u64 {
    (0..t.dim())
        .filter(|&i| t.get_row_col(i, c))
        .fold(0, |m, i| m | 1 << i)
}

pub fn supports(t: &BooleanTensor) -> BTreeSet<u64> {
    (0..t.column_count()).map(|c| column_mask(t, c)).collect()
}

/// Rows `i` with `a_{i α} = 1` for some `α` with `α_t ∈ sets[t]`.
pub fn combine(t: &BooleanTensor, sets: &[u64]) -> u64 {
    let mut out = 0;
    for c in 0..t.column_count() {
        let mut rest = c;
        let mut ok = true;
        for s in sets.iter().rev() {
            ok &= s >> (rest % t.dim()) & 1 == 1;
            rest /= t.dim();
        }
        if ok {
            out |= column_mask(t, c);
        }
    }
    out
}

/// Column supports of `A^1, A^2, ...` by brute force, until all are full or a repeat.
pub fn brute_eta(t: &BooleanTensor) -> Option<usize> {
    let full = (1u64 << t.dim()) - 1;
    let arity = t.order() - 1;
    let mut fam = supports(t);
    let mut seen = vec![fam.clone()];
    loop {
        if fam.len() == 1 && fam.contains(&full) {
            return Some(seen.len());
        }
        let members: Vec<u64> = fam.iter().copied().collect();
        let mut next = BTreeSet::new();
        let mut pick = vec![0usize; arity];
        loop {
            let sets: Vec<u64> = pick.iter().map(|&x| members[x]).collect();
            next.insert(combine(t, &sets));
            let mut d = arity;
            while d > 0 && pick[d - 1] + 1 == members.len() {
                pick[d - 1] = 0;
                d -= 1;
            }
            if d == 0 {
                break;
            }
            pick[d - 1] += 1;
        }
        if seen.contains(&next) {
            return None;
        }
        seen.push(next.clone());
        fam = next;
    }
}

pub fn majorization_positive(t: &BooleanTensor) -> bool {
    t.majorization().is_all_ones()
}

/// `(A^2)_{i j...j}` from the product definition.
pub fn square_diagonal(t: &BooleanTensor, i: usize, j: usize) -> bool {
    let n = t.dim();
    let arity = t.order() - 1;
    (0..n.pow(arity as u32)).any(|c| {
        let mut alpha = vec![0; arity];
        let mut rest = c;
        for a in alpha.iter_mut().rev() {
            *a = rest % n;
            rest /= n;
        }
        let mut idx = vec![i];
        idx.extend(&alpha);
        t.get(&idx)
            && alpha.iter().all(|&a| {
                t.get(
                    &vec![a]
                        .into_iter()
                        .chain(std::iter::repeat_n(j, arity))
                        .collect::<Vec<_>>(),
                )
            })
    })
}

pub fn matrix_exponent_oracle(a: &BooleanMatrix) -> Option<usize> {
    let n = a.dim();
    let cap = (n - 1) * (n - 1) + 1;
    let mut p = a.clone();
    for e in 1..=cap {
        if p.is_all_ones() {
            return Some(e);
        }
        p = p.mul(a);
    }
    None
}

/// Least `k <= (n-1)^2 + 1` with every diagonal column `(j, ..., j)` of `A^k` positive.
pub fn brute_gamma(t: &BooleanTensor) -> Option<usize> {
    let n = t.dim();
    let full = (1u64 << n) - 1;
    let arity = t.order() - 1;
    let diag = |j: usize| (0..arity).fold(0, |c, _| c * n + j);
    let mut cols: Vec<u64> = (0..n).map(|j| column_mask(t, diag(j))).collect();
    for k in 1..=(n - 1) * (n - 1) + 1 {
        if cols.iter().all(|&s| s == full) {
            return Some(k);
        }
        cols = cols.iter().map(|&s| combine(t, &vec![s; arity])).collect();
    }
    None
}
