//! Smith normal form of integer matrices.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Nonzero invariant factors `d_1 | d_2 | ⋯ | d_r` (all positive) of a matrix
/// given as rows. `r` is the rank.
pub fn invariant_factors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|r| r.len() == ncols), "ragged matrix");
    let mut out = Vec::new();
    for t in 0..nrows.min(ncols) {
        loop {
            let Some((pr, pc)) = smallest_nonzero(&a, t) else {
                return out;
            };
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
            let mut clean = true;
            for r in t + 1..nrows {
                if !a[r][t].is_zero() {
                    let q = &a[r][t] / &a[t][t];
                    let pivot_row = a[t].clone();
                    for (x, p) in a[r][t..].iter_mut().zip(&pivot_row[t..]) {
                        *x -= &q * p;
                    }
                    clean &= a[r][t].is_zero();
                }
            }
            for c in t + 1..ncols {
                if !a[t][c].is_zero() {
                    let q = &a[t][c] / &a[t][t];
                    for row in a[t..].iter_mut() {
                        let v = &q * &row[t];
                        row[c] -= v;
                    }
                    clean &= a[t][c].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest; otherwise fold an offending row in.
            let offending = (t + 1..nrows).find(|&r| (t + 1..ncols).any(|c| !(&a[r][c] % &a[t][t]).is_zero()));
            match offending {
                Some(r) => {
                    let offending_row = a[r].clone();
                    for (x, y) in a[t][t..].iter_mut().zip(&offending_row[t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

fn smallest_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(t) {
        for (c, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.is_none_or(|(br, bc)| v.abs() < a[br][bc].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}
