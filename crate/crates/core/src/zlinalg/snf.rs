use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Diagonal of `U·M·V`, length `min(rows, cols)`: nonzero divisors first, each
    /// dividing the next, then zeros.
    pub divisors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn nonzero_divisors(&self) -> impl Iterator<Item = &BigInt> {
        self.divisors.iter().filter(|d| !d.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.nonzero_divisors().count()
    }
}

/// Smith normal form with transforms: `U·M·V = diag(divisors)`.
///
/// Pivots are always the smallest nonzero entry left in the active block, which keeps
/// intermediate entries small on the sparse matrices this crate produces.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // Clear column t below the pivot.
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            if dirty {
                let i = (t..rows)
                    .filter(|&i| !d[(i, t)].is_zero())
                    .min_by_key(|&i| d[(i, t)].abs())
                    .expect("nonzero entry remains");
                d.swap_rows(t, i);
                u.swap_rows(t, i);
                continue;
            }
            // Clear row t right of the pivot.
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                let j = (t..cols)
                    .filter(|&j| !d[(t, j)].is_zero())
                    .min_by_key(|&j| d[(t, j)].abs())
                    .expect("nonzero entry remains");
                d.swap_cols(t, j);
                v.swap_cols(t, j);
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold a row in and retry.
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offender {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    d.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    let divisors = (0..rows.min(cols)).map(|i| d[(i, i)].clone()).collect();
    SnfResult { divisors, u, v }
}

fn min_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
