use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form: returns `(H, U)` with `H = U·M`, `U` unimodular, `H`
/// in row echelon form with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. Zero rows sit at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivot_row = 0;
    for col in 0..m.cols() {
        if pivot_row == m.rows() {
            break;
        }
        // Euclid on the column, always pivoting on the smallest entry.
        loop {
            let best = (pivot_row..m.rows())
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by_key(|&r| h[(r, col)].abs());
            let Some(best) = best else {
                break;
            };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut clean = true;
            for r in pivot_row + 1..m.rows() {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
                h.sub_row_multiple(r, pivot_row, &q);
                u.sub_row_multiple(r, pivot_row, &q);
                if !h[(r, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let pivot: BigInt = h[(pivot_row, col)].clone();
        for r in 0..pivot_row {
            let q = h[(r, col)].div_floor(&pivot);
            h.sub_row_multiple(r, pivot_row, &q);
            u.sub_row_multiple(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Leading column of each nonzero row of an echelon matrix.
pub(crate) fn pivot_columns(h: &IntMatrix) -> Vec<(usize, usize)> {
    (0..h.rows())
        .filter_map(|r| h.row(r).iter().position(|v| !v.is_zero()).map(|c| (r, c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn hand_example() {
        let (h, u) = hermite_normal_form(&m(&[vec![2, 0], vec![1, 1]]));
        assert_eq!(h, m(&[vec![1, 1], vec![0, 2]]));
        assert!(u.is_unimodular());
    }

    #[test]
    fn identity_and_zero() {
        let id = IntMatrix::identity(3);
        assert_eq!(hermite_normal_form(&id).0, id);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(hermite_normal_form(&z).0, z);
    }

    #[test]
    fn reduces_above_pivots() {
        let a = m(&[vec![1, 5, 3], vec![0, 3, 7], vec![2, 4, 0]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a).unwrap(), h);
        let pivots = pivot_columns(&h);
        for &(r, c) in &pivots {
            assert!(h[(r, c)].is_positive());
            for above in 0..r {
                assert!(!h[(above, c)].is_negative() && h[(above, c)] < h[(r, c)]);
            }
        }
    }
}
