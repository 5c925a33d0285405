use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{inv_mod, is_prime, mul_mod, IntMatrix};
use crate::error::{Error, Result};

/// Rank over `Q` (`modulus = 0`) or over `F_p`.
pub fn rank_over_field(m: &IntMatrix, modulus: u64) -> Result<usize> {
    match modulus {
        0 => Ok(rank_over_rationals(m)),
        p if is_prime(p) => Ok(rank_mod_p(m, p)),
        p => Err(Error::CompositeModulus(p)),
    }
}

/// Fraction-free elimination; entries stay integral and bounded by minors.
pub fn rank_over_rationals(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(rank, p);
        for r in rank + 1..rows {
            for j in col + 1..cols {
                let v = &a[(r, j)] * &a[(rank, col)] - &a[(r, col)] * &a[(rank, j)];
                a[(r, j)] = v.div_floor(&prev);
            }
            a[(r, col)] = BigInt::zero();
        }
        prev = a[(rank, col)].clone();
        rank += 1;
    }
    rank
}

pub(crate) fn to_residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

/// Gaussian elimination over `F_p`; `p` must be prime.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| m.row(i).iter().map(|x| to_residue(x, p)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][col], p);
        for v in &mut a[rank][col..] {
            *v = mul_mod(*v, inv, p);
        }
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (v, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *v = (*v + p - mul_mod(f, pv, p)) % p;
            }
        }
        rank += 1;
    }
    rank
}
