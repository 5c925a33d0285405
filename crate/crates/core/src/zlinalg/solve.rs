use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::hnf::{hermite_normal_form, pivot_columns};
use super::IntMatrix;
use crate::error::{Error, Result};

/// Finds an integer row vector `y` with `y·M = b`, or `None` when `b` is not in the
/// integer row space of `M`.
pub fn solve_in_row_space(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} columns",
            b.len(),
            m.cols()
        )));
    }
    let (h, u) = hermite_normal_form(m);
    let mut residual = b.to_vec();
    let mut z = vec![BigInt::zero(); m.rows()];
    for (r, c) in pivot_columns(&h) {
        if residual[..c].iter().any(|v| !v.is_zero()) {
            return Ok(None);
        }
        let (q, rem) = residual[c].div_rem(&h[(r, c)]);
        if !rem.is_zero() {
            return Ok(None);
        }
        for (res, hv) in residual.iter_mut().zip(h.row(r)) {
            *res -= &q * hv;
        }
        z[r] = q;
    }
    if residual.iter().any(|v| !v.is_zero()) {
        return Ok(None);
    }
    Ok(Some(u.left_mul_vec(&z)?))
}
