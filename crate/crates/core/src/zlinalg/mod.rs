//! Exact integer linear algebra.
//!
//! Dense routines ([`hermite_normal_form`], [`smith_normal_form`], [`rank_over_field`],
//! [`solve_in_row_space`]) operate on [`IntMatrix`] and return full transforms. The
//! per-weight quotient computations go through [`LatticeQuotient`] and
//! [`FieldQuotient`], which work on sparse rows and only fall back to a dense Smith form
//! on the part of the lattice that unit pivots cannot clear.

mod hnf;
mod matrix;
mod quotient;
mod rank;
mod snf;
mod solve;

pub use hnf::hermite_normal_form;
pub use matrix::IntMatrix;
pub use quotient::{FieldQuotient, LatticeQuotient, QuotientCoords, TorsionCoord};
pub use rank::{rank_mod_p, rank_over_field, rank_over_rationals};
pub use snf::{smith_normal_form, SnfResult};
pub use solve::solve_in_row_space;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field for dimension queries: `Rational` is `Q` (modulus 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Modulus {
    Rational,
    Prime(u64),
}

impl Modulus {
    pub fn from_u64(m: u64) -> Result<Modulus> {
        match m {
            0 => Ok(Modulus::Rational),
            p if is_prime(p) => Ok(Modulus::Prime(p)),
            p => Err(Error::CompositeModulus(p)),
        }
    }

    pub fn as_u64(self) -> u64 {
        match self {
            Modulus::Rational => 0,
            Modulus::Prime(p) => p,
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Rational => write!(f, "Q"),
            Modulus::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    mod_pow(a, p - 2, p)
}
