//! Independent reference computations used by the integration tests.
//!
//! Nothing here calls into the crate's linear algebra or symmetric-function code; the
//! crate is only used to produce inputs (monomial lists, relation polynomials).

#![allow(dead_code)]

use std::collections::BTreeMap;

use gauge_coho::polyring::monomials_of_weight;
use gauge_coho::PresentationSpec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// 2^61 - 1.
pub const BIG_PRIME: u64 = 2_305_843_009_213_693_951;

/// Partitions of `w` with every part at most `max_part`, by direct enumeration.
pub fn partitions(w: u32, max_part: u32) -> u64 {
    fn go(rest: u32, largest: u32) -> u64 {
        if rest == 0 {
            return 1;
        }
        (1..=largest.min(rest)).map(|p| go(rest - p, p)).sum()
    }
    go(w, max_part)
}

/// Pairs `(λ, μ)` of partitions with parts of `λ` at most `n`, parts of `μ` at most
/// `n - 1`, and `|λ| + |μ| = w`.
pub fn pair_count(n: u32, w: u32) -> u64 {
    (0..=w)
        .map(|a| partitions(a, n) * partitions(w - a, n.saturating_sub(1)))
        .sum()
}

/// Polynomials in `t_1..t_10` with integer coefficients.
pub type Poly10 = BTreeMap<[u8; 10], BigInt>;

pub fn p10_add(a: &Poly10, b: &Poly10) -> Poly10 {
    let mut out = a.clone();
    for (m, c) in b {
        *out.entry(*m).or_insert_with(BigInt::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn p10_scale(a: &Poly10, s: &BigInt) -> Poly10 {
    let mut out: Poly10 = a.iter().map(|(m, c)| (*m, c * s)).collect();
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn p10_mul(a: &Poly10, b: &Poly10) -> Poly10 {
    let mut out = Poly10::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m = *ma;
            for (x, y) in m.iter_mut().zip(mb) {
                *x += y;
            }
            *out.entry(m).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn p10_one() -> Poly10 {
    Poly10::from([([0u8; 10], BigInt::one())])
}

/// `e_j(t_1, ..., t_10)`, summed over all `j`-subsets.
pub fn p10_elementary(j: usize) -> Poly10 {
    let mut out = Poly10::new();
    for mask in 0u32..1 << 10 {
        if mask.count_ones() as usize == j {
            let mut m = [0u8; 10];
            for (i, e) in m.iter_mut().enumerate() {
                *e = ((mask >> i) & 1) as u8;
            }
            out.insert(m, BigInt::one());
        }
    }
    out
}

/// `t_1^i + ... + t_10^i`.
pub fn p10_power_sum(i: u8) -> Poly10 {
    (0..10)
        .map(|v| {
            let mut m = [0u8; 10];
            m[v] = i;
            (m, BigInt::one())
        })
        .collect()
}

/// Rank of an integer matrix reduced modulo the prime `p`.
pub fn rank_mod(rows: &[Vec<BigInt>], p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| v.mod_floor(&pb).to_u64().unwrap())
                .collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inv = |a: u64| {
        // Fermat.
        let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let scale = inv(m[rank][c]);
        for v in m[rank].iter_mut() {
            *v = mulmod(*v, scale);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = (*v + p - mulmod(f, *pv)) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Every multiple `m · r_i` of weight `w`, as coordinate rows over the weight-`w`
/// monomials. Returns `(monomial count, rows)`.
pub fn relation_rows(spec: &PresentationSpec, w: u32) -> (usize, Vec<Vec<BigInt>>) {
    let ctx = spec.context();
    let monos = monomials_of_weight(ctx, w);
    let mut rows = Vec::new();
    if spec.n() <= w {
        for (i, rel) in spec.relations_up_to(w).unwrap() {
            for m in monomials_of_weight(ctx, w - i) {
                rows.push(rel.mul_monomial(&m).coordinates(&monos).unwrap());
            }
        }
    }
    (monos.len(), rows)
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// gcd of all maximal minors of a matrix with at most as many rows as columns.
pub fn maximal_minor_gcd(m: &[Vec<BigInt>]) -> BigInt {
    let (rows, cols) = (m.len(), m[0].len());
    let mut g = BigInt::zero();
    let mut pick = Vec::with_capacity(rows);
    fn choose(m: &[Vec<BigInt>], start: usize, cols: usize, pick: &mut Vec<usize>, g: &mut BigInt) {
        if pick.len() == m.len() {
            let sub: Vec<Vec<BigInt>> = m
                .iter()
                .map(|r| pick.iter().map(|&c| r[c].clone()).collect())
                .collect();
            *g = g.gcd(&determinant(&sub));
            return;
        }
        for c in start..cols {
            pick.push(c);
            choose(m, c + 1, cols, pick, g);
            pick.pop();
        }
    }
    assert!(rows <= cols);
    choose(m, 0, cols, &mut pick, &mut g);
    g.abs()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).map(|k| &row[k] * &b[k][c]).sum())
                .collect()
        })
        .collect()
}
