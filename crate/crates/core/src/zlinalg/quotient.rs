//! Quotients `Z^m / L` and `F_p^m / L` of a coordinate space by a row lattice, with a
//! deterministic monomial basis and unique reduced coordinates.
//!
//! Over `Z` the lattice is first cleared with unit pivots (entries `±1`), chosen by a
//! column preference order, so every cleared column is an integral combination of the
//! remaining ones. Whatever is left is a small residual block that goes through a dense
//! Smith form for torsion and a rational echelon form for the free part.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rank::to_residue;
use super::snf::{smith_normal_form, SnfResult};
use super::{inv_mod, mul_mod, IntMatrix};

type SparseRow = Vec<(usize, BigInt)>;

fn entry(row: &SparseRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

/// `target - q * source`, both sorted by column.
fn sub_multiple(target: &SparseRow, q: &BigInt, source: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let take_target = j == source.len() || (i < target.len() && target[i].0 < source[j].0);
        let take_source = i == target.len() || (j < source.len() && source[j].0 < target[i].0);
        if take_target {
            out.push(target[i].clone());
            i += 1;
        } else if take_source {
            out.push((source[j].0, -(q * &source[j].1)));
            j += 1;
        } else {
            let v = &target[i].1 - q * &source[j].1;
            if !v.is_zero() {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCoord {
    pub divisor: BigInt,
    pub residue: BigInt,
}

/// Coordinates of a class in the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCoords {
    /// One entry per basis column. Integral whenever the basis is a `Z`-basis of the
    /// free part, which holds unless [`LatticeQuotient::integral_basis`] is false.
    pub free: Vec<BigRational>,
    /// One entry per divisor greater than one.
    pub torsion: Vec<TorsionCoord>,
}

impl QuotientCoords {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(|t| t.residue.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    ncols: usize,
    /// `(column, row)` with `row[column] = 1` and zeros in every other pivot column.
    unit_pivots: Vec<(usize, SparseRow)>,
    /// Columns of the residual block, in preference order.
    residual_cols: Vec<usize>,
    residual_snf: Option<SnfResult>,
    /// Reduced rational echelon rows of the residual block, as `(pivot column, row)`
    /// over all columns.
    rational_echelon: Vec<(usize, Vec<BigRational>)>,
    basis: Vec<usize>,
    divisors: Vec<BigInt>,
    integral_basis: bool,
}

impl LatticeQuotient {
    /// `preference` lists every column once; earlier columns are eliminated first, so
    /// later ones tend to survive into the basis.
    pub fn new(rows: &IntMatrix, preference: &[usize]) -> LatticeQuotient {
        let ncols = rows.cols();
        debug_assert_eq!(preference.len(), ncols);
        let mut active: Vec<SparseRow> = (0..rows.rows())
            .map(|i| {
                rows.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect::<SparseRow>()
            })
            .filter(|r| !r.is_empty())
            .collect();

        let mut unit_pivots: Vec<(usize, SparseRow)> = Vec::new();
        let mut pivot_cols: BTreeSet<usize> = BTreeSet::new();
        loop {
            let mut progress = false;
            for &col in preference {
                if pivot_cols.contains(&col) {
                    continue;
                }
                // Sparsest row with a unit entry limits fill-in.
                let choice = active
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| entry(r, col).is_some_and(|v| v.abs().is_one()))
                    .min_by_key(|(i, r)| (r.len(), *i))
                    .map(|(i, _)| i);
                let Some(idx) = choice else {
                    continue;
                };
                let mut pivot = active.swap_remove(idx);
                if entry(&pivot, col).expect("chosen").is_negative() {
                    for (_, v) in pivot.iter_mut() {
                        *v = -std::mem::take(v);
                    }
                }
                for r in active
                    .iter_mut()
                    .chain(unit_pivots.iter_mut().map(|(_, r)| r))
                {
                    if let Some(a) = entry(r, col).cloned() {
                        *r = sub_multiple(r, &a, &pivot);
                    }
                }
                active.retain(|r| !r.is_empty());
                pivot_cols.insert(col);
                unit_pivots.push((col, pivot));
                progress = true;
            }
            if !progress {
                break;
            }
        }

        let residual_cols: Vec<usize> = preference
            .iter()
            .copied()
            .filter(|c| !pivot_cols.contains(c))
            .collect();
        let mut divisors = vec![BigInt::one(); unit_pivots.len()];

        let (residual_snf, rational_echelon) = if active.is_empty() {
            (None, Vec::new())
        } else {
            let dense: Vec<Vec<BigInt>> = active
                .iter()
                .map(|r| {
                    residual_cols
                        .iter()
                        .map(|&c| entry(r, c).cloned().unwrap_or_default())
                        .collect()
                })
                .collect();
            let block =
                IntMatrix::from_row_vecs(residual_cols.len(), dense.clone()).expect("rectangular");
            let snf = smith_normal_form(&block);
            divisors.extend(snf.nonzero_divisors().cloned());
            let echelon = rational_rref(&dense)
                .into_iter()
                .map(|(pc, row)| {
                    let mut full = vec![BigRational::zero(); ncols];
                    for (k, v) in row.into_iter().enumerate() {
                        full[residual_cols[k]] = v;
                    }
                    (residual_cols[pc], full)
                })
                .collect::<Vec<_>>();
            (Some(snf), echelon)
        };

        let rational_pivots: BTreeSet<usize> = rational_echelon.iter().map(|(c, _)| *c).collect();
        let basis: Vec<usize> = (0..ncols)
            .filter(|c| !pivot_cols.contains(c) && !rational_pivots.contains(c))
            .collect();
        let integral_basis = rational_echelon
            .iter()
            .all(|(_, row)| row.iter().all(BigRational::is_integer));

        LatticeQuotient {
            ncols,
            unit_pivots,
            residual_cols,
            residual_snf,
            rational_echelon,
            basis,
            divisors,
            integral_basis,
        }
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Nonzero elementary divisors of the lattice, ones first.
    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.divisors.iter().all(One::is_one)
    }

    /// Whether the basis columns form a `Z`-basis of the free quotient.
    pub fn integral_basis(&self) -> bool {
        self.integral_basis
    }

    pub fn torsion_divisors(&self) -> Vec<BigInt> {
        self.divisors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    pub fn unit_pivot_count(&self) -> usize {
        self.unit_pivots.len()
    }

    /// Reduced coordinates of the class of `b`.
    pub fn reduce(&self, b: &[BigInt]) -> QuotientCoords {
        assert_eq!(b.len(), self.ncols, "vector length");
        let mut v = b.to_vec();
        for (col, row) in &self.unit_pivots {
            let a = b[*col].clone();
            if a.is_zero() {
                continue;
            }
            for (c, x) in row {
                v[*c] -= &a * x;
            }
        }

        let mut r: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        for (pc, row) in &self.rational_echelon {
            let a = r[*pc].clone();
            if a.is_zero() {
                continue;
            }
            for (rv, x) in r.iter_mut().zip(row) {
                if !x.is_zero() {
                    *rv -= &a * x;
                }
            }
        }
        let free: Vec<BigRational> = self.basis.iter().map(|&c| r[c].clone()).collect();

        let mut torsion = Vec::new();
        if let Some(snf) = &self.residual_snf {
            let mut w = v;
            // With an integral basis, residues describe `b` minus its free part along the
            // basis. Otherwise they are the raw Smith coordinates; either way the choice
            // is fixed per lattice so that reduction stays linear.
            if self.integral_basis {
                for (&c, f) in self.basis.iter().zip(&free) {
                    w[c] -= f.to_integer();
                }
            }
            let restricted: Vec<BigInt> =
                self.residual_cols.iter().map(|&c| w[c].clone()).collect();
            let coords = snf.v.left_mul_vec(&restricted).expect("residual width");
            for (d, x) in snf.divisors.iter().zip(coords) {
                if d.is_zero() || d.is_one() {
                    continue;
                }
                torsion.push(TorsionCoord {
                    divisor: d.clone(),
                    residue: x.mod_floor(d),
                });
            }
        }
        QuotientCoords { free, torsion }
    }
}

/// Reduced row echelon form over `Q`, returned as `(pivot column, row)` pairs.
fn rational_rref(rows: &[Vec<BigInt>]) -> Vec<(usize, Vec<BigRational>)> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].recip();
        for x in a[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots.into_iter().zip(a).collect()
}

/// The same quotient over `F_p`.
#[derive(Clone, Debug)]
pub struct FieldQuotient {
    p: u64,
    ncols: usize,
    pivots: Vec<(usize, Vec<(usize, u64)>)>,
    basis: Vec<usize>,
}

impl FieldQuotient {
    pub fn new(rows: &IntMatrix, preference: &[usize], p: u64) -> FieldQuotient {
        let ncols = rows.cols();
        let mut active: Vec<Vec<(usize, u64)>> = (0..rows.rows())
            .map(|i| {
                rows.row(i)
                    .iter()
                    .enumerate()
                    .map(|(c, v)| (c, to_residue(v, p)))
                    .filter(|&(_, v)| v != 0)
                    .collect::<Vec<_>>()
            })
            .filter(|r| !r.is_empty())
            .collect();
        let mut pivots: Vec<(usize, Vec<(usize, u64)>)> = Vec::new();
        for &col in preference {
            let choice = active
                .iter()
                .enumerate()
                .filter(|(_, r)| fentry(r, col).is_some())
                .min_by_key(|(i, r)| (r.len(), *i))
                .map(|(i, _)| i);
            let Some(idx) = choice else {
                continue;
            };
            let mut pivot = active.swap_remove(idx);
            let inv = inv_mod(fentry(&pivot, col).expect("chosen"), p);
            for (_, v) in pivot.iter_mut() {
                *v = mul_mod(*v, inv, p);
            }
            for r in active.iter_mut().chain(pivots.iter_mut().map(|(_, r)| r)) {
                if let Some(a) = fentry(r, col) {
                    *r = fsub_multiple(r, a, &pivot, p);
                }
            }
            active.retain(|r| !r.is_empty());
            pivots.push((col, pivot));
        }
        let pivot_cols: BTreeSet<usize> = pivots.iter().map(|(c, _)| *c).collect();
        let basis = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
        FieldQuotient {
            p,
            ncols,
            pivots,
            basis,
        }
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Coordinates over the basis, as residues in `[0, p)`.
    pub fn reduce(&self, b: &[BigInt]) -> Vec<u64> {
        assert_eq!(b.len(), self.ncols, "vector length");
        let p = self.p;
        let orig: Vec<u64> = b.iter().map(|x| to_residue(x, p)).collect();
        let mut v = orig.clone();
        for (col, row) in &self.pivots {
            let a = orig[*col];
            if a == 0 {
                continue;
            }
            for &(c, x) in row {
                v[c] = (v[c] + p - mul_mod(a, x, p)) % p;
            }
        }
        self.basis.iter().map(|&c| v[c]).collect()
    }
}

fn fentry(row: &[(usize, u64)], col: usize) -> Option<u64> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| row[i].1)
}

fn fsub_multiple(
    target: &[(usize, u64)],
    q: u64,
    source: &[(usize, u64)],
    p: u64,
) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        if j == source.len() || (i < target.len() && target[i].0 < source[j].0) {
            out.push(target[i]);
            i += 1;
        } else if i == target.len() || source[j].0 < target[i].0 {
            out.push((source[j].0, (p - mul_mod(q, source[j].1, p)) % p));
            j += 1;
        } else {
            let v = (target[i].1 + p - mul_mod(q, source[j].1, p)) % p;
            if v != 0 {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn reversed(n: usize) -> Vec<usize> {
        (0..n).rev().collect()
    }

    #[test]
    fn unit_pivots_prefer_late_columns() {
        // 2*a - b over (a, b): b is eliminated, a survives with b = 2a.
        let q = LatticeQuotient::new(&m(&[vec![2, -1]]), &reversed(2));
        assert_eq!(q.basis(), &[0]);
        assert_eq!(q.reduce(&ints(&[0, 1])).free, vec![rat(2)]);
        assert!(q.is_torsion_free() && q.integral_basis());
    }

    #[test]
    fn torsion_split_against_basis() {
        // n = 1, k = 2 at weight 2 over (c1^2, c1*x1, x1^2, x2).
        let rows = m(&[vec![2, -1, 0, 0], vec![0, 2, -1, 0], vec![0, -1, 1, -2]]);
        let q = LatticeQuotient::new(&rows, &reversed(4));
        assert_eq!(q.basis(), &[0]);
        assert_eq!(q.divisors(), ints(&[1, 1, 2]).as_slice());
        let x2 = q.reduce(&ints(&[0, 0, 0, 1]));
        assert_eq!(x2.free, vec![rat(1)]);
        assert_eq!(x2.torsion.len(), 1);
        assert_eq!(x2.torsion[0].residue, BigInt::from(1));
        let c1sq = q.reduce(&ints(&[1, 0, 0, 0]));
        assert_eq!(c1sq.free, vec![rat(1)]);
        assert_eq!(c1sq.torsion[0].residue, BigInt::zero());
        // Twice the torsion class vanishes; relations vanish.
        assert!(q.reduce(&ints(&[-2, 0, 0, 2])).is_zero());
        for i in 0..3 {
            assert!(q.reduce(rows.row(i)).is_zero());
        }
    }

    #[test]
    fn no_unit_entries_falls_back_to_rational_basis() {
        let q = LatticeQuotient::new(&m(&[vec![2, 3, 0]]), &[0, 1, 2]);
        assert!(q.is_torsion_free());
        assert!(!q.integral_basis());
        assert_eq!(q.basis(), &[1, 2]);
        let coords = q.reduce(&ints(&[1, 0, 0]));
        assert_eq!(
            coords.free[0],
            BigRational::new(BigInt::from(-3), BigInt::from(2))
        );
    }

    #[test]
    fn field_quotient_matches_rank() {
        let rows = m(&[vec![2, -1, 0, 0], vec![0, 2, -1, 0], vec![0, -1, 1, -2]]);
        let f2 = FieldQuotient::new(&rows, &reversed(4), 2);
        assert_eq!(f2.rank(), 2);
        assert_eq!(f2.dim(), 2);
        let f3 = FieldQuotient::new(&rows, &reversed(4), 3);
        assert_eq!(f3.rank(), 3);
        for i in 0..3 {
            assert!(f3.reduce(rows.row(i)).iter().all(|&v| v == 0));
        }
    }
}
