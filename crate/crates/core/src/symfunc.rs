//! Symmetric-function algebra in two bases: elementary symmetric functions `e_i` and
//! power sums `p_i`, both of weight `i`.
//!
//! Power sums are called `p_i` in code so that `s_i` keeps a single meaning: the
//! Newton polynomial `s_i(e_1, ..., e_i) = p_i`. Rendering prints power-sum generators
//! as `s1, s2, ...`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymBasis {
    Elementary,
    PowerSum,
}

impl SymBasis {
    fn symbol(self) -> &'static str {
        match self {
            SymBasis::Elementary => "e",
            SymBasis::PowerSum => "s",
        }
    }
}

/// Exponent vector: entry `j` is the exponent of generator `j + 1`. Trailing zeros are
/// always trimmed, so structural equality is polynomial equality.
pub type SymExponents = Vec<u32>;

/// A polynomial with rational coefficients in the generators of one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    basis: SymBasis,
    terms: BTreeMap<SymExponents, BigRational>,
}

fn trim(mut exps: SymExponents) -> SymExponents {
    while exps.last() == Some(&0) {
        exps.pop();
    }
    exps
}

fn exps_weight(exps: &[u32]) -> u64 {
    exps.iter()
        .enumerate()
        .map(|(j, &e)| (j as u64 + 1) * e as u64)
        .sum()
}

impl SymPoly {
    pub fn zero(basis: SymBasis) -> Self {
        SymPoly {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(basis: SymBasis, c: BigRational) -> Self {
        let mut p = SymPoly::zero(basis);
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one(basis: SymBasis) -> Self {
        SymPoly::constant(basis, BigRational::one())
    }

    /// The generator `e_i` or `p_i`.
    pub fn generator(basis: SymBasis, i: usize) -> Result<Self> {
        if i == 0 {
            return Err(Error::Argument("generator index must be at least 1".into()));
        }
        let mut exps = vec![0; i];
        exps[i - 1] = 1;
        let mut p = SymPoly::zero(basis);
        p.add_term(exps, BigRational::one());
        Ok(p)
    }

    pub fn basis(&self) -> SymBasis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymExponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(&trim(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, exps: SymExponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(trim(exps)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `Some(w)` when every term has weight `w`; the zero polynomial reports `None`.
    pub fn homogeneous_weight(&self) -> Option<u64> {
        let mut weights = self.terms.keys().map(|e| exps_weight(e));
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn check_basis(&self, other: &SymPoly) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::DomainMismatch {
                left: format!("{:?}", self.basis),
                right: format!("{:?}", other.basis),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SymPoly) -> Result<SymPoly> {
        self.check_basis(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymPoly) -> Result<SymPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymPoly {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, s: &BigRational) -> SymPoly {
        let mut out = SymPoly::zero(self.basis);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> Result<SymPoly> {
        self.check_basis(other)?;
        let mut out = SymPoly::zero(self.basis);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let len = ea.len().max(eb.len());
                let exps: SymExponents = (0..len)
                    .map(|j| ea.get(j).copied().unwrap_or(0) + eb.get(j).copied().unwrap_or(0))
                    .collect();
                out.add_term(exps, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<SymPoly> {
        let mut acc = SymPoly::one(self.basis);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Replaces generator `j` by `images[j - 1]`. All images must share one basis,
    /// which becomes the basis of the result.
    pub fn substitute(&self, images: &[SymPoly]) -> Result<SymPoly> {
        let target = images.first().map(|p| p.basis).unwrap_or(self.basis);
        if images.iter().any(|p| p.basis != target) {
            return Err(Error::Argument(
                "substitution images use mixed bases".into(),
            ));
        }
        let mut out = SymPoly::zero(target);
        for (exps, c) in &self.terms {
            if exps.len() > images.len() {
                return Err(Error::Argument(format!(
                    "no image supplied for generator {}",
                    exps.len()
                )));
            }
            let mut term = SymPoly::constant(target, c.clone());
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[j].pow(e)?)?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Evaluates with generator `j` set to `values[j - 1]`.
    pub fn evaluate(&self, values: &[BigRational]) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (exps, c) in &self.terms {
            if exps.len() > values.len() {
                return Err(Error::Argument(format!(
                    "no value supplied for generator {}",
                    exps.len()
                )));
            }
            let mut term = c.clone();
            for (j, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term *= &values[j];
                }
            }
            total += term;
        }
        Ok(total)
    }
}

fn write_exponents(f: &mut fmt::Formatter<'_>, symbol: &str, exps: &[u32]) -> fmt::Result {
    let mut first = true;
    for (j, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}{}", symbol, j + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest weight first, then larger exponents of low-index generators first.
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered
            .sort_by(|(a, _), (b, _)| exps_weight(b).cmp(&exps_weight(a)).then_with(|| b.cmp(a)));
        for (idx, (exps, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            if exps.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write_exponents(f, self.basis.symbol(), exps)?;
        }
        Ok(())
    }
}

fn check_index(i: usize) -> Result<()> {
    if i == 0 {
        Err(Error::Argument(
            "symmetric-function index must be at least 1".into(),
        ))
    } else {
        Ok(())
    }
}

/// `s_1, ..., s_upto` written in elementary symmetric functions, via Newton's recurrence
/// `p_m = Σ_{j<m} (-1)^{j-1} e_j p_{m-j} + (-1)^{m-1} m e_m`.
pub fn power_sums_in_e(upto: usize) -> Vec<SymPoly> {
    let basis = SymBasis::Elementary;
    let mut sums: Vec<SymPoly> = Vec::with_capacity(upto);
    for m in 1..=upto {
        let mut p = SymPoly::zero(basis);
        for j in 1..m {
            let term = SymPoly::generator(basis, j)
                .expect("j >= 1")
                .mul(&sums[m - j - 1])
                .expect("same basis");
            p = if j % 2 == 1 {
                p.add(&term)
            } else {
                p.sub(&term)
            }
            .expect("same basis");
        }
        let last = SymPoly::generator(basis, m)
            .expect("m >= 1")
            .scale(&BigRational::from_integer(BigInt::from(m)));
        p = if m % 2 == 1 {
            p.add(&last)
        } else {
            p.sub(&last)
        }
        .expect("same basis");
        sums.push(p);
    }
    sums
}

/// The Newton polynomial `s_i(e_1, ..., e_i)`: the i-th power sum in the elementary basis.
pub fn power_sum_in_e(i: usize) -> Result<SymPoly> {
    check_index(i)?;
    Ok(power_sums_in_e(i).pop().expect("i >= 1"))
}

/// `e_1, ..., e_upto` written in power sums, via `m e_m = Σ_{j=1}^{m} (-1)^{j-1} e_{m-j} p_j`.
pub fn elementaries_in_p(upto: usize) -> Vec<SymPoly> {
    let basis = SymBasis::PowerSum;
    let mut es: Vec<SymPoly> = vec![SymPoly::one(basis)];
    for m in 1..=upto {
        let mut acc = SymPoly::zero(basis);
        for j in 1..=m {
            let term = es[m - j]
                .mul(&SymPoly::generator(basis, j).expect("j >= 1"))
                .expect("same basis");
            acc = if j % 2 == 1 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            }
            .expect("same basis");
        }
        es.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(m))));
    }
    es.remove(0);
    es
}

pub fn e_in_power_sums(i: usize) -> Result<SymPoly> {
    check_index(i)?;
    Ok(elementaries_in_p(i).pop().expect("i >= 1"))
}

/// Checks `p_i - e_1 p_{i-1} + e_2 p_{i-2} - ... + (-1)^{i-1} e_{i-1} p_1 + (-1)^i i e_i = 0`
/// with every `p_j` replaced by [`power_sum_in_e`]`(j)`.
pub fn newton_recurrence_check(i: usize) -> bool {
    if i == 0 {
        return false;
    }
    let basis = SymBasis::Elementary;
    let sums = power_sums_in_e(i);
    let mut total = sums[i - 1].clone();
    for j in 1..i {
        let term = SymPoly::generator(basis, j)
            .expect("j >= 1")
            .mul(&sums[i - j - 1])
            .expect("same basis");
        total = if j % 2 == 1 {
            total.sub(&term)
        } else {
            total.add(&term)
        }
        .expect("same basis");
    }
    let last = SymPoly::generator(basis, i)
        .expect("i >= 1")
        .scale(&BigRational::from_integer(BigInt::from(i)));
    total = if i % 2 == 1 {
        total.sub(&last)
    } else {
        total.add(&last)
    }
    .expect("same basis");
    total.is_zero()
}

/// The weight-`i` component `s_i / i!` of the Chern character, in the elementary basis.
pub fn chern_character_component(i: usize) -> Result<SymPoly> {
    let s = power_sum_in_e(i)?;
    let fact: BigInt = (1..=i).map(BigInt::from).product();
    Ok(s.scale(&BigRational::new(BigInt::one(), fact)))
}

/// Elementary symmetric values `e_1, ..., e_m` of the given variables.
pub fn elementary_values(vars: &[BigRational]) -> Vec<BigRational> {
    // Coefficients of Π (1 + a t).
    let mut coeffs = vec![BigRational::one()];
    for a in vars {
        coeffs.push(BigRational::zero());
        for j in (1..coeffs.len()).rev() {
            let prev = coeffs[j - 1].clone();
            coeffs[j] += prev * a;
        }
    }
    coeffs.remove(0);
    coeffs
}
