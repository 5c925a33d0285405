//! Weighted commutative polynomials over `Z` or `F_p`.
//!
//! Every generator `c_i`, `x_i`, `y_i` has weight `i` (cohomological degree `2i`). The
//! generator order is `c_1 < c_2 < ... < x_1 < x_2 < ... < y_1 < ...`, and terms are kept
//! in graded-lexicographic order: higher weight first, then larger exponents on earlier
//! generators first. That order is also the column order of every per-weight matrix.

mod enumerate;
mod parse;

pub use enumerate::{monomial_counts, monomials_of_weight};
pub use parse::{parse_poly, render_poly};

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zlinalg::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    C,
    X,
    Y,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::C => 'c',
            Family::X => 'x',
            Family::Y => 'y',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub family: Family,
    pub index: u32,
}

impl Generator {
    pub fn c(index: u32) -> Self {
        Generator {
            family: Family::C,
            index,
        }
    }

    pub fn x(index: u32) -> Self {
        Generator {
            family: Family::X,
            index,
        }
    }

    pub fn y(index: u32) -> Self {
        Generator {
            family: Family::Y,
            index,
        }
    }

    pub fn weight(self) -> u32 {
        self.index
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

/// The generators in play and the coefficient domain.
///
/// `c_1..c_{c_bound}`, `x_1..x_{x_bound}` and `y_1..y_{y_bound}` exist; a bound of zero
/// means the family is absent. `modulus = Some(p)` switches coefficients to `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorContext {
    pub c_bound: u32,
    pub x_bound: u32,
    pub y_bound: u32,
    modulus: Option<u64>,
}

impl GeneratorContext {
    pub fn new(c_bound: u32, x_bound: u32, y_bound: u32) -> Self {
        GeneratorContext {
            c_bound,
            x_bound,
            y_bound,
            modulus: None,
        }
    }

    /// `c_1..c_n` and `x_1..x_cap`.
    pub fn gauge(n: u32, cap: u32) -> Self {
        GeneratorContext::new(n, cap, 0)
    }

    /// `y_1..y_cap`.
    pub fn bott(cap: u32) -> Self {
        GeneratorContext::new(0, 0, cap)
    }

    pub fn with_modulus(&self, modulus: u64) -> Result<Self> {
        let mut ctx = self.clone();
        ctx.modulus = match modulus {
            0 => None,
            p if is_prime(p) => Some(p),
            p => return Err(Error::CompositeModulus(p)),
        };
        Ok(ctx)
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    fn bound(&self, family: Family) -> u32 {
        match family {
            Family::C => self.c_bound,
            Family::X => self.x_bound,
            Family::Y => self.y_bound,
        }
    }

    /// All generators in the fixed total order.
    pub fn generators(&self) -> Vec<Generator> {
        [Family::C, Family::X, Family::Y]
            .into_iter()
            .flat_map(|fam| {
                (1..=self.bound(fam)).map(move |index| Generator { family: fam, index })
            })
            .collect()
    }

    pub fn contains(&self, g: Generator) -> bool {
        g.index >= 1 && g.index <= self.bound(g.family)
    }

    /// `c_m` beyond `n` does not exist; `x`/`y` indices beyond the weight cap are out of
    /// the active range.
    pub fn check(&self, g: Generator) -> Result<()> {
        if g.index == 0 {
            return Err(Error::GeneratorIndexOutOfRange(format!(
                "{g}: indices start at 1"
            )));
        }
        let bound = self.bound(g.family);
        if g.index <= bound {
            return Ok(());
        }
        match g.family {
            Family::C => Err(Error::UnknownGenerator(format!(
                "{g} (c-generators stop at c{bound})"
            ))),
            _ if bound == 0 => Err(Error::UnknownGenerator(format!(
                "{g} (family not in context)"
            ))),
            _ => Err(Error::GeneratorIndexOutOfRange(format!(
                "{g} exceeds the cap {bound}"
            ))),
        }
    }

    /// Whether every generator of `self` also lives in `other`.
    pub fn is_subcontext_of(&self, other: &GeneratorContext) -> bool {
        self.c_bound <= other.c_bound
            && self.x_bound <= other.x_bound
            && self.y_bound <= other.y_bound
    }

    pub fn normalize(&self, c: BigInt) -> BigInt {
        match self.modulus {
            Some(p) => c.mod_floor(&BigInt::from(p)),
            None => c,
        }
    }

    fn domain_name(&self) -> String {
        match self.modulus {
            Some(p) => format!("F_{p}"),
            None => "Z".into(),
        }
    }
}

/// A monomial as a sorted list of `(generator, exponent)` pairs with nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Generator, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn generator(g: Generator) -> Self {
        Monomial {
            factors: vec![(g, 1)],
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Generator, u32)>) -> Self {
        let mut map: BTreeMap<Generator, u32> = BTreeMap::new();
        for (g, e) in factors {
            *map.entry(g).or_default() += e;
        }
        Monomial {
            factors: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|&(g, e)| g.weight() * e).sum()
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        self.factors
            .binary_search_by(|(h, _)| h.cmp(&g))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, ea) = self.factors[i];
            let (b, eb) = other.factors[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    /// Removes one power of `g`; `None` when `g` does not divide.
    pub fn without_one(&self, g: Generator) -> Option<Monomial> {
        let pos = self.factors.iter().position(|&(h, _)| h == g)?;
        let mut factors = self.factors.clone();
        if factors[pos].1 == 1 {
            factors.remove(pos);
        } else {
            factors[pos].1 -= 1;
        }
        Some(Monomial { factors })
    }

    pub fn in_context(&self, ctx: &GeneratorContext) -> bool {
        self.factors.iter().all(|&(g, _)| ctx.contains(g))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.weight().cmp(&self.weight()).then_with(|| {
            // Lexicographic on exponent vectors, larger exponent first.
            let (a, b) = (&self.factors, &other.factors);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(&(ga, ea)), Some(&(gb, eb))) => match ga.cmp(&gb) {
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => match eb.cmp(&ea) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            ord => return ord,
                        },
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{g}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// An exact linear combination of monomials inside one generator context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    ctx: Arc<GeneratorContext>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl GradedPoly {
    pub fn zero(ctx: &Arc<GeneratorContext>) -> Self {
        GradedPoly {
            ctx: Arc::clone(ctx),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<GeneratorContext>, c: impl Into<BigInt>) -> Self {
        let mut p = GradedPoly::zero(ctx);
        p.add_term(Monomial::one(), c.into());
        p
    }

    pub fn one(ctx: &Arc<GeneratorContext>) -> Self {
        GradedPoly::constant(ctx, 1)
    }

    pub fn generator(ctx: &Arc<GeneratorContext>, g: Generator) -> Result<Self> {
        ctx.check(g)?;
        Ok(GradedPoly::monomial(
            ctx,
            Monomial::generator(g),
            BigInt::one(),
        ))
    }

    /// Panics if `m` uses a generator outside `ctx`; use [`GradedPoly::from_terms`] for
    /// checked construction.
    pub fn monomial(ctx: &Arc<GeneratorContext>, m: Monomial, c: BigInt) -> Self {
        assert!(m.in_context(ctx), "monomial {m} outside context");
        let mut p = GradedPoly::zero(ctx);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        ctx: &Arc<GeneratorContext>,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self> {
        let mut p = GradedPoly::zero(ctx);
        for (m, c) in terms {
            for &(g, _) in m.factors() {
                ctx.check(g)?;
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn context(&self) -> &Arc<GeneratorContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common weight of all terms; `None` for zero or mixed-weight polynomials.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(Monomial::weight);
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_weight().is_some()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weight).max()
    }

    /// Generators that occur with positive exponent.
    pub fn support(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(g, _)| g))
            .collect();
        gens.sort();
        gens.dedup();
        gens
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let c = self.ctx.normalize(c);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = self.ctx.normalize(o.get() + c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &GradedPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) {
            return Ok(());
        }
        if self.ctx.modulus != other.ctx.modulus {
            return Err(Error::DomainMismatch {
                left: self.ctx.domain_name(),
                right: other.ctx.domain_name(),
            });
        }
        if *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch(format!(
                "{:?} vs {:?}",
                self.ctx, other.ctx
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> GradedPoly {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, s: &BigInt) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_compatible(other)?;
        let mut out = GradedPoly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> GradedPoly {
        assert!(m.in_context(&self.ctx), "monomial {m} outside context");
        GradedPoly {
            ctx: Arc::clone(&self.ctx),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Result<GradedPoly> {
        let mut acc = GradedPoly::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Replaces each assigned generator by its image; unassigned generators map to
    /// themselves. The result lives in `target`, which must contain every image's context
    /// and every unassigned generator that occurs.
    pub fn substitute(
        &self,
        assignment: &BTreeMap<Generator, GradedPoly>,
        target: &Arc<GeneratorContext>,
    ) -> Result<GradedPoly> {
        if self.ctx.modulus != target.modulus {
            return Err(Error::DomainMismatch {
                left: self.ctx.domain_name(),
                right: target.domain_name(),
            });
        }
        let mut images: BTreeMap<Generator, GradedPoly> = BTreeMap::new();
        for (g, img) in assignment {
            images.insert(*g, img.rehome(target)?);
        }
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = GradedPoly::constant(target, c.clone());
            let mut kept = Vec::new();
            for &(g, e) in m.factors() {
                match images.get(&g) {
                    Some(img) => term = term.mul(&img.pow(e)?)?,
                    None => {
                        target.check(g)?;
                        kept.push((g, e));
                    }
                }
            }
            if term.is_zero() {
                continue;
            }
            out = out.add(&term.mul_monomial(&Monomial::from_factors(kept)))?;
        }
        Ok(out)
    }

    /// Moves the polynomial into another context that contains all of its generators.
    /// Integer polynomials may move into a prime-field context (coefficients reduce);
    /// the other direction is a domain mismatch.
    pub fn rehome(&self, target: &Arc<GeneratorContext>) -> Result<GradedPoly> {
        if Arc::ptr_eq(&self.ctx, target) {
            return Ok(self.clone());
        }
        if self.ctx.modulus.is_some() && self.ctx.modulus != target.modulus {
            return Err(Error::DomainMismatch {
                left: self.ctx.domain_name(),
                right: target.domain_name(),
            });
        }
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            for &(g, _) in m.factors() {
                target
                    .check(g)
                    .map_err(|e| Error::ContextMismatch(e.to_string()))?;
            }
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Reduces an integer polynomial into the same generator set over `F_p`.
    pub fn reduce_mod(&self, p: u64) -> Result<GradedPoly> {
        let ctx = Arc::new(self.ctx.with_modulus(p)?);
        self.rehome(&ctx)
    }

    /// Keeps only the terms of weight `w`.
    pub fn weight_part(&self, w: u32) -> GradedPoly {
        GradedPoly {
            ctx: Arc::clone(&self.ctx),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients against an ordered monomial list; `None` if a term falls outside it.
    pub fn coordinates(&self, monomials: &[Monomial]) -> Option<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); monomials.len()];
        for (m, c) in &self.terms {
            let idx = monomials.binary_search(m).ok()?;
            out[idx] = c.clone();
        }
        Some(out)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn leading_sign_negative(&self) -> bool {
        self.terms.values().next().is_some_and(|c| c.is_negative())
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<GeneratorContext> {
        Arc::new(GeneratorContext::gauge(3, 4))
    }

    fn p(s: &str) -> GradedPoly {
        parse_poly(s, &ctx()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("c1 - x1");
        let b = p("c1 + x1");
        assert_eq!(a.mul(&b).unwrap(), p("c1^2 - x1^2"));
    }

    #[test]
    fn zero_is_additive_identity() {
        let q = p("3*c2 - x1*c1 + x1^2 - 2*x2");
        assert_eq!(GradedPoly::zero(&ctx()).add(&q).unwrap(), q);
    }

    #[test]
    fn square_expansion() {
        let a = p("c1 + x1");
        assert_eq!(a.pow(2).unwrap(), p("c1^2 + 2*c1*x1 + x1^2"));
    }

    #[test]
    fn homogeneous_product_weight() {
        let a = p("c2 + x1^2");
        let b = p("x3 - c1*x2");
        assert_eq!(a.mul(&b).unwrap().homogeneous_weight(), Some(5));
    }

    #[test]
    fn context_and_domain_mismatch() {
        let other = Arc::new(GeneratorContext::gauge(2, 4));
        let a = p("c1");
        let b = parse_poly("c1", &other).unwrap();
        assert!(matches!(a.add(&b), Err(Error::ContextMismatch(_))));
        let modp = a.reduce_mod(3).unwrap();
        assert!(matches!(a.mul(&modp), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn substitute_examples() {
        let c = ctx();
        let mut zero_c3 = BTreeMap::new();
        zero_c3.insert(Generator::c(3), GradedPoly::zero(&c));
        assert_eq!(
            p("c3 + c1*x1").substitute(&zero_c3, &c).unwrap(),
            p("c1*x1")
        );

        let mut x1_to_2c1 = BTreeMap::new();
        x1_to_2c1.insert(Generator::x(1), p("2*c1"));
        assert_eq!(p("x1^2").substitute(&x1_to_2c1, &c).unwrap(), p("4*c1^2"));
    }

    #[test]
    fn substitute_into_smaller_context_needs_images() {
        let small = Arc::new(GeneratorContext::gauge(2, 4));
        let empty = BTreeMap::new();
        assert!(p("c3").substitute(&empty, &small).is_err());
    }

    #[test]
    fn modular_coefficients_normalize() {
        let q = p("4*c1 - x1").reduce_mod(3).unwrap();
        assert_eq!(
            q.coefficient(&Monomial::generator(Generator::c(1))),
            BigInt::from(1)
        );
        assert_eq!(
            q.coefficient(&Monomial::generator(Generator::x(1))),
            BigInt::from(2)
        );
        assert!(p("3*c1").reduce_mod(3).unwrap().is_zero());
        assert!(matches!(
            p("c1").reduce_mod(4),
            Err(Error::CompositeModulus(4))
        ));
    }

    #[test]
    fn term_order_is_graded_lex() {
        let mut ms = [
            Monomial::from_factors([(Generator::x(2), 1)]),
            Monomial::from_factors([(Generator::c(2), 1)]),
            Monomial::from_factors([(Generator::c(1), 1), (Generator::x(1), 1)]),
            Monomial::from_factors([(Generator::x(1), 2)]),
            Monomial::from_factors([(Generator::c(1), 2)]),
            Monomial::from_factors([(Generator::c(1), 3)]),
            Monomial::one(),
        ];
        ms.sort();
        let rendered: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(rendered, ["c1^3", "c1^2", "c1*x1", "c2", "x1^2", "x2", "1"]);
    }
}
