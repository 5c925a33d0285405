//! The free double suspension `σ̂²_k` on the stable Chern classes.
//!
//! The operator lowers weight by one and is a derivation:
//! `σ̂²(pq) = σ̂²(p)·q + p·σ̂²(q)`. On generators,
//!
//! ```text
//! σ̂²(c_i) = k c_{i-1} + Σ_{2≤j≤i} (-1)^{j-1} s_{j-1}(x) c_{i-j},   c_0 = 1.
//! ```
//!
//! Images live in `Z[c_1..c_cap, x_1..x_cap]`; finite rank is reached afterwards with
//! [`SuspensionOperator::project_to_gauge`].

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polyring::{Family, Generator, GeneratorContext, GradedPoly};
use crate::presentations::newton_in;

#[derive(Debug)]
pub struct SuspensionOperator {
    k: i64,
    n: Option<u32>,
    cap: u32,
    ctx: Arc<GeneratorContext>,
    sums: Vec<GradedPoly>,
    images: RwLock<HashMap<u32, GradedPoly>>,
}

impl SuspensionOperator {
    /// Stable operator for the degree-`k` component, handling inputs up to weight `cap`.
    pub fn new(k: i64, cap: u32) -> Result<Self> {
        if cap == 0 {
            return Err(Error::Argument("the weight cap must be at least 1".into()));
        }
        let ctx = Arc::new(GeneratorContext::new(cap, cap, 0));
        let sums = newton_in(Family::X, cap, &ctx)?;
        Ok(SuspensionOperator {
            k,
            n: None,
            cap,
            ctx,
            sums,
            images: RwLock::new(HashMap::new()),
        })
    }

    /// Records a target rank; see [`SuspensionOperator::apply_truncated`].
    pub fn with_rank(mut self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("n must be at least 1".into()));
        }
        self.n = Some(n);
        Ok(self)
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn rank(&self) -> Option<u32> {
        self.n
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn context(&self) -> &Arc<GeneratorContext> {
        &self.ctx
    }

    fn c(&self, m: u32) -> GradedPoly {
        if m == 0 {
            GradedPoly::one(&self.ctx)
        } else {
            GradedPoly::generator(&self.ctx, Generator::c(m)).expect("c_m within the operator cap")
        }
    }

    /// `s_{j}(x)` for `1 ≤ j ≤ cap`.
    fn s(&self, j: u32) -> &GradedPoly {
        &self.sums[j as usize - 1]
    }

    fn check_index(&self, i: u32) -> Result<()> {
        if i == 0 {
            return Err(Error::Argument("generator indices start at 1".into()));
        }
        if i > self.cap {
            return Err(Error::WeightCap {
                weight: i,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// `σ̂²_k(c_i)`, homogeneous of weight `i - 1`.
    pub fn fds_generator(&self, i: u32) -> Result<GradedPoly> {
        self.check_index(i)?;
        if let Some(p) = self.images.read().expect("image lock poisoned").get(&i) {
            return Ok(p.clone());
        }
        let mut out = self.c(i - 1).scale(&BigInt::from(self.k));
        for j in 2..=i {
            let term = self.s(j - 1).mul(&self.c(i - j))?;
            out = if j % 2 == 0 {
                out.sub(&term)?
            } else {
                out.add(&term)?
            };
        }
        let mut images = self.images.write().expect("image lock poisoned");
        Ok(images.entry(i).or_insert(out).clone())
    }

    /// Extends [`fds_generator`](Self::fds_generator) to polynomials in the `c_i` as a
    /// derivation.
    pub fn fds_apply(&self, p: &GradedPoly) -> Result<GradedPoly> {
        if let Some(g) = p.support().into_iter().find(|g| g.family != Family::C) {
            return Err(Error::Argument(format!(
                "the suspension acts on c-polynomials; found {g}"
            )));
        }
        let p = p.rehome(&self.ctx)?;
        let mut out = GradedPoly::zero(&self.ctx);
        for (m, coef) in p.terms() {
            for &(g, e) in m.factors() {
                let rest = m.without_one(g).expect("g divides m");
                let term = self
                    .fds_generator(g.index)?
                    .mul_monomial(&rest)
                    .scale(&(coef * BigInt::from(e)));
                out = out.add(&term)?;
            }
        }
        Ok(out)
    }

    /// `fds_apply` followed by `c_m ↦ 0` for `m > n` when a rank was set.
    pub fn apply_truncated(&self, p: &GradedPoly) -> Result<GradedPoly> {
        let image = self.fds_apply(p)?;
        match self.n {
            Some(n) => project_to_gauge(&image, n),
            None => Ok(image),
        }
    }

    /// `μ*(c_i) = Σ_j c_j ⊗ c_{i-j}`, listed by increasing `j`.
    pub fn whitney_coproduct(&self, i: u32) -> Result<Vec<(GradedPoly, GradedPoly)>> {
        if i > self.cap {
            return Err(Error::WeightCap {
                weight: i,
                cap: self.cap,
            });
        }
        Ok((0..=i).map(|j| (self.c(j), self.c(i - j))).collect())
    }

    /// `σ²_0(c_m)`: zero for `m = 1`, else `(-1)^{m-1} s_{m-1}(x)`.
    pub fn sigma0_generator(&self, m: u32) -> Result<GradedPoly> {
        self.check_index(m)?;
        if m == 1 {
            return Ok(GradedPoly::zero(&self.ctx));
        }
        let s = self.s(m - 1).clone();
        Ok(if m.is_multiple_of(2) { s.neg() } else { s })
    }

    /// `σ̂²_k(c_i)` assembled from the coproduct: `Σ_j σ²_k(c_j) · c_{i-j}` with
    /// `σ²_k(c_1) = k` and `σ²_k(c_j) = σ²_0(c_j)` for `j ≥ 2`.
    pub fn fds_generator_via_coproduct(&self, i: u32) -> Result<GradedPoly> {
        self.check_index(i)?;
        let mut out = GradedPoly::zero(&self.ctx);
        for (j, (_, right)) in self.whitney_coproduct(i)?.into_iter().enumerate() {
            let left = match j {
                0 => continue,
                // The component shift only reaches c_1: S² carries no other
                // cohomology for the pulled-back class to pair with.
                1 => GradedPoly::constant(&self.ctx, self.k),
                _ => self.sigma0_generator(j as u32)?,
            };
            out = out.add(&left.mul(&right)?)?;
        }
        Ok(out)
    }
}

/// Restriction to the fibre `ΩBU`: every `c_m` with `m ≥ 1` goes to zero.
pub fn loop_restriction(p: &GradedPoly) -> Result<GradedPoly> {
    let zero = GradedPoly::zero(p.context());
    let kill: BTreeMap<Generator, GradedPoly> = p
        .support()
        .into_iter()
        .filter(|g| g.family == Family::C)
        .map(|g| (g, zero.clone()))
        .collect();
    p.substitute(&kill, p.context())
}

/// `c_m ↦ 0` for `m > n`; the result lives in `Z[c_1..c_n, x_1..]` with the same
/// `x` range as the input.
pub fn project_to_gauge(p: &GradedPoly, n: u32) -> Result<GradedPoly> {
    let src = p.context();
    let target = Arc::new(GeneratorContext::new(n, src.x_bound, src.y_bound));
    let zero = GradedPoly::zero(src);
    let kill: BTreeMap<Generator, GradedPoly> = p
        .support()
        .into_iter()
        .filter(|g| g.family == Family::C && g.index > n)
        .map(|g| (g, zero.clone()))
        .collect();
    p.substitute(&kill, &target)
}
