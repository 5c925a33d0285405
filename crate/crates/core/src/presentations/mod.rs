//! The two relation families and the graded quotient rings they present.
//!
//! - `Gauge(n, k)`: `Z[c_1..c_n, x_1, x_2, ...] / (h_n, h_{n+1}, ...)` with
//!   `h_i = k c_i + Σ_{1≤j≤i} (-1)^j s_j(x_1..x_j) c_{i-j}`, using `c_0 = 1` and
//!   `c_m = 0` for `m > n`.
//! - `Bott(n)`: `Z[y_1, y_2, ...] / (s_n, s_{n+1}, ...)`, the cohomology of `ΩSU(n)`.
//!
//! In both cases `s_j` is the Newton polynomial with `e_t ↦ x_t` (resp. `y_t`).
//!
//! Everything is computed one weight at a time: the weight-`w` slice of the ideal is
//! spanned by the products `m · r_i` of the relations `r_i`, `n ≤ i ≤ w`, with all
//! monomials `m` of weight `w - i`.

mod cache;
mod component;
mod engine;
mod series;

pub use cache::{ComponentSummary, DiskCache, CACHE_FORMAT_VERSION};
pub use component::{DegreeComponent, NormalForm};
pub use engine::{Engine, TorsionEntry};
pub use series::TruncatedSeries;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{Family, Generator, GeneratorContext, GradedPoly, Monomial};
use crate::symfunc::{power_sums_in_e, SymPoly};

/// Default weight cap (cohomological degree 20).
pub const DEFAULT_WEIGHT_CAP: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PresentationKind {
    Gauge { n: u32, k: i64 },
    Bott { n: u32 },
}

impl PresentationKind {
    pub fn n(self) -> u32 {
        match self {
            PresentationKind::Gauge { n, .. } | PresentationKind::Bott { n } => n,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PresentationKind::Gauge { .. } => "gauge",
            PresentationKind::Bott { .. } => "bott",
        }
    }
}

impl fmt::Display for PresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationKind::Gauge { n, k } => write!(f, "Gauge(n={n}, k={k})"),
            PresentationKind::Bott { n } => write!(f, "Bott(n={n})"),
        }
    }
}

/// A presentation together with the weight cap `D`.
#[derive(Clone, Debug)]
pub struct PresentationSpec {
    kind: PresentationKind,
    weight_cap: u32,
    ctx: Arc<GeneratorContext>,
}

impl PartialEq for PresentationSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.weight_cap == other.weight_cap
    }
}

impl Eq for PresentationSpec {}

impl PresentationSpec {
    pub fn new(kind: PresentationKind, weight_cap: u32) -> Result<Self> {
        if kind.n() == 0 {
            return Err(Error::Argument("n must be at least 1".into()));
        }
        if weight_cap == 0 {
            return Err(Error::Argument("the weight cap must be at least 1".into()));
        }
        let ctx = match kind {
            PresentationKind::Gauge { n, .. } => GeneratorContext::gauge(n, weight_cap),
            PresentationKind::Bott { .. } => GeneratorContext::bott(weight_cap),
        };
        Ok(PresentationSpec {
            kind,
            weight_cap,
            ctx: Arc::new(ctx),
        })
    }

    pub fn gauge(n: u32, k: i64, weight_cap: u32) -> Result<Self> {
        PresentationSpec::new(PresentationKind::Gauge { n, k }, weight_cap)
    }

    pub fn bott(n: u32, weight_cap: u32) -> Result<Self> {
        PresentationSpec::new(PresentationKind::Bott { n }, weight_cap)
    }

    pub fn with_cap(&self, weight_cap: u32) -> Result<Self> {
        PresentationSpec::new(self.kind, weight_cap)
    }

    pub fn kind(&self) -> PresentationKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.kind.n()
    }

    pub fn weight_cap(&self) -> u32 {
        self.weight_cap
    }

    pub fn context(&self) -> &Arc<GeneratorContext> {
        &self.ctx
    }

    pub(crate) fn check_weight(&self, w: u32) -> Result<()> {
        if w > self.weight_cap {
            Err(Error::WeightCap {
                weight: w,
                cap: self.weight_cap,
            })
        } else {
            Ok(())
        }
    }

    /// The relation of index `i`: `h_i` for gauge presentations, `s_i(y)` for Bott.
    pub fn relation(&self, i: u32) -> Result<GradedPoly> {
        match self.kind {
            PresentationKind::Gauge { .. } => gauge_relation(i, self),
            PresentationKind::Bott { .. } => bott_relation(i, self),
        }
    }

    /// Relations of index `n..=upto`.
    pub fn relations_up_to(&self, upto: u32) -> Result<Vec<(u32, GradedPoly)>> {
        let sums = newton_in(self.family(), upto, &self.ctx)?;
        (self.n()..=upto)
            .map(|i| Ok((i, self.relation_from_sums(i, &sums)?)))
            .collect()
    }

    fn family(&self) -> Family {
        match self.kind {
            PresentationKind::Gauge { .. } => Family::X,
            PresentationKind::Bott { .. } => Family::Y,
        }
    }

    fn relation_from_sums(&self, i: u32, sums: &[GradedPoly]) -> Result<GradedPoly> {
        let n = self.n();
        if i < n {
            return Err(Error::Argument(format!(
                "relation index {i} is below n = {n}; the ideal starts at index n"
            )));
        }
        self.check_weight(i)?;
        match self.kind {
            PresentationKind::Bott { .. } => Ok(sums[i as usize - 1].clone()),
            PresentationKind::Gauge { k, .. } => {
                let c = |m: u32| -> Result<GradedPoly> {
                    if m == 0 {
                        Ok(GradedPoly::one(&self.ctx))
                    } else if m <= n {
                        GradedPoly::generator(&self.ctx, Generator::c(m))
                    } else {
                        Ok(GradedPoly::zero(&self.ctx))
                    }
                };
                let mut h = c(i)?.scale(&BigInt::from(k));
                for j in 1..=i {
                    if i - j > n {
                        continue;
                    }
                    let term = sums[j as usize - 1].mul(&c(i - j)?)?;
                    h = if j % 2 == 0 {
                        h.add(&term)?
                    } else {
                        h.sub(&term)?
                    };
                }
                Ok(h)
            }
        }
    }
}

/// Writes an integral symmetric polynomial in the elementary basis with `e_t` replaced
/// by the generator `t` of `family`.
pub fn sym_to_graded(
    sym: &SymPoly,
    family: Family,
    ctx: &Arc<GeneratorContext>,
) -> Result<GradedPoly> {
    if !sym.is_integral() {
        return Err(Error::Argument(format!(
            "{sym} has non-integral coefficients"
        )));
    }
    GradedPoly::from_terms(
        ctx,
        sym.terms().map(|(exps, c)| {
            let m = Monomial::from_factors(exps.iter().enumerate().map(|(j, &e)| {
                (
                    Generator {
                        family,
                        index: j as u32 + 1,
                    },
                    e,
                )
            }));
            (m, c.to_integer())
        }),
    )
}

/// `s_1, ..., s_upto` as polynomials in the given family.
pub fn newton_in(
    family: Family,
    upto: u32,
    ctx: &Arc<GeneratorContext>,
) -> Result<Vec<GradedPoly>> {
    power_sums_in_e(upto as usize)
        .iter()
        .map(|s| sym_to_graded(s, family, ctx))
        .collect()
}

/// `h_i` of a gauge presentation.
pub fn gauge_relation(i: u32, spec: &PresentationSpec) -> Result<GradedPoly> {
    if !matches!(spec.kind, PresentationKind::Gauge { .. }) {
        return Err(Error::Argument(format!(
            "{} is not a gauge presentation",
            spec.kind
        )));
    }
    spec.check_weight(i)?;
    let sums = newton_in(Family::X, i, &spec.ctx)?;
    spec.relation_from_sums(i, &sums)
}

/// `s_i(y_1, ..., y_i)` of a Bott presentation.
pub fn bott_relation(i: u32, spec: &PresentationSpec) -> Result<GradedPoly> {
    if !matches!(spec.kind, PresentationKind::Bott { .. }) {
        return Err(Error::Argument(format!(
            "{} is not a Bott presentation",
            spec.kind
        )));
    }
    spec.check_weight(i)?;
    let sums = newton_in(Family::Y, i, &spec.ctx)?;
    spec.relation_from_sums(i, &sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn parsed(spec: &PresentationSpec, s: &str) -> GradedPoly {
        parse_poly(s, spec.context()).unwrap()
    }

    #[test]
    fn gauge_relation_examples() {
        for k in [-2, 0, 1, 3] {
            let spec = PresentationSpec::gauge(1, k, 4).unwrap();
            assert_eq!(
                gauge_relation(1, &spec).unwrap(),
                parsed(&spec, &format!("{k}*c1 - x1"))
            );
        }
        let spec = PresentationSpec::gauge(2, 3, 4).unwrap();
        assert_eq!(
            gauge_relation(2, &spec).unwrap(),
            parsed(&spec, "3*c2 - x1*c1 + x1^2 - 2*x2")
        );
        for k in [-1, 0, 7] {
            let spec = PresentationSpec::gauge(2, k, 4).unwrap();
            assert_eq!(
                gauge_relation(3, &spec).unwrap(),
                parsed(&spec, "-c2*x1 + c1*x1^2 - 2*c1*x2 - x1^3 + 3*x1*x2 - 3*x3")
            );
        }
    }

    #[test]
    fn gauge_relation_errors() {
        let spec = PresentationSpec::gauge(2, 1, 4).unwrap();
        assert!(matches!(gauge_relation(1, &spec), Err(Error::Argument(_))));
        assert!(matches!(
            gauge_relation(5, &spec),
            Err(Error::WeightCap { .. })
        ));
        let bott = PresentationSpec::bott(2, 4).unwrap();
        assert!(gauge_relation(2, &bott).is_err());
        assert!(PresentationSpec::gauge(0, 1, 4).is_err());
        assert!(PresentationSpec::gauge(1, 1, 0).is_err());
    }

    #[test]
    fn bott_relation_examples() {
        let b1 = PresentationSpec::bott(1, 4).unwrap();
        assert_eq!(bott_relation(1, &b1).unwrap(), parsed(&b1, "y1"));
        let b2 = PresentationSpec::bott(2, 4).unwrap();
        assert_eq!(bott_relation(2, &b2).unwrap(), parsed(&b2, "y1^2 - 2*y2"));
        assert!(bott_relation(1, &b2).is_err());
        for n in 1..=3 {
            let b = PresentationSpec::bott(n, 4).unwrap();
            assert_eq!(
                bott_relation(3, &b).unwrap(),
                parsed(&b, "y1^3 - 3*y1*y2 + 3*y3")
            );
        }
    }

    #[test]
    fn relations_are_homogeneous() {
        for n in 1..=3 {
            let spec = PresentationSpec::gauge(n, 2, 10).unwrap();
            for (i, h) in spec.relations_up_to(10).unwrap() {
                assert_eq!(h.homogeneous_weight(), Some(i));
            }
        }
    }

    #[test]
    fn x_terms_of_h2_vanish() {
        use std::collections::BTreeMap;
        let spec = PresentationSpec::gauge(2, 1, 4).unwrap();
        let h2 = gauge_relation(2, &spec).unwrap();
        let mut kill = BTreeMap::new();
        kill.insert(Generator::x(1), GradedPoly::zero(spec.context()));
        kill.insert(Generator::x(2), GradedPoly::zero(spec.context()));
        assert_eq!(
            h2.substitute(&kill, spec.context()).unwrap(),
            parsed(&spec, "c2")
        );
    }
}
