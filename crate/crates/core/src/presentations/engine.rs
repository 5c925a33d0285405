use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::cache::{bigint_vec, monomial_hash, ComponentSummary, DiskCache};
use super::{DegreeComponent, NormalForm, PresentationKind, PresentationSpec, TruncatedSeries};
use crate::error::{Error, Result};
use crate::polyring::{monomials_of_weight, Generator, GradedPoly};
use crate::zlinalg::Modulus;

type Key = (PresentationKind, u32, Modulus);

/// Nontrivial elementary divisors at one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionEntry {
    pub weight: u32,
    #[serde(with = "bigint_vec")]
    pub divisors: Vec<BigInt>,
}

/// Builds and caches degree components.
///
/// Components do not depend on the weight cap, so one engine serves every cap. Reads of
/// the in-memory cache are shared; inserts and disk writes are exclusive.
#[derive(Debug, Default)]
pub struct Engine {
    components: RwLock<HashMap<Key, Arc<DegreeComponent>>>,
    disk: Option<DiskCache>,
    disk_write: Mutex<()>,
}

impl Engine {
    pub fn new() -> Self {
        Engine::default()
    }

    pub fn with_disk_cache(cache: DiskCache) -> Self {
        Engine {
            disk: Some(cache),
            ..Engine::default()
        }
    }

    pub fn disk_cache(&self) -> Option<&DiskCache> {
        self.disk.as_ref()
    }

    pub fn component(
        &self,
        spec: &PresentationSpec,
        w: u32,
        modulus: Modulus,
    ) -> Result<Arc<DegreeComponent>> {
        spec.check_weight(w)?;
        let key = (spec.kind(), w, modulus);
        if let Some(c) = self
            .components
            .read()
            .expect("cache lock poisoned")
            .get(&key)
        {
            return Ok(Arc::clone(c));
        }
        let built = Arc::new(DegreeComponent::build(spec, w, modulus)?);
        let mut map = self.components.write().expect("cache lock poisoned");
        Ok(Arc::clone(map.entry(key).or_insert(built)))
    }

    /// Summary of one component, served from the disk cache when a valid record exists.
    pub fn summary(
        &self,
        spec: &PresentationSpec,
        w: u32,
        modulus: Modulus,
    ) -> Result<ComponentSummary> {
        spec.check_weight(w)?;
        if let Some(disk) = &self.disk {
            let hash = monomial_hash(&monomials_of_weight(spec.context(), w));
            if let Some(rec) = disk.load(spec.kind(), w, modulus, &hash) {
                return Ok(rec);
            }
        }
        let summary = ComponentSummary::of(&*self.component(spec, w, modulus)?);
        if let Some(disk) = &self.disk {
            let _guard = self.disk_write.lock().expect("cache lock poisoned");
            disk.store(&summary)?;
        }
        Ok(summary)
    }

    /// Summaries for weights `0..=cap`, computed in parallel.
    pub fn summaries(
        &self,
        spec: &PresentationSpec,
        modulus: Modulus,
    ) -> Result<Vec<ComponentSummary>> {
        (0..=spec.weight_cap())
            .into_par_iter()
            .map(|w| self.summary(spec, w, modulus))
            .collect()
    }

    /// Components for weights `0..=cap`, computed in parallel.
    pub fn components(
        &self,
        spec: &PresentationSpec,
        modulus: Modulus,
    ) -> Result<Vec<Arc<DegreeComponent>>> {
        (0..=spec.weight_cap())
            .into_par_iter()
            .map(|w| self.component(spec, w, modulus))
            .collect()
    }

    /// Per-weight dimensions up to the presentation's weight cap.
    pub fn poincare_series(
        &self,
        spec: &PresentationSpec,
        modulus: Modulus,
    ) -> Result<TruncatedSeries> {
        let dims = self
            .summaries(spec, modulus)?
            .iter()
            .map(|s| s.dim as i64)
            .collect();
        Ok(TruncatedSeries::from_coeffs(dims))
    }

    /// `P(BU(n)) · P(Bott(n))` over `Q`, truncated at `cap`.
    pub fn leray_hirsch_series(&self, n: u32, cap: u32) -> Result<TruncatedSeries> {
        let bott = PresentationSpec::bott(n, cap)?;
        Ok(TruncatedSeries::bu(n, cap).mul(&self.poincare_series(&bott, Modulus::Rational)?))
    }

    pub fn normal_form(
        &self,
        spec: &PresentationSpec,
        p: &GradedPoly,
        modulus: Modulus,
    ) -> Result<NormalForm> {
        if let Some(top) = p.max_weight() {
            spec.check_weight(top)?;
        }
        let p = p.rehome(spec.context())?;
        let w = match p.homogeneous_weight() {
            Some(w) => w,
            None if p.is_zero() => 0,
            None => return Err(Error::NotHomogeneous),
        };
        self.component(spec, w, modulus)?.normal_form(&p)
    }

    /// Normal form of `p·q`.
    pub fn product(
        &self,
        spec: &PresentationSpec,
        p: &GradedPoly,
        q: &GradedPoly,
        modulus: Modulus,
    ) -> Result<NormalForm> {
        let total = p.max_weight().unwrap_or(0) + q.max_weight().unwrap_or(0);
        spec.check_weight(total)?;
        let pq = p.rehome(spec.context())?.mul(&q.rehome(spec.context())?)?;
        self.normal_form(spec, &pq, modulus)
    }

    /// Weights up to the cap whose integral component has a divisor other than 1.
    pub fn torsion_report(&self, spec: &PresentationSpec) -> Result<Vec<TorsionEntry>> {
        Ok(self
            .summaries(spec, Modulus::Rational)?
            .into_iter()
            .filter_map(|s| {
                let divisors: Vec<BigInt> = s
                    .divisors
                    .into_iter()
                    .filter(|d| *d != BigInt::from(1))
                    .collect();
                (!divisors.is_empty()).then_some(TorsionEntry {
                    weight: s.weight,
                    divisors,
                })
            })
            .collect())
    }

    /// The class of `x_i` over the integral basis.
    pub fn express_xi(&self, spec: &PresentationSpec, i: u32) -> Result<NormalForm> {
        if !matches!(spec.kind(), PresentationKind::Gauge { .. }) {
            return Err(Error::Argument(
                "x-generators exist only in gauge presentations".into(),
            ));
        }
        if i == 0 {
            return Err(Error::GeneratorIndexOutOfRange("x0".into()));
        }
        spec.check_weight(i)?;
        let xi = GradedPoly::generator(spec.context(), Generator::x(i))?;
        self.normal_form(spec, &xi, Modulus::Rational)
    }
}
