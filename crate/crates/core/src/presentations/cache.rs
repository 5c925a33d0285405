use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{DegreeComponent, PresentationKind};
use crate::error::{Error, Result};
use crate::polyring::Monomial;
use crate::zlinalg::Modulus;

/// Bumped whenever the record layout or the basis rule changes; older files are ignored.
pub const CACHE_FORMAT_VERSION: u32 = 1;

/// What is persisted for one `(kind, n, k, weight, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub presentation: PresentationKind,
    pub weight: u32,
    /// 0 for the rationals / integers.
    pub modulus: u64,
    pub monomial_count: usize,
    pub monomial_hash: String,
    #[serde(with = "bigint_vec")]
    pub divisors: Vec<BigInt>,
    pub basis: Vec<usize>,
    pub dim: usize,
}

impl ComponentSummary {
    pub fn of(comp: &DegreeComponent) -> Self {
        ComponentSummary {
            presentation: comp.kind,
            weight: comp.weight,
            modulus: comp.modulus.as_u64(),
            monomial_count: comp.monomials.len(),
            monomial_hash: monomial_hash(&comp.monomials),
            divisors: comp.divisors.clone(),
            basis: comp.basis.clone(),
            dim: comp.dim,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    format_version: u32,
    record: ComponentSummary,
}

/// Hex SHA-256 of the comma-joined monomial list.
pub fn monomial_hash(monomials: &[Monomial]) -> String {
    let joined = monomials
        .iter()
        .map(Monomial::to_string)
        .collect::<Vec<_>>()
        .join(",");
    Sha256::digest(joined.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// A directory of JSON envelopes, one file per component.
#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn file_name(kind: PresentationKind, weight: u32, modulus: Modulus) -> String {
        let m = modulus.as_u64();
        match kind {
            PresentationKind::Gauge { n, k } => format!("gauge-n{n}-k{k}-w{weight}-m{m}.json"),
            PresentationKind::Bott { n } => format!("bott-n{n}-w{weight}-m{m}.json"),
        }
    }

    /// Returns the stored record if it exists, has the current version, and was built
    /// from the expected monomial list.
    pub fn load(
        &self,
        kind: PresentationKind,
        weight: u32,
        modulus: Modulus,
        expected_hash: &str,
    ) -> Option<ComponentSummary> {
        let path = self.dir.join(Self::file_name(kind, weight, modulus));
        let text = fs::read_to_string(path).ok()?;
        let env: Envelope = serde_json::from_str(&text).ok()?;
        let rec = env.record;
        (env.format_version == CACHE_FORMAT_VERSION
            && rec.presentation == kind
            && rec.weight == weight
            && rec.modulus == modulus.as_u64()
            && rec.monomial_hash == expected_hash)
            .then_some(rec)
    }

    /// Writes through a temporary file and a rename so readers never see partial records.
    pub fn store(&self, summary: &ComponentSummary) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let name = Self::file_name(
            summary.presentation,
            summary.weight,
            Modulus::from_u64(summary.modulus)?,
        );
        let env = Envelope {
            format_version: CACHE_FORMAT_VERSION,
            record: summary.clone(),
        };
        let tmp = self.dir.join(format!(".{name}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(&env)?)?;
        fs::rename(&tmp, self.dir.join(name))?;
        Ok(())
    }

    /// All readable records with their paths; stale or foreign files are reported as
    /// errors rather than skipped.
    pub fn entries(&self) -> Result<Vec<(PathBuf, Result<ComponentSummary>)>> {
        if !self.dir.exists() {
            return Ok(Vec::new());
        }
        let mut paths: Vec<PathBuf> = fs::read_dir(&self.dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        Ok(paths
            .into_iter()
            .map(|p| {
                let rec = fs::read_to_string(&p)
                    .map_err(Error::from)
                    .and_then(|t| Ok(serde_json::from_str::<Envelope>(&t)?))
                    .and_then(|env| {
                        if env.format_version == CACHE_FORMAT_VERSION {
                            Ok(env.record)
                        } else {
                            Err(Error::Cache(format!(
                                "format version {} (current {CACHE_FORMAT_VERSION})",
                                env.format_version
                            )))
                        }
                    });
                (p, rec)
            })
            .collect())
    }

    /// Removes every cache record; returns how many files were deleted.
    pub fn clear(&self) -> Result<usize> {
        if !self.dir.exists() {
            return Ok(0);
        }
        let mut removed = 0;
        for entry in fs::read_dir(&self.dir)? {
            let path = entry?.path();
            let is_record = path.file_name().and_then(|n| n.to_str()).is_some_and(|n| {
                (n.starts_with("gauge-") || n.starts_with("bott-") || n.starts_with('.'))
                    && (n.ends_with(".json") || n.ends_with(".tmp"))
            });
            if is_record {
                fs::remove_file(&path)?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

/// Serializes integers as JSON numbers when they fit in `i64`, otherwise as strings.
pub(crate) mod bigint_vec {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(i64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|b| match b.to_i64() {
                Some(x) => Repr::Small(x),
                None => Repr::Big(b.to_string()),
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(|r| match r {
                Repr::Small(x) => Ok(BigInt::from(x)),
                Repr::Big(s) => s.parse().map_err(D::Error::custom),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::PresentationSpec;

    #[test]
    fn round_trip_and_invalidation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path());
        let spec = PresentationSpec::gauge(1, 2, 4).unwrap();
        let comp = DegreeComponent::build(&spec, 2, Modulus::Rational).unwrap();
        let summary = ComponentSummary::of(&comp);
        cache.store(&summary).unwrap();
        let hash = monomial_hash(&comp.monomials);
        assert_eq!(
            cache.load(spec.kind(), 2, Modulus::Rational, &hash),
            Some(summary.clone())
        );
        assert_eq!(cache.load(spec.kind(), 2, Modulus::Rational, "other"), None);
        assert_eq!(cache.load(spec.kind(), 3, Modulus::Rational, &hash), None);

        // A version bump makes the record unreadable.
        let path = dir
            .path()
            .join(DiskCache::file_name(spec.kind(), 2, Modulus::Rational));
        let text = std::fs::read_to_string(&path).unwrap().replace(
            &format!("\"format_version\": {CACHE_FORMAT_VERSION}"),
            "\"format_version\": 0",
        );
        std::fs::write(&path, text).unwrap();
        assert_eq!(cache.load(spec.kind(), 2, Modulus::Rational, &hash), None);
        assert!(cache.entries().unwrap()[0].1.is_err());

        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.entries().unwrap().is_empty());
    }

    #[test]
    fn big_divisors_survive_json() {
        let summary = ComponentSummary {
            presentation: PresentationKind::Bott { n: 2 },
            weight: 1,
            modulus: 0,
            monomial_count: 1,
            monomial_hash: String::new(),
            divisors: vec![BigInt::from(1), BigInt::from(10).pow(30)],
            basis: vec![],
            dim: 0,
        };
        let text = serde_json::to_string(&summary).unwrap();
        assert!(text.contains("[1,\"1000000000000000000000000000000\"]"));
        let back: ComponentSummary = serde_json::from_str(&text).unwrap();
        assert_eq!(back, summary);
    }
}
