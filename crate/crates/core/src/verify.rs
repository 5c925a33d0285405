//! Runs every checkable identity over a parameter grid and collects the results.
//!
//! Randomized checks draw from a ChaCha stream keyed by the seed and the check name, so a
//! report depends only on its parameters. Wall-clock time is kept on the report but never
//! serialized.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyring::{monomials_of_weight, parse_poly, Family, GeneratorContext, GradedPoly};
use crate::presentations::{newton_in, Engine, PresentationSpec, TorsionEntry};
use crate::suspension::{loop_restriction, project_to_gauge, SuspensionOperator};
use crate::symfunc::{
    chern_character_component, e_in_power_sums, elementary_values, newton_recurrence_check,
    power_sum_in_e, power_sums_in_e,
};
use crate::zlinalg::{hermite_normal_form, smith_normal_form, IntMatrix, Modulus};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Text attached to every n = 1 finding.
pub const N1_BOUNDARY_NOTE: &str = "n = 1 boundary (open question): at n = 1 the presentation \
has 2*x2 in the ideal but not x2, while the mapping space has free cohomology; \
divisors are reported verbatim and n = 1 is outside the verified regime";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyParams {
    pub ns: Vec<u32>,
    pub ks: Vec<i64>,
    pub cap: u32,
    /// 0 stands for the rationals.
    pub moduli: Vec<u64>,
    pub seed: u64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            ns: vec![2, 3],
            ks: vec![0, 1],
            cap: 8,
            moduli: vec![0, 2, 3],
            seed: DEFAULT_SEED,
        }
    }
}

impl VerifyParams {
    pub fn validate(&self) -> Result<()> {
        if self.ns.is_empty() {
            return Err(Error::Argument("the n-range is empty".into()));
        }
        if self.ks.is_empty() {
            return Err(Error::Argument("the k-range is empty".into()));
        }
        if self.ns.contains(&0) {
            return Err(Error::Argument("n must be at least 1".into()));
        }
        if self.cap < 2 {
            return Err(Error::Argument("the weight cap must be at least 2".into()));
        }
        for &m in &self.moduli {
            Modulus::from_u64(m)?;
        }
        Ok(())
    }

    fn primes(&self) -> Vec<u64> {
        self.moduli.iter().copied().filter(|&m| m != 0).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A documented boundary case; never counts as a failure.
    Flagged,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub params: Value,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub params: VerifyParams,
    pub checks: Vec<CheckRecord>,
    /// `Pass` iff no check failed.
    pub overall: CheckStatus,
    pub flagged: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overall == CheckStatus::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn flags(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Flagged)
    }
}

fn record(name: &str, params: Value, ok: bool, detail: impl Into<String>) -> CheckRecord {
    CheckRecord {
        name: name.into(),
        params,
        status: if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        detail: detail.into(),
    }
}

/// A failure at n = 1 is the documented boundary, not an error.
fn boundary(mut rec: CheckRecord, n: u32) -> CheckRecord {
    if n == 1 && rec.status == CheckStatus::Fail {
        rec.status = CheckStatus::Flagged;
        rec.detail = format!("{}; {N1_BOUNDARY_NOTE}", rec.detail);
    }
    rec
}

fn errored(name: &str, params: Value, e: &Error) -> CheckRecord {
    record(name, params, false, format!("error: {e}"))
}

/// A ChaCha stream determined by the seed and a label.
pub fn check_rng(seed: u64, label: &str) -> ChaCha8Rng {
    // FNV-1a keeps the stream id stable across platforms and releases.
    let stream = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn fmt_series(v: &[i64]) -> String {
    format!("{v:?}")
}

/// Number of partitions of each `w ≤ cap` into parts of size at most `m`.
fn partitions_bounded(m: u32, cap: u32) -> Vec<i64> {
    let mut counts = vec![0i64; cap as usize + 1];
    counts[0] = 1;
    for part in 1..=m as usize {
        for w in part..counts.len() {
            counts[w] += counts[w - part];
        }
    }
    counts
}

/// Random polynomial with up to `terms` terms of weight at most `max_w`.
pub fn random_poly(
    rng: &mut impl Rng,
    ctx: &Arc<GeneratorContext>,
    max_w: u32,
    terms: usize,
    coeff: i64,
) -> GradedPoly {
    let mut out = GradedPoly::zero(ctx);
    for _ in 0..rng.gen_range(0..=terms) {
        let w = rng.gen_range(0..=max_w);
        let monos = monomials_of_weight(ctx, w);
        if let Some(m) = monos.choose(rng) {
            let c = rng.gen_range(-coeff..=coeff);
            out = out
                .add(&GradedPoly::monomial(ctx, m.clone(), BigInt::from(c)))
                .expect("same context");
        }
    }
    out
}

/// Random homogeneous polynomial of weight `w`.
pub fn random_homogeneous(
    rng: &mut impl Rng,
    ctx: &Arc<GeneratorContext>,
    w: u32,
    terms: usize,
    coeff: i64,
) -> GradedPoly {
    let monos = monomials_of_weight(ctx, w);
    let mut out = GradedPoly::zero(ctx);
    for _ in 0..terms {
        let m = monos
            .choose(rng)
            .expect("every weight has monomials")
            .clone();
        let c = rng.gen_range(-coeff..=coeff);
        out = out
            .add(&GradedPoly::monomial(ctx, m, BigInt::from(c)))
            .expect("same context");
    }
    out
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let data: Vec<Vec<BigInt>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                .collect()
        })
        .collect();
    IntMatrix::from_row_vecs(cols, data).expect("rectangular")
}

/// `H = U·M` with `U` unimodular and `H` in reduced row echelon shape.
pub fn hnf_reconstructs(m: &IntMatrix) -> bool {
    let (h, u) = hermite_normal_form(m);
    if u.mul(m).ok().as_ref() != Some(&h) || !u.is_unimodular() {
        return false;
    }
    let mut last_col: Option<usize> = None;
    let mut seen_zero = false;
    for r in 0..h.rows() {
        let lead = (0..h.cols()).find(|&c| !h[(r, c)].is_zero());
        match lead {
            None => seen_zero = true,
            Some(c) => {
                if seen_zero || last_col.is_some_and(|l| c <= l) || !h[(r, c)].is_positive() {
                    return false;
                }
                let p = &h[(r, c)];
                if (0..r).any(|above| h[(above, c)].is_negative() || &h[(above, c)] >= p) {
                    return false;
                }
                last_col = Some(c);
            }
        }
    }
    true
}

/// `U·M·V = diag(d)` with unimodular transforms and `d_i | d_{i+1}`.
pub fn snf_reconstructs(m: &IntMatrix) -> bool {
    let snf = smith_normal_form(m);
    let Ok(prod) = snf.u.mul(m).and_then(|um| um.mul(&snf.v)) else {
        return false;
    };
    if !snf.u.is_unimodular() || !snf.v.is_unimodular() {
        return false;
    }
    for r in 0..prod.rows() {
        for c in 0..prod.cols() {
            let expected = if r == c {
                snf.divisors[r].clone()
            } else {
                BigInt::zero()
            };
            if prod[(r, c)] != expected {
                return false;
            }
        }
    }
    snf.divisors.iter().all(|d| !d.is_negative())
        && snf.divisors.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            }
        })
}

/// Runs the full suite.
pub fn verify_suite(params: &VerifyParams, engine: &Engine) -> Result<VerificationReport> {
    params.validate()?;
    let start = Instant::now();
    let mut checks = Vec::new();

    checks.extend(symmetric_function_checks(params));
    checks.extend(plumbing_checks(params));

    let grid: Vec<(u32, i64)> = params
        .ns
        .iter()
        .flat_map(|&n| params.ks.iter().map(move |&k| (n, k)))
        .collect();
    let per_nk: Vec<Vec<CheckRecord>> = grid
        .par_iter()
        .map(|&(n, k)| presentation_checks(params, engine, n, k))
        .collect();
    checks.extend(per_nk.into_iter().flatten());

    checks.extend(params.ns.iter().map(|&n| k_independence(params, engine, n)));
    let bott: Vec<Vec<CheckRecord>> = params
        .ns
        .par_iter()
        .map(|&n| bott_checks(params, engine, n))
        .collect();
    checks.extend(bott.into_iter().flatten());

    let susp: Vec<Vec<CheckRecord>> = params
        .ks
        .par_iter()
        .map(|&k| suspension_checks(params, k))
        .collect();
    checks.extend(susp.into_iter().flatten());

    let failed = checks.iter().any(|c| c.status == CheckStatus::Fail);
    let flagged = checks
        .iter()
        .filter(|c| c.status == CheckStatus::Flagged)
        .count();
    Ok(VerificationReport {
        params: params.clone(),
        checks,
        overall: if failed {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        },
        flagged,
        elapsed: start.elapsed(),
    })
}

fn symmetric_function_checks(params: &VerifyParams) -> Vec<CheckRecord> {
    let cap = params.cap as usize;
    let mut out = Vec::new();

    let bad: Vec<usize> = (1..=cap).filter(|&i| !newton_recurrence_check(i)).collect();
    out.push(record(
        "newton_recurrence",
        json!({ "max_index": cap }),
        bad.is_empty(),
        if bad.is_empty() {
            "holds for every index".to_string()
        } else {
            format!("fails at {bad:?}")
        },
    ));

    // Power sums against direct evaluation in ten integer variables.
    let mut rng = check_rng(params.seed, "newton_expansion");
    let vars: Vec<BigRational> = (0..10)
        .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-5i64..=5))))
        .collect();
    let evals = elementary_values(&vars);
    let upto = cap.min(6);
    let mut mismatch = Vec::new();
    for i in 1..=upto {
        let direct: BigRational = vars.iter().map(|v| num_traits::pow(v.clone(), i)).sum();
        match power_sum_in_e(i).and_then(|s| s.evaluate(&evals)) {
            Ok(v) if v == direct => {}
            _ => mismatch.push(i),
        }
    }
    out.push(record(
        "newton_expansion",
        json!({ "max_index": upto, "variables": 10 }),
        mismatch.is_empty(),
        if mismatch.is_empty() {
            "matches direct evaluation".to_string()
        } else {
            format!("differs at {mismatch:?}")
        },
    ));

    let sums = power_sums_in_e(cap);
    let mut broken = Vec::new();
    for i in 1..=cap {
        let back = e_in_power_sums(i).and_then(|e| e.substitute(&sums[..i]));
        let ok = matches!(&back, Ok(b) if b.terms().count() == 1
            && b.coefficient(&{ let mut v = vec![0u32; i]; v[i - 1] = 1; v }).is_one());
        if !ok {
            broken.push(i);
        }
    }
    out.push(record(
        "newton_round_trip",
        json!({ "max_index": cap }),
        broken.is_empty(),
        if broken.is_empty() {
            "e -> p -> e is the identity".to_string()
        } else {
            format!("breaks at {broken:?}")
        },
    ));

    let nonintegral: Vec<usize> = (1..=cap)
        .filter(|&i| {
            let fact = BigRational::from_integer((1..=i).map(BigInt::from).product());
            !chern_character_component(i).is_ok_and(|ch| ch.scale(&fact).is_integral())
        })
        .collect();
    out.push(record(
        "chern_character_integrality",
        json!({ "max_index": cap }),
        nonintegral.is_empty(),
        if nonintegral.is_empty() {
            "i! ch_i is integral".to_string()
        } else {
            format!("non-integral at {nonintegral:?}")
        },
    ));
    out
}

fn plumbing_checks(params: &VerifyParams) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let ctx = Arc::new(GeneratorContext::new(3, 6, 4));
    let mut rng = check_rng(params.seed, "parse_render_round_trip");
    let mut bad = 0;
    for _ in 0..100 {
        let p = random_poly(&mut rng, &ctx, 6, 6, 20);
        if parse_poly(&p.to_string(), &ctx).ok().as_ref() != Some(&p) {
            bad += 1;
        }
    }
    out.push(record(
        "parse_render_round_trip",
        json!({ "samples": 100 }),
        bad == 0,
        format!("{bad} of 100 samples failed"),
    ));

    let mut rng = check_rng(params.seed, "matrix_normal_forms");
    let (mut hbad, mut sbad) = (0, 0);
    for _ in 0..100 {
        let m = random_matrix(&mut rng, 6, 9);
        hbad += usize::from(!hnf_reconstructs(&m));
        sbad += usize::from(!snf_reconstructs(&m));
    }
    out.push(record(
        "hnf_reconstruction",
        json!({ "samples": 100 }),
        hbad == 0,
        format!("{hbad} of 100 samples failed"),
    ));
    out.push(record(
        "snf_reconstruction",
        json!({ "samples": 100 }),
        sbad == 0,
        format!("{sbad} of 100 samples failed"),
    ));
    out
}

fn presentation_checks(params: &VerifyParams, engine: &Engine, n: u32, k: i64) -> Vec<CheckRecord> {
    let cap = params.cap;
    let base = json!({ "n": n, "k": k, "max_weight": cap });
    let spec = match PresentationSpec::gauge(n, k, cap) {
        Ok(s) => s,
        Err(e) => return vec![errored("presentation", base, &e)],
    };
    let mut out = Vec::new();

    let q_dims = engine.poincare_series(&spec, Modulus::Rational);
    let oracle = engine.leray_hirsch_series(n, cap);
    out.push(match (&q_dims, &oracle) {
        (Ok(d), Ok(o)) => boundary(
            record(
                "poincare_identity",
                base.clone(),
                d == o,
                format!(
                    "dims {} vs oracle {}",
                    fmt_series(d.coeffs()),
                    fmt_series(o.coeffs())
                ),
            ),
            n,
        ),
        (Err(e), _) | (_, Err(e)) => errored("poincare_identity", base.clone(), e),
    });

    out.push(match engine.torsion_report(&spec) {
        Ok(t) => boundary(
            record(
                "integral_freeness",
                base.clone(),
                t.is_empty(),
                torsion_detail(&t),
            ),
            n,
        ),
        Err(e) => errored("integral_freeness", base.clone(), &e),
    });

    if let Ok(q) = &q_dims {
        for p in params.primes() {
            let name = "field_independence";
            let prm = json!({ "n": n, "k": k, "max_weight": cap, "modulus": p });
            out.push(match engine.poincare_series(&spec, Modulus::Prime(p)) {
                Ok(d) => boundary(
                    record(
                        name,
                        prm,
                        &d == q,
                        format!(
                            "F_{p} dims {} vs Q dims {}",
                            fmt_series(d.coeffs()),
                            fmt_series(q.coeffs())
                        ),
                    ),
                    n,
                ),
                Err(e) => errored(name, prm, &e),
            });
        }
    }

    out.push(annihilation_check(params, engine, &spec, n, k));
    out.push(linearity_check(params, engine, &spec, n, k));
    out.push(product_law_check(params, engine, &spec, n, k));
    out.push(relation_bridge(params, &spec, n, k));
    out
}

fn annihilation_check(
    params: &VerifyParams,
    engine: &Engine,
    spec: &PresentationSpec,
    n: u32,
    k: i64,
) -> CheckRecord {
    let name = "normal_form_annihilates_ideal";
    let prm = json!({ "n": n, "k": k, "max_weight": params.cap, "samples": 50 });
    let run = || -> Result<usize> {
        let mut rng = check_rng(params.seed, &format!("{name}/{n}/{k}"));
        let rels = spec.relations_up_to(params.cap)?;
        let mut nonzero = 0;
        for _ in 0..50 {
            let (i, rel) = rels.choose(&mut rng).expect("n <= cap");
            let w = rng.gen_range(0..=params.cap - i);
            let m = monomials_of_weight(spec.context(), w)
                .choose(&mut rng)
                .expect("nonempty")
                .clone();
            let nf = engine.normal_form(spec, &rel.mul_monomial(&m), Modulus::Rational)?;
            nonzero += usize::from(!nf.is_zero());
        }
        Ok(nonzero)
    };
    match run() {
        Ok(0) => record(name, prm, true, "all 50 relation multiples reduce to zero"),
        Ok(b) => record(
            name,
            prm,
            false,
            format!("{b} of 50 multiples have nonzero normal form"),
        ),
        Err(e) => errored(name, prm, &e),
    }
}

fn linearity_check(
    params: &VerifyParams,
    engine: &Engine,
    spec: &PresentationSpec,
    n: u32,
    k: i64,
) -> CheckRecord {
    let name = "normal_form_linear";
    let prm = json!({ "n": n, "k": k, "max_weight": params.cap, "samples": 20 });
    let run = || -> Result<usize> {
        let mut rng = check_rng(params.seed, &format!("{name}/{n}/{k}"));
        let ctx = spec.context();
        let mut bad = 0;
        for _ in 0..20 {
            let w = rng.gen_range(1..=params.cap);
            let p = random_homogeneous(&mut rng, ctx, w, 4, 5);
            let q = random_homogeneous(&mut rng, ctx, w, 4, 5);
            let a = BigInt::from(rng.gen_range(-4i64..=4));
            let b = BigInt::from(rng.gen_range(-4i64..=4));
            let combo = p.scale(&a).add(&q.scale(&b))?;
            let lhs = engine.normal_form(spec, &combo, Modulus::Rational)?;
            let (np, nq) = (
                engine.normal_form(spec, &p, Modulus::Rational)?,
                engine.normal_form(spec, &q, Modulus::Rational)?,
            );
            let (ra, rb) = (
                BigRational::from_integer(a.clone()),
                BigRational::from_integer(b.clone()),
            );
            let free_ok = lhs
                .free
                .iter()
                .zip(np.free.iter().zip(&nq.free))
                .all(|(l, (x, y))| *l == &ra * x + &rb * y);
            let tors_ok = lhs
                .torsion
                .iter()
                .zip(np.torsion.iter().zip(&nq.torsion))
                .all(|(l, (x, y))| {
                    let expect = (&a * &x.residue + &b * &y.residue) % &l.divisor;
                    let expect = if expect.is_negative() {
                        expect + &l.divisor
                    } else {
                        expect
                    };
                    l.residue == expect
                });
            bad += usize::from(!(free_ok && tors_ok));
        }
        Ok(bad)
    };
    match run() {
        Ok(0) => record(
            name,
            prm,
            true,
            "nf(a p + b q) = a nf(p) + b nf(q) on all samples",
        ),
        Ok(b) => record(
            name,
            prm,
            false,
            format!("{b} of 20 samples violate linearity"),
        ),
        Err(e) => errored(name, prm, &e),
    }
}

fn product_law_check(
    params: &VerifyParams,
    engine: &Engine,
    spec: &PresentationSpec,
    n: u32,
    k: i64,
) -> CheckRecord {
    let name = "product_associative_commutative";
    let prm = json!({ "n": n, "k": k, "max_weight": params.cap, "samples": 20 });
    let run = || -> Result<usize> {
        let mut rng = check_rng(params.seed, &format!("{name}/{n}/{k}"));
        let ctx = spec.context();
        let basis_class = |rng: &mut ChaCha8Rng, w: u32| -> Result<GradedPoly> {
            let comp = engine.component(spec, w, Modulus::Rational)?;
            let ms = comp.basis_monomials();
            Ok(match ms.choose(rng) {
                Some(m) => GradedPoly::monomial(ctx, m.clone(), BigInt::one()),
                None => GradedPoly::zero(ctx),
            })
        };
        let mut bad = 0;
        for _ in 0..20 {
            let total = rng.gen_range(0..=params.cap);
            let w1 = rng.gen_range(0..=total);
            let w2 = rng.gen_range(0..=total - w1);
            let w3 = total - w1 - w2;
            let (a, b, c) = (
                basis_class(&mut rng, w1)?,
                basis_class(&mut rng, w2)?,
                basis_class(&mut rng, w3)?,
            );
            let left = engine.normal_form(spec, &a.mul(&b)?.mul(&c)?, Modulus::Rational)?;
            let right = engine.normal_form(spec, &a.mul(&b.mul(&c)?)?, Modulus::Rational)?;
            let ab = engine.product(spec, &a, &b, Modulus::Rational)?;
            let ba = engine.product(spec, &b, &a, Modulus::Rational)?;
            bad += usize::from(left != right || ab != ba);
        }
        Ok(bad)
    };
    match run() {
        Ok(0) => record(name, prm, true, "all sampled triples agree"),
        Ok(b) => record(name, prm, false, format!("{b} of 20 triples disagree")),
        Err(e) => errored(name, prm, &e),
    }
}

fn relation_bridge(params: &VerifyParams, spec: &PresentationSpec, n: u32, k: i64) -> CheckRecord {
    let name = "suspension_relation_bridge";
    let prm = json!({ "n": n, "k": k, "max_weight": params.cap });
    let run = || -> Result<Vec<u32>> {
        let op = SuspensionOperator::new(k, params.cap + 1)?;
        let mut bad = Vec::new();
        for i in n..=params.cap {
            let image = project_to_gauge(&op.fds_generator(i + 1)?, n)?;
            let trimmed = image.rehome(spec.context())?;
            if trimmed != spec.relation(i)? {
                bad.push(i);
            }
        }
        Ok(bad)
    };
    match run() {
        Ok(b) if b.is_empty() => record(
            name,
            prm,
            true,
            "projected suspension images equal the relations",
        ),
        Ok(b) => record(name, prm, false, format!("mismatch at indices {b:?}")),
        Err(e) => errored(name, prm, &e),
    }
}

fn k_independence(params: &VerifyParams, engine: &Engine, n: u32) -> CheckRecord {
    let name = "k_independence";
    let prm = json!({ "n": n, "ks": params.ks, "max_weight": params.cap });
    let run = || -> Result<BTreeMap<i64, Vec<i64>>> {
        params
            .ks
            .iter()
            .map(|&k| {
                let spec = PresentationSpec::gauge(n, k, params.cap)?;
                Ok((
                    k,
                    engine
                        .poincare_series(&spec, Modulus::Rational)?
                        .coeffs()
                        .to_vec(),
                ))
            })
            .collect()
    };
    match run() {
        Ok(all) => {
            let first = all.values().next().cloned().unwrap_or_default();
            let same = all.values().all(|d| *d == first);
            let detail = if same {
                format!("dims {} for every k", fmt_series(&first))
            } else {
                all.iter()
                    .map(|(k, d)| format!("k={k}: {}", fmt_series(d)))
                    .collect::<Vec<_>>()
                    .join("; ")
            };
            boundary(record(name, prm, same, detail), n)
        }
        Err(e) => errored(name, prm, &e),
    }
}

fn bott_checks(params: &VerifyParams, engine: &Engine, n: u32) -> Vec<CheckRecord> {
    let cap = params.cap;
    let prm = json!({ "n": n, "max_weight": cap });
    let spec = match PresentationSpec::bott(n, cap) {
        Ok(s) => s,
        Err(e) => return vec![errored("bott_counting", prm, &e)],
    };
    let counting = match engine.poincare_series(&spec, Modulus::Rational) {
        Ok(d) => {
            let expected = partitions_bounded(n - 1, cap);
            record(
                "bott_counting",
                prm.clone(),
                d.coeffs() == expected.as_slice(),
                format!(
                    "dims {} vs partitions {}",
                    fmt_series(d.coeffs()),
                    fmt_series(&expected)
                ),
            )
        }
        Err(e) => errored("bott_counting", prm.clone(), &e),
    };
    let freeness = match engine.torsion_report(&spec) {
        Ok(t) => boundary(
            record("bott_freeness", prm, t.is_empty(), torsion_detail(&t)),
            n,
        ),
        Err(e) => errored("bott_freeness", prm, &e),
    };
    vec![counting, freeness]
}

fn suspension_checks(params: &VerifyParams, k: i64) -> Vec<CheckRecord> {
    let cap = params.cap.max(12);
    let prm = json!({ "k": k, "max_index": cap });
    let op = match SuspensionOperator::new(k, cap) {
        Ok(op) => op,
        Err(e) => return vec![errored("suspension", prm, &e)],
    };
    let mut out = Vec::new();

    let derivation = || -> Result<usize> {
        let mut rng = check_rng(params.seed, &format!("derivation_law/{k}"));
        let c_only = Arc::new(GeneratorContext::new(8, 0, 0));
        let mut bad = 0;
        for _ in 0..100 {
            let p = random_poly(&mut rng, &c_only, 8, 3, 5);
            let q = random_poly(&mut rng, &c_only, 8, 3, 5);
            let lhs = op.fds_apply(&p.mul(&q)?)?;
            let ctx = op.context();
            let (p, q) = (p.rehome(ctx)?, q.rehome(ctx)?);
            let rhs = op
                .fds_apply(&p)?
                .mul(&q)?
                .add(&p.mul(&op.fds_apply(&q)?)?)?;
            bad += usize::from(lhs != rhs);
        }
        Ok(bad)
    };
    let dprm = json!({ "k": k, "samples": 100, "max_weight": 8 });
    out.push(match derivation() {
        Ok(0) => record("derivation_law", dprm, true, "holds on all 100 pairs"),
        Ok(b) => record(
            "derivation_law",
            dprm,
            false,
            format!("{b} of 100 pairs fail"),
        ),
        Err(e) => errored("derivation_law", dprm, &e),
    });

    let two_route = || -> Result<Vec<u32>> {
        let mut bad = Vec::new();
        for i in 1..=cap {
            if op.fds_generator_via_coproduct(i)? != op.fds_generator(i)? {
                bad.push(i);
            }
        }
        Ok(bad)
    };
    out.push(match two_route() {
        Ok(b) if b.is_empty() => record(
            "two_route_agreement",
            prm.clone(),
            true,
            "coproduct route equals the direct formula",
        ),
        Ok(b) => record(
            "two_route_agreement",
            prm.clone(),
            false,
            format!("differs at {b:?}"),
        ),
        Err(e) => errored("two_route_agreement", prm.clone(), &e),
    });

    let restriction = || -> Result<Vec<u32>> {
        let sums = newton_in(Family::X, cap, op.context())?;
        let mut bad = Vec::new();
        for i in 1..=cap {
            let got = loop_restriction(&op.fds_generator(i)?)?;
            let expected = if i == 1 {
                GradedPoly::constant(op.context(), k)
            } else if i % 2 == 0 {
                sums[i as usize - 2].neg()
            } else {
                sums[i as usize - 2].clone()
            };
            if got != expected {
                bad.push(i);
            }
        }
        Ok(bad)
    };
    out.push(match restriction() {
        Ok(b) if b.is_empty() => record(
            "restriction_law",
            prm,
            true,
            "loop restriction matches sigma_0",
        ),
        Ok(b) => record("restriction_law", prm, false, format!("differs at {b:?}")),
        Err(e) => errored("restriction_law", prm, &e),
    });
    out
}

fn torsion_detail(t: &[TorsionEntry]) -> String {
    if t.is_empty() {
        return "every component is free abelian".to_string();
    }
    t.iter()
        .map(|e| {
            let ds: Vec<String> = e.divisors.iter().map(|d| d.to_string()).collect();
            format!("divisor {} at weight {}", ds.join(","), e.weight)
        })
        .collect::<Vec<_>>()
        .join("; ")
}
