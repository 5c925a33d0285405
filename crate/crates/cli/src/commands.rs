use std::fmt::Write as _;

use gauge_coho::polyring::parse_poly;
use gauge_coho::presentations::{DiskCache, CACHE_FORMAT_VERSION};
use gauge_coho::suspension::loop_restriction;
use gauge_coho::verify::{verify_suite, CheckStatus};
use gauge_coho::{
    Engine, GradedPoly, Modulus, NormalForm, PresentationKind, PresentationSpec,
    SuspensionOperator, VerifyParams,
};
use serde_json::{json, Value};

use crate::args::{parse_range, CacheAction, Cli, Command, SpecArgs, SuspendArgs, VerifyArgs};
use crate::render::{
    basis_names, degree_json, modulus_name, normal_form_json, spec_json, torsion_text,
};
use crate::Failure;

type Out<'a> = &'a mut String;

pub fn run(cli: &Cli, out: Out) -> Result<(), Failure> {
    let engine = match &cli.cache_dir {
        Some(dir) => Engine::with_disk_cache(DiskCache::new(dir)),
        None => Engine::new(),
    };
    match &cli.command {
        Command::Present(a) => present(cli, a, out),
        Command::Basis(a) => basis(cli, &engine, a, out),
        Command::Reduce { spec, expr } => reduce(cli, &engine, spec, &[expr], out),
        Command::Multiply { spec, left, right } => reduce(cli, &engine, spec, &[left, right], out),
        Command::Poincare(a) => poincare(cli, &engine, a, out),
        Command::Suspend(a) => suspend(cli, a, out),
        Command::Verify(a) => verify(cli, &engine, a, out),
        Command::Cache { action } => cache(cli, action, out),
    }
}

fn emit_json(out: Out, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Failure::Compute(e.into()))?;
    out.push_str(&text);
    out.push('\n');
    Ok(())
}

fn spec_of(a: &SpecArgs) -> Result<(PresentationSpec, Modulus), Failure> {
    if a.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    if a.max_weight == 0 {
        return Err(Failure::Usage("--max-weight must be at least 1".into()));
    }
    let modulus = Modulus::from_u64(a.modulus).map_err(|_| {
        Failure::Usage(format!("--modulus must be 0 or a prime, got {}", a.modulus))
    })?;
    let kind = if a.bott {
        PresentationKind::Bott { n: a.n }
    } else {
        PresentationKind::Gauge { n: a.n, k: a.k }
    };
    Ok((PresentationSpec::new(kind, a.max_weight)?, modulus))
}

fn present(cli: &Cli, a: &SpecArgs, out: Out) -> Result<(), Failure> {
    let (spec, _) = spec_of(a)?;
    let letter = if a.bott { "s" } else { "h" };
    let rels = if spec.n() <= spec.weight_cap() {
        spec.relations_up_to(spec.weight_cap())?
    } else {
        Vec::new()
    };
    if cli.json {
        let list: Vec<Value> = rels
            .iter()
            .map(|(i, r)| json!({ "name": format!("{letter}{i}"), "weight": i, "relation": r.to_string() }))
            .collect();
        return emit_json(out, &json!({ "spec": spec_json(&spec), "relations": list }));
    }
    let _ = writeln!(out, "{} up to weight {}", spec.kind(), spec.weight_cap());
    for (i, r) in rels {
        let _ = writeln!(out, "{letter}{i} = {r}");
    }
    Ok(())
}

fn basis(cli: &Cli, engine: &Engine, a: &SpecArgs, out: Out) -> Result<(), Failure> {
    let (spec, modulus) = spec_of(a)?;
    let summaries = engine.summaries(&spec, modulus)?;
    if cli.json {
        let degrees = summaries
            .iter()
            .map(|s| degree_json(&spec, s))
            .collect::<serde_json::Result<Vec<_>>>()
            .map_err(|e| Failure::Compute(e.into()))?;
        return emit_json(
            out,
            &json!({ "spec": spec_json(&spec), "modulus": modulus.as_u64(), "degrees": degrees }),
        );
    }
    let _ = writeln!(out, "{} over {}", spec.kind(), modulus_name(modulus));
    for s in &summaries {
        let _ = write!(out, "w={} dim={}", s.weight, s.dim);
        if let Some(t) = torsion_text(s) {
            let _ = write!(out, " torsion={t}");
        }
        let _ = writeln!(out, ": {}", basis_names(&spec, s).join(", "));
    }
    Ok(())
}

fn poincare(cli: &Cli, engine: &Engine, a: &SpecArgs, out: Out) -> Result<(), Failure> {
    let (spec, modulus) = spec_of(a)?;
    let series = engine.poincare_series(&spec, modulus)?;
    let oracle = match spec.kind() {
        PresentationKind::Gauge { n, .. } => {
            Some(engine.leray_hirsch_series(n, spec.weight_cap())?)
        }
        PresentationKind::Bott { .. } => None,
    };
    if cli.json {
        let summaries = engine.summaries(&spec, modulus)?;
        let degrees = summaries
            .iter()
            .map(|s| degree_json(&spec, s))
            .collect::<serde_json::Result<Vec<_>>>()
            .map_err(|e| Failure::Compute(e.into()))?;
        let mut v = json!({
            "spec": spec_json(&spec),
            "modulus": modulus.as_u64(),
            "coefficients": series.coeffs(),
            "degrees": degrees,
        });
        if let Some(o) = &oracle {
            v["leray_hirsch"] = json!(o.coeffs());
        }
        return emit_json(out, &v);
    }
    let _ = writeln!(out, "{} over {}", spec.kind(), modulus_name(modulus));
    let _ = writeln!(out, "P(t) = {series}");
    let _ = writeln!(out, "coefficients: {:?}", series.coeffs());
    if let Some(o) = oracle {
        let verdict = if o == series {
            "matches"
        } else {
            "differs from"
        };
        let _ = writeln!(out, "{verdict} P(BU(n)) * P(Bott(n)) = {:?}", o.coeffs());
    }
    Ok(())
}

/// Reduces the product of the given expressions weight by weight.
fn reduce(
    cli: &Cli,
    engine: &Engine,
    a: &SpecArgs,
    exprs: &[&String],
    out: Out,
) -> Result<(), Failure> {
    let (spec, modulus) = spec_of(a)?;
    let mut product = GradedPoly::one(spec.context());
    for e in exprs {
        product = product.mul(&parse_poly(e, spec.context())?)?;
    }
    if let Some(top) = product.max_weight() {
        if top > spec.weight_cap() {
            return Err(gauge_coho::Error::WeightCap {
                weight: top,
                cap: spec.weight_cap(),
            }
            .into());
        }
    }
    let mut parts: Vec<NormalForm> = Vec::new();
    for w in (0..=product.max_weight().unwrap_or(0)).rev() {
        let slice = product.weight_part(w);
        if !slice.is_zero() {
            parts.push(engine.normal_form(&spec, &slice, modulus)?);
        }
    }
    let merged = NormalForm::merge(&parts);
    let result = merged
        .as_ref()
        .map_or_else(|| "0".to_string(), NormalForm::render_free);
    let input: Vec<&str> = exprs.iter().map(|s| s.as_str()).collect();

    if cli.json {
        return emit_json(
            out,
            &json!({
                "spec": spec_json(&spec),
                "modulus": modulus.as_u64(),
                "input": input,
                "result": result,
                "components": parts.iter().map(normal_form_json).collect::<Vec<_>>(),
            }),
        );
    }
    let _ = writeln!(out, "{result}");
    for p in &parts {
        if let Some(t) = p.render_torsion() {
            let _ = writeln!(out, "torsion at weight {}: {t}", p.weight);
        }
    }
    Ok(())
}

fn suspend(cli: &Cli, a: &SuspendArgs, out: Out) -> Result<(), Failure> {
    if a.max_weight == 0 {
        return Err(Failure::Usage("--max-weight must be at least 1".into()));
    }
    let mut op = SuspensionOperator::new(a.k, a.max_weight)?;
    if let Some(n) = a.n {
        op = op.with_rank(n).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let p = parse_poly(&a.expr, op.context())?;
    let mut image = op.apply_truncated(&p)?;
    if a.loop_restrict {
        image = loop_restriction(&image)?;
    }
    if cli.json {
        return emit_json(
            out,
            &json!({ "k": a.k, "n": a.n, "loop": a.loop_restrict, "input": a.expr, "image": image.to_string() }),
        );
    }
    let _ = writeln!(out, "{image}");
    Ok(())
}

fn verify(cli: &Cli, engine: &Engine, a: &VerifyArgs, out: Out) -> Result<(), Failure> {
    let ns = parse_range::<u32>(&a.n).map_err(|e| Failure::Usage(format!("--n: {e}")))?;
    let ks = parse_range::<i64>(&a.k).map_err(|e| Failure::Usage(format!("--k: {e}")))?;
    let moduli =
        parse_range::<u64>(&a.modulus).map_err(|e| Failure::Usage(format!("--modulus: {e}")))?;
    let params = VerifyParams {
        ns,
        ks,
        cap: a.max_weight,
        moduli,
        seed: a.seed,
    };
    params
        .validate()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let report = verify_suite(&params, engine)?;

    if cli.json {
        let v = json!({
            "spec": { "kind": "gauge", "n": params.ns, "k": params.ks, "max_weight": params.cap },
            "moduli": params.moduli,
            "seed": params.seed,
            "overall": report.overall,
            "flagged": report.flagged,
            "checks": report.checks,
        });
        emit_json(out, &v)?;
    } else {
        for c in &report.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Flagged => "FLAG",
            };
            let _ = writeln!(out, "{tag} {} {} {}", c.name, c.params, c.detail);
        }
        let failed = report.failures().count();
        let _ = writeln!(
            out,
            "{} checks, {failed} failed, {} flagged in {:.2?}",
            report.checks.len(),
            report.flagged,
            report.elapsed
        );
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}

fn cache(cli: &Cli, action: &CacheAction, out: Out) -> Result<(), Failure> {
    let dir = cli.cache_dir.as_ref().ok_or_else(|| {
        Failure::Usage("no cache directory: pass --cache-dir or set GAUGE_COHO_CACHE".into())
    })?;
    let disk = DiskCache::new(dir);
    match action {
        CacheAction::Inspect => {
            let entries = disk.entries()?;
            if cli.json {
                let list: Vec<Value> = entries
                    .iter()
                    .map(|(path, rec)| {
                        let file = path.file_name().map(|f| f.to_string_lossy().into_owned());
                        match rec {
                            Ok(r) => json!({ "file": file, "valid": true, "record": r }),
                            Err(e) => {
                                json!({ "file": file, "valid": false, "error": e.to_string() })
                            }
                        }
                    })
                    .collect();
                return emit_json(
                    out,
                    &json!({
                        "dir": dir.display().to_string(),
                        "format_version": CACHE_FORMAT_VERSION,
                        "entries": list,
                    }),
                );
            }
            let _ = writeln!(
                out,
                "{} (format version {CACHE_FORMAT_VERSION})",
                dir.display()
            );
            for (path, rec) in &entries {
                let file = path
                    .file_name()
                    .map(|f| f.to_string_lossy())
                    .unwrap_or_default();
                match rec {
                    Ok(r) => {
                        let _ = writeln!(
                            out,
                            "{file}: {} w={} modulus={} dim={}",
                            r.presentation, r.weight, r.modulus, r.dim
                        );
                    }
                    Err(e) => {
                        let _ = writeln!(out, "{file}: unreadable ({e})");
                    }
                }
            }
            let _ = writeln!(out, "{} entries", entries.len());
        }
        CacheAction::Clear => {
            let removed = disk.clear()?;
            if cli.json {
                return emit_json(
                    out,
                    &json!({ "dir": dir.display().to_string(), "removed": removed }),
                );
            }
            let _ = writeln!(out, "removed {removed} entries from {}", dir.display());
        }
    }
    Ok(())
}
