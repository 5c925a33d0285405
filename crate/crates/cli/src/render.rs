use gauge_coho::polyring::monomials_of_weight;
use gauge_coho::presentations::ComponentSummary;
use gauge_coho::{Modulus, NormalForm, PresentationKind, PresentationSpec};
use serde_json::{json, Value};

pub fn spec_json(spec: &PresentationSpec) -> Value {
    match spec.kind() {
        PresentationKind::Gauge { n, k } => {
            json!({ "kind": "gauge", "n": n, "k": k, "max_weight": spec.weight_cap() })
        }
        PresentationKind::Bott { n } => {
            json!({ "kind": "bott", "n": n, "k": null, "max_weight": spec.weight_cap() })
        }
    }
}

pub fn basis_names(spec: &PresentationSpec, s: &ComponentSummary) -> Vec<String> {
    let monos = monomials_of_weight(spec.context(), s.weight);
    s.basis.iter().map(|&i| monos[i].to_string()).collect()
}

pub fn degree_json(spec: &PresentationSpec, s: &ComponentSummary) -> serde_json::Result<Value> {
    let divisors = serde_json::to_value(s)?["divisors"].take();
    Ok(json!({
        "weight": s.weight,
        "dim": s.dim,
        "divisors": divisors,
        "basis": basis_names(spec, s),
    }))
}

pub fn torsion_text(s: &ComponentSummary) -> Option<String> {
    let tors: Vec<String> = s
        .divisors
        .iter()
        .filter(|d| d.to_string() != "1")
        .map(|d| format!("Z/{d}"))
        .collect();
    (!tors.is_empty()).then(|| tors.join(" + "))
}

pub fn normal_form_json(nf: &NormalForm) -> Value {
    json!({
        "weight": nf.weight,
        "basis": nf.basis.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "free": nf
            .nonzero_terms()
            .map(|(m, c)| json!({ "monomial": m.to_string(), "coefficient": c.to_string() }))
            .collect::<Vec<_>>(),
        "torsion": nf
            .torsion
            .iter()
            .map(|t| json!({ "divisor": int_json(&t.divisor), "residue": int_json(&t.residue) }))
            .collect::<Vec<_>>(),
    })
}

pub fn modulus_name(m: Modulus) -> String {
    match m {
        Modulus::Rational => "Z (rank over Q)".into(),
        Modulus::Prime(p) => format!("F_{p}"),
    }
}

/// An integer as a JSON number when it fits in `i64`, else as a decimal string.
pub fn int_json(v: &impl ToString) -> Value {
    let s = v.to_string();
    s.parse::<i64>()
        .map(Value::from)
        .unwrap_or(Value::String(s))
}
