//! Fixtures shared by the criterion benches.

use gauge_coho::PresentationSpec;

/// Presentations benchmarked at every weight up to their cap.
pub fn bench_specs(cap: u32) -> Vec<(String, PresentationSpec)> {
    let mut out = Vec::new();
    for n in 2..=3 {
        let spec = PresentationSpec::gauge(n, 1, cap).expect("valid parameters");
        out.push((format!("gauge_n{n}_k1"), spec));
    }
    out.push((
        "bott_n3".to_string(),
        PresentationSpec::bott(3, cap).expect("valid parameters"),
    ));
    out
}
