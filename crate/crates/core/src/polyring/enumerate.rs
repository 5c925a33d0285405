use super::{Generator, GeneratorContext, Monomial};

/// Every monomial of weight exactly `w` over `ctx`, in term order.
pub fn monomials_of_weight(ctx: &GeneratorContext, w: u32) -> Vec<Monomial> {
    let gens: Vec<Generator> = ctx
        .generators()
        .into_iter()
        .filter(|g| g.weight() <= w)
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(gens.len());
    fill(&gens, 0, w, &mut current, &mut out);
    // Recursion visits larger exponents on earlier generators first, which is already
    // the term order within one weight.
    debug_assert!(out.windows(2).all(|p| p[0] < p[1]));
    out
}

fn fill(
    gens: &[Generator],
    idx: usize,
    remaining: u32,
    current: &mut Vec<(Generator, u32)>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        out.push(Monomial::from_factors(current.iter().copied()));
        return;
    }
    let Some(&g) = gens.get(idx) else {
        return;
    };
    for e in (0..=remaining / g.weight()).rev() {
        if e > 0 {
            current.push((g, e));
        }
        fill(gens, idx + 1, remaining - e * g.weight(), current, out);
        if e > 0 {
            current.pop();
        }
    }
}

/// Number of monomials at each weight `0..=cap`, by the product `Π 1/(1 - t^{w_g})`.
pub fn monomial_counts(ctx: &GeneratorContext, cap: u32) -> Vec<u64> {
    let cap = cap as usize;
    let mut counts = vec![0u64; cap + 1];
    counts[0] = 1;
    for g in ctx.generators() {
        let w = g.weight() as usize;
        for i in w..=cap {
            counts[i] += counts[i - w];
        }
    }
    counts
}
