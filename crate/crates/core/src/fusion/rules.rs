use super::FusionRing;
use crate::abgroup::{Elem, FinAbGroup};
use crate::error::{Error, Result};

fn require_odd(g: &FinAbGroup) -> Result<()> {
    if g.order() % 2 == 0 {
        return Err(Error::unsupported(format!("rule table needs a group of odd order, got {g}")));
    }
    Ok(())
}

/// Tambara–Yamagami rules on G ∪ {ρ}: `[g][h] = [g+h]`, `[g][ρ] = [ρ][g] = [ρ]`,
/// `[ρ]² = Σ_g [g]`.
pub fn ty_fusion_ring(g: &FinAbGroup) -> Result<FusionRing> {
    let elems: Vec<Elem> = g.elements().collect();
    let n = elems.len();
    let mut labels: Vec<String> = elems.iter().map(|x| format!("g({x})")).collect();
    labels.push("rho".into());
    let mut dual: Vec<usize> = elems.iter().map(|x| g.index_of(&g.neg(x))).collect();
    dual.push(n);
    FusionRing::from_products(labels, dual, |i, j| match (i < n, j < n) {
        (true, true) => vec![(g.index_of(&g.add(&elems[i], &elems[j])), 1)],
        (true, false) | (false, true) => vec![(n, 1)],
        (false, false) => (0..n).map(|k| (k, 1)).collect(),
    })
}

/// Rules on Dih(A) ∪ {ρ₊, ρ₋}: `[ρ±]² = Σ_g [g]`, `[ρ±][ρ∓] = Σ_g [gτ]`,
/// `[g][ρ±] = [ρ±][g] = [ρ±]`, `[τ][ρ±] = [ρ±][τ] = [ρ∓]`.
///
/// Dih(A) elements are pairs (a, ε) meaning a·τ^ε, with τ a τ = a⁻¹.
pub fn gen_ty_fusion_ring(a: &FinAbGroup) -> Result<FusionRing> {
    require_odd(a)?;
    let elems: Vec<Elem> = a.elements().collect();
    let n = elems.len();
    let idx = |x: &Elem, e: usize| a.index_of(x) + e * n;
    let mut labels: Vec<String> = elems.iter().map(|x| format!("g({x})")).collect();
    labels.extend(elems.iter().map(|x| format!("g({x})tau")));
    labels.push("rho+".into());
    labels.push("rho-".into());
    let mut dual: Vec<usize> = elems.iter().map(|x| idx(&a.neg(x), 0)).collect();
    dual.extend((0..n).map(|i| n + i));
    dual.push(2 * n);
    dual.push(2 * n + 1);
    FusionRing::from_products(labels, dual, |i, j| {
        let rho = |i: usize| (i >= 2 * n).then(|| i - 2 * n);
        match (rho(i), rho(j)) {
            (None, None) => {
                let (x, ex) = (&elems[i % n], i / n);
                let (y, ey) = (&elems[j % n], j / n);
                // x τ^ex · y τ^ey = (x + (−1)^ex y) τ^(ex+ey)
                let y = if ex == 1 { a.neg(y) } else { y.clone() };
                vec![(idx(&a.add(x, &y), (ex + ey) % 2), 1)]
            }
            (None, Some(s)) => vec![(2 * n + (s + i / n) % 2, 1)],
            (Some(s), None) => vec![(2 * n + (s + j / n) % 2, 1)],
            (Some(s), Some(t)) => {
                let e = (s + t) % 2;
                (0..n).map(|k| (k + e * n, 1)).collect()
            }
        }
    })
}

/// Generalized metaplectic rules on {1, α, ρ, αρ} ∪ {σ_g : g ∈ G₊}.
pub fn gen_mp_fusion_ring(g: &FinAbGroup) -> Result<FusionRing> {
    require_odd(g)?;
    let pos = g.positive_set()?;
    let sig: Vec<Elem> = pos.elements().to_vec();
    let k = sig.len();
    let mut labels: Vec<String> = vec!["1".into(), "alpha".into(), "rho".into(), "alpha*rho".into()];
    labels.extend(sig.iter().map(|x| format!("sigma({x})")));
    let dual: Vec<usize> = (0..4 + k).collect();
    let sidx = |x: &Elem| -> usize { 4 + sig.iter().position(|y| y == &pos.fold(x)).expect("nonzero element folds into G₊") };
    let all_sigma = || (0..k).map(|s| (4 + s, 1));
    FusionRing::from_products(labels, dual, |i, j| {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        match (i, j) {
            (0, j) => vec![(j, 1)],
            (1, 1) => vec![(0, 1)],
            (1, 2) => vec![(3, 1)],
            (1, 3) => vec![(2, 1)],
            (1, j) => vec![(j, 1)],
            (2, 2) | (3, 3) => std::iter::once((0, 1)).chain(all_sigma()).collect(),
            (2, 3) => std::iter::once((1, 1)).chain(all_sigma()).collect(),
            (2, _) | (3, _) => vec![(2, 1), (3, 1)],
            (i, j) => {
                let (x, y) = (&sig[i - 4], &sig[j - 4]);
                if i == j {
                    vec![(0, 1), (1, 1), (sidx(&g.add(x, x)), 1)]
                } else {
                    vec![(sidx(&g.add(x, y)), 1), (sidx(&g.sub(x, y)), 1)]
                }
            }
        }
    })
}
