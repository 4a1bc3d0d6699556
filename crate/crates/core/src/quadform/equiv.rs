//! Isometries, classification and special subgroups of metric groups.

use serde::Serialize;

use super::{to_i64, MetricGroup, QuadForm};
use crate::abgroup::{Automorphism, Elem, FinAbGroup};
use crate::error::{Error, Result};
use crate::exactnum::RootOfUnity;
use crate::Limits;

/// Finds φ with `q₁ = q₂ ∘ φ`, or `None` if the forms are not isometric.
///
/// Generator images are chosen by backtracking: each candidate must have the
/// generator's order, the right value of q, and the right values of ∂q
/// against the images already chosen. A complete assignment is checked for
/// bijectivity and then verified on every element.
pub fn metric_equiv(m1: &MetricGroup, m2: &MetricGroup, limits: &Limits) -> Result<Option<Automorphism>> {
    quad_equiv(&m1.quad, &m2.quad, limits)
}

pub(crate) fn quad_equiv(q1: &QuadForm, q2: &QuadForm, limits: &Limits) -> Result<Option<Automorphism>> {
    let g = q1.group();
    if g != q2.group() {
        return Ok(None);
    }
    let r = g.rank();
    let elems: Vec<Elem> = g.elements().collect();
    let gens: Vec<Elem> = (0..r).map(|i| g.generator(i)).collect();
    let cands: Vec<Vec<Elem>> = (0..r)
        .map(|i| {
            elems
                .iter()
                .filter(|x| g.elem_order(x) == g.factors()[i] && q2.value(x) == q1.value(&gens[i]))
                .cloned()
                .collect()
        })
        .collect();
    let mut nodes = 0u64;
    let mut chosen: Vec<Elem> = Vec::with_capacity(r);
    let found = search(q1, q2, &gens, &cands, &mut chosen, &mut nodes, limits)?;
    Ok(found.map(|images| Automorphism { images }))
}

fn search(
    q1: &QuadForm,
    q2: &QuadForm,
    gens: &[Elem],
    cands: &[Vec<Elem>],
    chosen: &mut Vec<Elem>,
    nodes: &mut u64,
    limits: &Limits,
) -> Result<Option<Vec<Elem>>> {
    let g = q1.group();
    let i = chosen.len();
    if i == gens.len() {
        let phi = Automorphism { images: chosen.clone() };
        if phi.is_bijective(g) && g.elements().all(|x| q2.value(&phi.apply(g, &x)) == q1.value(&x)) {
            return Ok(Some(chosen.clone()));
        }
        return Ok(None);
    }
    for x in &cands[i] {
        *nodes += 1;
        if *nodes > limits.max_search_nodes {
            return Err(Error::Capacity { what: "metric equivalence search nodes".into(), bound: limits.max_search_nodes });
        }
        let ok = (0..i).all(|j| q2.partial(x, &chosen[j]) == q1.partial(&gens[i], &gens[j]));
        if !ok {
            continue;
        }
        chosen.push(x.clone());
        if let Some(found) = search(q1, q2, gens, cands, chosen, nodes, limits)? {
            return Ok(Some(found));
        }
        chosen.pop();
    }
    Ok(None)
}

fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|a| (1..p).all(|x| x * x % p != *a)).expect("odd prime has a nonresidue")
}

fn prime_power_parts(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// One representative per isometry class of nondegenerate quadratic forms
/// on `g` (|G| odd). For each distinct prime power p^k among the primary
/// cyclic factors there are two choices, `q(x) = e^{2πi a x²/p^k}` on the
/// last copy with `a = 1` or the least quadratic nonresidue mod p; all
/// other copies use `a = 1`. The all-plus form comes first.
pub fn classify_metric_groups(g: &FinAbGroup, limits: &Limits) -> Result<Vec<MetricGroup>> {
    if g.order() % 2 == 0 {
        return Err(Error::Unsupported(format!("classification needs odd order, got {g}")));
    }
    // primary decomposition: list of (p, p^k) cyclic factors, sorted
    let mut primary: Vec<(u64, u64)> = g.factors().iter().flat_map(|d| prime_power_parts(*d)).collect();
    primary.sort();
    let orders: Vec<u64> = primary.iter().map(|(_, q)| *q).collect();
    let (target, map) = FinAbGroup::from_cyclic_factors(&orders)?;
    debug_assert_eq!(&target, g);
    // index of the last copy of each distinct prime power
    let mut types: Vec<usize> = Vec::new();
    for i in 0..primary.len() {
        if i + 1 == primary.len() || primary[i + 1] != primary[i] {
            types.push(i);
        }
    }
    let total = 1usize << types.len();
    let mut reps: Vec<MetricGroup> = Vec::new();
    for mask in 0..total {
        let mut coef: Vec<i64> = vec![1; primary.len()];
        for (t, &pos) in types.iter().enumerate() {
            if mask >> t & 1 == 1 {
                coef[pos] = smallest_nonresidue(primary[pos].0) as i64;
            }
        }
        let mut values = vec![RootOfUnity::ONE; g.order() as usize];
        let mut x = vec![0i64; orders.len()];
        loop {
            let img = map.apply(&x);
            let v = x.iter().zip(&orders).zip(&coef).fold(RootOfUnity::ONE, |acc, ((xi, d), a)| {
                acc.mul(&RootOfUnity::new(a * (xi * xi % *d as i64), *d as i64))
            });
            values[g.index_of(&img)] = v;
            let mut k = x.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                x[k] += 1;
                if x[k] < orders[k] as i64 {
                    break;
                }
                x[k] = 0;
            }
            if x.iter().all(|v| *v == 0) {
                break;
            }
        }
        let m = MetricGroup::from_quad(QuadForm::new(g.clone(), values)?)?;
        let mut dup = false;
        for r in &reps {
            if metric_equiv(r, &m, limits)?.is_some() {
                dup = true;
                break;
            }
        }
        if !dup {
            reps.push(m);
        }
    }
    Ok(reps)
}

/// All subgroups on which q is identically 1, as sorted element lists.
pub fn isotropic_subgroups(m: &MetricGroup) -> Vec<Vec<Elem>> {
    let g = m.group();
    let elems: Vec<Elem> = g.elements().collect();
    let iso: Vec<bool> = elems.iter().map(|x| m.quad.value(x) == RootOfUnity::ONE).collect();
    g.subgroups()
        .into_iter()
        .filter(|h| h.iter().all(|&i| iso[i]))
        .map(|h| h.into_iter().map(|i| elems[i].clone()).collect())
        .collect()
}

/// Isotropic subgroups L with |L|² = |G|.
pub fn lagrangian_subgroups(m: &MetricGroup) -> Vec<Vec<Elem>> {
    let n = m.group().order();
    let s = (n as f64).sqrt().round() as u64;
    if s * s != n {
        return vec![];
    }
    isotropic_subgroups(m).into_iter().filter(|h| h.len() as u64 == s).collect()
}

/// The two presentations of the double of (A, q) and an isometry between them.
#[derive(Clone, Debug, Serialize)]
pub struct MetricDouble {
    /// A ⊕ Â with q(χ, a) = χ(a).
    pub canonical: MetricGroup,
    /// A ⊕ A with q ⊕ q̄.
    pub sum: MetricGroup,
    /// Generator images of an isometry canonical → sum.
    pub witness: Vec<Elem>,
}

/// Builds both forms of the double and the isometry between them.
pub fn metric_double(q: &QuadForm, limits: &Limits) -> Result<MetricDouble> {
    let a = q.group();
    if a.order() % 2 == 0 {
        return Err(Error::InvalidArgument(format!("metric double needs odd order, got {a}")));
    }
    let (g, left, right) = a.direct_sum(&a.character_group());
    let mut values = vec![RootOfUnity::ONE; g.order() as usize];
    for x in a.elements() {
        let lx = left.apply(&to_i64(&x));
        for chi in a.elements() {
            let z = g.add(&lx, &right.apply(&to_i64(&chi)));
            values[g.index_of(&z)] = a.pairing(&chi, &x);
        }
    }
    let canonical = MetricGroup::from_quad(QuadForm::new(g, values)?)?;
    let sum = MetricGroup::from_quad(q.direct_sum(&q.conj()))?;
    match metric_equiv(&canonical, &sum, limits)? {
        Some(phi) => Ok(MetricDouble { canonical, sum, witness: phi.images }),
        None => Err(Error::Assertion(format!("no isometry between the two doubles of the form on {a}"))),
    }
}
