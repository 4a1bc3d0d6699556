use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

use super::{central_phase, md_equivalent, Label, ModularData};
use crate::abgroup::{Elem, FinAbGroup};
use crate::error::{Error, Result};
use crate::exactnum::{lcm_all, sqrt_int, CycMatrix, CycNum, RootOfUnity};
use crate::quadform::{classify_metric_groups, gauss_central_charge, qform_from_bichar, Bichar, MetricGroup};
use crate::Limits;

fn base_conductor(g: &FinAbGroup) -> u32 {
    lcm_all([48, 8 * g.exponent() as u32, 4 * g.order() as u32])
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Modular data of the pointed category C(G, θ).
pub fn pointed_md(m: &MetricGroup) -> Result<ModularData> {
    let q = &m.quad;
    let g = q.group();
    if !q.is_nondegenerate() {
        return Err(Error::invalid(format!("quadratic form on {g} is degenerate")));
    }
    let c = gauss_central_charge(q)?;
    let phase = central_phase(c);
    // The smallest field holding every entry; pointed data get large fast
    // and the uniform conductor would quadruple the degree for prime order.
    let sqrt = sqrt_int(g.order())?;
    let n = lcm_all([q.value_order() as u32, sqrt.conductor(), phase.order() as u32]);
    let inv_sqrt = sqrt.inv()?.promote(n);
    let elems: Vec<Elem> = g.elements().collect();
    let s = CycMatrix::from_fn(elems.len(), elems.len(), |i, j| {
        &q.partial(&elems[i], &elems[j]).to_cyc_in(n) * &inv_sqrt
    });
    let t = elems.iter().map(|x| phase.mul(&q.value(x)).to_cyc_in(n)).collect();
    let labels = elems.into_iter().map(Label::Pointed).collect();
    ModularData::new(labels, s, t, c, None)
}

/// Shared data for the center and metaplectic constructions.
struct Omega {
    group: FinAbGroup,
    elems: Vec<Elem>,
    /// b(g,h) by element indices
    b: Vec<RootOfUnity>,
    /// ω_g by element index
    omega: Vec<RootOfUnity>,
}

impl Omega {
    fn new(b: &Bichar, sign: i8) -> Result<Omega> {
        let g = b.group().clone();
        if g.order() % 2 == 0 {
            return Err(Error::unsupported(format!("construction needs a group of odd order, got {g}")));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::invalid(format!("sign must be +1 or -1, got {sign}")));
        }
        let elems: Vec<Elem> = g.elements().collect();
        let n = elems.len();
        let mut bt = Vec::with_capacity(n * n);
        for x in &elems {
            for y in &elems {
                bt.push(b.value(x, y));
            }
        }
        let m = ((g.exponent() + 1) / 2) as i64;
        let a: Vec<RootOfUnity> = (0..n).map(|i| bt[i * n + i].pow(-m)).collect();
        for (i, x) in elems.iter().enumerate() {
            if a[g.index_of(&g.neg(x))] != a[i] {
                return Err(Error::Assertion(format!("a(-g) != a(g) at g = {x}")));
            }
            for (j, y) in elems.iter().enumerate() {
                if a[i].mul(&a[j]) != bt[i * n + j].mul(&a[g.index_of(&g.add(x, y))]) {
                    return Err(Error::Assertion(format!("a(g)a(h) != b(g,h)a(g+h) at ({x}, {y})")));
                }
            }
        }
        let e = g.exponent() as u32;
        let inv_sqrt = sqrt_int(g.order())?.inv()?;
        let minus = RootOfUnity::new(1, 2);
        let mut omega = Vec::with_capacity(n);
        for (i, x) in elems.iter().enumerate() {
            let sum = CycNum::sum(e, (0..n).map(|j| bt[i * n + j].conj().mul(&a[j]).to_cyc_in(e)).collect::<Vec<_>>().iter());
            let ahat = (&sum * &inv_sqrt)
                .as_root_of_unity()
                .ok_or_else(|| Error::Assertion(format!("|â({x})| != 1; the bicharacter is degenerate")))?;
            let v = if sign == 1 { ahat } else { ahat.mul(&minus) };
            omega.push(v.sqrt());
        }
        Ok(Omega { group: g, elems, b: bt, omega })
    }

    fn n(&self) -> usize {
        self.elems.len()
    }

    fn b(&self, i: usize, j: usize) -> RootOfUnity {
        self.b[i * self.n() + j]
    }

    fn add(&self, i: usize, j: usize) -> usize {
        self.group.index_of(&self.group.add(&self.elems[i], &self.elems[j]))
    }

    fn conductor(&self) -> u32 {
        lcm_all(std::iter::once(base_conductor(&self.group)).chain(self.omega.iter().map(|w| w.order() as u32)))
    }
}

#[derive(Clone, Copy)]
enum TyObj {
    Pt(usize, u8),
    Rho(usize, u8),
    Sig(usize, usize),
}

fn sgn(i: u8) -> i64 {
    if i == 0 {
        1
    } else {
        -1
    }
}

/// Modular data of the Drinfel'd center of TY(G, b, sign).
pub fn ty_center_md(b: &Bichar, sign: i8) -> Result<ModularData> {
    let w = Omega::new(b, sign)?;
    let n = w.n();
    let nn = w.conductor();
    let e = w.group.exponent() as u32;
    let sqrt_n = sqrt_int(n as u64)?.promote(nn);
    let mut objs = Vec::new();
    for i in 0..2 {
        for g in 0..n {
            objs.push(TyObj::Pt(g, i));
        }
    }
    for i in 0..2 {
        for g in 0..n {
            objs.push(TyObj::Rho(g, i));
        }
    }
    for h in 0..n {
        for k in h + 1..n {
            objs.push(TyObj::Sig(h, k));
        }
    }
    // Σ_k b(k − x, k)
    let gauss: Vec<CycNum> = (0..n)
        .map(|x| {
            let terms: Vec<CycNum> = (0..n)
                .map(|k| {
                    let kx = w.group.index_of(&w.group.sub(&w.elems[k], &w.elems[x]));
                    w.b(kx, k).to_cyc_in(e)
                })
                .collect();
            CycNum::sum(e, terms.iter()).promote(nn)
        })
        .collect();
    let over_2n = ratio(1, 2 * n as i64);
    let over_n = ratio(1, n as i64);
    let rank_key = |o: &TyObj| match o {
        TyObj::Pt(..) => 0,
        TyObj::Rho(..) => 1,
        TyObj::Sig(..) => 2,
    };
    let entry = |x: &TyObj, y: &TyObj| -> CycNum {
        match (*x, *y) {
            (TyObj::Pt(g, _), TyObj::Pt(h, _)) => w.b(g, h).pow(-2).to_cyc_in(nn).scale_ratio(&over_2n),
            (TyObj::Pt(g, i), TyObj::Rho(h, _)) => {
                (&w.b(g, h).conj().to_cyc_in(nn) * &sqrt_n).scale_ratio(&ratio(sgn(i), 2 * n as i64))
            }
            (TyObj::Pt(g, _), TyObj::Sig(h, k)) => w.b(g, w.add(h, k)).conj().to_cyc_in(nn).scale_ratio(&over_n),
            (TyObj::Rho(g, i), TyObj::Rho(h, j)) => {
                let om = w.omega[g].mul(&w.omega[h]).to_cyc_in(nn);
                (&om * &gauss[w.add(g, h)]).scale_ratio(&ratio(sgn(i) * sgn(j), 2 * n as i64))
            }
            (TyObj::Rho(..), TyObj::Sig(..)) => CycNum::zero(nn),
            (TyObj::Sig(h1, k1), TyObj::Sig(h, k)) => {
                let u = w.b(k, h1).mul(&w.b(h, k1)).conj().to_cyc_in(nn);
                let v = w.b(k, k1).mul(&w.b(h, h1)).conj().to_cyc_in(nn);
                (&u + &v).scale_ratio(&over_n)
            }
            _ => unreachable!("entries are requested in canonical order"),
        }
    };
    let r = objs.len();
    let s = CycMatrix::from_fn(r, r, |i, j| {
        let (x, y) = (&objs[i], &objs[j]);
        if rank_key(x) <= rank_key(y) {
            entry(x, y)
        } else {
            entry(y, x)
        }
    });
    let mut labels = Vec::with_capacity(r);
    let mut t = Vec::with_capacity(r);
    let mut grading = Vec::with_capacity(r);
    let minus = RootOfUnity::new(1, 2);
    for o in &objs {
        let (l, v, eps) = match *o {
            TyObj::Pt(g, i) => (Label::TYPt(w.elems[g].clone(), i), w.b(g, g), 0),
            TyObj::Rho(g, i) => {
                let v = if i == 0 { w.omega[g] } else { w.omega[g].mul(&minus) };
                (Label::TYRho(w.elems[g].clone(), i), v, 1)
            }
            TyObj::Sig(h, k) => (Label::TYSigma(w.elems[h].clone(), w.elems[k].clone()), w.b(h, k), 0),
        };
        labels.push(l);
        t.push(v.to_cyc_in(nn));
        grading.push(eps);
    }
    ModularData::new(labels, s, t, Ratio::from_integer(0), Some(grading))
}

#[derive(Clone, Copy)]
enum MpObj {
    Pt(u8),
    Rho(u8),
    Sig(usize),
}

/// Modular data of the generalized metaplectic category MP(G, b, sign),
/// of rank (|G|+7)/2.
pub fn mp_md(b: &Bichar, sign: i8) -> Result<ModularData> {
    let w = Omega::new(b, sign)?;
    let g = w.group.clone();
    let n = w.n();
    let q = qform_from_bichar(b)?;
    let c = gauss_central_charge(&q)?;
    let nn = lcm_all([w.conductor(), 24 * *c.denom() as u32]);
    let e = g.exponent() as u32;
    let pos: Vec<usize> = g.positive_set()?.elements().iter().map(|x| g.index_of(x)).collect();
    let mut objs = vec![MpObj::Pt(0), MpObj::Pt(1), MpObj::Rho(0), MpObj::Rho(1)];
    objs.extend(pos.iter().map(|&h| MpObj::Sig(h)));
    let omega0 = w.omega[0];
    let diag_sum = CycNum::sum(e, (0..n).map(|k| w.b(k, k).to_cyc_in(e)).collect::<Vec<_>>().iter()).promote(nn);
    let rho_block = &omega0.pow(2).to_cyc_in(nn) * &diag_sum;
    let sqrt_n = sqrt_int(n as u64)?.promote(nn);
    let scale = sqrt_n.inv()?.scale_ratio(&ratio(1, 2));
    let rank_key = |o: &MpObj| match o {
        MpObj::Pt(_) => 0,
        MpObj::Rho(_) => 1,
        MpObj::Sig(_) => 2,
    };
    let block = |x: &MpObj, y: &MpObj| -> CycNum {
        match (*x, *y) {
            (MpObj::Pt(_), MpObj::Pt(_)) => CycNum::one(nn),
            (MpObj::Pt(i), MpObj::Rho(_)) => sqrt_n.scale_int(sgn(i)),
            (MpObj::Pt(_), MpObj::Sig(_)) => CycNum::from_int(nn, 2),
            (MpObj::Rho(i), MpObj::Rho(j)) => rho_block.scale_int(sgn(i) * sgn(j)),
            (MpObj::Rho(_), MpObj::Sig(_)) => CycNum::zero(nn),
            (MpObj::Sig(h), MpObj::Sig(k)) => {
                let v = w.b(h, k);
                (&v.pow(-2).to_cyc_in(nn) + &v.pow(2).to_cyc_in(nn)).scale_int(2)
            }
            _ => unreachable!("entries are requested in canonical order"),
        }
    };
    let r = objs.len();
    let s = CycMatrix::from_fn(r, r, |i, j| {
        let (x, y) = (&objs[i], &objs[j]);
        let v = if rank_key(x) <= rank_key(y) { block(x, y) } else { block(y, x) };
        &v * &scale
    });
    let phase = central_phase(c);
    let minus = RootOfUnity::new(1, 2);
    let mut labels = Vec::with_capacity(r);
    let mut t = Vec::with_capacity(r);
    let mut grading = Vec::with_capacity(r);
    for o in &objs {
        let (l, v, eps) = match *o {
            MpObj::Pt(0) => (Label::MPUnit, RootOfUnity::ONE, 0),
            MpObj::Pt(_) => (Label::MPAlpha, RootOfUnity::ONE, 0),
            MpObj::Rho(i) => (Label::MPRho(i), if i == 0 { omega0 } else { omega0.mul(&minus) }, 1),
            MpObj::Sig(h) => (Label::MPSigma(w.elems[h].clone()), w.b(h, h).conj(), 0),
        };
        labels.push(l);
        t.push(phase.mul(&v).to_cyc_in(nn));
        grading.push(eps);
    }
    ModularData::new(labels, s, t, c, Some(grading))
}

/// One metaplectic datum per (metric class, sign), all-plus class and
/// sign + first. Fails with an assertion error if two of them turn out to
/// be equivalent.
pub fn classify_mp(g: &FinAbGroup, limits: &Limits) -> Result<Vec<ModularData>> {
    let classes = classify_metric_groups(g, limits)?;
    let mut out = Vec::with_capacity(2 * classes.len());
    for m in &classes {
        let b = m.bichar.as_ref().ok_or_else(|| Error::Assertion("odd metric group without bicharacter".into()))?;
        for sign in [1, -1] {
            out.push(mp_md(b, sign)?);
        }
    }
    for i in 0..out.len() {
        for j in 0..i {
            if md_equivalent(&out[j], &out[i], limits)?.is_some() {
                return Err(Error::Assertion(format!(
                    "metaplectic data {j} and {i} on {g} are equivalent"
                )));
            }
        }
    }
    Ok(out)
}
