//! Quadratic forms, symmetric bicharacters and metric groups.
//!
//! Conventions: `∂q(g,h) = q(g)q(h)/q(g+h)`, and for groups of odd order the
//! bicharacter attached to `q` is `b = ∂q^m` with `m = (Exp(G)+1)/2`, so
//! `q(g) = b(g,g)^{-1}` and `b² = ∂q`.

mod equiv;

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub use equiv::{
    classify_metric_groups, isotropic_subgroups, lagrangian_subgroups, metric_double, metric_equiv,
    MetricDouble,
};

use crate::abgroup::{Elem, FinAbGroup};
use crate::error::{Error, Result};
use crate::exactnum::{sqrt_int, CycNum, RootOfUnity};

/// Quadratic form stored as a full value table indexed by element index.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "QuadJson", into = "QuadJson")]
pub struct QuadForm {
    group: FinAbGroup,
    values: Vec<RootOfUnity>,
}

#[derive(Serialize, Deserialize)]
struct QuadJson {
    group: FinAbGroup,
    values: Vec<RootOfUnity>,
}

impl TryFrom<QuadJson> for QuadForm {
    type Error = Error;
    fn try_from(j: QuadJson) -> Result<QuadForm> {
        QuadForm::new(j.group, j.values)
    }
}

impl From<QuadForm> for QuadJson {
    fn from(q: QuadForm) -> QuadJson {
        QuadJson { group: q.group, values: q.values }
    }
}

impl QuadForm {
    /// Checks `q(0) = 1`, `q(-g) = q(g)` and that `∂q` is bimultiplicative.
    pub fn new(group: FinAbGroup, values: Vec<RootOfUnity>) -> Result<QuadForm> {
        if values.len() as u64 != group.order() {
            return Err(Error::InvalidArgument(format!(
                "quadratic form on {group} needs {} values, got {}",
                group.order(),
                values.len()
            )));
        }
        let q = QuadForm { group, values };
        q.validate()?;
        Ok(q)
    }

    pub fn from_fn(group: FinAbGroup, f: impl Fn(&Elem) -> RootOfUnity) -> Result<QuadForm> {
        let values = group.elements().map(|g| f(&g)).collect();
        QuadForm::new(group, values)
    }

    /// Diagonal form `q(x) = Π exp(2πi a_i x_i² / d_i)`.
    pub fn diagonal(group: FinAbGroup, a: &[i64]) -> Result<QuadForm> {
        if a.len() != group.rank() {
            return Err(Error::InvalidArgument("one coefficient per invariant factor expected".into()));
        }
        let factors = group.factors().to_vec();
        QuadForm::from_fn(group, |g| {
            g.0.iter().zip(&factors).zip(a).fold(RootOfUnity::ONE, |acc, ((x, d), ai)| {
                let x = *x as i64;
                acc.mul(&RootOfUnity::new(ai * (x * x % *d as i64), *d as i64))
            })
        })
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        if self.values[0] != RootOfUnity::ONE {
            return Err(Error::InvalidArgument("quadratic form must satisfy q(0) = 1".into()));
        }
        for x in g.elements() {
            if self.value(&g.neg(&x)) != self.value(&x) {
                return Err(Error::InvalidArgument(format!("q(-g) != q(g) at g = {x}")));
            }
        }
        let elems: Vec<Elem> = g.elements().collect();
        for i in 0..g.rank() {
            let e = g.generator(i);
            for x in &elems {
                let xe = g.add(x, &e);
                for y in &elems {
                    if self.partial(&xe, y) != self.partial(x, y).mul(&self.partial(&e, y)) {
                        return Err(Error::InvalidArgument(
                            "∂q is not bimultiplicative, so q is not a quadratic form".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn values(&self) -> &[RootOfUnity] {
        &self.values
    }

    pub fn value(&self, g: &Elem) -> RootOfUnity {
        self.values[self.group.index_of(g)]
    }

    /// `∂q(g,h) = q(g)q(h)q(g+h)^{-1}`.
    pub fn partial(&self, g: &Elem, h: &Elem) -> RootOfUnity {
        self.value(g).mul(&self.value(h)).mul(&self.value(&self.group.add(g, h)).inv())
    }

    pub fn is_nondegenerate(&self) -> bool {
        let elems: Vec<Elem> = self.group.elements().collect();
        elems.iter().skip(1).all(|g| elems.iter().any(|h| self.partial(g, h) != RootOfUnity::ONE))
    }

    pub fn conj(&self) -> QuadForm {
        QuadForm { group: self.group.clone(), values: self.values.iter().map(|v| v.inv()).collect() }
    }

    /// Least common multiple of the orders of all values.
    pub fn value_order(&self) -> u64 {
        self.values.iter().fold(1u64, |m, v| m.lcm(&(v.order() as u64)))
    }

    /// Orthogonal direct sum on G₁ ⊕ G₂ (normalized to invariant factors).
    pub fn direct_sum(&self, o: &QuadForm) -> QuadForm {
        let (g, left, right) = self.group.direct_sum(&o.group);
        let mut values = vec![RootOfUnity::ONE; g.order() as usize];
        for x in self.group.elements() {
            let lx = left.apply(&to_i64(&x));
            for y in o.group.elements() {
                let z = g.add(&lx, &right.apply(&to_i64(&y)));
                values[g.index_of(&z)] = self.value(&x).mul(&o.value(&y));
            }
        }
        QuadForm { group: g, values }
    }

    /// Gauss sum Σ_g q(g) as an exact cyclotomic number.
    pub fn gauss_sum(&self) -> CycNum {
        let n = self.value_order() as u32;
        let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
        for v in &self.values {
            *counts.entry(v.num() * (n as i64 / v.order())).or_default() += 1;
        }
        let coeffs: Vec<(i64, num_rational::BigRational)> =
            counts.into_iter().map(|(k, c)| (k, num_rational::BigRational::from_integer(c.into()))).collect();
        CycNum::from_coeffs(n, &coeffs)
    }
}

pub(crate) fn to_i64(x: &Elem) -> Vec<i64> {
    x.0.iter().map(|v| *v as i64).collect()
}

/// Central charge from the Gauss sum: `Σ q(g) / √|G| = e^{πi c/4}`, c mod 8.
pub fn gauss_central_charge(q: &QuadForm) -> Result<Ratio<i64>> {
    let n = q.group.order();
    let sum = q.gauss_sum();
    let root = sqrt_int(n)?;
    for c in 0..8 {
        let candidate = &root * &CycNum::zeta(8, c);
        if candidate == sum {
            return Ok(Ratio::from_integer(c));
        }
    }
    Err(Error::Degenerate(format!(
        "Gauss sum of the form on {} is not √|G| times an 8th root of unity",
        q.group
    )))
}

/// Symmetric bicharacter given by its values on pairs of generators.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "BicharJson", into = "BicharJson")]
pub struct Bichar {
    group: FinAbGroup,
    matrix: Vec<RootOfUnity>,
    /// `b(e_i,e_j) = exp(2πi ints[i,j] / Exp(G))`.
    #[serde(skip)]
    ints: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct BicharJson {
    group: FinAbGroup,
    matrix: Vec<Vec<RootOfUnity>>,
}

impl TryFrom<BicharJson> for Bichar {
    type Error = Error;
    fn try_from(j: BicharJson) -> Result<Bichar> {
        let r = j.group.rank();
        if j.matrix.len() != r || j.matrix.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidArgument(format!("bicharacter on {} needs a {r}x{r} matrix", j.group)));
        }
        Bichar::new(j.group, j.matrix.into_iter().flatten().collect())
    }
}

impl From<Bichar> for BicharJson {
    fn from(b: Bichar) -> BicharJson {
        let r = b.group.rank();
        BicharJson { group: b.group, matrix: b.matrix.chunks(r.max(1)).map(|c| c.to_vec()).take(r).collect() }
    }
}

impl Bichar {
    /// Checks symmetry, the order constraint and nondegeneracy.
    pub fn new(group: FinAbGroup, matrix: Vec<RootOfUnity>) -> Result<Bichar> {
        let r = group.rank();
        if matrix.len() != r * r {
            return Err(Error::InvalidArgument(format!("bicharacter on {group} needs {} entries", r * r)));
        }
        let d = group.factors();
        for i in 0..r {
            for j in 0..r {
                let v = matrix[i * r + j];
                if v != matrix[j * r + i] {
                    return Err(Error::InvalidArgument("bicharacter is not symmetric".into()));
                }
                if v.pow(d[i] as i64) != RootOfUnity::ONE {
                    return Err(Error::InvalidArgument(format!(
                        "b(e_{i}, e_{j}) = {v} is not a {}-th root of unity",
                        d[i]
                    )));
                }
            }
        }
        let e = group.exponent() as i64;
        let ints = matrix.iter().map(|v| v.num() * (e / v.order())).collect();
        let b = Bichar { group, matrix, ints };
        if !b.is_nondegenerate() {
            return Err(Error::InvalidArgument("bicharacter is degenerate".into()));
        }
        Ok(b)
    }

    pub fn from_generator_fn(group: FinAbGroup, f: impl Fn(usize, usize) -> RootOfUnity) -> Result<Bichar> {
        let r = group.rank();
        let m = (0..r * r).map(|k| f(k / r, k % r)).collect();
        Bichar::new(group, m)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// Generator matrix, row-major.
    pub fn matrix(&self) -> &[RootOfUnity] {
        &self.matrix
    }

    pub fn value(&self, g: &Elem, h: &Elem) -> RootOfUnity {
        let r = self.group.rank();
        let e = self.group.exponent() as i64;
        let mut acc = 0i64;
        for i in 0..r {
            if g.0[i] == 0 {
                continue;
            }
            for j in 0..r {
                acc = (acc + (g.0[i] as i64 * h.0[j] as i64 % e) * self.ints[i * r + j]) % e;
            }
        }
        RootOfUnity::new(acc, e)
    }

    fn is_nondegenerate(&self) -> bool {
        let g = &self.group;
        g.elements().skip(1).all(|x| (0..g.rank()).any(|j| self.value(&x, &g.generator(j)) != RootOfUnity::ONE))
    }

    pub fn conj(&self) -> Bichar {
        Bichar::new(self.group.clone(), self.matrix.iter().map(|v| v.inv()).collect()).expect("conjugate of valid bicharacter")
    }
}

/// `b = ∂q^m`, `m = (Exp(G)+1)/2`; needs |G| odd and q nondegenerate.
pub fn bichar_from_qform(q: &QuadForm) -> Result<Bichar> {
    let g = &q.group;
    if g.order() % 2 == 0 {
        return Err(Error::Unsupported(format!("bicharacter from quadratic form needs odd order, got {g}")));
    }
    if !q.is_nondegenerate() {
        return Err(Error::InvalidArgument("quadratic form is degenerate".into()));
    }
    let m = ((g.exponent() + 1) / 2) as i64;
    Bichar::from_generator_fn(g.clone(), |i, j| q.partial(&g.generator(i), &g.generator(j)).pow(m))
}

/// `q(g) = b(g,g)^{-1}`; needs |G| odd.
pub fn qform_from_bichar(b: &Bichar) -> Result<QuadForm> {
    let g = &b.group;
    if g.order() % 2 == 0 {
        return Err(Error::Unsupported(format!("quadratic form from bicharacter needs odd order, got {g}")));
    }
    QuadForm::from_fn(g.clone(), |x| b.value(x, x).inv())
}

/// A group with a quadratic form and, for odd order, the matching
/// bicharacter.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MetricGroup {
    pub quad: QuadForm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bichar: Option<Bichar>,
}

impl MetricGroup {
    /// Attaches the bicharacter automatically when the order is odd.
    pub fn from_quad(quad: QuadForm) -> Result<MetricGroup> {
        let bichar = if quad.group.order() % 2 == 1 { Some(bichar_from_qform(&quad)?) } else { None };
        Ok(MetricGroup { quad, bichar })
    }

    pub fn from_bichar(b: Bichar) -> Result<MetricGroup> {
        Ok(MetricGroup { quad: qform_from_bichar(&b)?, bichar: Some(b) })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.quad.group
    }

    pub fn central_charge(&self) -> Result<Ratio<i64>> {
        gauss_central_charge(&self.quad)
    }

    pub fn direct_sum(&self, o: &MetricGroup) -> Result<MetricGroup> {
        let q = self.quad.direct_sum(&o.quad);
        if q.group.order() % 2 == 1 {
            MetricGroup::from_quad(q)
        } else {
            Ok(MetricGroup { quad: q, bichar: None })
        }
    }

    pub fn conj(&self) -> MetricGroup {
        MetricGroup { quad: self.quad.conj(), bichar: self.bichar.as_ref().map(|b| b.conj()) }
    }
}

/// Orthogonal direct sum of metric groups.
pub fn direct_sum(m1: &MetricGroup, m2: &MetricGroup) -> Result<MetricGroup> {
    m1.direct_sum(m2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(n)
    }

    fn e(x: u64) -> Elem {
        Elem(vec![x])
    }

    #[test]
    fn bichar_examples() {
        let q = QuadForm::diagonal(z(3), &[1]).unwrap();
        let b = bichar_from_qform(&q).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(b.value(&e(x), &e(y)), RootOfUnity::new(-((x * y) as i64), 3));
            }
        }
        let q5 = QuadForm::diagonal(z(5), &[1]).unwrap();
        let b5 = bichar_from_qform(&q5).unwrap();
        assert_eq!(b5.value(&e(1), &e(1)), RootOfUnity::new(-1, 5));
        assert_eq!(qform_from_bichar(&b).unwrap(), q);
        let t = QuadForm::new(FinAbGroup::trivial(), vec![RootOfUnity::ONE]).unwrap();
        assert!(bichar_from_qform(&t).unwrap().matrix().is_empty());
    }

    #[test]
    fn bichar_errors() {
        let q4 = QuadForm::diagonal(z(4), &[1]).unwrap();
        assert_eq!(bichar_from_qform(&q4).unwrap_err().kind(), "unsupported");
        let deg = QuadForm::new(z(3), vec![RootOfUnity::ONE; 3]).unwrap();
        assert_eq!(bichar_from_qform(&deg).unwrap_err().kind(), "invalid_argument");
        assert!(Bichar::new(z(3), vec![RootOfUnity::new(1, 5)]).is_err());
    }

    #[test]
    fn rejects_non_forms() {
        let bad = vec![RootOfUnity::ONE, RootOfUnity::new(1, 3), RootOfUnity::new(2, 3)];
        assert!(QuadForm::new(z(3), bad).is_err());
    }

    #[test]
    fn central_charges() {
        let t = QuadForm::new(FinAbGroup::trivial(), vec![RootOfUnity::ONE]).unwrap();
        assert_eq!(gauss_central_charge(&t).unwrap(), Ratio::from_integer(0));
        let a2 = QuadForm::diagonal(z(3), &[1]).unwrap();
        assert_eq!(gauss_central_charge(&a2).unwrap(), Ratio::from_integer(2));
        let e6 = QuadForm::diagonal(z(3), &[2]).unwrap();
        assert_eq!(gauss_central_charge(&e6).unwrap(), Ratio::from_integer(6));
        let sum = a2.direct_sum(&e6);
        assert_eq!(gauss_central_charge(&sum).unwrap(), Ratio::from_integer(0));
        let deg = QuadForm::new(z(3), vec![RootOfUnity::ONE; 3]).unwrap();
        assert_eq!(gauss_central_charge(&deg).unwrap_err().kind(), "degenerate");
    }

    #[test]
    fn json_round_trip() {
        let m = MetricGroup::from_quad(QuadForm::diagonal(z(3), &[1]).unwrap()).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains(r#""values":["0","1/3","1/3"]"#), "{s}");
        let back: MetricGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
