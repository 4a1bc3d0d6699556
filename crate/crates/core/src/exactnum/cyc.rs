//! Elements of ℚ(ζ_N) in canonical form modulo Φ_N.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coef::{Coef, Poly};
use super::field::Field;
use super::root::RootOfUnity;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Small(Poly<i128>),
    Big(Poly<BigInt>),
}

impl std::hash::Hash for Poly<i128> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.den.hash(state);
        self.num.hash(state);
    }
}

impl std::hash::Hash for Poly<BigInt> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.den.hash(state);
        self.num.hash(state);
    }
}

impl Eq for Poly<i128> {}
impl Eq for Poly<BigInt> {}

impl Repr {
    fn from_big(p: Poly<BigInt>) -> Repr {
        match p.demote() {
            Some(s) => Repr::Small(s),
            None => Repr::Big(p),
        }
    }

    fn big(&self) -> Poly<BigInt> {
        match self {
            Repr::Small(p) => p.to_big(),
            Repr::Big(p) => p.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Repr::Small(p) => p.is_zero(),
            Repr::Big(p) => p.is_zero(),
        }
    }
}

/// Hashable identity of a number inside one fixed field. Only compare keys
/// of numbers that were promoted to the same conductor.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycKey(u32, Repr);

/// Exact element of a cyclotomic field.
#[derive(Clone)]
pub struct CycNum {
    field: &'static Field,
    repr: Repr,
}

/// Runs the `i128` kernel and falls back to `BigInt` on overflow.
macro_rules! dispatch {
    ($a:expr, $b:expr, $f:expr) => {{
        match ($a, $b) {
            (Repr::Small(x), Repr::Small(y)) => match $f(x, y) {
                Some(p) => Repr::Small(p),
                None => Repr::from_big($f(&x.to_big(), &y.to_big()).expect("bigint op")),
            },
            (x, y) => Repr::from_big($f(&x.big(), &y.big()).expect("bigint op")),
        }
    }};
}

fn mul_poly<T: Coef>(f: &Field, a: &Poly<T>, b: &Poly<T>) -> Option<Poly<T>> {
    let phi = f.degree();
    if a.is_zero() || b.is_zero() {
        return Some(Poly::zero(phi));
    }
    let mut buf = vec![T::nil(); 2 * phi - 1];
    let bnz: Vec<(usize, &T)> = b.num.iter().enumerate().filter(|(_, c)| !c.is_nil()).collect();
    for (i, x) in a.num.iter().enumerate() {
        if x.is_nil() {
            continue;
        }
        for &(j, y) in &bnz {
            let t = x.mul(y)?;
            buf[i + j] = buf[i + j].add(&t)?;
        }
    }
    f.reduce(&mut buf)?;
    Poly { den: a.den.mul(&b.den)?, num: buf }.normalize()
}

/// Σ c_j ζ^{k·j} with ζ^{m} looked up in `target`, for Galois actions and
/// promotion (where `k` is the index ratio).
fn substitute<T: Coef>(target: &Field, a: &Poly<T>, k: i64) -> Option<Poly<T>> {
    let mut buf = vec![T::nil(); target.degree()];
    for (j, c) in a.num.iter().enumerate() {
        if c.is_nil() {
            continue;
        }
        for &(idx, r) in target.monomial(j as i64 * k) {
            buf[idx] = buf[idx].add(&c.mul_i128(r)?)?;
        }
    }
    Poly { den: a.den.clone(), num: buf }.normalize()
}

impl CycNum {
    /// Zero in ℚ(ζ_n).
    pub fn zero(n: u32) -> CycNum {
        let field = Field::get(n);
        CycNum { field, repr: Repr::Small(Poly::zero(field.degree())) }
    }

    /// One in ℚ(ζ_n).
    pub fn one(n: u32) -> CycNum {
        CycNum::from_int(n, 1)
    }

    pub fn from_int(n: u32, v: i64) -> CycNum {
        let field = Field::get(n);
        let mut p = Poly::zero(field.degree());
        p.num[0] = v as i128;
        CycNum { field, repr: Repr::Small(p) }
    }

    pub fn from_ratio(n: u32, v: &BigRational) -> CycNum {
        let field = Field::get(n);
        let mut p: Poly<BigInt> = Poly::zero(field.degree());
        p.num[0] = v.numer().clone();
        p.den = v.denom().clone();
        let p = p.normalize().expect("bigint");
        CycNum { field, repr: Repr::from_big(p) }
    }

    /// ζ_n^k in canonical form.
    pub fn zeta(n: u32, k: i64) -> CycNum {
        let field = Field::get(n);
        let mut p = Poly::zero(field.degree());
        for &(j, c) in field.monomial(k) {
            p.num[j] = c;
        }
        CycNum { field, repr: Repr::Small(p) }
    }

    /// Checked constructor for ζ_n^k.
    pub fn make(n: i64, k: i64) -> Result<CycNum> {
        if n < 1 || n > u32::MAX as i64 {
            return Err(Error::InvalidArgument(format!("conductor must be positive, got {n}")));
        }
        Ok(CycNum::zeta(n as u32, k))
    }

    /// Builds a number from rational coefficients on ζ_n^j; indices may be
    /// any integers and are reduced.
    pub fn from_coeffs(n: u32, coeffs: &[(i64, BigRational)]) -> CycNum {
        let field = Field::get(n);
        let mut den = BigInt::one();
        for (_, c) in coeffs {
            den = den.lcm(c.denom());
        }
        let mut buf = vec![BigInt::zero(); field.degree()];
        for (j, c) in coeffs {
            let scaled = c.numer() * (&den / c.denom());
            for &(idx, r) in field.monomial(*j) {
                buf[idx] += &scaled * BigInt::from(r);
            }
        }
        let p = Poly { den, num: buf }.normalize().expect("bigint");
        CycNum { field, repr: Repr::from_big(p) }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// Embeds into ℚ(ζ_m); `m` must be a multiple of the conductor.
    pub fn promote(&self, m: u32) -> CycNum {
        let n = self.conductor();
        if n == m {
            return self.clone();
        }
        assert!(m % n == 0, "cannot promote conductor {n} to {m}");
        let target = Field::get(m);
        let k = (m / n) as i64;
        let repr = match &self.repr {
            Repr::Small(p) => match substitute(target, p, k) {
                Some(q) => Repr::Small(q),
                None => Repr::from_big(substitute(target, &p.to_big(), k).unwrap()),
            },
            Repr::Big(p) => Repr::from_big(substitute(target, p, k).unwrap()),
        };
        CycNum { field: target, repr }
    }

    fn unify<'a>(
        a: &'a CycNum,
        b: &'a CycNum,
    ) -> (std::borrow::Cow<'a, CycNum>, std::borrow::Cow<'a, CycNum>) {
        use std::borrow::Cow;
        if a.conductor() == b.conductor() {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else {
            let m = (a.conductor() as u64).lcm(&(b.conductor() as u64));
            let m = u32::try_from(m).expect("conductor overflow");
            (Cow::Owned(a.promote(m)), Cow::Owned(b.promote(m)))
        }
    }

    /// Applies the Galois automorphism ζ ↦ ζ^k (k coprime to N).
    pub fn galois(&self, k: i64) -> CycNum {
        let f = self.field;
        let repr = match &self.repr {
            Repr::Small(p) => match substitute(f, p, k) {
                Some(q) => Repr::Small(q),
                None => Repr::from_big(substitute(f, &p.to_big(), k).unwrap()),
            },
            Repr::Big(p) => Repr::from_big(substitute(f, p, k).unwrap()),
        };
        CycNum { field: f, repr }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    pub fn scale_int(&self, k: i64) -> CycNum {
        self.scale_ratio(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn scale_ratio(&self, r: &BigRational) -> CycNum {
        let repr = match &self.repr {
            Repr::Small(p) => {
                let n = i128::try_from(r.numer()).ok();
                let d = i128::try_from(r.denom()).ok();
                match (n, d) {
                    (Some(n), Some(d)) => match p.scale(&n, &d) {
                        Some(q) => Repr::Small(q),
                        None => Repr::from_big(p.to_big().scale(r.numer(), r.denom()).unwrap()),
                    },
                    _ => Repr::from_big(p.to_big().scale(r.numer(), r.denom()).unwrap()),
                }
            }
            Repr::Big(p) => Repr::from_big(p.scale(r.numer(), r.denom()).unwrap()),
        };
        CycNum { field: self.field, repr }
    }

    /// Rational value, if the number lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        let p = self.repr.big();
        if p.num.iter().skip(1).any(|c| !c.is_zero()) {
            return None;
        }
        Some(BigRational::new(p.num[0].clone(), p.den))
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        // fast path: x·x̄ rational, e.g. roots of unity times real surds
        let c = self.conj();
        let norm = self * &c;
        if let Some(r) = norm.as_rational() {
            return Ok(c.scale_ratio(&r.recip()));
        }
        Ok(self.inv_euclid())
    }

    fn inv_euclid(&self) -> CycNum {
        type P = Vec<BigRational>;
        fn trim(p: &mut P) {
            while p.last().is_some_and(|c| c.is_zero()) {
                p.pop();
            }
        }
        fn divrem(a: &P, b: &P) -> (P, P) {
            let mut r = a.clone();
            let db = b.len() - 1;
            let lead = b[db].clone();
            let mut q = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
            while r.len() > db {
                let k = r.len() - 1 - db;
                let c = &r[r.len() - 1] / &lead;
                for (i, bc) in b.iter().enumerate() {
                    let t = &c * bc;
                    r[i + k] -= t;
                }
                q[k] = c;
                r.pop();
                trim(&mut r);
            }
            (q, r)
        }
        fn mul(a: &P, b: &P) -> P {
            if a.is_empty() || b.is_empty() {
                return vec![];
            }
            let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        }
        fn sub(a: &P, b: &P) -> P {
            let n = a.len().max(b.len());
            let mut out = vec![BigRational::zero(); n];
            for (i, x) in a.iter().enumerate() {
                out[i] += x;
            }
            for (i, y) in b.iter().enumerate() {
                out[i] -= y;
            }
            trim(&mut out);
            out
        }
        let n = self.conductor();
        let cyc = super::field::cyclotomic_poly(n);
        let mut r0: P = cyc.iter().map(|c| BigRational::from_integer(BigInt::from(*c))).collect();
        let p = self.repr.big();
        let mut r1: P = p.num.iter().map(|c| BigRational::new(c.clone(), p.den.clone())).collect();
        trim(&mut r1);
        let mut s0: P = vec![];
        let mut s1: P = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant since Φ_N is irreducible
        let c = r0[0].clone();
        let coeffs: Vec<(i64, BigRational)> =
            s0.into_iter().enumerate().map(|(j, x)| (j as i64, x / &c)).collect();
        CycNum::from_coeffs(n, &coeffs)
    }

    pub fn div(&self, o: &CycNum) -> Result<CycNum> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one(self.conductor());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Value under ζ_N ↦ e^{2πi/N}. Display and cross-checks only.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor() as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        let add = |acc: &mut Complex64, j: usize, x: f64| {
            let t = std::f64::consts::TAU * j as f64 / n;
            *acc += Complex64::new(x * t.cos(), x * t.sin());
        };
        match &self.repr {
            Repr::Small(p) => {
                let d = p.den as f64;
                for (j, c) in p.num.iter().enumerate() {
                    if *c != 0 {
                        add(&mut acc, j, *c as f64 / d);
                    }
                }
            }
            Repr::Big(p) => {
                for (j, c) in p.num.iter().enumerate() {
                    if !c.is_zero() {
                        let x = BigRational::new(c.clone(), p.den.clone());
                        add(&mut acc, j, num_traits::ToPrimitive::to_f64(&x).unwrap_or(f64::NAN));
                    }
                }
            }
        }
        acc
    }

    fn abs_coeff_sum(&self) -> f64 {
        match &self.repr {
            Repr::Small(p) => p.num.iter().map(|c| (*c as f64).abs()).sum::<f64>() / p.den as f64,
            Repr::Big(p) => {
                let s: BigInt = p.num.iter().map(|c| c.abs()).sum();
                num_traits::ToPrimitive::to_f64(&BigRational::new(s, p.den.clone()))
                    .unwrap_or(f64::INFINITY)
            }
        }
    }

    /// Sign of a real number, decided exactly for zero and by a float
    /// evaluation with a rigorous error margin otherwise. `None` when the
    /// number is not real or too close to zero to certify.
    pub fn real_sign(&self) -> Option<Ordering> {
        if self.is_zero() {
            return Some(Ordering::Equal);
        }
        if let Some(r) = self.as_rational() {
            return Some(r.cmp(&BigRational::zero()));
        }
        if !self.is_real() {
            return None;
        }
        let v = self.to_complex().re;
        let margin = 1e-12 * self.abs_coeff_sum().max(1.0);
        if v > margin {
            Some(Ordering::Greater)
        } else if v < -margin {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// Recognizes roots of unity: returns r with self = e^{2πi r}.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        if self.is_zero() {
            return None;
        }
        let n = self.conductor() as i64;
        let z = self.to_complex();
        if (z.norm() - 1.0).abs() > 1e-6 {
            return None;
        }
        let m = if n % 2 == 0 { n } else { 2 * n };
        let turns = z.arg() / std::f64::consts::TAU;
        let k = ((turns * m as f64).round() as i64).rem_euclid(m);
        let cand = if m == n {
            CycNum::zeta(n as u32, k)
        } else {
            // ζ_{2N} = -ζ_N^{(N+1)/2}
            let z = CycNum::zeta(n as u32, k * (n + 1) / 2);
            if k % 2 == 1 {
                -z
            } else {
                z
            }
        };
        (cand == *self).then(|| RootOfUnity::new(k, m))
    }

    /// Hashable key; only meaningful among numbers of one conductor.
    pub fn key(&self) -> CycKey {
        CycKey(self.conductor(), self.repr.clone())
    }

    /// Fast key for hot paths: hash of the canonical representation.
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.conductor().hash(&mut h);
        self.repr.hash(&mut h);
        h.finish()
    }

    /// Nonzero coefficients as (index, rational) pairs.
    pub fn coeffs(&self) -> Vec<(usize, BigRational)> {
        let p = self.repr.big();
        p.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, BigRational::new(c.clone(), p.den.clone())))
            .collect()
    }

    /// Integer numerator polynomial and positive denominator, if they fit.
    pub(crate) fn small_parts(&self) -> Option<(&[i128], i128)> {
        match &self.repr {
            Repr::Small(p) => Some((&p.num, p.den)),
            Repr::Big(_) => None,
        }
    }

    pub(crate) fn from_small_parts(n: u32, num: Vec<i128>, den: i128) -> Option<CycNum> {
        let field = Field::get(n);
        let p = Poly { den, num }.normalize()?;
        Some(CycNum { field, repr: Repr::Small(p) })
    }

    pub fn sum<'a>(n: u32, items: impl IntoIterator<Item = &'a CycNum>) -> CycNum {
        let mut acc = CycNum::zero(n);
        for x in items {
            acc = &acc + x;
        }
        acc
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &CycNum) -> bool {
        if self.conductor() == other.conductor() {
            return self.repr == other.repr;
        }
        let (a, b) = CycNum::unify(self, other);
        a.repr == b.repr
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        let (a, b) = CycNum::unify(self, o);
        let repr = dispatch!(&a.repr, &b.repr, |x: &Poly<_>, y: &Poly<_>| x.add(y));
        CycNum { field: a.field, repr }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        self + &(-o)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        let (a, b) = CycNum::unify(self, o);
        let f = a.field;
        let repr = dispatch!(&a.repr, &b.repr, |x: &Poly<_>, y: &Poly<_>| mul_poly(f, x, y));
        CycNum { field: f, repr }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        let repr = match &self.repr {
            Repr::Small(p) => match p.neg() {
                Some(q) => Repr::Small(q),
                None => Repr::from_big(p.to_big().neg().unwrap()),
            },
            Repr::Big(p) => Repr::from_big(p.neg().unwrap()),
        };
        CycNum { field: self.field, repr }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: &CycNum) -> CycNum {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                self.$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.conductor();
        for (i, (j, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match (*j, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "z{n}^{j}")?,
                (_, false) => write!(f, "{a}*z{n}^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct CycJson {
    conductor: u32,
    coeffs: Vec<(usize, String)>,
    #[serde(default, skip_deserializing)]
    approx: [f64; 2],
}

impl serde::Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let z = self.to_complex();
        CycJson {
            conductor: self.conductor(),
            coeffs: self.coeffs().into_iter().map(|(j, c)| (j, c.to_string())).collect(),
            approx: [z.re, z.im],
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = CycJson::deserialize(d)?;
        if j.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let mut coeffs = Vec::with_capacity(j.coeffs.len());
        for (idx, s) in j.coeffs {
            let c: BigRational =
                s.parse().map_err(|_| D::Error::custom(format!("bad rational {s:?}")))?;
            coeffs.push((idx as i64, c));
        }
        Ok(CycNum::from_coeffs(j.conductor, &coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::zeta(n, k)
    }

    #[test]
    fn make_examples() {
        assert_eq!(CycNum::make(4, 2).unwrap(), CycNum::from_int(4, -1));
        assert_eq!(&z(3, 1) + &z(3, 2), CycNum::from_int(3, -1));
        assert_eq!(z(12, 3), z(4, 1));
        assert!(matches!(CycNum::make(0, 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn ops_examples() {
        assert_eq!(z(3, 1).conj(), z(3, 2));
        assert!((&z(5, 1) * &z(5, 4)).is_one());
        let x = &(&CycNum::one(8) + &z(8, 1)) + &z(8, -1);
        assert!(x.is_real());
        assert!(!z(8, 1).is_real());
    }

    #[test]
    fn inverse_general() {
        // 2 + ζ_7 has irrational norm ratio, exercising the Euclid path
        let x = &CycNum::from_int(7, 2) + &z(7, 1);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(matches!(CycNum::zero(5).inv(), Err(Error::Arithmetic(_))));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let mut x = &CycNum::from_int(5, 3) + &z(5, 1);
        for _ in 0..6 {
            x = &x * &x;
        }
        // (3+ζ)^64 overflows i128 in intermediate steps
        let y = (&CycNum::from_int(5, 3) + &z(5, 1)).pow(64).unwrap();
        assert_eq!(x, y);
        let back = x.inv().unwrap();
        assert!((&x * &back).is_one());
    }

    #[test]
    fn complex_embedding() {
        let i = z(4, 1).to_complex();
        assert!((i.re).abs() < 1e-12 && (i.im - 1.0).abs() < 1e-12);
        assert_eq!(CycNum::zero(9).to_complex(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn root_recognition() {
        assert_eq!(z(12, 5).as_root_of_unity(), Some(RootOfUnity::new(5, 12)));
        // -ζ_3 is a primitive sixth root living in ℚ(ζ_3)
        assert_eq!((-z(3, 1)).as_root_of_unity(), Some(RootOfUnity::new(5, 6)));
        assert_eq!(CycNum::from_int(5, 2).as_root_of_unity(), None);
    }

    #[test]
    fn json_round_trip() {
        let x = &z(15, 4).scale_ratio(&BigRational::new(3.into(), 7.into())) - &z(15, 11);
        let s = serde_json::to_string(&x).unwrap();
        let y: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert_eq!(serde_json::to_string(&y).unwrap(), s);
    }

    #[test]
    fn real_signs() {
        let x = &z(8, 1) + &z(8, -1); // √2
        assert_eq!(x.real_sign(), Some(Ordering::Greater));
        assert_eq!((-x).real_sign(), Some(Ordering::Less));
        assert_eq!(z(8, 1).real_sign(), None);
    }
}
