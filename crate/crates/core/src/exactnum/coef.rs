//! Integer coefficient backends: checked `i128` with a `BigInt` fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Ring operations needed by the polynomial kernels. Every fallible
/// operation returns `None` on overflow so callers can retry with `BigInt`.
pub(crate) trait Coef: Clone + PartialEq + std::fmt::Debug {
    fn nil() -> Self;
    fn from_i128(v: i128) -> Self;
    fn is_nil(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn mul_i128(&self, o: i128) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Coef for i128 {
    fn nil() -> Self {
        0
    }
    fn from_i128(v: i128) -> Self {
        v
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn mul_i128(&self, o: i128) -> Option<Self> {
        self.checked_mul(o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn gcd(&self, o: &Self) -> Self {
        // unsigned gcd avoids the i128::MIN corner
        let (mut a, mut b) = (self.unsigned_abs(), o.unsigned_abs());
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a.min(i128::MAX as u128) as i128
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_i128(v: i128) -> Self {
        BigInt::from(v)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn mul_i128(&self, o: i128) -> Option<Self> {
        Some(self * BigInt::from(o))
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Dense polynomial in ζ with a common positive denominator.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Poly<T> {
    pub den: T,
    pub num: Vec<T>,
}

impl<T: Coef> Poly<T> {
    pub fn zero(phi: usize) -> Self {
        Poly { den: T::from_i128(1), num: vec![T::nil(); phi] }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_nil())
    }

    /// Makes the denominator positive and coprime to the numerator.
    pub fn normalize(mut self) -> Option<Self> {
        if self.is_zero() {
            self.den = T::from_i128(1);
            return Some(self);
        }
        if self.den.is_negative() {
            self.den = self.den.neg()?;
            for c in self.num.iter_mut() {
                *c = c.neg()?;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g == T::from_i128(1) {
                break;
            }
            if !c.is_nil() {
                g = g.gcd(c);
            }
        }
        if g != T::from_i128(1) {
            self.den = self.den.div_exact(&g);
            for c in self.num.iter_mut() {
                *c = c.div_exact(&g);
            }
        }
        Some(self)
    }

    pub fn to_big(&self) -> Poly<BigInt> {
        Poly { den: self.den.to_big(), num: self.num.iter().map(|c| c.to_big()).collect() }
    }

    pub fn add(&self, o: &Self) -> Option<Self> {
        if self.den == o.den {
            let num = self
                .num
                .iter()
                .zip(&o.num)
                .map(|(a, b)| a.add(b))
                .collect::<Option<Vec<_>>>()?;
            return Poly { den: self.den.clone(), num }.normalize();
        }
        let g = self.den.gcd(&o.den);
        let fa = o.den.div_exact(&g);
        let fb = self.den.div_exact(&g);
        let den = self.den.mul(&fa)?;
        let num = self
            .num
            .iter()
            .zip(&o.num)
            .map(|(a, b)| a.mul(&fa)?.add(&b.mul(&fb)?))
            .collect::<Option<Vec<_>>>()?;
        Poly { den, num }.normalize()
    }

    pub fn neg(&self) -> Option<Self> {
        let num = self.num.iter().map(|c| c.neg()).collect::<Option<Vec<_>>>()?;
        Some(Poly { den: self.den.clone(), num })
    }

    pub fn scale(&self, n: &T, d: &T) -> Option<Self> {
        let num = self.num.iter().map(|c| c.mul(n)).collect::<Option<Vec<_>>>()?;
        Poly { den: self.den.mul(d)?, num }.normalize()
    }
}

impl Poly<BigInt> {
    /// Converts back to `i128` if every coefficient fits.
    pub fn demote(&self) -> Option<Poly<i128>> {
        let den = self.den.to_i128()?;
        let num = self.num.iter().map(|c| c.to_i128()).collect::<Option<Vec<_>>>()?;
        Some(Poly { den, num })
    }
}
