//! Roots of unity e^{2πi r} stored by their exponent r ∈ ℚ/ℤ.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::cyc::CycNum;
use crate::error::{Error, Result};

/// e^{2πi·num/den} with `0 <= num < den` and `gcd(num, den) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: i64,
    den: i64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };

    /// e^{2πi·num/den}; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> RootOfUnity {
        assert!(den != 0, "root of unity with zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let num = num.rem_euclid(den);
        let g = num.gcd(&den).max(1);
        RootOfUnity { num: num / g, den: den / g }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    /// Order of the root (denominator of the reduced exponent).
    pub fn order(&self) -> i64 {
        self.den
    }

    pub fn mul(&self, o: &RootOfUnity) -> RootOfUnity {
        let den = self.den.lcm(&o.den);
        RootOfUnity::new(self.num * (den / self.den) + o.num * (den / o.den), den)
    }

    pub fn inv(&self) -> RootOfUnity {
        RootOfUnity::new(-self.num, self.den)
    }

    pub fn conj(&self) -> RootOfUnity {
        self.inv()
    }

    pub fn pow(&self, e: i64) -> RootOfUnity {
        let n = ((self.num as i128 * e as i128).rem_euclid(self.den as i128)) as i64;
        RootOfUnity::new(n, self.den)
    }

    /// Principal square root: halves the exponent taken in [0, 1).
    pub fn sqrt(&self) -> RootOfUnity {
        RootOfUnity::new(self.num, 2 * self.den)
    }

    /// Exponent as a float in [0, 1).
    pub fn turns(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact value in ℚ(ζ_den).
    pub fn to_cyc(&self) -> CycNum {
        CycNum::zeta(self.den as u32, self.num)
    }

    /// Exact value in ℚ(ζ_n); `n` must be a multiple of the order.
    pub fn to_cyc_in(&self, n: u32) -> CycNum {
        assert!(n as i64 % self.den == 0, "order {} does not divide {n}", self.den);
        CycNum::zeta(n, self.num * (n as i64 / self.den))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2πi·{self})")
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;
    fn from_str(s: &str) -> Result<RootOfUnity> {
        let bad = || Error::Parse(format!("bad root-of-unity exponent {s:?}"));
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim().parse::<i64>(), d.trim().parse::<i64>()),
            None => (s.trim().parse::<i64>(), Ok(1)),
        };
        let (n, d) = (n.map_err(|_| bad())?, d.map_err(|_| bad())?);
        if d <= 0 {
            return Err(bad());
        }
        Ok(RootOfUnity::new(n, d))
    }
}

impl serde::Serialize for RootOfUnity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for RootOfUnity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
