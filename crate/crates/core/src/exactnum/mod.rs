//! Exact arithmetic in cyclotomic fields.

mod coef;
mod cyc;
mod field;
mod matrix;
mod root;

pub use cyc::{CycKey, CycNum};
pub use field::{cyclotomic_poly, totient, Field};
pub use matrix::CycMatrix;
pub use root::RootOfUnity;

use num_integer::Integer;

use crate::error::{Error, Result};

/// The positive square root of `n` as an element of ℚ(ζ_{4n}).
///
/// Square factors are pulled out; √2 = ζ₈ + ζ₈⁻¹ and for an odd prime p the
/// quadratic Gauss sum g_p = Σ ζ_p^{x²} gives √p = g_p or −i·g_p.
pub fn sqrt_int(n: u64) -> Result<CycNum> {
    if n == 0 {
        return Err(Error::InvalidArgument("sqrt_int needs n >= 1".into()));
    }
    let cond = u32::try_from(4 * n).map_err(|_| Error::InvalidArgument(format!("sqrt_int({n}) too large")))?;
    let mut rest = n;
    let mut square = 1i64;
    let mut acc = CycNum::one(cond);
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= p as i64;
        }
        if e % 2 == 1 {
            acc = &acc * &sqrt_prime(p).promote(cond);
        }
        p += 1;
    }
    if rest > 1 {
        acc = &acc * &sqrt_prime(rest).promote(cond);
    }
    Ok(acc.scale_int(square))
}

fn sqrt_prime(p: u64) -> CycNum {
    if p == 2 {
        return &CycNum::zeta(8, 1) + &CycNum::zeta(8, -1);
    }
    let pp = p as u32;
    let mut g = CycNum::zero(pp);
    for x in 0..p {
        g = &g + &CycNum::zeta(pp, ((x * x) % p) as i64);
    }
    if p % 4 == 1 {
        g
    } else {
        // g² = -p, and Im g > 0, so -i·g = √p
        -(&CycNum::zeta(4, 1) * &g)
    }
}

/// lcm of a list of conductors (at least 1).
pub fn lcm_all(ns: impl IntoIterator<Item = u32>) -> u32 {
    ns.into_iter().fold(1u64, |m, x| m.lcm(&(x as u64))) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn sqrt_examples() {
        assert!(sqrt_int(1).unwrap().is_one());
        assert_eq!(sqrt_int(9).unwrap(), CycNum::from_int(1, 3));
        let r3 = sqrt_int(3).unwrap();
        assert_eq!(r3.conductor(), 12);
        assert!((r3.to_complex().re - 1.7320508).abs() < 1e-7);
        assert!((sqrt_int(5).unwrap().to_complex().re - 5f64.sqrt()).abs() < 1e-9);
        assert!(sqrt_int(0).is_err());
    }

    #[test]
    fn sqrt_squares_to_n() {
        for n in 1..=200u64 {
            let r = sqrt_int(n).unwrap();
            let sq = (&r * &r).as_rational().unwrap();
            assert_eq!(sq.to_integer().to_u64(), Some(n));
            assert!(sq.is_integer());
            let z = r.to_complex();
            assert!((z.re - (n as f64).sqrt()).abs() < 1e-9 && z.im.abs() < 1e-9, "n = {n}");
        }
    }
}
