//! Interned cyclotomic fields ℚ(ζ_N) with their reduction data.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::coef::Coef;

/// Reduction data for ℚ(ζ_N) in the power basis 1, ζ, …, ζ^{φ(N)-1}.
///
/// Fields are interned and leaked, so a `&'static Field` can be copied into
/// every number without reference counting.
#[derive(Debug)]
pub struct Field {
    n: u32,
    phi: usize,
    /// `x^φ ≡ Σ c_j x^j (mod Φ_N)`, nonzero terms only.
    top: Vec<(usize, i128)>,
    /// Canonical sparse form of ζ^k for `0 <= k < N`.
    monomials: Vec<Vec<(usize, i128)>>,
}

static FIELDS: OnceLock<RwLock<HashMap<u32, &'static Field>>> = OnceLock::new();

impl Field {
    /// The interned field of conductor `n` (`n >= 1`).
    pub fn get(n: u32) -> &'static Field {
        assert!(n >= 1, "conductor must be positive");
        let table = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(f) = table.read().unwrap().get(&n) {
            return f;
        }
        let mut w = table.write().unwrap();
        *w.entry(n).or_insert_with(|| Box::leak(Box::new(Field::build(n))))
    }

    fn build(n: u32) -> Field {
        let phi_poly = cyclotomic_poly(n);
        let phi = phi_poly.len() - 1;
        debug_assert_eq!(phi_poly[phi], 1);
        let top: Vec<(usize, i128)> = phi_poly[..phi]
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(j, c)| (j, -*c))
            .collect();
        // ζ^{k+1} = x·ζ^k, folding the single overflow coefficient back.
        let mut monomials = Vec::with_capacity(n as usize);
        let mut cur = vec![0i128; phi];
        cur[0] = 1;
        for _ in 0..n {
            monomials.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(j, c)| (j, *c))
                    .collect(),
            );
            let carry = cur[phi - 1];
            cur.rotate_right(1);
            cur[0] = 0;
            if carry != 0 {
                for &(j, r) in &top {
                    cur[j] += carry * r;
                }
            }
        }
        Field { n, phi, top, monomials }
    }

    /// Conductor N.
    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Degree φ(N) of the field over ℚ.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub(crate) fn monomial(&self, k: i64) -> &[(usize, i128)] {
        let n = self.n as i64;
        &self.monomials[k.rem_euclid(n) as usize]
    }

    /// Reduces a dense coefficient buffer of any length modulo Φ_N in place;
    /// afterwards only the first φ entries may be nonzero.
    pub(crate) fn reduce<T: Coef>(&self, buf: &mut Vec<T>) -> Option<()> {
        let phi = self.phi;
        if buf.len() < phi {
            buf.resize(phi, T::nil());
            return Some(());
        }
        for k in (phi..buf.len()).rev() {
            if buf[k].is_nil() {
                continue;
            }
            let c = std::mem::replace(&mut buf[k], T::nil());
            for &(j, r) in &self.top {
                let idx = k - phi + j;
                let t = c.mul_i128(r)?;
                buf[idx] = buf[idx].add(&t)?;
            }
        }
        buf.truncate(phi);
        Some(())
    }
}

/// Coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<i128> {
    let n = n as usize;
    let mut mult = Vec::new();
    let mut div = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            match mobius(n / d) {
                1 => mult.push(d),
                -1 => div.push(d),
                _ => {}
            }
        }
    }
    let mut p: Vec<i128> = vec![1];
    for d in mult {
        // multiply by x^d - 1
        let mut q = vec![0i128; p.len() + d];
        for (i, c) in p.iter().enumerate() {
            q[i + d] += c;
            q[i] -= c;
        }
        p = q;
    }
    for d in div {
        // exact division by x^d - 1: p = q·(x^d - 1)
        let deg = p.len() - 1 - d;
        let mut q = vec![0i128; deg + 1];
        let mut rem = p.clone();
        for i in (0..=deg).rev() {
            let c = rem[i + d];
            q[i] = c;
            rem[i + d] -= c;
            rem[i] += c;
        }
        debug_assert!(rem.iter().all(|c| *c == 0));
        p = q;
    }
    p
}

fn mobius(mut n: usize) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first one with a coefficient of absolute value 2
        assert!(cyclotomic_poly(105).iter().any(|c| *c == -2));
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..200u32 {
            assert_eq!(Field::get(n).degree() as u64, totient(n as u64), "n = {n}");
        }
    }

    #[test]
    fn monomial_table_wraps() {
        let f = Field::get(3);
        // ζ_3^2 = -1 - ζ_3
        assert_eq!(f.monomial(2), &[(0, -1), (1, -1)]);
        assert_eq!(f.monomial(3), &[(0, 1)]);
        assert_eq!(f.monomial(-1), f.monomial(2));
    }
}
