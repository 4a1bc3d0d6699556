//! Counting norm-2 vectors by Fincke–Pohst enumeration in exact arithmetic.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::EvenLattice;
use crate::error::{Error, Result};
use crate::par;

const MAX_RANK: usize = 8;

/// Number of lattice vectors x with ⟨x, x⟩ = 2. Rank must be at most 8.
pub fn count_roots(l: &EvenLattice) -> Result<u64> {
    let n = l.rank();
    if n > MAX_RANK {
        return Err(Error::Capacity { what: format!("root enumeration in rank {n}"), bound: MAX_RANK as u64 });
    }
    if n == 0 {
        return Ok(0);
    }
    let q = completed_squares(l);
    let two = BigRational::from_integer(2.into());
    let top = n - 1;
    let cands = candidates(&q, top, &BigRational::zero(), &two);
    let counts = par::map_slice(&cands, |&x| {
        let mut xs = vec![0i64; n];
        xs[top] = x;
        let used = term(&q, top, &xs);
        descend(&q, top, &mut xs, &(&two - used))
    });
    Ok(counts.into_iter().sum())
}

/// `Q(x) = Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)²`.
fn completed_squares(l: &EvenLattice) -> Vec<Vec<BigRational>> {
    let n = l.rank();
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(l.gram().get(i, j).clone())).collect()).collect();
    let mut q = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        q[i][i] = a[i][i].clone();
        for j in i + 1..n {
            q[i][j] = &a[i][j] / &a[i][i];
        }
        for k in i + 1..n {
            for m in i + 1..n {
                let v = &a[i][k] * &a[i][m] / &a[i][i];
                a[k][m] -= v;
            }
        }
    }
    q
}

fn center(q: &[Vec<BigRational>], i: usize, xs: &[i64]) -> BigRational {
    let mut c = BigRational::zero();
    for j in i + 1..xs.len() {
        c -= &q[i][j] * BigRational::from_integer(xs[j].into());
    }
    c
}

fn term(q: &[Vec<BigRational>], i: usize, xs: &[i64]) -> BigRational {
    let d = BigRational::from_integer(xs[i].into()) - center(q, i, xs);
    &q[i][i] * &d * &d
}

/// Integers x with q_ii (x − c)² ≤ budget.
fn candidates(q: &[Vec<BigRational>], i: usize, c: &BigRational, budget: &BigRational) -> Vec<i64> {
    let qi = &q[i][i];
    let cf = c.to_f64().unwrap_or(0.0);
    let r = (budget / qi).to_f64().unwrap_or(0.0).max(0.0).sqrt();
    let lo = (cf - r).floor() as i64 - 1;
    let hi = (cf + r).ceil() as i64 + 1;
    (lo..=hi)
        .filter(|x| {
            let d = BigRational::from_integer((*x).into()) - c;
            qi * &d * &d <= *budget
        })
        .collect()
}

fn descend(q: &[Vec<BigRational>], i: usize, xs: &mut [i64], budget: &BigRational) -> u64 {
    if i == 0 {
        return u64::from(budget.is_zero() && xs.iter().any(|x| *x != 0));
    }
    let k = i - 1;
    let c = center(q, k, xs);
    let mut total = 0;
    for x in candidates(q, k, &c, budget) {
        xs[k] = x;
        let d = BigRational::from_integer(x.into()) - &c;
        let rest = budget - &q[k][k] * &d * &d;
        total += descend(q, k, xs, &rest);
    }
    xs[k] = 0;
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over a box, as an independent oracle.
    fn brute(l: &EvenLattice, bound: i64) -> u64 {
        let n = l.rank();
        let mut count = 0;
        let mut x = vec![-bound; n];
        loop {
            let mut norm = 0i64;
            for i in 0..n {
                for j in 0..n {
                    norm += x[i] * x[j] * l.gram().get(i, j).to_i64().unwrap();
                }
            }
            if norm == 2 {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return count;
                }
                x[k] += 1;
                if x[k] <= bound {
                    break;
                }
                x[k] = -bound;
                k += 1;
            }
        }
    }

    #[test]
    fn small_root_systems() {
        assert_eq!(count_roots(&EvenLattice::a(2).unwrap()).unwrap(), 6);
        assert_eq!(brute(&EvenLattice::a(2).unwrap(), 3), 6);
        assert_eq!(count_roots(&EvenLattice::a(4).unwrap()).unwrap(), 20);
        assert_eq!(brute(&EvenLattice::a(4).unwrap(), 2), 20);
        assert_eq!(count_roots(&EvenLattice::e(6).unwrap()).unwrap(), 72);
    }

    #[test]
    fn e8_has_240_roots() {
        assert_eq!(count_roots(&EvenLattice::e(8).unwrap()).unwrap(), 240);
        assert_eq!(count_roots(&EvenLattice::e(7).unwrap()).unwrap(), 126);
    }

    #[test]
    fn rank_bound() {
        let err = count_roots(&EvenLattice::a(9).unwrap()).unwrap_err();
        assert_eq!(err.kind(), "capacity");
    }
}
