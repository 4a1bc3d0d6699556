//! Dense integer matrices with Smith and Hermite normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major matrix of arbitrary-precision integers.
///
/// JSON form is a nested array of integers (entries must fit in `i64`).
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let rows = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_i64().ok_or_else(|| S::Error::custom("matrix entry exceeds i64")))
                    .collect::<std::result::Result<Vec<i64>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        IntMatrix::from_i64(&rows).map_err(serde::de::Error::custom)
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<IntMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::InvalidArgument("ragged integer matrix".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<IntMatrix> {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|x| BigInt::from(*x)).collect()).collect())
    }

    pub fn diagonal(d: &[BigInt]) -> IntMatrix {
        let n = d.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    /// Exact inverse over ℚ.
    pub fn inverse_rational(&self) -> Result<Vec<Vec<BigRational>>> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::InvalidArgument("inverse of a non-square matrix".into()));
        }
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut r: Vec<BigRational> = self.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
                r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                r
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&i| !a[i][c].is_zero())
                .ok_or_else(|| Error::Degenerate("singular matrix".into()))?;
            a.swap(c, p);
            let inv = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x *= &inv;
            }
            for i in 0..n {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    let pivot_row = a[c].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f·row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = f * self.get(src, j);
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += f·col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = f * self.get(i, src);
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.data[r * self.cols + j] = v;
        }
    }

    /// Smith normal form: returns `(D, U, V)` with `U·M·V = D`, `D` diagonal
    /// with nonnegative entries and `d_i | d_{i+1}`, `U` and `V` unimodular.
    pub fn smith_normal_form(&self) -> (IntMatrix, IntMatrix, IntMatrix) {
        let (m, n) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut u = IntMatrix::identity(m);
        let mut v = IntMatrix::identity(n);
        for t in 0..m.min(n) {
            loop {
                // smallest nonzero entry of the trailing block becomes the pivot
                let mut best: Option<(usize, usize)> = None;
                for i in t..m {
                    for j in t..n {
                        let x = d.get(i, j);
                        if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    return finish_snf(d, u, v);
                };
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                let mut clean = true;
                for i in t + 1..m {
                    let q = d.get(i, t).div_floor(d.get(t, t));
                    d.add_row(i, t, &-&q);
                    u.add_row(i, t, &-&q);
                    if !d.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    let q = d.get(t, j).div_floor(d.get(t, t));
                    d.add_col(j, t, &-&q);
                    v.add_col(j, t, &-&q);
                    if !d.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                // divisibility of the rest of the block
                let p = d.get(t, t).clone();
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        d.add_row(t, i, &BigInt::one());
                        u.add_row(t, i, &BigInt::one());
                    }
                    None => break,
                }
            }
        }
        finish_snf(d, u, v)
    }

    /// Row-style Hermite normal form of the row lattice; returns the nonzero
    /// rows (an echelon basis with positive pivots and reduced entries above
    /// each pivot).
    pub fn hermite_rows(&self) -> IntMatrix {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            // gcd-combine all rows below r into row r for column c
            for i in r + 1..m {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let x = a.get(r, c).clone();
                let y = a.get(i, c).clone();
                let e = x.extended_gcd(&y);
                let (g, s, t) = (e.gcd, e.x, e.y);
                let (xg, yg) = (&x / &g, &y / &g);
                // [row_r; row_i] <- [[s, t], [-y/g, x/g]]·[row_r; row_i]
                for j in 0..n {
                    let ar = a.get(r, j).clone();
                    let ai = a.get(i, j).clone();
                    a.set(r, j, &s * &ar + &t * &ai);
                    a.set(i, j, &xg * &ai - &yg * &ar);
                }
            }
            if a.get(r, c).is_zero() {
                continue;
            }
            if a.get(r, c).is_negative() {
                a.negate_row(r);
            }
            let p = a.get(r, c).clone();
            for i in 0..r {
                let q = a.get(i, c).div_floor(&p);
                a.add_row(i, r, &-q);
            }
            r += 1;
        }
        let rows = (0..r).map(|i| a.row(i).to_vec()).collect();
        IntMatrix::from_rows(rows).unwrap_or_else(|_| IntMatrix::zeros(0, n))
    }
}

fn finish_snf(mut d: IntMatrix, mut u: IntMatrix, v: IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    for i in 0..d.rows.min(d.cols) {
        if d.get(i, i).is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }
    (d, u, v)
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn snf_examples() {
        let (d, _, _) = IntMatrix::identity(2).smith_normal_form();
        assert_eq!(d, IntMatrix::identity(2));
        assert_eq!(m(&[&[2]]).smith_normal_form().0, m(&[&[2]]));
        let a2 = m(&[&[2, -1], &[-1, 2]]);
        let (d, u, v) = a2.smith_normal_form();
        assert_eq!(d, m(&[&[1, 0], &[0, 3]]));
        assert_eq!(u.mul(&a2).mul(&v), d);
        assert_eq!(u.det().abs(), BigInt::one());
        assert_eq!(v.det().abs(), BigInt::one());
    }

    #[test]
    fn snf_divisibility_fixup() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let (d, u, v) = a.smith_normal_form();
        assert_eq!(d, m(&[&[1, 0], &[0, 6]]));
        assert_eq!(u.mul(&a).mul(&v), d);
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[2, -1], &[-1, 2]]).det(), BigInt::from(3));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), BigInt::zero());
    }

    #[test]
    fn hermite_basis() {
        let a = m(&[&[2, 0], &[0, 2], &[1, 1]]);
        let h = a.hermite_rows();
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn rational_inverse() {
        let inv = m(&[&[2, -1], &[-1, 2]]).inverse_rational().unwrap();
        assert_eq!(inv[0][0], BigRational::new(2.into(), 3.into()));
        assert_eq!(inv[0][1], BigRational::new(1.into(), 3.into()));
        assert!(m(&[&[1, 1], &[1, 1]]).inverse_rational().is_err());
    }
}
