//! Dense matrices over a single cyclotomic field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::cyc::CycNum;
use crate::par;

/// Row-major matrix whose entries all share one conductor.
#[derive(Clone, PartialEq, Debug)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    data: Vec<CycNum>,
}

impl CycMatrix {
    /// Builds a matrix, promoting all entries to their common conductor.
    pub fn new(rows: usize, cols: usize, data: Vec<CycNum>) -> CycMatrix {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        let conductor =
            data.iter().fold(1u64, |m, x| m.lcm(&(x.conductor() as u64))) as u32;
        let data = if data.iter().all(|x| x.conductor() == conductor) {
            data
        } else {
            data.iter().map(|x| x.promote(conductor)).collect()
        };
        CycMatrix { rows, cols, conductor, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> CycNum + Sync + Send) -> CycMatrix {
        let data = par::map_range(rows * cols, |k| f(k / cols, k % cols));
        CycMatrix::new(rows, cols, data)
    }

    pub fn identity(n: usize, conductor: u32) -> CycMatrix {
        CycMatrix::from_fn(n, n, |i, j| {
            if i == j {
                CycNum::one(conductor)
            } else {
                CycNum::zero(conductor)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }

    pub fn promote(&self, m: u32) -> CycMatrix {
        if m == self.conductor {
            return self.clone();
        }
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: m,
            data: par::map_slice(&self.data, |x| x.promote(m)),
        }
    }

    pub fn map(&self, f: impl Fn(&CycNum) -> CycNum + Sync + Send) -> CycMatrix {
        CycMatrix::new(self.rows, self.cols, par::map_slice(&self.data, f))
    }

    pub fn conj(&self) -> CycMatrix {
        self.map(|x| x.conj())
    }

    pub fn transpose(&self) -> CycMatrix {
        let (r, c) = (self.rows, self.cols);
        CycMatrix::from_fn(c, r, |i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> CycMatrix {
        self.transpose().conj()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Kronecker product, indexed (i1·r2 + i2, j1·c2 + j2).
    pub fn kron(&self, o: &CycMatrix) -> CycMatrix {
        let (r2, c2) = (o.rows, o.cols);
        CycMatrix::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            self.get(i / r2, j / c2) * o.get(i % r2, j % c2)
        })
    }

    /// Multiplies column j by d[j].
    pub fn scale_cols(&self, d: &[CycNum]) -> CycMatrix {
        assert_eq!(d.len(), self.cols);
        CycMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * &d[j])
    }

    /// Multiplies row i by d[i].
    pub fn scale_rows(&self, d: &[CycNum]) -> CycMatrix {
        assert_eq!(d.len(), self.rows);
        CycMatrix::from_fn(self.rows, self.cols, |i, j| &d[i] * self.get(i, j))
    }

    /// Matrix product. Uses an integer kernel with one reduction per entry
    /// when coefficients fit in `i128`, generic arithmetic otherwise.
    pub fn mul(&self, o: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, o.rows, "matrix dimension mismatch");
        let m = (self.conductor as u64).lcm(&(o.conductor as u64)) as u32;
        let a = self.promote(m);
        let b = o.promote(m);
        if let Some(c) = fast_mul(&a, &b) {
            return c;
        }
        CycMatrix::from_fn(a.rows, b.cols, |i, j| {
            let mut acc = CycNum::zero(m);
            for k in 0..a.cols {
                let x = a.get(i, k);
                let y = b.get(k, j);
                if !x.is_zero() && !y.is_zero() {
                    acc = &acc + &(x * y);
                }
            }
            acc
        })
    }
}

/// Integer numerators scaled to a common denominator, stored sparsely.
struct Scaled {
    den: i128,
    entries: Vec<Vec<(usize, i128)>>,
}

fn scale_common(m: &CycMatrix) -> Option<Scaled> {
    let mut den = BigInt::one();
    for x in &m.data {
        let (_, d) = x.small_parts()?;
        den = den.lcm(&BigInt::from(d));
    }
    let den = i128::try_from(den).ok()?;
    let mut entries = Vec::with_capacity(m.data.len());
    for x in &m.data {
        let (num, d) = x.small_parts()?;
        let f = den / d;
        let mut v = Vec::new();
        for (j, c) in num.iter().enumerate() {
            if *c != 0 {
                v.push((j, c.checked_mul(f)?));
            }
        }
        entries.push(v);
    }
    Some(Scaled { den, entries })
}

fn fast_mul(a: &CycMatrix, b: &CycMatrix) -> Option<CycMatrix> {
    let field = a.data.first().map(|x| x.field())?;
    let phi = field.degree();
    let n = a.conductor;
    let sa = scale_common(a)?;
    let sb = scale_common(b)?;
    let den = sa.den.checked_mul(sb.den)?;
    let (rows, inner, cols) = (a.rows, a.cols, b.cols);
    let rows_out: Vec<Option<Vec<CycNum>>> = par::map_range(rows, |i| {
        let mut out = Vec::with_capacity(cols);
        let mut buf = vec![0i128; 2 * phi - 1];
        for j in 0..cols {
            buf.iter_mut().for_each(|c| *c = 0);
            let mut any = false;
            for k in 0..inner {
                let x = &sa.entries[i * inner + k];
                let y = &sb.entries[k * cols + j];
                if x.is_empty() || y.is_empty() {
                    continue;
                }
                any = true;
                for &(p, u) in x {
                    for &(q, v) in y {
                        let t = u.checked_mul(v)?;
                        buf[p + q] = buf[p + q].checked_add(t)?;
                    }
                }
            }
            if !any {
                out.push(CycNum::zero(n));
                continue;
            }
            let mut v = buf.clone();
            field.reduce(&mut v)?;
            out.push(CycNum::from_small_parts(n, v, den)?);
        }
        Some(out)
    });
    let mut data = Vec::with_capacity(rows * cols);
    for r in rows_out {
        data.extend(r?);
    }
    Some(CycMatrix { rows, cols, conductor: n, data })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_generic() {
        let n = 12;
        let a = CycMatrix::from_fn(3, 2, |i, j| CycNum::zeta(n, (i * 2 + j) as i64).scale_int(i as i64 + 1));
        let b = CycMatrix::from_fn(2, 3, |i, j| &CycNum::zeta(n, (i + 5 * j) as i64) + &CycNum::one(n));
        let c = a.mul(&b);
        for i in 0..3 {
            for j in 0..3 {
                let e = &(a.get(i, 0) * b.get(0, j)) + &(a.get(i, 1) * b.get(1, j));
                assert_eq!(c.get(i, j), &e);
            }
        }
    }

    #[test]
    fn mixed_conductors_promote() {
        let m = CycMatrix::new(1, 2, vec![CycNum::zeta(3, 1), CycNum::zeta(4, 1)]);
        assert_eq!(m.conductor(), 12);
        assert_eq!(m.get(0, 1), &CycNum::zeta(12, 3));
    }

    #[test]
    fn kron_shape() {
        let a = CycMatrix::identity(2, 1);
        let b = CycMatrix::from_fn(2, 2, |i, j| CycNum::from_int(1, (i * 2 + j) as i64));
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(3, 3), &CycNum::from_int(1, 3));
        assert!(k.get(0, 3).is_zero());
    }
}
