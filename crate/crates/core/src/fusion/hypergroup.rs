use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::FusionRing;
use crate::abgroup::{Elem, FinAbGroup};
use crate::error::{Error, Result};
use crate::exactnum::CycNum;

/// Finite hypergroup: `k·ℓ = Σ_m λ_{kℓ}^m m` with convex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypergroup {
    elements: Vec<String>,
    lambda: Vec<BigRational>,
    star: Vec<usize>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Hypergroup {
    /// Builds and checks convexity, the unit and the antipode law.
    pub fn new(elements: Vec<String>, lambda: Vec<BigRational>, star: Vec<usize>) -> Result<Hypergroup> {
        let r = elements.len();
        if r == 0 || lambda.len() != r * r * r || star.len() != r {
            return Err(Error::invalid("hypergroup tables have inconsistent sizes"));
        }
        let h = Hypergroup { elements, lambda, star };
        h.check()?;
        Ok(h)
    }

    fn from_products(
        elements: Vec<String>,
        star: Vec<usize>,
        product: impl Fn(usize, usize) -> Vec<(usize, BigRational)>,
    ) -> Result<Hypergroup> {
        let r = elements.len();
        let mut lambda = vec![BigRational::zero(); r * r * r];
        for i in 0..r {
            for j in 0..r {
                for (k, c) in product(i, j) {
                    lambda[(i * r + j) * r + k] += c;
                }
            }
        }
        Hypergroup::new(elements, lambda, star)
    }

    /// Renormalized basis `d_i^{-1}[i]` of a fusion ring: `λ_{ij}^k =
    /// N_{ij}^k d_k / (d_i d_j)`, which must come out rational.
    pub fn from_fusion_ring(ring: &FusionRing, dims: &[CycNum]) -> Result<Hypergroup> {
        let r = ring.rank();
        if dims.len() != r {
            return Err(Error::invalid("one dimension per label expected"));
        }
        let mut lambda = vec![BigRational::zero(); r * r * r];
        for i in 0..r {
            for j in 0..r {
                let dij = (&dims[i] * &dims[j]).inv()?;
                for (k, m) in ring.product(i, j) {
                    let v = (&dims[k] * &dij).as_rational().ok_or_else(|| {
                        Error::invalid(format!(
                            "renormalized constant for ({}, {}, {}) is irrational",
                            ring.labels[i], ring.labels[j], ring.labels[k]
                        ))
                    })?;
                    lambda[(i * r + j) * r + k] = v * BigRational::from_integer(m.into());
                }
            }
        }
        Hypergroup::new(ring.labels.clone(), lambda, ring.dual.clone())
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn lambda(&self, i: usize, j: usize, k: usize) -> &BigRational {
        let r = self.len();
        &self.lambda[(i * r + j) * r + k]
    }

    pub fn star(&self, i: usize) -> usize {
        self.star[i]
    }

    /// Convexity, two-sided unit at index 0, involution, antipode law.
    pub fn check(&self) -> Result<()> {
        let r = self.len();
        let e = |i: usize| &self.elements[i];
        for i in 0..r {
            if self.star[self.star[i]] != i {
                return Err(Error::invalid(format!("* is not an involution at {}", e(i))));
            }
            for j in 0..r {
                let mut total = BigRational::zero();
                for k in 0..r {
                    let v = self.lambda(i, j, k);
                    if *v < BigRational::zero() {
                        return Err(Error::invalid(format!("negative coefficient in {}·{}", e(i), e(j))));
                    }
                    total += v;
                }
                if !total.is_one() {
                    return Err(Error::invalid(format!("coefficients of {}·{} sum to {total}", e(i), e(j))));
                }
                if (self.lambda(i, j, 0) > &BigRational::zero()) != (j == self.star[i]) {
                    return Err(Error::invalid(format!("antipode law fails for ({}, {})", e(i), e(j))));
                }
            }
            for k in 0..r {
                let d = if i == k { BigRational::one() } else { BigRational::zero() };
                if *self.lambda(0, i, k) != d || *self.lambda(i, 0, k) != d {
                    return Err(Error::invalid(format!("unit law fails at {}", e(i))));
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Hypergroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct J<'a> {
            elements: &'a [String],
            star: &'a [usize],
            /// nonzero entries `[i, j, k, "p/q"]`
            lambda: Vec<(usize, usize, usize, String)>,
        }
        let r = self.len();
        let mut lambda = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v = self.lambda(i, j, k);
                    if !v.is_zero() {
                        lambda.push((i, j, k, v.to_string()));
                    }
                }
            }
        }
        J { elements: &self.elements, star: &self.star, lambda }.serialize(s)
    }
}

/// K = G ∪ {τ} with `gτ = τg = τ = τ*` and `τ² = |G|⁻¹ Σ_g g`.
pub fn ty_hypergroup(g: &FinAbGroup) -> Result<Hypergroup> {
    let elems: Vec<Elem> = g.elements().collect();
    let n = elems.len();
    let mut names: Vec<String> = elems.iter().map(|x| format!("g({x})")).collect();
    names.push("tau".into());
    let mut star: Vec<usize> = elems.iter().map(|x| g.index_of(&g.neg(x))).collect();
    star.push(n);
    Hypergroup::from_products(names, star, |i, j| match (i < n, j < n) {
        (true, true) => vec![(g.index_of(&g.add(&elems[i], &elems[j])), BigRational::one())],
        (true, false) | (false, true) => vec![(n, BigRational::one())],
        (false, false) => (0..n).map(|k| (k, rat(1, n as i64))).collect(),
    })
}

/// Character table of a hypergroup: rows are dual elements, columns are
/// elements of K, with Haar weights per column.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharTable {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<CycNum>>,
    #[serde(serialize_with = "ser_rats")]
    pub weights: Vec<BigRational>,
}

fn ser_rats<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl CharTable {
    /// Σ_k w(k) χ_i(k) conj(χ_j(k)) for all pairs of rows.
    pub fn gram(&self) -> Vec<Vec<CycNum>> {
        let r = self.rows.len();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let terms: Vec<CycNum> = self.weights
                            .iter()
                            .enumerate()
                            .map(|(k, w)| (&self.entries[i][k] * &self.entries[j][k].conj()).scale_ratio(w))
                            .collect();
                        CycNum::sum(1, terms.iter())
                    })
                    .collect()
            })
            .collect()
    }

    /// Distinct rows are orthogonal for the weighted inner product.
    pub fn is_orthogonal(&self) -> bool {
        let g = self.gram();
        (0..g.len()).all(|i| (0..g.len()).all(|j| i == j || g[i][j].is_zero()))
    }

    /// Each row is multiplicative on K: χ(k)χ(ℓ) = Σ_m λ_{kℓ}^m χ(m).
    pub fn is_multiplicative(&self, k: &Hypergroup) -> bool {
        let r = k.len();
        self.entries.iter().all(|row| {
            (0..r).all(|a| {
                (0..r).all(|b| {
                    let lhs = &row[a] * &row[b];
                    let terms: Vec<CycNum> = (0..r).map(|m| row[m].scale_ratio(k.lambda(a, b, m))).collect();
                    lhs == CycNum::sum(1, terms.iter())
                })
            })
        })
    }
}

/// The dual hypergroup K̂ = {1, ε} ∪ {c_χ : χ ≠ 1} of the TY hypergroup on
/// a group of odd order, with its character table.
///
/// Ĝ is identified with G through the standard pairing. Weights are
/// w(g) = 1 and w(τ) = |G|.
pub fn ty_dual_hypergroup_and_table(g: &FinAbGroup) -> Result<(Hypergroup, CharTable)> {
    if g.order() % 2 == 0 {
        return Err(Error::unsupported(format!("dual TY hypergroup needs odd order, got {g}")));
    }
    let elems: Vec<Elem> = g.elements().collect();
    let n = elems.len();
    // index 0: 1, index 1: ε, index 1 + i: c_{χ_i} for i = 1..n
    let mut names: Vec<String> = vec!["1".into(), "eps".into()];
    names.extend(elems.iter().skip(1).map(|x| format!("c({x})")));
    let chi = |i: usize| 1 + i;
    let mut star = vec![0, 1];
    star.extend(elems.iter().skip(1).map(|x| chi(g.index_of(&g.neg(x)))));
    let half = rat(1, 2);
    let dual = Hypergroup::from_products(names.clone(), star, |a, b| {
        let one = BigRational::one();
        match (a, b) {
            (0, b) => vec![(b, one)],
            (a, 0) => vec![(a, one)],
            (1, 1) => vec![(0, one)],
            (1, b) => vec![(b, one)],
            (a, 1) => vec![(a, one)],
            (a, b) => {
                let s = g.add(&elems[a - 1], &elems[b - 1]);
                if g.is_zero(&s) {
                    vec![(0, half.clone()), (1, half.clone())]
                } else {
                    vec![(chi(g.index_of(&s)), one)]
                }
            }
        }
    })?;
    let mut cols: Vec<String> = elems.iter().map(|x| format!("g({x})")).collect();
    cols.push("tau".into());
    let mut entries = vec![vec![CycNum::one(1); n + 1]];
    let mut eps = vec![CycNum::one(1); n];
    eps.push(CycNum::from_int(1, -1));
    entries.push(eps);
    for h in elems.iter().skip(1) {
        let mut row: Vec<CycNum> = elems.iter().map(|x| g.pairing(h, x).to_cyc()).collect();
        row.push(CycNum::zero(1));
        entries.push(row);
    }
    let mut weights = vec![BigRational::one(); n];
    weights.push(BigRational::from_integer(BigInt::from(n)));
    Ok((dual, CharTable { rows: names, cols, entries, weights }))
}
