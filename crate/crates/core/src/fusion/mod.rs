//! Fusion rings stored as full structure-constant tensors, rule-table
//! builders for Tambara–Yamagami type rings, and hypergroups.

mod hypergroup;
mod rules;

use serde::{Deserialize, Serialize};

pub use hypergroup::{ty_dual_hypergroup_and_table, ty_hypergroup, CharTable, Hypergroup};
pub use rules::{gen_mp_fusion_ring, gen_ty_fusion_ring, ty_fusion_ring};

use crate::error::{Error, Result};

/// Fusion ring with unit at index 0. `n[(i*r + j)*r + k] = N_{ij}^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    n: Vec<u32>,
    dual: Vec<usize>,
}

impl FusionRing {
    /// Checks only shapes; use [`check_fusion_ring`] for the axioms.
    pub fn new(labels: Vec<String>, n: Vec<u32>, dual: Vec<usize>) -> Result<FusionRing> {
        let r = labels.len();
        if r == 0 || n.len() != r * r * r || dual.len() != r || dual.iter().any(|d| *d >= r) {
            return Err(Error::invalid(format!("fusion ring of rank {r} has inconsistent tables")));
        }
        Ok(FusionRing { labels, n, dual })
    }

    /// Builds the tensor from a product rule `(i, j) ↦ Σ m_k [k]`.
    pub fn from_products(
        labels: Vec<String>,
        dual: Vec<usize>,
        product: impl Fn(usize, usize) -> Vec<(usize, u32)>,
    ) -> Result<FusionRing> {
        let r = labels.len();
        let mut n = vec![0u32; r * r * r];
        for i in 0..r {
            for j in 0..r {
                for (k, m) in product(i, j) {
                    n[(i * r + j) * r + k] += m;
                }
            }
        }
        FusionRing::new(labels, n, dual)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.rank();
        self.n[(i * r + j) * r + k]
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    /// Nonzero terms of `[i][j]`.
    pub fn product(&self, i: usize, j: usize) -> Vec<(usize, u32)> {
        (0..self.rank()).filter_map(|k| Some((k, self.n(i, j, k))).filter(|x| x.1 > 0)).collect()
    }

    /// Overwrites one structure constant (for building test fixtures).
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: u32) {
        let r = self.rank();
        self.n[(i * r + j) * r + k] = v;
    }

    /// Frobenius–Perron dimensions by power iteration on `Σ_i N_i + 1`.
    /// Floating point; advisory only.
    pub fn fp_dims(&self) -> Vec<f64> {
        let r = self.rank();
        let mut m = vec![0f64; r * r];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    m[j * r + k] += self.n(i, j, k) as f64;
                }
            }
            m[i * r + i] += 1.0;
        }
        let mut v = vec![1f64; r];
        for _ in 0..10_000 {
            let mut w = vec![0f64; r];
            for j in 0..r {
                for k in 0..r {
                    w[k] += v[j] * m[j * r + k];
                }
            }
            let norm = w[0];
            let w: Vec<f64> = w.iter().map(|x| x / norm).collect();
            let delta = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0f64, f64::max);
            v = w;
            if delta < 1e-15 {
                break;
            }
        }
        v
    }
}

/// Outcome of [`check_fusion_ring`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionReport {
    pub ok: bool,
    /// Human-readable failures, each naming the offending labels.
    pub failures: Vec<String>,
    /// Frobenius–Perron dimensions (advisory, tolerance 1e-9).
    pub fp_dims: Vec<f64>,
    pub global_dim: f64,
    /// Σ d² when every FP dimension is an integer.
    pub global_dim_exact: Option<u64>,
}

const MAX_FAILURES: usize = 20;

/// Verifies unit, duality, associativity and the Frobenius symmetries
/// `N_{ij}^k = N_{īk}^j = N_{kj̄}^i`, plus `N_{ij}^k = N_{j̄ī}^{k̄}`.
pub fn check_fusion_ring(r: &FusionRing) -> FusionReport {
    let n = r.rank();
    let l = |i: usize| r.labels[i].as_str();
    let mut failures = Vec::new();
    let mut fail = |msg: String| {
        if failures.len() < MAX_FAILURES {
            failures.push(msg);
        }
    };
    for i in 0..n {
        if r.dual(r.dual(i)) != i {
            fail(format!("dual is not an involution at {}", l(i)));
        }
        for k in 0..n {
            let d = u32::from(i == k);
            if r.n(0, i, k) != d || r.n(i, 0, k) != d {
                fail(format!("unit law fails at ({}, {}, {})", l(0), l(i), l(k)));
            }
        }
        for j in 0..n {
            let want = u32::from(j == r.dual(i));
            if r.n(i, j, 0) != want {
                fail(format!("N_{{{},{}}}^1 = {} but duality requires {want}", l(i), l(j), r.n(i, j, 0)));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = r.n(i, j, k);
                let (ib, jb, kb) = (r.dual(i), r.dual(j), r.dual(k));
                if r.n(ib, k, j) != v || r.n(k, jb, i) != v {
                    fail(format!("Frobenius reciprocity fails at ({}, {}, {})", l(i), l(j), l(k)));
                }
                if r.n(jb, ib, kb) != v {
                    fail(format!("dual is not an anti-automorphism at ({}, {}, {})", l(i), l(j), l(k)));
                }
            }
        }
    }
    let prods: Vec<Vec<(usize, u32)>> = (0..n * n).map(|x| r.product(x / n, x % n)).collect();
    let assoc = crate::par::map_range(n, |i| {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = vec![0u64; n];
                for &(m, a) in &prods[i * n + j] {
                    for &(t, b) in &prods[m * n + k] {
                        lhs[t] += (a * b) as u64;
                    }
                }
                let mut rhs = vec![0u64; n];
                for &(m, a) in &prods[j * n + k] {
                    for &(t, b) in &prods[i * n + m] {
                        rhs[t] += (a * b) as u64;
                    }
                }
                if lhs != rhs {
                    return Some((j, k));
                }
            }
        }
        None
    });
    for (i, bad) in assoc.into_iter().enumerate() {
        if let Some((j, k)) = bad {
            fail(format!("associativity fails at ({}, {}, {})", l(i), l(j), l(k)));
        }
    }
    let fp_dims = r.fp_dims();
    let global_dim = fp_dims.iter().map(|d| d * d).sum();
    let integral = fp_dims.iter().all(|d| (d - d.round()).abs() < 1e-9);
    let global_dim_exact = integral.then(|| fp_dims.iter().map(|d| (d.round() as u64).pow(2)).sum());
    FusionReport { ok: failures.is_empty(), failures, fp_dims, global_dim, global_dim_exact }
}

/// A unit-fixing bijection π with `N_{ij}^k = N'_{πi πj}^{πk}`, if any.
pub fn find_isomorphism(a: &FusionRing, b: &FusionRing) -> Option<Vec<usize>> {
    let n = a.rank();
    if b.rank() != n {
        return None;
    }
    let sig = |r: &FusionRing, i: usize| -> Vec<u64> {
        let mut row: Vec<u64> = (0..n).map(|j| (0..n).map(|k| r.n(i, j, k) as u64).sum()).collect();
        row.sort_unstable();
        row.push(u64::from(r.dual(i) == i));
        row.push((0..n).map(|k| r.n(i, i, k) as u64).sum());
        row
    };
    let sa: Vec<Vec<u64>> = (0..n).map(|i| sig(a, i)).collect();
    let sb: Vec<Vec<u64>> = (0..n).map(|i| sig(b, i)).collect();
    let domains: Vec<Vec<usize>> =
        (0..n).map(|i| if i == 0 { vec![0] } else { (1..n).filter(|&j| sa[i] == sb[j]).collect() }).collect();
    if domains.iter().any(|d| d.is_empty()) {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (i != 0, domains[i].len()));
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let consistent = |perm: &[usize], assigned: &[usize]| -> bool {
        for &i in assigned {
            for &j in assigned {
                for &k in assigned {
                    if a.n(i, j, k) != b.n(perm[i], perm[j], perm[k]) {
                        return false;
                    }
                }
            }
        }
        true
    };
    fn go(
        pos: usize,
        order: &[usize],
        domains: &[Vec<usize>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        consistent: &dyn Fn(&[usize], &[usize]) -> bool,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let i = order[pos];
        for &c in &domains[i] {
            if used[c] {
                continue;
            }
            perm[i] = c;
            used[c] = true;
            if consistent(perm, &order[..=pos]) && go(pos + 1, order, domains, perm, used, consistent) {
                return true;
            }
            used[c] = false;
            perm[i] = usize::MAX;
        }
        false
    }
    go(0, &order, &domains, &mut perm, &mut used, &consistent).then_some(perm)
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    labels: Vec<String>,
    dual: Vec<usize>,
    /// nonzero entries as `[i, j, k, N_ij^k]`
    n: Vec<[u32; 4]>,
}

impl Serialize for FusionRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = self.rank();
        let mut n = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v = self.n(i, j, k);
                    if v > 0 {
                        n.push([i as u32, j as u32, k as u32, v]);
                    }
                }
            }
        }
        RingJson { labels: self.labels.clone(), dual: self.dual.clone(), n }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FusionRing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<FusionRing, D::Error> {
        use serde::de::Error as _;
        let j = RingJson::deserialize(d)?;
        let r = j.labels.len();
        let mut n = vec![0u32; r * r * r];
        for [i, jj, k, v] in j.n {
            let (i, jj, k) = (i as usize, jj as usize, k as usize);
            if i >= r || jj >= r || k >= r {
                return Err(D::Error::custom("fusion entry index out of range"));
            }
            n[(i * r + jj) * r + k] = v;
        }
        FusionRing::new(j.labels, n, j.dual).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests;
