//! Modular data (S, T) of modular tensor categories: constructions for
//! pointed categories, centers of Tambara–Yamagami categories and
//! generalized metaplectic categories, exact verification of the modular
//! axioms, Verlinde fusion, Frobenius–Schur indicators, equivalence and
//! condensation certificates.
//!
//! Conventions: `T = e^{-πi c/12}·diag(θ)`, and the pointed S-matrix is
//! `S_{g,h} = ∂θ(g,h)/√|G|` with `∂θ(g,h) = θ(g)θ(h)/θ(g+h)`.

mod builders;
mod condense;
mod equiv;
mod label;
mod verlinde;

use std::cmp::Ordering;
use std::collections::HashSet;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub use builders::{classify_mp, mp_md, pointed_md, ty_center_md};
pub use condense::{verify_condensation, BranchingMatrix};
pub use equiv::{md_equivalent, MDEquivalence};
pub use label::Label;
pub use verlinde::{bantay_fs, bantay_indicators, verlinde_fusion};

use crate::error::{Error, Result};
use crate::exactnum::{lcm_all, CycMatrix, CycNum, RootOfUnity};
use crate::par;

/// Modular data with exact entries. `labels[0]` is the unit.
///
/// Since c_top is kept mod 8, the normalization `T_unit = e^{-πi c/12}`
/// holds up to a cube root of unity (Deligne products can shift it).
#[derive(Clone, Debug, PartialEq)]
pub struct ModularData {
    labels: Vec<Label>,
    s: CycMatrix,
    t: Vec<CycNum>,
    c_top: Ratio<i64>,
    grading: Option<Vec<u8>>,
}

/// `e^{-πi c/12}` for c given mod 8.
pub fn central_phase(c: Ratio<i64>) -> RootOfUnity {
    RootOfUnity::new(-c.numer(), 24 * c.denom())
}

fn reduce_mod8(c: Ratio<i64>) -> Ratio<i64> {
    let eight = Ratio::from_integer(8);
    let r = c - (c / eight).floor() * eight;
    if r < Ratio::from_integer(0) {
        r + eight
    } else {
        r
    }
}

impl ModularData {
    /// Assembles modular data after shape checks. The modular axioms are
    /// checked separately by [`ModularData::verify`].
    pub fn new(
        labels: Vec<Label>,
        s: CycMatrix,
        t: Vec<CycNum>,
        c_top: Ratio<i64>,
        grading: Option<Vec<u8>>,
    ) -> Result<ModularData> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::invalid("modular data needs at least one label"));
        }
        if s.rows() != n || s.cols() != n || t.len() != n {
            return Err(Error::invalid(format!(
                "S is {}x{} and T has {} entries, expected {n}",
                s.rows(),
                s.cols(),
                t.len()
            )));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::invalid(format!("duplicate label {l}")));
            }
        }
        if let Some(g) = &grading {
            if g.len() != n || g.iter().any(|x| *x > 1) {
                return Err(Error::invalid("grading must assign 0 or 1 to every label"));
            }
        }
        let m = lcm_all([s.conductor()].into_iter().chain(t.iter().map(|x| x.conductor())));
        let s = s.promote(m);
        let t = t.iter().map(|x| x.promote(m)).collect();
        Ok(ModularData { labels, s, t, c_top: reduce_mod8(c_top), grading })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label_index(&self, l: &Label) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    pub fn s(&self) -> &CycMatrix {
        &self.s
    }

    pub fn t(&self) -> &[CycNum] {
        &self.t
    }

    pub fn c_top(&self) -> Ratio<i64> {
        self.c_top
    }

    pub fn grading(&self) -> Option<&[u8]> {
        self.grading.as_deref()
    }

    pub fn conductor(&self) -> u32 {
        self.s.conductor()
    }

    /// Twists `θ_λ = T_λ/T_unit`.
    pub fn twists(&self) -> Vec<CycNum> {
        let ph = self.t[0].conj();
        self.t.iter().map(|x| x * &ph).collect()
    }

    /// Quantum dimensions `d_λ = S_{λ,0}/S_{0,0}`.
    pub fn dims(&self) -> Result<Vec<CycNum>> {
        let inv = self.s.get(0, 0).inv()?;
        Ok((0..self.rank()).map(|i| self.s.get(i, 0) * &inv).collect())
    }

    /// Charge conjugation read off from `S²`, which must be a permutation
    /// matrix of order at most two.
    pub fn charge_conjugation(&self) -> Result<Vec<usize>> {
        let n = self.rank();
        let s2 = self.s.mul(&self.s);
        let mut perm = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..n {
                let x = s2.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if !x.is_one() || perm[i] != usize::MAX {
                    return Err(Error::ModularityViolation(format!(
                        "S² is not a permutation matrix at ({}, {})",
                        self.labels[i], self.labels[j]
                    )));
                }
                perm[i] = j;
            }
            if perm[i] == usize::MAX {
                return Err(Error::ModularityViolation(format!("S² has a zero row at {}", self.labels[i])));
            }
        }
        if (0..n).any(|i| perm[perm[i]] != i) {
            return Err(Error::ModularityViolation("S² is not an involution".into()));
        }
        Ok(perm)
    }

    /// Exact check of the modular axioms.
    ///
    /// Checks that S is symmetric, that C = S² is an involutive permutation,
    /// that conj(S) = S·C (so S is unitary), CSC = S, CTC = T, that T is
    /// unimodular with T_unit = e^{-πic/12}, that STS = T⁻¹ST⁻¹ (that is
    /// TSTST = S, hence (ST)³ = S·S = C), that all dimensions are positive
    /// and that the Gauss sum Σ d²θ has phase e^{πic/4}.
    pub fn verify(&self) -> Result<()> {
        let n = self.rank();
        let fail = |what: String| Err(Error::ModularityViolation(what));
        if !self.s.is_symmetric() {
            return fail("S is not symmetric".into());
        }
        let c = self.charge_conjugation()?;
        if c[0] != 0 {
            return fail("charge conjugation moves the unit".into());
        }
        for i in 0..n {
            for j in 0..n {
                if self.s.get(i, j).conj() != *self.s.get(i, c[j]) {
                    return fail(format!("S is not unitary at ({}, {})", self.labels[i], self.labels[j]));
                }
            }
        }
        // CSC = S follows from C = S², but is cheap to confirm directly
        for i in 0..n {
            for j in 0..n {
                if self.s.get(c[i], c[j]) != self.s.get(i, j) {
                    return fail("CSC != S".into());
                }
            }
            if self.t[c[i]] != self.t[i] {
                return fail(format!("CTC != T at {}", self.labels[i]));
            }
        }
        let mut tinv = Vec::with_capacity(n);
        for (i, x) in self.t.iter().enumerate() {
            if x.as_root_of_unity().is_none() {
                return fail(format!("T entry at {} is not a root of unity", self.labels[i]));
            }
            tinv.push(x.conj());
        }
        // c_top is only defined mod 8, so e^{-πi c/12} is fixed up to a cube root of unity
        let t0 = &self.t[0] * &central_phase(self.c_top).inv().to_cyc();
        if !t0.as_root_of_unity().is_some_and(|r| 3 % r.order() == 0) {
            return fail("T at the unit is not e^{-πi c/12} up to a cube root of unity".into());
        }
        let sts = self.s.scale_cols(&self.t).mul(&self.s);
        let ok = par::map_range(n, |i| {
            (0..n).all(|j| *sts.get(i, j) == &(&tinv[i] * self.s.get(i, j)) * &tinv[j])
        });
        if let Some(i) = ok.iter().position(|x| !x) {
            return fail(format!("TSTST != S in row {}", self.labels[i]));
        }
        let d = self.dims()?;
        for (i, x) in d.iter().enumerate() {
            if x.real_sign() != Some(Ordering::Greater) {
                return fail(format!("dimension of {} is not positive", self.labels[i]));
            }
        }
        let theta = self.twists();
        let gauss = CycNum::sum(self.conductor(), d.iter().zip(&theta).map(|(x, t)| x * x * t).collect::<Vec<_>>().iter());
        let rotated = &gauss * &RootOfUnity::new(-self.c_top.numer(), 8 * self.c_top.denom()).to_cyc();
        if rotated.real_sign() != Some(Ordering::Greater) {
            return fail("Gauss sum phase does not match c_top".into());
        }
        Ok(())
    }

    /// Global dimension Σ d² (exact).
    pub fn global_dim(&self) -> Result<CycNum> {
        let d = self.dims()?;
        Ok(CycNum::sum(self.conductor(), d.iter().map(|x| x * x).collect::<Vec<_>>().iter()))
    }

    /// Relabels through `f`, keeping everything else.
    pub fn map_labels(&self, f: impl Fn(&Label) -> Label) -> Result<ModularData> {
        ModularData::new(
            self.labels.iter().map(f).collect(),
            self.s.clone(),
            self.t.clone(),
            self.c_top,
            self.grading.clone(),
        )
    }

    /// Complex approximations for display.
    pub fn float_view(&self) -> FloatView {
        let n = self.rank();
        let pair = |z: Complex64| [z.re, z.im];
        let dims = self
            .dims()
            .map(|d| d.iter().map(|x| x.to_complex().re).collect())
            .unwrap_or_default();
        FloatView {
            s: (0..n).map(|i| (0..n).map(|j| pair(self.s.get(i, j).to_complex())).collect()).collect(),
            t: self.t.iter().map(|x| pair(x.to_complex())).collect(),
            dims,
            c_top: *self.c_top.numer() as f64 / *self.c_top.denom() as f64,
        }
    }
}

/// Deligne product: labels are pairs, S and T are Kronecker products.
pub fn tensor_md(a: &ModularData, b: &ModularData) -> Result<ModularData> {
    let mut labels = Vec::with_capacity(a.rank() * b.rank());
    let mut t = Vec::with_capacity(a.rank() * b.rank());
    for (la, ta) in a.labels.iter().zip(&a.t) {
        for (lb, tb) in b.labels.iter().zip(&b.t) {
            labels.push(Label::product(la.clone(), lb.clone()));
            t.push(ta * tb);
        }
    }
    let grading = match (&a.grading, &b.grading) {
        (None, None) => None,
        (ga, gb) => {
            let ga = ga.clone().unwrap_or_else(|| vec![0; a.rank()]);
            let gb = gb.clone().unwrap_or_else(|| vec![0; b.rank()]);
            Some(ga.iter().flat_map(|x| gb.iter().map(move |y| (x + y) % 2)).collect())
        }
    };
    ModularData::new(labels, a.s.kron(&b.s), t, a.c_top + b.c_top, grading)
}

/// Opposite braiding: conjugate S and T, negate c_top.
pub fn reverse_md(a: &ModularData) -> Result<ModularData> {
    ModularData::new(
        a.labels.clone(),
        a.s.conj(),
        a.t.iter().map(|x| x.conj()).collect(),
        -a.c_top,
        a.grading.clone(),
    )
}

/// Changes the Frobenius–Schur indicators of the odd part of a ℤ/2-graded
/// datum: `Ŝ_{xy} = (-1)^{ε(x)ε(y)} S_{xy}`, `θ̂_x = i^{ε(x)} θ_x`.
pub fn hat_twist(md: &ModularData) -> Result<ModularData> {
    let Some(eps) = md.grading.clone() else {
        return Err(Error::invalid("hat twist needs a ℤ/2-grading"));
    };
    let ring = verlinde_fusion(md)?;
    let n = md.rank();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if ring.n(i, j, k) != 0 && eps[k] != (eps[i] + eps[j]) % 2 {
                    return Err(Error::invalid(format!(
                        "grading is not compatible with fusion: {} ⊗ {} contains {}",
                        md.labels[i], md.labels[j], md.labels[k]
                    )));
                }
            }
        }
    }
    let m = lcm_all([md.conductor(), 4]);
    let s = md.s.promote(m);
    let s = CycMatrix::from_fn(n, n, |i, j| {
        let x = s.get(i, j);
        if eps[i] * eps[j] == 1 {
            -x
        } else {
            x.clone()
        }
    });
    let i_unit = CycNum::zeta(4, 1);
    let t = md.t.iter().zip(&eps).map(|(x, e)| if *e == 1 { x * &i_unit } else { x.clone() }).collect();
    ModularData::new(md.labels.clone(), s, t, md.c_top, Some(eps))
}

/// Advisory floating-point view of modular data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FloatView {
    pub s: Vec<Vec<[f64; 2]>>,
    pub t: Vec<[f64; 2]>,
    pub dims: Vec<f64>,
    pub c_top: f64,
}

#[derive(Serialize, Deserialize)]
struct MdJson {
    labels: Vec<Label>,
    s: Vec<Vec<CycNum>>,
    t: Vec<CycNum>,
    c_top: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<Vec<u8>>,
    #[serde(default, skip_deserializing)]
    float_view: Option<FloatView>,
}

impl Serialize for ModularData {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.rank();
        MdJson {
            labels: self.labels.clone(),
            s: (0..n).map(|i| self.s.row(i).to_vec()).collect(),
            t: self.t.clone(),
            c_top: self.c_top.to_string(),
            grading: self.grading.clone(),
            float_view: Some(self.float_view()),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ModularData {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<ModularData, D::Error> {
        use serde::de::Error as _;
        let j = MdJson::deserialize(de)?;
        let n = j.labels.len();
        if j.s.len() != n || j.s.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom(format!("S must be {n}x{n}")));
        }
        let c: Ratio<i64> = j.c_top.parse().map_err(|_| D::Error::custom(format!("bad c_top {:?}", j.c_top)))?;
        let s = CycMatrix::new(n, n, j.s.into_iter().flatten().collect());
        ModularData::new(j.labels, s, j.t, c, j.grading).map_err(D::Error::custom)
    }
}
