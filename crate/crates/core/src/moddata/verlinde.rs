use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Label, ModularData};
use crate::error::{Error, Result};
use crate::exactnum::{CycMatrix, CycNum};
use crate::fusion::FusionRing;
use crate::par;

const ROUND_TOL: f64 = 1e-6;

/// Fusion coefficients `N_{ij}^k = Σ_ℓ S_{iℓ}S_{jℓ}conj(S_{kℓ})/S_{0ℓ}`.
///
/// Candidates come from a floating-point evaluation and are then certified
/// exactly: with S invertible, N_i is the unique matrix satisfying
/// `Σ_k N_{ij}^k S_{kℓ} = S_{jℓ}·S_{iℓ}/S_{0ℓ}` for all j, ℓ, and that
/// identity is checked in the cyclotomic field.
pub fn verlinde_fusion(md: &ModularData) -> Result<FusionRing> {
    let r = md.rank();
    let s = md.s();
    let sf: Vec<Complex64> = s.entries().iter().map(|x| x.to_complex()).collect();
    let at = |i: usize, j: usize| sf[i * r + j];
    let rows = par::map_range(r, |i| -> std::result::Result<Vec<u32>, (usize, usize)> {
        let mut out = vec![0u32; r * r];
        for j in 0..r {
            for k in 0..r {
                let mut acc = Complex64::new(0.0, 0.0);
                for l in 0..r {
                    acc += at(i, l) * at(j, l) * at(k, l).conj() / at(0, l);
                }
                let v = acc.re.round();
                if (acc.re - v).abs() > ROUND_TOL || acc.im.abs() > ROUND_TOL || v < 0.0 {
                    return Err((j, k));
                }
                out[j * r + k] = v as u32;
            }
        }
        Ok(out)
    });
    let mut n = Vec::with_capacity(r * r * r);
    for (i, row) in rows.into_iter().enumerate() {
        match row {
            Ok(v) => n.extend(v),
            Err((j, k)) => {
                let exact = exact_coefficient(md, i, j, k)?;
                return Err(Error::ModularityViolation(format!(
                    "N_{{{},{}}}^{} = {exact} is not a nonnegative integer",
                    md.labels[i], md.labels[j], md.labels[k]
                )));
            }
        }
    }
    // Exact certificate. The identity is homogeneous of degree one in S, so
    // it is checked for S/S_00, whose entries are sparse in the power basis
    // (roots of unity for pointed data).
    let s00 = s.get(0, 0).inv()?;
    let s = &CycMatrix::from_fn(r, r, |i, j| s.get(i, j) * &s00);
    let inv0: Vec<CycNum> = (0..r).map(|l| s.get(0, l).inv()).collect::<Result<_>>()?;
    let bad = par::map_range(r, |i| {
        let ratio: Vec<CycNum> = (0..r).map(|l| s.get(i, l) * &inv0[l]).collect();
        for j in 0..r {
            let terms: Vec<(usize, u32)> = (0..r).map(|k| (k, n[(i * r + j) * r + k])).filter(|x| x.1 > 0).collect();
            for l in 0..r {
                let mut lhs = CycNum::zero(s.conductor());
                for &(k, m) in &terms {
                    let x = s.get(k, l);
                    lhs = if m == 1 { &lhs + x } else { &lhs + &x.scale_int(m as i64) };
                }
                if lhs != s.get(j, l) * &ratio[l] {
                    return Some(j);
                }
            }
        }
        None
    });
    if let Some((i, j)) = bad.iter().enumerate().find_map(|(i, b)| b.map(|j| (i, j))) {
        return Err(Error::ModularityViolation(format!(
            "Verlinde coefficients for {} ⊗ {} are not integral",
            md.labels[i], md.labels[j]
        )));
    }
    let c = md.charge_conjugation()?;
    FusionRing::new(md.labels.iter().map(|l| l.to_string()).collect(), n, c)
}

fn exact_coefficient(md: &ModularData, i: usize, j: usize, k: usize) -> Result<CycNum> {
    let s = md.s();
    let mut acc = CycNum::zero(s.conductor());
    for l in 0..md.rank() {
        acc = &acc + &(&(s.get(i, l) * s.get(j, l)) * &(&s.get(k, l).conj() * &s.get(0, l).inv()?));
    }
    Ok(acc)
}

/// Frobenius–Schur indicators of all labels via Bantay's formula
/// `ν_λ = Σ_{σ,τ} N_{στ}^λ S_{σ0}S_{τ0}(θ_σ/θ_τ)²`.
pub fn bantay_indicators(md: &ModularData, ring: &FusionRing) -> Result<Vec<i8>> {
    let r = md.rank();
    let s = md.s();
    let nn = s.conductor();
    let u: Vec<CycNum> = (0..r).map(|i| s.get(i, 0) * &(&md.t[i] * &md.t[i])).collect();
    let v: Vec<CycNum> = (0..r).map(|i| s.get(i, 0) * &(&md.t[i] * &md.t[i]).conj()).collect();
    let mut acc = vec![CycNum::zero(nn); r];
    for a in 0..r {
        for b in 0..r {
            let prod = ring.product(a, b);
            if prod.is_empty() {
                continue;
            }
            let w = &u[a] * &v[b];
            for (k, m) in prod {
                acc[k] = &acc[k] + &w.scale_int(m as i64);
            }
        }
    }
    acc.iter()
        .enumerate()
        .map(|(k, x)| {
            let val = x.as_rational();
            match val {
                Some(q) if q.is_zero() => Ok(0),
                Some(q) if q.is_one() => Ok(1),
                Some(q) if q == -BigRational::one() => Ok(-1),
                _ => Err(Error::ModularityViolation(format!(
                    "Frobenius–Schur indicator of {} is {x}, not in {{-1, 0, 1}}",
                    md.labels[k]
                ))),
            }
        })
        .collect()
}

/// Frobenius–Schur indicator of one label.
pub fn bantay_fs(md: &ModularData, label: &Label) -> Result<i8> {
    let idx = md.label_index(label).ok_or_else(|| Error::invalid(format!("unknown label {label}")))?;
    let ring = verlinde_fusion(md)?;
    Ok(bantay_indicators(md, &ring)?[idx])
}
