use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{verlinde_fusion, Label, ModularData};
use crate::error::{Error, Result};
use crate::exactnum::{lcm_all, CycMatrix, CycNum, RootOfUnity};
use crate::Limits;

/// Nonnegative integer matrix B (parent × child) with `S_p B = B S_c` and
/// `T_p B = ζ B T_c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingMatrix {
    pub parent: Vec<Label>,
    pub child: Vec<Label>,
    pub matrix: Vec<Vec<u32>>,
    pub zeta: RootOfUnity,
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn negmod(a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        P - a
    }
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, P - 2)
}

fn big_mod(x: &BigInt) -> u64 {
    let m = x.mod_floor(&BigInt::from(P));
    m.to_u64().expect("reduced residue fits")
}

fn rat_mod(x: &BigRational) -> Result<u64> {
    let d = big_mod(x.denom());
    if d == 0 {
        return Err(Error::Arithmetic("denominator divisible by the working prime".into()));
    }
    Ok(mulmod(big_mod(x.numer()), invmod(d)))
}

/// Coefficients of each entry in the power basis, reduced mod P.
fn coeffs_mod(m: &CycMatrix) -> Result<Vec<Vec<(usize, u64)>>> {
    m.entries()
        .iter()
        .map(|x| x.coeffs().iter().map(|(j, c)| Ok((*j, rat_mod(c)?))).collect())
        .collect()
}

/// Row echelon form over F_P, with an affine column at the end.
struct Echelon {
    width: usize,
    /// pivot column → normalized row
    rows: Vec<(usize, Vec<u64>)>,
    inconsistent: bool,
}

impl Echelon {
    fn insert(&mut self, mut row: Vec<u64>) {
        for (pc, pr) in &self.rows {
            let f = row[*pc];
            if f != 0 {
                let nf = negmod(f);
                for (x, y) in row.iter_mut().zip(pr) {
                    if *y != 0 {
                        *x = addmod(*x, mulmod(nf, *y));
                    }
                }
            }
        }
        match (0..self.width).find(|&c| row[c] != 0) {
            Some(pc) => {
                let inv = invmod(row[pc]);
                for x in row.iter_mut() {
                    *x = mulmod(*x, inv);
                }
                // keep earlier rows reduced in this column
                for (_, pr) in self.rows.iter_mut() {
                    let f = pr[pc];
                    if f != 0 {
                        let nf = negmod(f);
                        for (x, y) in pr.iter_mut().zip(&row) {
                            if *y != 0 {
                                *x = addmod(*x, mulmod(nf, *y));
                            }
                        }
                    }
                }
                self.rows.push((pc, row));
            }
            None => {
                if row[self.width] != 0 {
                    self.inconsistent = true;
                }
            }
        }
    }
}

/// Searches for a branching matrix certifying the condensation of `bosons`
/// in `parent` with local modules `child`.
///
/// The bosons (invertible, twist 1, closed under fusion) fix the first
/// column of B. The intertwining equations are solved modulo a large prime;
/// every nonnegative integer solution within the dimension bounds
/// `B_{λμ} ≤ d_λ/d_μ` is enumerated from the free variables, and candidates
/// are certified exactly. Among verified solutions the lexicographically
/// greatest (row-major) is returned, so the identity wins when the child
/// equals the parent.
pub fn verify_condensation(
    parent: &ModularData,
    child: &ModularData,
    bosons: &[Label],
    limits: &Limits,
) -> Result<Option<BranchingMatrix>> {
    for m in [parent, child] {
        if m.rank() > limits.max_rank {
            return Err(Error::capacity(format!("condensation search at rank {}", m.rank()), limits.max_rank as u64));
        }
    }
    let (np, nc) = (parent.rank(), child.rank());
    let mut boson_idx = Vec::new();
    for b in bosons {
        let i = parent.label_index(b).ok_or_else(|| Error::invalid(format!("unknown boson label {b}")))?;
        if !boson_idx.contains(&i) {
            boson_idx.push(i);
        }
    }
    if !boson_idx.contains(&0) {
        return Err(Error::invalid("bosons must include the unit"));
    }
    let dp = parent.dims()?;
    let theta = parent.twists();
    for &i in &boson_idx {
        if !dp[i].is_one() {
            return Err(Error::invalid(format!("boson {} is not invertible", parent.labels[i])));
        }
        if !theta[i].is_one() {
            return Err(Error::invalid(format!("boson {} does not have trivial twist", parent.labels[i])));
        }
    }
    let ring = verlinde_fusion(parent)?;
    for &a in &boson_idx {
        for &b in &boson_idx {
            let prod = ring.product(a, b);
            if prod.len() != 1 || !boson_idx.contains(&prod[0].0) {
                return Err(Error::invalid("bosons are not closed under fusion"));
            }
        }
    }
    let dpf: Vec<f64> = dp.iter().map(|x| x.to_complex().re).collect();
    let dcf: Vec<f64> = child.dims()?.iter().map(|x| x.to_complex().re).collect();
    let bound = |l: usize, m: usize| (dpf[l] / dcf[m] + 1e-9).floor() as u64;
    let cond = lcm_all([parent.conductor(), child.conductor(), 3]);
    let sp = parent.s.promote(cond);
    let sc = child.s.promote(cond);
    let sp_mod = coeffs_mod(&sp)?;
    let sc_mod = coeffs_mod(&sc)?;
    let phi = crate::exactnum::Field::get(cond).degree();
    let tp: Vec<CycNum> = parent.t.iter().map(|x| x.promote(cond)).collect();
    let tc: Vec<CycNum> = child.t.iter().map(|x| x.promote(cond)).collect();
    let mut found: Vec<(Vec<Vec<u32>>, RootOfUnity)> = Vec::new();
    for k in 0..3 {
        let zeta = RootOfUnity::new(k, 3);
        let z = zeta.to_cyc_in(cond);
        let tcz: Vec<CycNum> = tc.iter().map(|x| x * &z).collect();
        let allowed = |l: usize, m: usize| tp[l] == tcz[m] && bound(l, m) >= 1;
        if boson_idx.iter().any(|&b| !allowed(b, 0)) {
            continue;
        }
        // unknowns: allowed entries outside the first column
        let mut var: HashMap<(usize, usize), usize> = HashMap::new();
        let mut vars = Vec::new();
        for l in 0..np {
            for m in 1..nc {
                if allowed(l, m) {
                    var.insert((l, m), vars.len());
                    vars.push((l, m));
                }
            }
        }
        let u = vars.len();
        let fixed = |l: usize| u64::from(boson_idx.contains(&l));
        let mut ech = Echelon { width: u, rows: Vec::new(), inconsistent: false };
        for l in 0..np {
            for m in 0..nc {
                // Σ_κ Sp[l,κ] B[κ,m] − Σ_ν B[l,ν] Sc[ν,m] = 0, one row per basis index
                let mut rows = vec![vec![0u64; u + 1]; phi];
                let mut touched = false;
                for kappa in 0..np {
                    let slot = if m == 0 { None } else { var.get(&(kappa, m)).copied() };
                    let cst = if m == 0 { fixed(kappa) } else { 0 };
                    if slot.is_none() && cst == 0 {
                        continue;
                    }
                    for &(t, c) in &sp_mod[l * np + kappa] {
                        touched = true;
                        match slot {
                            Some(x) => rows[t][x] = addmod(rows[t][x], c),
                            None => rows[t][u] = addmod(rows[t][u], c),
                        }
                    }
                }
                for nu in 0..nc {
                    let slot = if nu == 0 { None } else { var.get(&(l, nu)).copied() };
                    let cst = if nu == 0 { fixed(l) } else { 0 };
                    if slot.is_none() && cst == 0 {
                        continue;
                    }
                    for &(t, c) in &sc_mod[nu * nc + m] {
                        touched = true;
                        let nc_ = negmod(c);
                        match slot {
                            Some(x) => rows[t][x] = addmod(rows[t][x], nc_),
                            None => rows[t][u] = addmod(rows[t][u], nc_),
                        }
                    }
                }
                if !touched {
                    continue;
                }
                for row in rows {
                    if row.iter().any(|x| *x != 0) {
                        ech.insert(row);
                        if ech.inconsistent {
                            break;
                        }
                    }
                }
                if ech.inconsistent {
                    break;
                }
            }
            if ech.inconsistent {
                break;
            }
        }
        if ech.inconsistent {
            continue;
        }
        let pivots: HashMap<usize, &Vec<u64>> = ech.rows.iter().map(|(c, r)| (*c, r)).collect();
        let free: Vec<usize> = (0..u).filter(|c| !pivots.contains_key(c)).collect();
        let free_bounds: Vec<u64> = free.iter().map(|&f| bound(vars[f].0, vars[f].1)).collect();
        let mut space: u64 = 1;
        for b in &free_bounds {
            space = space.saturating_mul(b + 1);
        }
        if space > limits.max_search_nodes {
            return Err(Error::capacity("condensation candidate space", limits.max_search_nodes));
        }
        let mut assign = vec![0u64; free.len()];
        loop {
            let mut vals = vec![0u64; u];
            for (f, v) in free.iter().zip(&assign) {
                vals[*f] = *v;
            }
            let mut ok = true;
            for (pc, row) in &ech.rows {
                // x_pc = −const − Σ_free a_f x_f
                let mut v = negmod(row[u]);
                for (f, a) in free.iter().zip(&assign) {
                    if *a != 0 && row[*f] != 0 {
                        v = addmod(v, negmod(mulmod(row[*f], *a)));
                    }
                }
                let (l, m) = vars[*pc];
                if v > bound(l, m) {
                    ok = false;
                    break;
                }
                vals[*pc] = v;
            }
            if ok {
                let mut b = vec![vec![0u32; nc]; np];
                for &l in &boson_idx {
                    b[l][0] = 1;
                }
                for (x, &(l, m)) in vars.iter().enumerate() {
                    b[l][m] = vals[x] as u32;
                }
                found.push((b, zeta));
            }
            // odometer
            let mut i = 0;
            loop {
                if i == assign.len() {
                    break;
                }
                assign[i] += 1;
                if assign[i] <= free_bounds[i] {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
            if i == assign.len() {
                break;
            }
        }
    }
    found.sort_by(|a, b| b.0.cmp(&a.0));
    for (b, zeta) in found {
        if certify(parent, child, &b, zeta)? {
            return Ok(Some(BranchingMatrix {
                parent: parent.labels.clone(),
                child: child.labels.clone(),
                matrix: b,
                zeta,
            }));
        }
    }
    Ok(None)
}

/// Exact check of `S_p B = B S_c` and `T_p B = ζ B T_c`.
fn certify(parent: &ModularData, child: &ModularData, b: &[Vec<u32>], zeta: RootOfUnity) -> Result<bool> {
    let (np, nc) = (parent.rank(), child.rank());
    if b[0][0] != 1 {
        return Ok(false);
    }
    let bm = CycMatrix::from_fn(np, nc, |i, j| CycNum::from_int(1, b[i][j] as i64));
    let lhs = parent.s.mul(&bm);
    let rhs = bm.mul(&child.s);
    if lhs.entries().iter().zip(rhs.entries()).any(|(x, y)| x != y) {
        return Ok(false);
    }
    let z = zeta.to_cyc();
    for i in 0..np {
        for j in 0..nc {
            if b[i][j] != 0 && parent.t[i] != &child.t[j] * &z {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
