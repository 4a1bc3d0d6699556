//! Positive definite even lattices given by Gram matrices.

mod roots;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use roots::count_roots;

use crate::abgroup::{Automorphism, Elem, FinAbGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::exactnum::RootOfUnity;
use crate::quadform::{metric_equiv, MetricGroup, QuadForm};
use crate::Limits;

/// Positive definite even lattice.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "LatticeJson", into = "LatticeJson")]
pub struct EvenLattice {
    gram: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    gram: IntMatrix,
}

impl TryFrom<LatticeJson> for EvenLattice {
    type Error = Error;
    fn try_from(j: LatticeJson) -> Result<EvenLattice> {
        EvenLattice::new(j.gram)
    }
}

impl From<EvenLattice> for LatticeJson {
    fn from(l: EvenLattice) -> LatticeJson {
        LatticeJson { gram: l.gram }
    }
}

impl EvenLattice {
    /// Checks symmetry, even diagonal and positive definiteness.
    pub fn new(gram: IntMatrix) -> Result<EvenLattice> {
        if !gram.is_symmetric() {
            return Err(Error::InvalidArgument("Gram matrix is not symmetric".into()));
        }
        let n = gram.rows();
        for i in 0..n {
            if gram.get(i, i).is_odd() {
                return Err(Error::InvalidArgument(format!("diagonal entry {i} is odd, lattice is not even")));
            }
        }
        for k in 1..=n {
            let minor = IntMatrix::from_rows((0..k).map(|i| gram.row(i)[..k].to_vec()).collect())?;
            if !minor.det().is_positive() {
                return Err(Error::InvalidArgument("Gram matrix is not positive definite".into()));
            }
        }
        Ok(EvenLattice { gram })
    }

    /// The rank-0 lattice.
    pub fn zero() -> EvenLattice {
        EvenLattice { gram: IntMatrix::zeros(0, 0) }
    }

    /// Root lattice A_n (1 ≤ n ≤ 24).
    pub fn a(n: usize) -> Result<EvenLattice> {
        if !(1..=24).contains(&n) {
            return Err(Error::InvalidArgument(format!("A_n is built in for 1 <= n <= 24, got {n}")));
        }
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect::<Vec<Vec<i64>>>();
        EvenLattice::new(IntMatrix::from_i64(&rows)?)
    }

    /// Root lattice E_n for n ∈ {6, 7, 8} (Bourbaki numbering).
    pub fn e(n: usize) -> Result<EvenLattice> {
        if !(6..=8).contains(&n) {
            return Err(Error::InvalidArgument(format!("E_n is built in for n = 6, 7, 8, got {n}")));
        }
        // nodes 1..n: chain 1-3-4-5-…-n, with node 2 attached to node 4
        let mut edges = vec![(1, 3), (2, 4)];
        edges.extend((3..n).map(|k| (k, k + 1)));
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in edges {
            rows[a - 1][b - 1] = -1;
            rows[b - 1][a - 1] = -1;
        }
        EvenLattice::new(IntMatrix::from_i64(&rows)?)
    }

    /// Looks up "A1".."A24", "E6", "E7", "E8", or orthogonal sums written
    /// with `+`, e.g. "A2+E6".
    pub fn named(name: &str) -> Result<EvenLattice> {
        let mut acc = EvenLattice::zero();
        for part in name.split('+') {
            let part = part.trim();
            let (kind, num) = part.split_at(part.len().min(1));
            let n: usize = num.parse().map_err(|_| Error::InvalidArgument(format!("unknown lattice {part:?}")))?;
            let l = match kind {
                "A" | "a" => EvenLattice::a(n)?,
                "E" | "e" => EvenLattice::e(n)?,
                _ => return Err(Error::InvalidArgument(format!("unknown lattice {part:?}"))),
            };
            acc = acc.orthogonal_sum(&l);
        }
        Ok(acc)
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    /// Block-diagonal Gram matrix.
    pub fn orthogonal_sum(&self, o: &EvenLattice) -> EvenLattice {
        let (n, m) = (self.rank(), o.rank());
        let mut g = IntMatrix::zeros(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, self.gram.get(i, j).clone());
            }
        }
        for i in 0..m {
            for j in 0..m {
                g.set(n + i, n + j, o.gram.get(i, j).clone());
            }
        }
        EvenLattice { gram: g }
    }

    /// ⟨x, y⟩ for rational coordinate vectors in the lattice basis.
    pub fn inner(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let n = self.rank();
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &x[i] * BigRational::from_integer(self.gram.get(i, j).clone()) * &y[j];
            }
        }
        acc
    }
}

/// The discriminant form (L*/L, q_L) with `q_L(x) = exp(πi⟨x,x⟩)`.
#[derive(Clone, Debug, Serialize)]
pub struct DiscriminantForm {
    pub metric: MetricGroup,
    /// For each element (by index), a lift in L* as rational coordinates in
    /// the basis of L.
    #[serde(skip)]
    lifts: Vec<Vec<BigRational>>,
}

impl DiscriminantForm {
    pub fn group(&self) -> &FinAbGroup {
        self.metric.group()
    }

    pub fn qform(&self) -> &QuadForm {
        &self.metric.quad
    }

    /// A lift of `g` to L*, in lattice-basis coordinates.
    pub fn lift(&self, g: &Elem) -> &[BigRational] {
        &self.lifts[self.group().index_of(g)]
    }
}

/// Computes L*/L by Smith normal form and evaluates q_L on every coset.
pub fn discriminant_form(l: &EvenLattice) -> Result<DiscriminantForm> {
    let n = l.rank();
    let (d, u, _) = l.gram.smith_normal_form();
    if (0..n).any(|i| d.get(i, i).is_zero()) {
        return Err(Error::InvalidArgument("singular Gram matrix".into()));
    }
    let keep: Vec<usize> = (0..n).filter(|&i| !d.get(i, i).is_one()).collect();
    let factors: Vec<u64> = keep
        .iter()
        .map(|&i| d.get(i, i).to_u64().ok_or_else(|| Error::Unsupported("discriminant group too large".into())))
        .collect::<Result<_>>()?;
    let group = FinAbGroup::new(factors)?;
    // element y ↦ c = U⁻¹ y ∈ ℤⁿ/Gℤⁿ, dual vector x = G⁻¹ c
    let uinv = u.inverse_rational()?;
    let ginv = l.gram.inverse_rational()?;
    let gen_c: Vec<Vec<BigRational>> = keep.iter().map(|&k| (0..n).map(|i| uinv[i][k].clone()).collect()).collect();
    let mut lifts = Vec::with_capacity(group.order() as usize);
    let mut values = Vec::with_capacity(group.order() as usize);
    for y in group.elements() {
        let mut c = vec![BigRational::zero(); n];
        for (yj, gc) in y.0.iter().zip(&gen_c) {
            for i in 0..n {
                c[i] += BigRational::from_integer(BigInt::from(*yj)) * &gc[i];
            }
        }
        let x: Vec<BigRational> =
            (0..n).map(|i| (0..n).fold(BigRational::zero(), |acc, j| acc + &ginv[i][j] * &c[j])).collect();
        let norm = l.inner(&x, &x);
        values.push(root_from_half_norm(&norm)?);
        lifts.push(x);
    }
    // independence of the lift: shifting a generator lift by a basis vector
    // of L changes the norm by an even integer
    for gi in 0..group.rank() {
        let lift = &lifts[group.index_of(&group.generator(gi))];
        for k in 0..n {
            let mut shifted = lift.clone();
            shifted[k] += BigRational::one();
            let diff = l.inner(&shifted, &shifted) - l.inner(lift, lift);
            if !diff.is_integer() || diff.to_integer().is_odd() {
                return Err(Error::Assertion("discriminant form depends on the lift".into()));
            }
        }
    }
    let metric = MetricGroup {
        quad: QuadForm::new(group.clone(), values)?,
        bichar: None,
    };
    let metric = if group.order() % 2 == 1 { MetricGroup::from_quad(metric.quad)? } else { metric };
    Ok(DiscriminantForm { metric, lifts })
}

/// e^{πi·norm} as a root of unity.
fn root_from_half_norm(norm: &BigRational) -> Result<RootOfUnity> {
    let half = norm / BigRational::from_integer(2.into());
    let num = half.numer().mod_floor(half.denom());
    let (n, d) = (num.to_i64(), half.denom().to_i64());
    match (n, d) {
        (Some(n), Some(d)) => Ok(RootOfUnity::new(n, d)),
        _ => Err(Error::Unsupported("discriminant form values too large".into())),
    }
}

/// The overlattice generated by L and lifts of the isotropic subgroup
/// generated by `h`.
pub fn glue(l: &EvenLattice, h: &[Elem]) -> Result<EvenLattice> {
    let disc = discriminant_form(l)?;
    let g = disc.group();
    for x in h {
        if !g.contains(x) {
            return Err(Error::InvalidArgument(format!("{x} is not an element of {g}")));
        }
    }
    let sub = g.subgroup_generated(h);
    for &i in &sub {
        let x = g.elem_at(i);
        if disc.qform().value(&x) != RootOfUnity::ONE {
            return Err(Error::InvalidArgument(format!("subgroup is not isotropic: q({x}) = {}", disc.qform().value(&x))));
        }
    }
    if sub.len() == 1 {
        return Ok(l.clone());
    }
    let n = l.rank();
    let lifts: Vec<&[BigRational]> = sub.iter().map(|&i| disc.lifts[i].as_slice()).collect();
    let den = lifts.iter().flat_map(|x| x.iter()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let dq = BigRational::from_integer(den.clone());
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { den.clone() } else { BigInt::zero() }).collect())
        .collect();
    for x in &lifts {
        rows.push(x.iter().map(|c| (c * &dq).to_integer()).collect());
    }
    let basis = IntMatrix::from_rows(rows)?.hermite_rows();
    let scaled = basis.mul(&l.gram).mul(&basis.transpose());
    let d2 = &den * &den;
    let mut gram = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (q, r) = scaled.get(i, j).div_rem(&d2);
            if !r.is_zero() {
                return Err(Error::Assertion("glued Gram matrix is not integral".into()));
            }
            gram.set(i, j, q);
        }
    }
    let out = EvenLattice::new(gram)?;
    let expect = l.det() / BigInt::from(sub.len() * sub.len());
    if out.det() != expect {
        return Err(Error::Assertion(format!("glued determinant {} differs from {expect}", out.det())));
    }
    Ok(out)
}

/// Checks whether `lbar` is a mirror of `l`, i.e. (G_L, q_L) ≅ (G_L̄, q̄_L̄).
/// On success the graph of the isometry is verified to be isotropic in
/// L ⟂ L̄ by computing norms of lifts.
pub fn mirror_check(l: &EvenLattice, lbar: &EvenLattice, limits: &Limits) -> Result<Option<Automorphism>> {
    let d1 = discriminant_form(l)?;
    let d2 = discriminant_form(lbar)?;
    let conj = MetricGroup { quad: d2.qform().conj(), bichar: None };
    let m1 = MetricGroup { quad: d1.qform().clone(), bichar: None };
    let Some(phi) = metric_equiv(&m1, &conj, limits)? else {
        return Ok(None);
    };
    let g = d1.group();
    for x in g.elements() {
        let y = phi.apply(g, &x);
        let norm = l.inner(d1.lift(&x), d1.lift(&x)) + lbar.inner(d2.lift(&y), d2.lift(&y));
        if !norm.is_integer() || norm.to_integer().is_odd() {
            return Err(Error::Assertion(format!("diagonal element ({x}, {y}) is not isotropic")));
        }
    }
    Ok(Some(phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::gauss_central_charge;

    fn r(n: i64, d: i64) -> RootOfUnity {
        RootOfUnity::new(n, d)
    }

    #[test]
    fn builtin_determinants() {
        for n in 1..=24 {
            let l = EvenLattice::a(n).unwrap();
            assert_eq!(l.det(), BigInt::from(n + 1));
            assert_eq!(discriminant_form(&l).unwrap().group().order(), n as u64 + 1);
        }
        for (n, d) in [(6, 3), (7, 2), (8, 1)] {
            assert_eq!(EvenLattice::e(n).unwrap().det(), BigInt::from(d));
        }
    }

    #[test]
    fn table_values() {
        // q_{A_n}(x) = exp(πi x² n/(n+1)) on ℤ_{n+1}
        for n in 1..=12i64 {
            let d = discriminant_form(&EvenLattice::a(n as usize).unwrap()).unwrap();
            let q = d.qform();
            let gen = q.group().generator(0);
            let mut found = false;
            // any generator of the cyclic group may be the image of the table's x = 1
            for u in 1..=n {
                if (u as u64).gcd(&(n as u64 + 1)) == 1 {
                    let x = q.group().scale(u, &gen);
                    found |= q.value(&x) == r(n, 2 * (n + 1));
                }
            }
            assert!(found, "A{n}");
        }
        let e6 = discriminant_form(&EvenLattice::e(6).unwrap()).unwrap();
        assert_eq!(e6.qform().values(), &[RootOfUnity::ONE, r(2, 3), r(2, 3)]);
        let e7 = discriminant_form(&EvenLattice::e(7).unwrap()).unwrap();
        assert_eq!(e7.qform().values(), &[RootOfUnity::ONE, r(3, 4)]);
        assert!(discriminant_form(&EvenLattice::e(8).unwrap()).unwrap().group().is_trivial());
    }

    #[test]
    fn signature_law() {
        let mut names: Vec<String> = (1..=24).map(|n| format!("A{n}")).collect();
        names.extend(["E6", "E7", "E8"].map(String::from));
        for name in names {
            let l = EvenLattice::named(&name).unwrap();
            let c = gauss_central_charge(discriminant_form(&l).unwrap().qform()).unwrap();
            assert_eq!(*c.numer(), (l.rank() % 8) as i64, "{name}");
        }
    }

    #[test]
    fn validation() {
        assert!(EvenLattice::new(IntMatrix::from_i64(&[vec![1]]).unwrap()).is_err());
        assert!(EvenLattice::new(IntMatrix::from_i64(&[vec![2, 3], vec![3, 2]]).unwrap()).is_err());
        assert!(EvenLattice::new(IntMatrix::from_i64(&[vec![2, 1], vec![0, 2]]).unwrap()).is_err());
        assert!(EvenLattice::named("F4").is_err());
        assert!(EvenLattice::a(25).is_err());
    }

    #[test]
    fn orthogonal_sums() {
        let a2 = EvenLattice::a(2).unwrap();
        assert_eq!(a2.orthogonal_sum(&EvenLattice::zero()), a2);
        assert_eq!(a2.orthogonal_sum(&a2).det(), BigInt::from(9));
        let s = EvenLattice::named("A2+E6").unwrap();
        let d = discriminant_form(&s).unwrap();
        let direct = discriminant_form(&a2).unwrap().qform().direct_sum(discriminant_form(&EvenLattice::e(6).unwrap()).unwrap().qform());
        let m1 = MetricGroup { quad: d.qform().clone(), bichar: None };
        let m2 = MetricGroup { quad: direct, bichar: None };
        assert!(metric_equiv(&m1, &m2, &Limits::default()).unwrap().is_some());
    }

    #[test]
    fn gluing() {
        let a2e6 = EvenLattice::named("A2+E6").unwrap();
        let d = discriminant_form(&a2e6).unwrap();
        let iso = crate::quadform::isotropic_subgroups(&d.metric);
        let diag = iso.iter().find(|h| h.len() == 3).expect("isotropic ℤ3");
        let e8 = glue(&a2e6, &diag[1..2]).unwrap();
        assert_eq!((e8.rank(), e8.det()), (8, BigInt::one()));
        let a1e7 = EvenLattice::named("A1+E7").unwrap();
        let d = discriminant_form(&a1e7).unwrap();
        let h: Vec<Elem> = d.group().elements().filter(|x| d.qform().value(x) == RootOfUnity::ONE).skip(1).collect();
        let glued = glue(&a1e7, &h).unwrap();
        assert_eq!((glued.rank(), glued.det()), (8, BigInt::one()));
        assert_eq!(glue(&a2e6, &[]).unwrap(), a2e6);
        let bad = glue(&EvenLattice::a(2).unwrap(), &[Elem(vec![1])]).unwrap_err();
        assert_eq!(bad.kind(), "invalid_argument");
    }

    #[test]
    fn mirrors() {
        let l = Limits::default();
        let m = |a: &str, b: &str| mirror_check(&EvenLattice::named(a).unwrap(), &EvenLattice::named(b).unwrap(), &l).unwrap();
        assert!(m("A1", "E7").is_some());
        assert!(m("A2", "E6").is_some());
        assert!(m("A2", "A2").is_none());
    }
}
