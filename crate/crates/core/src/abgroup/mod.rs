//! Finite abelian groups in invariant-factor form.
//!
//! Elements are coordinate vectors `x_i mod d_i`. They are enumerated in
//! lexicographic mixed-radix order (last coordinate fastest), and that order
//! defines the element index used by tables throughout the crate.

mod aut;
mod intmatrix;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use aut::{aut_group_enumerate, Automorphism};
pub use intmatrix::IntMatrix;

use crate::error::{Error, Result};
use crate::exactnum::RootOfUnity;

/// Finite abelian group ℤ_{d_1} × … × ℤ_{d_r} with `d_i | d_{i+1}`, `d_i >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    invariant_factors: Vec<u64>,
}

impl TryFrom<GroupJson> for FinAbGroup {
    type Error = Error;
    fn try_from(j: GroupJson) -> Result<FinAbGroup> {
        FinAbGroup::new(j.invariant_factors)
    }
}

impl From<FinAbGroup> for GroupJson {
    fn from(g: FinAbGroup) -> GroupJson {
        GroupJson { invariant_factors: g.factors }
    }
}

/// Group element as a reduced coordinate vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub Vec<u64>);

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Elem {
    type Err = Error;
    /// Parses `3` or `[1,2]`.
    fn from_str(s: &str) -> Result<Elem> {
        let s = s.trim();
        let inner = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(s);
        if inner.is_empty() {
            return Ok(Elem(Vec::new()));
        }
        inner
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad group element {s:?}"))))
            .collect::<Result<Vec<u64>>>()
            .map(Elem)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [x] => write!(f, "{x}"),
            xs => {
                write!(f, "[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Linear map from coordinates on some generating set into a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordMap {
    pub target: FinAbGroup,
    /// Image of each source generator.
    pub images: Vec<Elem>,
}

impl CoordMap {
    pub fn apply(&self, x: &[i64]) -> Elem {
        let mut acc = self.target.zero();
        for (xi, img) in x.iter().zip(&self.images) {
            acc = self.target.add(&acc, &self.target.scale(*xi, img));
        }
        acc
    }
}

impl FinAbGroup {
    /// Group with the given invariant factors; checks the divisibility chain.
    pub fn new(factors: Vec<u64>) -> Result<FinAbGroup> {
        if factors.iter().any(|d| *d < 2) {
            return Err(Error::InvalidArgument(format!(
                "invariant factors must be at least 2, got {factors:?}"
            )));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidArgument(format!(
                "invariant factors must form a divisibility chain, got {factors:?}"
            )));
        }
        Ok(FinAbGroup { factors })
    }

    pub fn trivial() -> FinAbGroup {
        FinAbGroup { factors: vec![] }
    }

    pub fn cyclic(n: u64) -> FinAbGroup {
        if n <= 1 {
            FinAbGroup::trivial()
        } else {
            FinAbGroup { factors: vec![n] }
        }
    }

    /// Normalizes ℤ_{n_1} × … × ℤ_{n_k} to invariant-factor form. The map
    /// sends the standard generators of the product to their images.
    pub fn from_cyclic_factors(orders: &[u64]) -> Result<(FinAbGroup, CoordMap)> {
        if orders.iter().any(|n| *n == 0) {
            return Err(Error::InvalidArgument("cyclic factor of order 0".into()));
        }
        let diag: Vec<BigInt> = orders.iter().map(|n| BigInt::from(*n)).collect();
        let (d, u, _) = IntMatrix::diagonal(&diag).smith_normal_form();
        let k = orders.len();
        let keep: Vec<usize> = (0..k).filter(|&i| d.get(i, i) != &BigInt::from(1)).collect();
        let factors: Vec<u64> = keep.iter().map(|&i| d.get(i, i).to_u64().unwrap()).collect();
        let target = FinAbGroup::new(factors)?;
        // x ↦ U·x, keeping the coordinates with d_i > 1
        let images = (0..k)
            .map(|col| {
                Elem(
                    keep.iter()
                        .zip(&target.factors)
                        .map(|(&row, &dj)| u.get(row, col).mod_floor(&BigInt::from(dj)).to_u64().unwrap())
                        .collect(),
                )
            })
            .collect();
        Ok((target.clone(), CoordMap { target, images }))
    }

    /// All groups of order `n` up to isomorphism, one per choice of a
    /// partition of each prime exponent.
    pub fn all_of_order(n: u64) -> Vec<FinAbGroup> {
        fn partitions(k: u32, max: u32) -> Vec<Vec<u32>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in (1..=k.min(max)).rev() {
                for mut rest in partitions(k - first, first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        let mut orders_list: Vec<Vec<u64>> = vec![vec![]];
        let mut m = n.max(1);
        let mut p = 2;
        while m > 1 {
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            if k > 0 {
                let mut next = Vec::new();
                for base in &orders_list {
                    for part in partitions(k, k) {
                        let mut o = base.clone();
                        o.extend(part.iter().map(|e| p.pow(*e)));
                        next.push(o);
                    }
                }
                orders_list = next;
            }
            p += 1;
        }
        orders_list
            .iter()
            .map(|o| FinAbGroup::from_cyclic_factors(o).expect("prime power orders").0)
            .collect()
    }

    /// Direct sum with maps embedding each summand.
    pub fn direct_sum(&self, o: &FinAbGroup) -> (FinAbGroup, CoordMap, CoordMap) {
        let orders: Vec<u64> = self.factors.iter().chain(&o.factors).copied().collect();
        let (g, m) = FinAbGroup::from_cyclic_factors(&orders).expect("valid factors");
        let r = self.rank();
        let left = CoordMap { target: g.clone(), images: m.images[..r].to_vec() };
        let right = CoordMap { target: g.clone(), images: m.images[r..].to_vec() };
        (g, left, right)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Exp(G), the largest invariant factor (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> Elem {
        Elem(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> Elem {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        Elem(v)
    }

    /// Reduces an arbitrary integer vector into an element.
    pub fn elem(&self, coords: &[i64]) -> Result<Elem> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidArgument(format!(
                "element {coords:?} has {} coordinates, group has rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(Elem(coords.iter().zip(&self.factors).map(|(x, d)| x.rem_euclid(*d as i64) as u64).collect()))
    }

    pub fn contains(&self, g: &Elem) -> bool {
        g.0.len() == self.rank() && g.0.iter().zip(&self.factors).all(|(x, d)| x < d)
    }

    pub fn index_of(&self, g: &Elem) -> usize {
        let mut idx = 0u64;
        for (x, d) in g.0.iter().zip(&self.factors) {
            idx = idx * d + x;
        }
        idx as usize
    }

    pub fn elem_at(&self, mut idx: usize) -> Elem {
        let mut v = vec![0; self.rank()];
        for (slot, d) in v.iter_mut().zip(&self.factors).rev() {
            *slot = (idx as u64) % d;
            idx /= *d as usize;
        }
        Elem(v)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order() as usize).map(move |i| self.elem_at(i))
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(a.0.iter().zip(&b.0).zip(&self.factors).map(|((x, y), d)| (x + y) % d).collect())
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        Elem(a.0.iter().zip(&self.factors).map(|(x, d)| (d - x) % d).collect())
    }

    pub fn scale(&self, n: i64, a: &Elem) -> Elem {
        Elem(
            a.0.iter()
                .zip(&self.factors)
                .map(|(x, d)| ((*x as i128 * n as i128).rem_euclid(*d as i128)) as u64)
                .collect(),
        )
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.0.iter().all(|x| *x == 0)
    }

    /// Order of an element.
    pub fn elem_order(&self, a: &Elem) -> u64 {
        a.0.iter().zip(&self.factors).fold(1u64, |acc, (x, d)| acc.lcm(&(d / x.gcd(d))))
    }

    /// Index table for addition, `table[i * n + j] = index(e_i + e_j)`.
    pub fn addition_table(&self) -> Vec<usize> {
        let elems: Vec<Elem> = self.elements().collect();
        let n = elems.len();
        let mut t = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                t[i * n + j] = self.index_of(&self.add(&elems[i], &elems[j]));
            }
        }
        t
    }

    /// Character pairing χ_h(g) = e^{2πi Σ h_i g_i / d_i}; it identifies Ĝ
    /// with G.
    pub fn pairing(&self, h: &Elem, g: &Elem) -> RootOfUnity {
        let e = self.exponent() as i64;
        let mut num = 0i64;
        for ((x, y), d) in h.0.iter().zip(&g.0).zip(&self.factors) {
            num = (num + (*x as i64 * *y as i64 % *d as i64) * (e / *d as i64)) % e;
        }
        RootOfUnity::new(num, e)
    }

    /// The character group Ĝ, identified with G through [`Self::pairing`].
    pub fn character_group(&self) -> FinAbGroup {
        self.clone()
    }

    /// The positive set G₊; needs |G| odd.
    pub fn positive_set(&self) -> Result<PositiveSet> {
        if self.order() % 2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "positive set needs a group of odd order, got order {}",
                self.order()
            )));
        }
        let elems = self
            .elements()
            .filter(|g| {
                let Some(i) = g.0.iter().position(|x| *x != 0) else { return false };
                g.0[i] <= (self.factors[i] - 1) / 2
            })
            .collect();
        Ok(PositiveSet { group: self.clone(), elems })
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Vec<usize> {
        let mut seen = vec![false; self.order() as usize];
        let mut stack = vec![self.zero()];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = self.add(&x, g);
                let iy = self.index_of(&y);
                if !seen[iy] {
                    seen[iy] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().enumerate().filter(|(_, s)| **s).map(|(i, _)| i).collect()
    }

    /// All subgroups as sorted index lists, ordered by size then contents.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        use std::collections::BTreeSet;
        let elems: Vec<Elem> = self.elements().collect();
        let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        let trivial = vec![0usize];
        found.insert((1, trivial.clone()));
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            let gens: Vec<Elem> = h.iter().map(|&i| elems[i].clone()).collect();
            for (i, g) in elems.iter().enumerate() {
                if h.binary_search(&i).is_ok() {
                    continue;
                }
                let mut gs = gens.clone();
                gs.push(g.clone());
                let k = self.subgroup_generated(&gs);
                if found.insert((k.len(), k.clone())) {
                    frontier.push(k);
                }
            }
        }
        found.into_iter().map(|(_, s)| s).collect()
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl std::str::FromStr for FinAbGroup {
    type Err = Error;
    /// Parses `"15"`, `"3,3"`, `"3x9"` or `"Z3xZ3"` as a product of cyclic
    /// groups; the result is normalized to invariant factors.
    fn from_str(s: &str) -> Result<FinAbGroup> {
        let s = s.trim();
        if s.is_empty() || s == "1" || s.eq_ignore_ascii_case("z1") {
            return Ok(FinAbGroup::trivial());
        }
        let orders = s
            .split(|c| c == ',' || c == 'x' || c == '*')
            .map(|p| {
                let p = p.trim().trim_start_matches(['Z', 'z']);
                p.parse::<u64>().map_err(|_| Error::Parse(format!("bad group description {s:?}")))
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(FinAbGroup::from_cyclic_factors(&orders)?.0)
    }
}

/// The split G = G₊ ⊔ {0} ⊔ (−G₊) for a group of odd order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveSet {
    group: FinAbGroup,
    elems: Vec<Elem>,
}

impl PositiveSet {
    /// Elements of G₊ in group order.
    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, g: &Elem) -> bool {
        self.elems.binary_search_by(|x| self.group.index_of(x).cmp(&self.group.index_of(g))).is_ok()
    }

    /// |g|: the representative of {g, −g} in G₊ ∪ {0}.
    pub fn fold(&self, g: &Elem) -> Elem {
        if self.group.is_zero(g) || self.contains(g) {
            g.clone()
        } else {
            self.group.neg(g)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> FinAbGroup {
        FinAbGroup::new(f.to_vec()).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(FinAbGroup::new(vec![2, 3]).is_err());
        assert!(FinAbGroup::new(vec![1]).is_err());
        assert_eq!(g(&[3, 9]).order(), 27);
        assert_eq!(g(&[3, 9]).exponent(), 9);
        assert_eq!(FinAbGroup::trivial().exponent(), 1);
    }

    #[test]
    fn normalization() {
        let (h, m) = FinAbGroup::from_cyclic_factors(&[3, 5]).unwrap();
        assert_eq!(h, g(&[15]));
        assert_eq!(h.elem_order(&m.images[0]), 3);
        assert_eq!(h.elem_order(&m.images[1]), 5);
        assert_eq!("3x3".parse::<FinAbGroup>().unwrap(), g(&[3, 3]));
        assert_eq!("Z9".parse::<FinAbGroup>().unwrap(), g(&[9]));
        assert_eq!("1".parse::<FinAbGroup>().unwrap(), FinAbGroup::trivial());
        assert!("q".parse::<FinAbGroup>().is_err());
    }

    #[test]
    fn indexing_round_trip() {
        let h = g(&[3, 9]);
        let all: Vec<Elem> = h.elements().collect();
        assert_eq!(all.len(), 27);
        assert_eq!(all[1], Elem(vec![0, 1]));
        for (i, e) in all.iter().enumerate() {
            assert_eq!(h.index_of(e), i);
        }
    }

    #[test]
    fn positive_sets() {
        assert_eq!(g(&[3]).positive_set().unwrap().elements(), &[Elem(vec![1])]);
        assert_eq!(g(&[5]).positive_set().unwrap().elements(), &[Elem(vec![1]), Elem(vec![2])]);
        let p = g(&[3, 3]).positive_set().unwrap();
        assert_eq!(p.len(), 4);
        assert!(g(&[4]).positive_set().is_err());
        assert_eq!(p.fold(&Elem(vec![2, 0])), Elem(vec![1, 0]));
    }

    #[test]
    fn pairing_examples() {
        let z3 = g(&[3]);
        assert_eq!(z3.pairing(&Elem(vec![1]), &Elem(vec![1])), RootOfUnity::new(1, 3));
        let z15 = g(&[15]);
        for h in z15.elements().skip(1) {
            assert!(z15.elements().any(|x| z15.pairing(&h, &x) != RootOfUnity::ONE));
        }
        assert_eq!(FinAbGroup::trivial().character_group(), FinAbGroup::trivial());
    }

    #[test]
    fn subgroup_counts() {
        // ℤ3×ℤ3 has 1 + 4 + 1 subgroups
        assert_eq!(g(&[3, 3]).subgroups().len(), 6);
        assert_eq!(g(&[9]).subgroups().len(), 3);
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&g(&[3, 3])).unwrap();
        assert_eq!(s, r#"{"invariant_factors":[3,3]}"#);
        assert!(serde_json::from_str::<FinAbGroup>(r#"{"invariant_factors":[2,3]}"#).is_err());
    }

    #[test]
    fn groups_of_order() {
        let count = |n| FinAbGroup::all_of_order(n).len();
        assert_eq!(count(1), 1);
        assert_eq!(count(8), 3);
        assert_eq!(count(27), 3);
        assert_eq!(count(45), 2);
        assert_eq!(count(72), 6);
        let g16 = FinAbGroup::all_of_order(16);
        assert_eq!(g16.len(), 5);
        assert!(g16.iter().all(|g| g.order() == 16));
        assert!(g16.contains(&g(&[2, 8])));
    }
}
