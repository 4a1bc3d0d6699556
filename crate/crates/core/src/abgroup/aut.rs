//! Automorphisms of finite abelian groups.

use super::{Elem, FinAbGroup};
use crate::error::{Error, Result};
use crate::Limits;

/// Automorphism given by the images of the standard generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Automorphism {
    pub images: Vec<Elem>,
}

impl Automorphism {
    pub fn identity(g: &FinAbGroup) -> Automorphism {
        Automorphism { images: (0..g.rank()).map(|i| g.generator(i)).collect() }
    }

    pub fn apply(&self, g: &FinAbGroup, x: &Elem) -> Elem {
        let mut acc = g.zero();
        for (xi, img) in x.0.iter().zip(&self.images) {
            acc = g.add(&acc, &g.scale(*xi as i64, img));
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, g: &FinAbGroup, other: &Automorphism) -> Automorphism {
        Automorphism { images: other.images.iter().map(|y| self.apply(g, y)).collect() }
    }

    pub fn inverse(&self, g: &FinAbGroup) -> Automorphism {
        let n = g.order() as usize;
        let mut inv = vec![g.zero(); n];
        for x in g.elements() {
            let y = self.apply(g, &x);
            let iy = g.index_of(&y);
            inv[iy] = x;
        }
        Automorphism { images: (0..g.rank()).map(|i| inv[g.index_of(&g.generator(i))].clone()).collect() }
    }

    /// Permutation of element indices induced by the automorphism.
    pub fn permutation(&self, g: &FinAbGroup) -> Vec<usize> {
        g.elements().map(|x| g.index_of(&self.apply(g, &x))).collect()
    }

    pub(crate) fn is_bijective(&self, g: &FinAbGroup) -> bool {
        let mut seen = vec![false; g.order() as usize];
        for x in g.elements() {
            let i = g.index_of(&self.apply(g, &x));
            if seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }
}

/// All automorphisms of `g`, by brute force over generator images of the
/// right order. Fails when the number of candidate tuples exceeds
/// `limits.max_aut_candidates`.
pub fn aut_group_enumerate(g: &FinAbGroup, limits: &Limits) -> Result<Vec<Automorphism>> {
    let elems: Vec<Elem> = g.elements().collect();
    let cands: Vec<Vec<Elem>> = g
        .factors()
        .iter()
        .map(|d| elems.iter().filter(|x| g.elem_order(x) == *d).cloned().collect())
        .collect();
    let total = cands.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
    match total {
        Some(t) if t <= limits.max_aut_candidates => {}
        _ => {
            return Err(Error::Capacity {
                what: format!("automorphism candidates of {g}"),
                bound: limits.max_aut_candidates,
            })
        }
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; cands.len()];
    loop {
        let a = Automorphism { images: idx.iter().zip(&cands).map(|(i, c)| c[*i].clone()).collect() };
        if a.is_bijective(g) {
            out.push(a);
        }
        // odometer, last position fastest
        let mut k = cands.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < cands[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn g(f: &[u64]) -> FinAbGroup {
        FinAbGroup::new(f.to_vec()).unwrap()
    }

    #[test]
    fn counts() {
        let l = Limits::default();
        assert_eq!(aut_group_enumerate(&g(&[3]), &l).unwrap().len(), 2);
        assert_eq!(aut_group_enumerate(&g(&[5]), &l).unwrap().len(), 4);
        assert_eq!(aut_group_enumerate(&g(&[3, 3]), &l).unwrap().len(), 48);
        assert_eq!(aut_group_enumerate(&FinAbGroup::trivial(), &l).unwrap().len(), 1);
    }

    #[test]
    fn bound_is_enforced() {
        let err = aut_group_enumerate(&g(&[3, 3, 3]), &Limits::default()).unwrap_err();
        assert_eq!(err.kind(), "capacity");
        assert!(err.to_string().contains("10000"));
    }

    #[test]
    fn closed_under_composition_and_inverse() {
        let h = g(&[3, 3]);
        let auts = aut_group_enumerate(&h, &Limits::default()).unwrap();
        let set: HashSet<Automorphism> = auts.iter().cloned().collect();
        assert!(set.contains(&Automorphism::identity(&h)));
        for a in &auts {
            assert!(set.contains(&a.inverse(&h)));
            assert_eq!(a.compose(&h, &a.inverse(&h)), Automorphism::identity(&h));
            for b in auts.iter().take(8) {
                assert!(set.contains(&a.compose(&h, b)));
            }
        }
    }
}
