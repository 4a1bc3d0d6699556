use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ModularData;
use crate::error::{Error, Result};
use crate::exactnum::{lcm_all, CycKey, CycNum, RootOfUnity};
use crate::Limits;

/// Witness that two modular data agree: `S'_{σi,σj} = S_{ij}` and
/// `T'_{σi} = ζ·T_i` with ζ a cube root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MDEquivalence {
    /// `perm[i]` is the index in the second datum of label i of the first.
    pub perm: Vec<usize>,
    pub zeta: RootOfUnity,
}

/// Interns exact values so comparisons become integer comparisons.
struct Interner {
    ids: HashMap<CycKey, u32>,
}

impl Interner {
    fn id(&mut self, x: &CycNum) -> u32 {
        let next = self.ids.len() as u32;
        *self.ids.entry(x.key()).or_insert(next)
    }

    fn lookup(&self, x: &CycNum) -> Option<u32> {
        self.ids.get(&x.key()).copied()
    }
}

struct Search<'a> {
    n: usize,
    sa: &'a [u32],
    sb: &'a [u32],
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    /// Depth-first search with forward checking, always branching on the
    /// label with the fewest remaining candidates.
    fn go(&mut self, perm: &mut Vec<usize>, domains: Vec<Vec<usize>>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::capacity("modular data equivalence search nodes", self.limit));
        }
        let n = self.n;
        let next = (0..n).filter(|&i| perm[i] == usize::MAX).min_by_key(|&i| domains[i].len());
        let Some(i) = next else { return Ok(true) };
        let used: Vec<bool> = {
            let mut u = vec![false; n];
            for &p in perm.iter().filter(|p| **p != usize::MAX) {
                u[p] = true;
            }
            u
        };
        for &c in &domains[i] {
            if used[c] {
                continue;
            }
            perm[i] = c;
            let mut nd = domains.clone();
            nd[i] = vec![c];
            let mut dead = false;
            for u in 0..n {
                if perm[u] != usize::MAX {
                    continue;
                }
                nd[u].retain(|&x| x != c && self.sb[x * n + c] == self.sa[u * n + i]);
                if nd[u].is_empty() {
                    dead = true;
                    break;
                }
            }
            if !dead && self.go(perm, nd)? {
                return Ok(true);
            }
            perm[i] = usize::MAX;
        }
        Ok(false)
    }
}

/// Searches for a unit-fixing label bijection and a cube root of unity ζ
/// relating the two data. The search is exhaustive, so `None` means the
/// data are inequivalent.
pub fn md_equivalent(a: &ModularData, b: &ModularData, limits: &Limits) -> Result<Option<MDEquivalence>> {
    let n = a.rank();
    for m in [a, b] {
        if m.rank() > limits.max_rank {
            return Err(Error::capacity(format!("equivalence search at rank {}", m.rank()), limits.max_rank as u64));
        }
    }
    if b.rank() != n {
        return Ok(None);
    }
    let cond = lcm_all([a.conductor(), b.conductor(), 3]);
    let mut int = Interner { ids: HashMap::new() };
    let sa: Vec<u32> = a.s.promote(cond).entries().iter().map(|x| int.id(x)).collect();
    let sb: Vec<u32> = b.s.promote(cond).entries().iter().map(|x| int.id(x)).collect();
    let tb: Vec<u32> = b.t.iter().map(|x| int.id(&x.promote(cond))).collect();
    let row_sig = |s: &[u32], i: usize| {
        let mut r = s[i * n..(i + 1) * n].to_vec();
        r.sort_unstable();
        r
    };
    let sig_a: Vec<Vec<u32>> = (0..n).map(|i| row_sig(&sa, i)).collect();
    let sig_b: Vec<Vec<u32>> = (0..n).map(|i| row_sig(&sb, i)).collect();
    for k in 0..3 {
        let zeta = RootOfUnity::new(k, 3);
        let z = zeta.to_cyc_in(cond);
        let ta: Vec<Option<u32>> = a.t.iter().map(|x| int.lookup(&(&x.promote(cond) * &z))).collect();
        if ta[0] != Some(tb[0]) {
            continue;
        }
        let domains: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                if i == 0 {
                    return vec![0];
                }
                (1..n)
                    .filter(|&j| {
                        ta[i] == Some(tb[j])
                            && sa[i * n + i] == sb[j * n + j]
                            && sa[i * n] == sb[j * n]
                            && sig_a[i] == sig_b[j]
                    })
                    .collect()
            })
            .collect();
        if domains.iter().any(|d| d.is_empty()) {
            continue;
        }
        // consistency with the unit row is already part of the domains
        let mut perm = vec![usize::MAX; n];
        perm[0] = 0;
        let mut search = Search { n, sa: &sa, sb: &sb, nodes: 0, limit: limits.max_search_nodes };
        let mut doms = domains;
        for u in 1..n {
            doms[u].retain(|&x| sb[x * n] == sa[u * n]);
        }
        if search.go(&mut perm, doms)? {
            let ok = (0..n).all(|i| ta[i] == Some(tb[perm[i]]) && (0..n).all(|j| sa[i * n + j] == sb[perm[i] * n + perm[j]]));
            if !ok {
                return Err(Error::Assertion("equivalence witness failed verification".into()));
            }
            return Ok(Some(MDEquivalence { perm, zeta }));
        }
    }
    Ok(None)
}
