//! Principal and dual principal graphs of the Longo–Rehren inclusion
//! attached to a Tambara–Yamagami category on an odd group.
//!
//! Vertices carry sector names as plain string tags; the graphs are built
//! directly from their combinatorial description.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::abgroup::{Elem, FinAbGroup};
use crate::error::{Error, Result};

/// Bipartite graph with even vertices, odd vertices and simple edges
/// `(even, odd)`. `star` is the distinguished even vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    pub even: Vec<String>,
    pub odd: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub star: usize,
}

impl BipartiteGraph {
    /// Checks indices and that no edge repeats.
    pub fn new(even: Vec<String>, odd: Vec<String>, mut edges: Vec<(usize, usize)>, star: usize) -> Result<BipartiteGraph> {
        if star >= even.len() {
            return Err(Error::invalid("distinguished vertex out of range"));
        }
        if edges.iter().any(|&(e, o)| e >= even.len() || o >= odd.len()) {
            return Err(Error::invalid("edge endpoint out of range"));
        }
        edges.sort_by_key(|&(e, o)| (o, e));
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Assertion("multi-edge in a principal graph".into()));
        }
        Ok(BipartiteGraph { even, odd, edges, star })
    }

    pub fn even_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.even.len()];
        for &(e, _) in &self.edges {
            d[e] += 1;
        }
        d
    }

    pub fn odd_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.odd.len()];
        for &(_, o) in &self.edges {
            d[o] += 1;
        }
        d
    }

    /// Neighbours of each odd vertex, in even-index order.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.odd.len()];
        for &(e, o) in &self.edges {
            adj[o].push(e);
        }
        adj
    }

    /// Breadth-first search from the distinguished vertex.
    pub fn is_connected(&self) -> bool {
        let ne = self.even.len();
        let total = ne + self.odd.len();
        let mut nbrs = vec![Vec::new(); total];
        for &(e, o) in &self.edges {
            nbrs[e].push(ne + o);
            nbrs[ne + o].push(e);
        }
        let mut seen = vec![false; total];
        let mut queue = VecDeque::from([self.star]);
        seen[self.star] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &nbrs[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().all(|s| *s)
    }
}

fn odd_elements(a: &FinAbGroup) -> Result<Vec<Elem>> {
    if a.order() % 2 == 0 {
        return Err(Error::unsupported(format!("principal graphs need odd order, got {a}")));
    }
    Ok(a.elements().collect())
}

/// Γ': even vertices (id,g), (α,g), (σ_h,g) for h ∈ A₊; odd vertices
/// ι(id,g). ι(id,g) meets (id,g), (α,g) and (σ_{|g−h|},h) for every h ≠ g.
pub fn lr_dual_principal_graph(a: &FinAbGroup) -> Result<BipartiteGraph> {
    let elems = odd_elements(a)?;
    let n = elems.len();
    let pos = a.positive_set()?;
    let plus = pos.elements();
    let mut even: Vec<String> = Vec::with_capacity(n * (2 + plus.len()));
    even.extend(elems.iter().map(|g| format!("(id,{g})")));
    even.extend(elems.iter().map(|g| format!("(alpha,{g})")));
    for h in plus {
        even.extend(elems.iter().map(|g| format!("(sigma_{h},{g})")));
    }
    let sigma = |h: &Elem, g: usize| {
        let k = plus.iter().position(|x| x == h).expect("folded element is positive");
        (2 + k) * n + g
    };
    let odd: Vec<String> = elems.iter().map(|g| format!("iota(id,{g})")).collect();
    let mut edges = Vec::with_capacity(n * (n + 1));
    for (gi, g) in elems.iter().enumerate() {
        edges.push((gi, gi));
        edges.push((n + gi, gi));
        for (hi, h) in elems.iter().enumerate() {
            if hi != gi {
                edges.push((sigma(&pos.fold(&a.sub(g, h)), hi), gi));
            }
        }
    }
    BipartiteGraph::new(even, odd, edges, 0)
}

/// Γ: even vertices (g,h) and (ρ,ρ); odd vertices ι(id,g). ι(id,g) meets
/// (h,h+g) for all h, and (ρ,ρ).
pub fn lr_principal_graph(a: &FinAbGroup) -> Result<BipartiteGraph> {
    let elems = odd_elements(a)?;
    let n = elems.len();
    let mut even: Vec<String> = Vec::with_capacity(n * n + 1);
    for g in &elems {
        even.extend(elems.iter().map(|h| format!("({g},{h})")));
    }
    even.push("(rho,rho)".into());
    let odd: Vec<String> = elems.iter().map(|g| format!("iota(id,{g})")).collect();
    let mut edges = Vec::with_capacity(n * (n + 1));
    for (gi, g) in elems.iter().enumerate() {
        for (hi, h) in elems.iter().enumerate() {
            edges.push((hi * n + a.index_of(&a.add(h, g)), gi));
        }
        edges.push((n * n, gi));
    }
    BipartiteGraph::new(even, odd, edges, 0)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text: one line of filled even vertices (the distinguished one
/// labelled `*`), one line of hollow odd vertices, then one line of edges
/// per odd vertex.
pub fn emit_dot(g: &BipartiteGraph, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", quote(name));
    let evens: Vec<String> = g
        .even
        .iter()
        .enumerate()
        .map(|(i, v)| if i == g.star { format!("{} [xlabel=\"*\"];", quote(v)) } else { format!("{};", quote(v)) })
        .collect();
    let _ = writeln!(out, "  node [shape=circle, style=filled, fillcolor=black]; {}", evens.join(" "));
    let odds: Vec<String> = g.odd.iter().map(|v| format!("{};", quote(v))).collect();
    let _ = writeln!(out, "  node [shape=circle, style=solid, fillcolor=white]; {}", odds.join(" "));
    for (o, nbrs) in g.adjacency().iter().enumerate() {
        let set: BTreeSet<usize> = nbrs.iter().copied().collect();
        let es: Vec<String> = set.iter().map(|&e| format!("{} -- {};", quote(&g.odd[o]), quote(&g.even[e]))).collect();
        let _ = writeln!(out, "  {}", es.join(" "));
    }
    out.push_str("}\n");
    out
}
