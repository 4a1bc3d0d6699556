//! Exact computations for Tambara–Yamagami fusion categories, their Drinfel'd
//! centers and generalized metaplectic modular categories.
//!
//! Everything that decides a yes/no question is done in exact arithmetic over
//! cyclotomic fields ([`exactnum::CycNum`]); floating point only appears in
//! advisory views and as a source of candidates that are then certified
//! exactly.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactnum`] – cyclotomic numbers, roots of unity and matrices over them.
//! * [`abgroup`] – finite abelian groups, automorphisms, Smith/Hermite forms.
//! * [`quadform`] – quadratic forms, bicharacters and metric groups.
//! * [`lattice`] – even lattices, discriminant forms and gluing.
//! * [`moddata`] – modular data: construction, axioms, Verlinde, equivalence,
//!   condensation.
//! * [`fusion`] – fusion rings and hypergroups given by rule tables.
//! * [`graphs`] – principal graphs of Longo–Rehren subfactors.
//!
//! With the default `parallel` feature, the heavy inner loops (matrix
//! products, lattice enumeration, searches) run on rayon; without it the same
//! code runs sequentially.

pub mod abgroup;
pub mod error;
pub mod exactnum;
pub mod fusion;
pub mod graphs;
pub mod lattice;
pub mod moddata;
pub(crate) mod par;
pub mod quadform;

pub use error::{Error, Result};

/// Search and enumeration bounds shared by the brute-force routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of generator-image tuples examined when enumerating
    /// automorphisms.
    pub max_aut_candidates: u64,
    /// Maximum number of nodes visited by backtracking searches.
    pub max_search_nodes: u64,
    /// Maximum rank accepted by modular-data equivalence and condensation
    /// searches.
    pub max_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_aut_candidates: 10_000,
            max_search_nodes: 50_000_000,
            max_rank: 40,
        }
    }
}
