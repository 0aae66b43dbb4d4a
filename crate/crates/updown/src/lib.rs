//! Verification and synthesis toolkit for finite algebras whose operations
//! update a subset state by intersecting and unioning fixed sets.
//!
//! Three families share one story:
//!
//! * **actions** — one operation sort `S`; each `s` carries a pair
//!   `(s_down, s_up)` and acts by `c ↦ (c ∩ s_down) ∪ s_up`;
//! * **biactions** — two operation sorts; `S_down` elements intersect,
//!   `S_up` elements union;
//! * **set bands** — the update pairs multiplied among themselves,
//!   `(s,t) ↦ ((s_down ∩ t_down) ∪ t_up, (s_up ∩ t_down) ∪ t_up)`.
//!
//! For each family the crate provides axiom checkers with concrete
//! counterexample witnesses ([`axioms`]), a membership decision by
//! homomorphism separation into the two-point generator ([`homs`]), explicit
//! set-representation constructions certifying positive answers
//! ([`construct`]), word normal forms ([`words`]), Horn-clause validity over
//! the whole class by evaluation in the generator ([`generator`]), and
//! exhaustive census tooling that cross-checks the axiom systems against the
//! membership decision on every labeled table at small sizes ([`lab`]).

pub mod algebra;
pub mod atomset;
pub mod axioms;
pub mod construct;
pub mod error;
pub mod full;
pub mod generator;
pub mod homs;
pub mod json;
pub mod lab;
pub mod monoid;
pub mod rep;
pub mod word;
pub mod words;

pub use algebra::{FiniteAction, FiniteAlgebra, FiniteBiaction, FiniteSetBand, Kind, SortName};
pub use error::{Error, Result};
pub use rep::SetRepresentation;
pub use word::{Equation, HornClause, Letter, LetterSort, Word};

/// Configurable size guards.
///
/// Every potentially explosive search takes a `&Limits`; the defaults keep
/// all operations at desk scale.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Universe cap for the full-algebra constructors (2^n and 3^n blowup).
    pub max_universe: usize,
    /// Cap on the number of maps in a transformation monoid closure.
    pub max_monoid: usize,
    /// Cap on visited nodes in the homomorphism backtracking search.
    pub max_hom_nodes: u64,
    /// Cap on operation-sort variables in a Horn clause.
    pub max_horn_vars: usize,
    /// Cap on the number of tables an enumeration may stream.
    pub max_tables: u64,
    /// Cap on |S| for the sort-partition search.
    pub max_split: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_universe: 12,
            max_monoid: 1_000_000,
            max_hom_nodes: 10_000_000,
            max_horn_vars: 12,
            max_tables: 10_000_000,
            max_split: 16,
        }
    }
}
