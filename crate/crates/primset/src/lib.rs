//! A library and workbench for computation in free monoids: code tests and
//! free hulls, combinatorial and free rank, primitive sets and their roots,
//! automaton-based intersection of finitely generated submonoids, bi-roots of
//! single words, and primitivity under involutive (anti)morphisms — together
//! with an exhaustive small-case sweep harness that turns the structural
//! theorems into executable property suites and scans the open conjectures
//! for counterexamples.
//!
//! Words are immutable byte sequences ([`Word`]); generating sets are
//! canonical duplicate-free collections ([`FiniteWordSet`]). All operations
//! are pure functions, safe to call concurrently. With the default
//! `parallel` feature the sweep grids in [`lab`] run on rayon; without it
//! everything degrades to the sequential code path with identical output.

pub mod automaton;
pub mod biroot;
pub mod codes;
pub mod error;
pub mod intersection;
pub mod lab;
pub mod maximality;
pub(crate) mod par;
pub mod sets;
pub mod theta;
pub mod words;

pub use error::{Error, Result};
pub use sets::FiniteWordSet;
pub use words::{Factorization, Word, WordPair};
