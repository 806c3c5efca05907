//! Solvers for combinatorial games played on digraphs and heaps.
//!
//! The crate is organised by game family:
//!
//! - [`digraph`]: directed-graph representation and token positions.
//! - [`classical`]: Sprague-Grundy theory on acyclic digraphs (g-function,
//!   P/N labels, Nim-sum, sum strategy).
//! - [`loopy`]: the generalized gamma function on digraphs with cycles and
//!   loops, where draws become possible.
//! - [`annihilation`]: token games where two colliding tokens vanish,
//!   solved through the expanded annihilation graph.
//! - [`heaps`]: take-away games (Wythoff, Nimdi/Nimhoff families, 3-pile
//!   XOR-Wythoff, octal games) with closed forms and a brute-force engine.
//! - [`nimania`]: the copy-adjoining subtraction game.
//! - [`partizan`]: finitely generated partizan game values (negation, sums,
//!   order, outcome classes, number evaluation, Domineering).
//!
//! All solvers are exact. Exponential-size searches take explicit resource
//! bounds and fail fast with [`Error::is_resource_bound`] errors instead of
//! running away.

pub mod annihilation;
pub mod classical;
pub mod digraph;
pub mod heaps;
pub mod loopy;
pub mod nimania;
pub mod partizan;

mod error;

pub use error::{Error, Result};
