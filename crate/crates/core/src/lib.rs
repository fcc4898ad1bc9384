//! Exact computations in finite Coxeter groups.
//!
//! The crate covers the combinatorics around the map from subsets of a
//! reduced word `Q` to the Bruhat interval below its product:
//!
//! * [`coxeter`]: Coxeter systems, elements by canonical reduced word, group enumeration.
//! * [`hecke`]: Demazure products, Bruhat and weak comparisons, sorting subwords `Q(u)`.
//! * [`poset`]: weak, Bruhat and `Q`-sorting orders; covers, restriction, unions and intersections.
//! * [`subword`]: subword complexes and their ball/sphere classification.
//! * [`homology`]: reduced simplicial homology over GF(p) and the rationals.
//! * [`fiber`]: the subset-to-element map, its fibers and homotopy certificates.
//! * [`totalpos`]: exact checks of the type A Chevalley generator identities.
//! * [`verify`]: the batch verifier behind `bruhat verify`.
//! * [`oracle`]: brute-force reference implementations used for cross-checks.

pub mod coxeter;
pub mod error;
pub mod fiber;
pub mod hecke;
pub mod homology;
pub mod oracle;
pub mod poset;
pub mod subword;
pub mod totalpos;
pub mod verify;

pub use coxeter::{CoxeterSystem, CoxeterType, Element, Word};
pub use error::{Error, Result};
pub use hecke::IndexSet;
pub use poset::Poset;
