//! Permutation group toolkit for base sizes and generalised Saxl graphs.
//!
//! The engine (`perm`, `chain`, `group`, `backtrack`) is self-contained.
//! Constructions live in `field`, `linear`, `actions`, `simple`,
//! `diagonal`, `recipe` and `fixtures`; analyses in `bases`, `saxl`,
//! `prob`, `wreath` and `diag`; `report` and `suites` drive them.

pub mod backtrack;
pub mod bases;
pub mod chain;
pub mod diag;
pub mod diagonal;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod gensfile;
pub mod group;
pub mod linear;
pub mod actions;
pub mod perm;
pub mod prob;
pub mod recipe;
pub mod report;
pub mod saxl;
pub mod wreath;
pub mod simple;
pub mod suites;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Perm;
