//! Jantzen characters of Specht modules for cyclotomic Hecke algebras of type A.
//!
//! The Jantzen character is computed four ways: from Gram determinants of the
//! seminormal basis, from tableau degrees, from the classical hook-wrapping
//! sum formula, and from characteristic zero graded decomposition matrices.

pub mod characters;
pub mod cli;
pub mod combinatorics;
pub mod decomp;
pub mod error;
pub mod fixtures;
pub mod gamma;
pub mod jantzen;
pub mod ring;
pub mod tableaux;

pub use error::{Error, Result};
