#![no_std]
//! Permutation groups, coset enumeration and the extension and halving
//! constructions on regular polytopes.

extern crate alloc;

pub mod catalog;
pub mod diagonals;
pub mod error;
pub mod extend;
pub mod fp;
pub mod halve;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
