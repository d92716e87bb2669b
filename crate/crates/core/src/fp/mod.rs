//! Finitely presented groups on involutory generators.

pub mod coset;
mod eval;
mod presentation;
mod word;

pub use coset::{todd_coxeter, CosetTable, EnumerationStatus, DEFAULT_COSET_LIMIT};
pub use eval::{evaluate, generated_subgroup_order, verify_epimorphism, EpimorphismReport};
pub use presentation::{string_matrix, Expr, Presentation};
pub use word::Word;
