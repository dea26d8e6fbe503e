//! Symmetric phylogenetic tree complexes, tree-metric fans, and exact
//! certificates for the tropicalization of u-equation ideals.

pub mod certify;
pub mod error;
pub mod exec;
pub mod export;
pub mod fans;
pub mod linalg;
pub mod symtrees;
pub mod ualgebra;

pub use error::{Error, Result};
pub use exec::ExecMode;
