//! Exact computations around hypertoric category O.

pub mod algebra;
pub mod arrangement;
pub mod bside;
pub mod error;
pub mod gale;
pub mod instance;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod repalg;
pub mod ring;

pub use error::{Error, Genericity, Result};
