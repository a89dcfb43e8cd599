//! Inductive groupoids, cross-connections and the functors between them,
//! computed exhaustively on finite regular semigroups.

pub mod biorder;
pub mod crossconn;
pub mod echain;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod functor_ci;
pub mod functor_ic;
pub mod inductive;
pub mod io;
pub mod normcat;
pub mod relation;
pub mod report;

pub use error::{Error, Result};
pub use report::{Report, Violation};
