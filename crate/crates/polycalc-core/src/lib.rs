//! Calculus of polynomials over finite base categories.
//!
//! Everything here is finite and explicit: sets are ordered lists of
//! structured labels, categories are composition tables, and polynomials
//! are finite families of finite direction sets indexed by positions.
//! The two monoidal products (composition `◁` and the Dirichlet tensor
//! `⊗`), their duoidal interchange, the tensor closure, the coclosures of
//! composition, comonoids and their equivalence with categories,
//! coalgebras as copresheaves, and bicomodules with data migration are all
//! implemented as pure functions on these canonical representations, so
//! every law can be checked by exhaustive enumeration at desk scale.

pub mod bicomodule;
pub mod budget;
pub mod coalgebra;
pub mod comonoid;
pub mod error;
pub mod fincat;
pub mod finset;
pub mod harness;
pub mod io;
pub mod label;
pub mod poly;
pub mod poly_limits;
pub mod poly_ops;
pub mod presheaf;
pub mod pshpoly;
pub mod report;
pub mod structures;

pub use budget::Budget;
pub use error::{Error, Result};
pub use label::Label;
pub use report::Report;
