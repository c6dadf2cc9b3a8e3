//! Exact computations with artinian local algebras, their modules, and
//! numerical semigroup rings.

pub mod algebra;
pub mod classify;
pub mod error;
pub mod families;
pub mod field;
pub mod homological;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod numsgp;
pub mod spec;
pub mod verifier;

pub use error::{Error, Result};
