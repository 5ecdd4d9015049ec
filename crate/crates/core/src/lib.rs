//! Exact computations on adjoint varieties of simple Lie algebras: contact
//! gradings, Kostant decompositions, dimensions of invariant rings of the
//! Lagrangian Grassmannian, and explicit invariant second-order PDEs.

pub mod branching;
pub mod contact;
pub mod error;
pub mod field;
pub mod kostant;
pub mod linalg;
pub mod par;
pub mod pdes;
pub mod quadrics;
pub mod rootsys;

pub use error::{Error, Result};
