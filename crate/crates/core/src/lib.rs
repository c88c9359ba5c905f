//! Exact computations with finite-dimensional algebras given by quivers with
//! relations: modules, homological invariants, special tilting modules, the
//! cogenerator-tilted algebra of a module with its intermediate extension
//! functor, and finite-field point counts for rank varieties and quiver
//! Grassmannians.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod algebra;
pub mod error;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod module;
pub mod subrep;
pub mod subspace;
pub mod tilt;

pub use error::{Error, Result};
