//! Quivers with relations, their path-basis algebras and algebras given by
//! structure constants.

pub mod path_algebra;
pub mod quiver;
pub mod structalg;

pub use path_algebra::{build_algebra, build_algebra_capped, PathBasisAlgebra};
pub use quiver::{Arrow, Path, Quiver, Relation};
pub use structalg::{BasisElt, Category, StructAlgebra};
