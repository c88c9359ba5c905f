//! Exact fields and dense linear algebra.

pub mod field;
pub mod fpoly;
pub mod matalg;
pub mod matrix;
pub mod poly;

pub use field::{Elem, ExtField, Field};
pub use matrix::Matrix;
