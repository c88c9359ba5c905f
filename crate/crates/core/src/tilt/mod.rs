//! Special tilting modules, the cogenerator-tilted algebra and the
//! intermediate extension functor.

pub mod category;
pub mod cogen;
pub mod dual;
pub mod intext;
pub mod tilting;

pub use category::{is_algebra_iso, CatAlgebra, ComplexCategory, ModuleCategory, TwoTermComplex};
pub use cogen::{build_b, cogenerator_completion, summand_label, CogenTilted, GammaRoute};
pub use dual::{
    build_b_generator, compare_with_opposite, generator_completion,
    intermediate_extension_generator, CoGammaRoute, GenCotilted, OppositeComparison,
};
pub use intext::{
    check_int_ext_theorem, intermediate_extension, restrict_e, stability_flags, Stability,
};
pub use tilting::{verify_cotilting, verify_tilting, TiltingCertificate};

#[cfg(test)]
mod tests;
