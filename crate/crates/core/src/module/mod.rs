//! Modules over algebras given by structure constants: Hom and Ext,
//! standard modules, envelopes and covers, duality, Krull-Schmidt
//! decomposition and the Auslander-Reiten translates.

pub mod algmod;
pub mod decompose;
pub mod hom;
pub mod homological;
pub mod repr;
pub mod standard;

pub use algmod::AlgMod;
pub use decompose::{decompose, is_indecomposable, is_isomorphic, Decomposition, DEFAULT_SEED};
pub use hom::{factorize, hom_dim, hom_space, quotient, submodule, Factorization, HomSpace};
pub use homological::{ext1, ext1_dim, ext_dim, idim, pdim, syzygy, tau, tau_inv};
pub use repr::{ModMap, Module};
pub use standard::{
    injective, injective_envelope, is_injective, is_projective, projective, projective_cover,
    simple, socle_dims, standard_module, top_dims, StandardKind,
};

#[cfg(test)]
mod tests;
