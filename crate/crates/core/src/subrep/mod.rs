//! Submodules over finite fields, quotient strata, and closure of a module
//! under quotients (or submodules) of finite direct sums.

pub mod closure;
pub mod enumerate;

pub use closure::{
    cogen_closure, gen_closure, trace_surjective, Caps, ClosureStatus, GenClosureReport,
};
pub use enumerate::{enumerate_submodules, quotient_strata, subspaces, Stratum, SubmoduleRecord};
