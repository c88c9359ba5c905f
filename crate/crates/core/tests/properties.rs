//! Invariants on a seeded random corpus of small algebras and modules.

mod common;

use common::*;

fn check(name: &str) {
    let (_, salt, f) = PROPERTIES
        .iter()
        .find(|p| p.0 == name)
        .expect("known property");
    if let Err(e) = run(*salt, f) {
        panic!("{name}: {e}");
    }
}

#[test]
fn hom_is_additive() {
    check("hom additivity");
}

#[test]
fn hom_from_projectives_and_into_injectives() {
    check("Yoneda dimensions");
}

#[test]
fn hom_and_ext_dualise() {
    check("duality");
}

#[test]
fn decomposition_is_determined_up_to_isomorphism() {
    check("Krull-Schmidt determinism");
}

#[test]
fn ext_matches_stable_homs_into_tau() {
    check("AR formula");
}

#[test]
fn tangent_spaces_upstairs_follow_the_euler_form() {
    check("Euler form at upstairs points");
}

#[test]
fn intermediate_extension_is_fully_faithful() {
    check("c fully faithful");
}

#[test]
fn restriction_undoes_intermediate_extension() {
    check("e c = id");
}
