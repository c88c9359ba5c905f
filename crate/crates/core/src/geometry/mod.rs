//! Rank varieties, quiver Grassmannians and point-level checks of the
//! desingularisations built from intermediate extensions.

pub mod desing;
pub mod grassmannian;
pub mod rankvar;

pub use desing::{
    certified_closure, grassmannian_desing_report, grassmannian_desing_report_generator,
    grassmannian_desing_report_with, orbit_desing_report, DesingComponent, DesingReport,
    OrbitDesingReport, RepSpace,
};
pub use grassmannian::{
    class_label, grassmannian_report, grassmannian_report_by, GrassPoint, GrassStratum,
    GrassmannianReport, StrataBy, FINITE_FIELD_CAVEAT,
};
pub use rankvar::{
    clorbit_member_cogenfinite, clorbit_member_genfinite, co_hom_vector, desing_dimvec,
    desing_dimvec_generator, hom_order_leq, hom_vector, quiver_euler_form, rank_variety_member,
    RankProfile, Side,
};
