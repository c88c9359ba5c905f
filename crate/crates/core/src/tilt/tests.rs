use super::cogen::*;
use super::intext::*;
use crate::linalg::Field;
use crate::module::{injective, is_isomorphic, simple, Module, DEFAULT_SEED};
use crate::subspace::{subspace_algebra, subspace_module};

fn example(n: usize, p: u64) -> (Module, CogenTilted) {
    let a = subspace_algebra(n, Field::prime(p).unwrap()).unwrap();
    let m = subspace_module(&a).unwrap();
    let b = build_b(&m).unwrap();
    (m, b)
}

#[test]
fn algebra_tower_of_example() {
    let (_, b) = example(2, 3);
    assert_eq!(b.alg().dim(), 9);
    assert_eq!(b.alg().n_vertices(), 4);
    assert!(b.corner_is_base().unwrap());
    // arrows [1] -> <S0>, [2] -> <S0>, <S0> -> [0]
    let q = b.alg().quiver_arrow_counts().unwrap();
    assert_eq!(
        q,
        vec![
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0]
        ]
    );
    assert_eq!(b.alg().vertices()[3], "<S0>");
    let route = GammaRoute::new(&b).unwrap();
    assert_eq!(route.gamma().dim(), 7);
    // rad^2 = 0: the radical is spanned by the three arrows
    let arrows: usize = route
        .gamma()
        .quiver_arrow_counts()
        .unwrap()
        .iter()
        .flatten()
        .sum();
    assert_eq!((route.gamma().radical().unwrap().len(), arrows), (3, 3));
    assert!(route.certificate.pass(), "{:?}", route.certificate.checks);
    assert!(route.agrees_with(&b));
    // the non-special summand of T_P is the simple at the vertex of Q(0)
    let q0 = b.injective_at[0];
    let s = simple(route.gamma(), q0);
    assert!(is_isomorphic(&route.t_parts[3], &s, DEFAULT_SEED)
        .unwrap()
        .is_some());
}

#[test]
fn intermediate_extension_of_example() {
    let (m, b) = example(2, 3);
    let c = intermediate_extension(&m, &b).unwrap();
    assert_eq!(c.dims(), &[2, 2, 2, 1]);
    assert_eq!(predicted_dims(&m, &b).unwrap(), c.dims().to_vec());
    let back = restrict_e(&c, &b).unwrap();
    assert!(is_isomorphic(&back, &m, DEFAULT_SEED).unwrap().is_some());
    let st = stability_flags(&c, &b);
    assert!(st.stable && st.costable);
    let s0 = simple(&b.base, 0);
    assert_eq!(
        intermediate_extension(&s0, &b).unwrap().dims(),
        &[1, 0, 0, 0]
    );
    let route = GammaRoute::new(&b).unwrap();
    let samples: Vec<Module> = (0..3)
        .map(|v| simple(&b.base, v))
        .chain([injective(&b.base, 0)])
        .collect();
    for chk in check_int_ext_theorem(&b, &route, &samples).unwrap() {
        assert!(chk.pass, "{} {}", chk.name, chk.detail);
    }
}

#[test]
fn special_tilting_is_unique_up_to_add() {
    let (_, b) = example(2, 3);
    let route = GammaRoute::new(&b).unwrap();
    let k = crate::module::hom_dim(&super::tilting::regular_module(&route.p).unwrap(), &route.p)
        .unwrap();
    let forward: Vec<usize> = (0..k).collect();
    let rotated: Vec<usize> = (1..k).chain([0]).collect();
    for order in [forward, rotated] {
        let t = special_tilting_from(&route.p, &order).unwrap();
        let cert = super::tilting::verify_tilting(&t, Some(&route.p)).unwrap();
        assert!(cert.pass(), "{:?}", cert.checks);
        assert!(same_add(&t, &route.t).unwrap());
    }
}

#[test]
fn example_with_three_subspaces() {
    let (m, b) = example(3, 2);
    // [i] -> <S0> -> [0]: 5 idempotents, 4 arrows, 3 paths of length two
    assert_eq!(b.alg().dim(), 12);
    let route = GammaRoute::new(&b).unwrap();
    assert!(route.certificate.pass());
    assert!(route.agrees_with(&b));
    let c = intermediate_extension(&m, &b).unwrap();
    assert_eq!(c.dims(), &[2, 2, 2, 2, 1]);
    assert!(
        is_isomorphic(&restrict_e(&c, &b).unwrap(), &m, DEFAULT_SEED)
            .unwrap()
            .is_some()
    );
}

#[test]
fn semisimple_base_gives_base() {
    use crate::algebra::{build_algebra, Quiver};
    let q = Quiver::new(vec!["x".into(), "y".into()], vec![]).unwrap();
    let a = build_algebra(q, vec![], Field::prime(5).unwrap()).unwrap();
    let alg = a.structure();
    let da = Module::direct_sum(&[injective(alg, 0), injective(alg, 1)]).unwrap();
    let b = build_b(&da).unwrap();
    assert_eq!(b.alg().dim(), 2);
    assert!(b.corner_is_base().unwrap());
    let c = intermediate_extension(&simple(alg, 1), &b).unwrap();
    assert_eq!(c.dims(), &[0, 1]);
}

#[test]
fn completion_of_simple_source() {
    use crate::subrep::{gen_closure, Caps};
    let a = subspace_algebra(2, Field::prime(2).unwrap()).unwrap();
    let s1 = simple(a.structure(), 1);
    let rep = gen_closure(&s1, Caps::for_module(&s1)).unwrap();
    let e = cogenerator_completion(&s1, &rep).unwrap();
    // S(1) is already Q(1); Q(0) and Q(2) are added
    assert_eq!(basic_summands(&e).unwrap().len(), 3);
    assert_eq!(e.dims(), &[1, 2, 2]);
    let c0 = intermediate_extension(&Module::zero(a.structure()), &build_b(&e).unwrap()).unwrap();
    assert!(c0.is_zero());
}
