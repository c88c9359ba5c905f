use super::*;
use crate::linalg::Field;
use crate::subspace::{subspace_algebra, subspace_module};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn setup(n: usize, f: Field) -> (crate::algebra::PathBasisAlgebra, Module) {
    let a = subspace_algebra(n, f).unwrap();
    let m = subspace_module(&a).unwrap();
    (a, m)
}

#[test]
fn standard_modules_of_subspace_quiver() {
    let (a, _) = setup(2, Field::Rationals);
    let alg = a.structure();
    assert_eq!(injective(alg, 0).dims(), &[1, 1, 1]);
    assert_eq!(projective(alg, 0).dims(), &[1, 0, 0]);
    assert_eq!(projective(alg, 1).dims(), &[1, 1, 0]);
    assert_eq!(injective(alg, 1).dims(), &[0, 1, 0]);
    for v in 0..3 {
        assert!(is_projective(&projective(alg, v)));
        assert!(is_injective(&injective(alg, v)));
    }
    assert!(!is_projective(&simple(alg, 1)));
}

#[test]
fn homs_of_the_example_module() {
    let (a, m) = setup(2, Field::prime(2).unwrap());
    let alg = a.structure();
    assert_eq!(hom_dim(&m, &m).unwrap(), 7);
    assert_eq!(hom_dim(&m, &simple(alg, 0)).unwrap(), 1);
    assert_eq!(hom_dim(&simple(alg, 1), &simple(alg, 1)).unwrap(), 1);
    assert_eq!(ext1_dim(&simple(alg, 1), &simple(alg, 0)).unwrap(), 1);
    assert_eq!(ext1_dim(&simple(alg, 0), &simple(alg, 1)).unwrap(), 0);
    let e = ext1(&simple(alg, 2), &simple(alg, 0)).unwrap();
    assert_eq!(e.cocycles.len(), 1);
}

#[test]
fn envelope_and_cover() {
    let (a, m) = setup(2, Field::Rationals);
    let alg = a.structure();
    let env = injective_envelope(&m).unwrap();
    assert_eq!(env.vertices, vec![0, 0, 1, 2]);
    let fac = factorize(&env.map).unwrap();
    assert!(fac.kernel.src.is_zero());
    let s0 = simple(alg, 0);
    let env0 = injective_envelope(&s0).unwrap();
    assert_eq!(
        factorize(&env0.map).unwrap().cokernel.tgt.dims(),
        &[0, 1, 1]
    );
    let cov = projective_cover(&simple(alg, 1)).unwrap();
    assert_eq!(cov.vertices, vec![1]);
    assert_eq!(factorize(&cov.map).unwrap().kernel.src.dims(), &[1, 0, 0]);
    let q = injective(alg, 0);
    let eq = injective_envelope(&q).unwrap();
    assert!(eq.map.is_iso());
}

#[test]
fn decomposition_of_the_example_module() {
    for n in [2, 3] {
        let (a, m) = setup(n, Field::prime(3).unwrap());
        let d = decompose(&m, 7).unwrap();
        assert_eq!(d.n_summands(), n + 2);
        assert!(d.classes.iter().all(|(_, k)| *k == 1));
        let alg = a.structure();
        let q0 = injective(alg, 0);
        assert!(d
            .classes
            .iter()
            .any(|(x, _)| is_isomorphic(x, &q0, 1).unwrap().is_some()));
        let mm = m.direct_sum_with(&m).unwrap();
        let dd = decompose(&mm, 3).unwrap();
        assert!(dd.classes.iter().all(|(_, k)| *k == 2));
    }
}

#[test]
fn decomposition_over_rationals() {
    let (_, m) = setup(2, Field::Rationals);
    let d = decompose(&m, 11).unwrap();
    assert_eq!(d.n_summands(), 4);
}

#[test]
fn isomorphism_under_base_change() {
    let (_, m) = setup(2, Field::prime(5).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (c, _) = m.random_conjugate(&mut rng);
    let w = is_isomorphic(&m, &c, 9).unwrap().expect("isomorphic");
    assert!(w.is_iso() && w.commutes());
}

#[test]
fn translates_on_a3() {
    let (a, _) = setup(2, Field::Rationals);
    let alg = a.structure();
    let t = tau_inv(&simple(alg, 0)).unwrap();
    assert_eq!(t.dims(), &[1, 1, 1]);
    assert!(is_isomorphic(&t, &injective(alg, 0), 0).unwrap().is_some());
    assert!(tau(&projective(alg, 1)).unwrap().is_zero());
    let t1 = tau(&simple(alg, 1)).unwrap();
    assert_eq!(t1.dims(), &[1, 0, 1]);
    // n = 3: the translate of S(0) has 2 at the centre
    let (b, _) = setup(3, Field::Rationals);
    let t3 = tau_inv(&simple(b.structure(), 0)).unwrap();
    assert_eq!(t3.dims(), &[2, 1, 1, 1]);
}

#[test]
fn duality_round_trip() {
    let (_, m) = setup(2, Field::Rationals);
    let dd = m.dual().dual();
    assert!(dd.same_matrices(&m));
}
