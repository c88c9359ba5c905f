//! Seeded random corpus of small algebras and modules, and the invariants
//! checked on it. Shared by the property suite and the acceptance run.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use tiltrep::algebra::{build_algebra, Arrow, PathBasisAlgebra, Quiver, Relation, StructAlgebra};
use tiltrep::geometry::{certified_closure, grassmannian_desing_report_with, quiver_euler_form};
use tiltrep::linalg::{Elem, Field, Matrix};
use tiltrep::module::{
    decompose, ext1_dim, factorize, hom_dim, hom_space, injective, injective_envelope,
    is_isomorphic, pdim, projective, projective_cover, simple, tau, tau_inv, ModMap, Module,
    DEFAULT_SEED,
};
use tiltrep::subspace::subspace_algebra;
use tiltrep::tilt::intext::restrict_e;
use tiltrep::tilt::{build_b, cogenerator_completion, intermediate_extension, CogenTilted};

pub const CASES: u32 = 50;
pub const MAX_DIM: usize = 8;

/// Runs `check` on `CASES` seeds drawn from a fixed-seed runner.
pub fn run(salt: u64, check: impl Fn(u64) -> Result<(), String>) -> Result<(), String> {
    let config = Config {
        cases: CASES,
        rng_seed: RngSeed::Fixed(0x5eed ^ salt),
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new(config);
    runner
        .run(&any::<u64>(), |s| check(s).map_err(TestCaseError::fail))
        .map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: tiltrep::Error) -> String {
    e.to_string()
}

/// Acyclic quiver on 2..=4 vertices with at most four arrows, over a small
/// prime field, with a zero relation on some path of length two about half
/// the time.
pub fn random_algebra(rng: &mut ChaCha8Rng) -> PathBasisAlgebra {
    let f = Field::prime([2, 3, 5][rng.gen_range(0..3)]).unwrap();
    let n = rng.gen_range(2..=4);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut arrows = vec![];
    for i in 0..n {
        for j in i + 1..n {
            if arrows.len() < 4 && rng.gen_bool(0.6) {
                let name = format!("x{}", arrows.len());
                arrows.push(Arrow {
                    name,
                    src: order[i],
                    tgt: order[j],
                });
            }
        }
    }
    let quiver = Quiver::new((0..n).map(|v| v.to_string()).collect(), arrows.clone()).unwrap();
    let mut relations = vec![];
    if rng.gen_bool(0.5) {
        let composable: Vec<(usize, usize)> = (0..arrows.len())
            .flat_map(|a| (0..arrows.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| arrows[a].tgt == arrows[b].src)
            .collect();
        if !composable.is_empty() {
            let (a, b) = composable[rng.gen_range(0..composable.len())];
            let p = quiver.path_from_indices(vec![b, a]).unwrap();
            relations.push(Relation::new(&f, vec![(f.one(), p)]).unwrap());
        }
    }
    build_algebra(quiver, relations, f).unwrap()
}

fn random_matrix(f: &Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_fn(f, r, c, |_, _| f.random(rng))
}

/// A module of total dimension at most `MAX_DIM`: a random representation
/// when there are no relations, otherwise the cokernel of a random map
/// between projectives or the kernel of one between injectives.
pub fn random_module(a: &PathBasisAlgebra, rng: &mut ChaCha8Rng) -> Module {
    let alg = a.structure();
    let f = a.field();
    let n = alg.n_vertices();
    for _ in 0..20 {
        let m = if a.relations().is_empty() && rng.gen_bool(0.6) {
            let mut dims = vec![0; n];
            let total = rng.gen_range(2..=7);
            for _ in 0..total {
                dims[rng.gen_range(0..n)] += 1;
            }
            let maps = (0..alg.gens().len())
                .map(|g| {
                    let b = alg.gen_elt(g);
                    random_matrix(f, dims[b.tgt], dims[b.src], rng)
                })
                .collect();
            Module::new(alg.clone(), dims, maps).unwrap()
        } else {
            let inj = rng.gen_bool(0.5);
            let pick = |rng: &mut ChaCha8Rng| -> Module {
                let k = rng.gen_range(1..=2);
                let parts: Vec<Module> = (0..k)
                    .map(|_| {
                        let v = rng.gen_range(0..n);
                        if inj {
                            injective(alg, v)
                        } else {
                            projective(alg, v)
                        }
                    })
                    .collect();
                Module::direct_sum(&parts).unwrap()
            };
            let (x, y) = (pick(rng), pick(rng));
            let h = hom_space(&x, &y).unwrap();
            let phi = h.random(rng);
            let fac = factorize(&phi).unwrap();
            if inj {
                fac.kernel.src
            } else {
                fac.cokernel.tgt
            }
        };
        if !m.is_zero() && m.dim() <= MAX_DIM {
            return m;
        }
    }
    simple(alg, rng.gen_range(0..n))
}

pub struct Corpus {
    pub algebra: PathBasisAlgebra,
    pub modules: Vec<Module>,
}

pub fn corpus(seed: u64, k: usize) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let algebra = random_algebra(&mut rng);
    let modules = (0..k).map(|_| random_module(&algebra, &mut rng)).collect();
    Corpus { algebra, modules }
}

pub fn hom_additivity(seed: u64) -> Result<(), String> {
    let c = corpus(seed, 3);
    let (x, y, z) = (&c.modules[0], &c.modules[1], &c.modules[2]);
    let xy = x.direct_sum_with(y).map_err(err)?;
    let h = |a: &Module, b: &Module| hom_dim(a, b).map_err(err);
    ensure(h(&xy, z)? == h(x, z)? + h(y, z)?, || {
        "[X+Y, Z] is not additive".into()
    })?;
    ensure(h(z, &xy)? == h(z, x)? + h(z, y)?, || {
        "[Z, X+Y] is not additive".into()
    })
}

pub fn yoneda_dimensions(seed: u64) -> Result<(), String> {
    let c = corpus(seed, 1);
    let x = &c.modules[0];
    let alg = x.alg();
    for v in 0..alg.n_vertices() {
        let p = hom_dim(&projective(alg, v), x).map_err(err)?;
        let i = hom_dim(x, &injective(alg, v)).map_err(err)?;
        ensure(p == x.dims()[v] && i == x.dims()[v], || {
            format!("vertex {v}: [P,X]={p} [X,I]={i} dim={}", x.dims()[v])
        })?;
        ensure(
            hom_dim(&simple(alg, v), &injective(alg, v)).map_err(err)? == 1,
            || "[S(v), I(v)] != 1".into(),
        )?;
    }
    Ok(())
}

pub fn duality(seed: u64) -> Result<(), String> {
    let c = corpus(seed, 2);
    let (x, y) = (&c.modules[0], &c.modules[1]);
    let (dx, dy) = (x.dual(), y.dual());
    ensure(dx.alg().is_opposite_of(x.alg()), || {
        "dual does not live over the opposite algebra".into()
    })?;
    ensure(
        hom_dim(x, y).map_err(err)? == hom_dim(&dy, &dx).map_err(err)?,
        || "[X,Y] != [DY,DX]".into(),
    )?;
    ensure(
        ext1_dim(x, y).map_err(err)? == ext1_dim(&dy, &dx).map_err(err)?,
        || "Ext(X,Y) != Ext(DY,DX)".into(),
    )
}

pub fn krull_schmidt(seed: u64) -> Result<(), String> {
    let c = corpus(seed, 2);
    let x = c.modules[0].direct_sum_with(&c.modules[1]).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
    let (y, _) = x.random_conjugate(&mut rng);
    let d1 = decompose(&x, DEFAULT_SEED).map_err(err)?;
    let d2 = decompose(&y, seed).map_err(err)?;
    ensure(d1.n_summands() == d2.n_summands(), || {
        format!("{} vs {} summands", d1.n_summands(), d2.n_summands())
    })?;
    ensure(d1.witness.is_iso() && d2.witness.is_iso(), || {
        "decomposition witness is not an isomorphism".into()
    })?;
    for (p, k) in &d1.classes {
        let mut hit = 0;
        for (q, l) in &d2.classes {
            if p.dims() == q.dims() && is_isomorphic(p, q, DEFAULT_SEED).map_err(err)?.is_some() {
                ensure(k == l, || format!("multiplicity {k} vs {l}"))?;
                hit += 1;
            }
        }
        ensure(hit == 1, || {
            format!("class with dims {:?} matched {hit} times", p.dims())
        })?;
    }
    Ok(())
}

/// Rank of the span of `maps` inside `space`.
fn span_rank(space: &tiltrep::module::HomSpace, maps: &[ModMap]) -> usize {
    let f = space.src.field().clone();
    if maps.is_empty() || space.dim() == 0 {
        return 0;
    }
    let rows: Vec<Vec<Elem>> = maps.iter().map(|m| space.coords(m)).collect();
    Matrix::from_rows(&f, space.dim(), &rows).rank()
}

/// `dim Ext^1(X, Y) = dim Hom(Y, tau X)` modulo maps through injectives, and
/// `= dim Hom(tau^- Y, X)` modulo maps through projectives.
pub fn ar_formula(seed: u64) -> Result<(), String> {
    let c = corpus(seed, 2);
    let (x, y) = (&c.modules[0], &c.modules[1]);
    let e = ext1_dim(x, y).map_err(err)?;
    let tx = tau(x).map_err(err)?;
    let hy = hom_space(y, &tx).map_err(err)?;
    let iota = injective_envelope(y).map_err(err)?.map;
    let through: Vec<ModMap> = hom_space(&iota.tgt, &tx)
        .map_err(err)?
        .basis
        .iter()
        .map(|g| iota.then(g))
        .collect();
    let stable_inj = hy.dim() - span_rank(&hy, &through);
    ensure(e == stable_inj, || {
        format!("Ext^1 = {e}, Hom-bar(Y, tau X) = {stable_inj}")
    })?;
    let ty = tau_inv(y).map_err(err)?;
    let hx = hom_space(&ty, x).map_err(err)?;
    let pi = projective_cover(x).map_err(err)?.map;
    let through: Vec<ModMap> = hom_space(&ty, &pi.src)
        .map_err(err)?
        .basis
        .iter()
        .map(|g| g.then(&pi))
        .collect();
    let stable_proj = hx.dim() - span_rank(&hx, &through);
    ensure(e == stable_proj, || {
        format!("Ext^1 = {e}, Hom-underline(tau^- Y, X) = {stable_proj}")
    })
}

/// A random module over a subspace quiver with at most three subspaces; these
/// are representation-finite, so every module is gen-finite.
pub struct Tower {
    pub a: PathBasisAlgebra,
    pub m: Module,
    pub b: CogenTilted,
}

pub fn random_tower(seed: u64) -> Result<Tower, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    let a = subspace_algebra(n, Field::prime(2).unwrap()).map_err(err)?;
    let alg = a.structure();
    let cap = if n == 3 { 1 } else { 2 };
    let dims: Vec<usize> = (0..=n).map(|_| rng.gen_range(0..=cap)).collect();
    let f = a.field().clone();
    let maps = (0..alg.gens().len())
        .map(|g| {
            let b = alg.gen_elt(g);
            random_matrix(&f, dims[b.tgt], dims[b.src], &mut rng)
        })
        .collect();
    let m = Module::new(alg.clone(), dims, maps).map_err(err)?;
    let m = if m.is_zero() { injective(alg, 0) } else { m };
    let rep = certified_closure(&m).map_err(err)?;
    let b = build_b(&cogenerator_completion(&m, &rep).map_err(err)?).map_err(err)?;
    Ok(Tower { a, m, b })
}

fn is_hereditary(alg: &Arc<StructAlgebra>) -> Result<bool, String> {
    for v in 0..alg.n_vertices() {
        if pdim(&simple(alg, v), 1).map_err(err)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// On hereditary `B`, every upstairs point `U` of the Grassmannian
/// desingularisation has `[U, C/U] = <Dim U, Dim C - Dim U>`.
pub fn euler_tangent(seed: u64) -> Result<(), String> {
    let t = random_tower(seed)?;
    ensure(is_hereditary(t.b.alg())?, || "B is not hereditary".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51);
    let d: Vec<usize> = t.m.dims().iter().map(|&k| rng.gen_range(0..=k)).collect();
    let r = grassmannian_desing_report_with(&t.m, &d, &t.b, 1).map_err(err)?;
    let cm = intermediate_extension(&t.m, &t.b).map_err(err)?;
    for c in &r.components {
        let quot: Vec<usize> = cm
            .dims()
            .iter()
            .zip(&c.dimvec)
            .map(|(x, y)| x - y)
            .collect();
        let euler = quiver_euler_form(t.b.alg(), &c.dimvec, &quot).map_err(err)?;
        for p in &c.upstairs.points {
            ensure(p.tangent as i64 == euler, || {
                format!(
                    "tangent {} against Euler form {euler} at dimension {:?}",
                    p.tangent, c.dimvec
                )
            })?;
        }
    }
    Ok(())
}

fn random_rep(a: &PathBasisAlgebra, rng: &mut ChaCha8Rng) -> Result<Module, String> {
    let alg = a.structure();
    let dims: Vec<usize> = (0..alg.n_vertices())
        .map(|_| rng.gen_range(0..=2))
        .collect();
    let maps = (0..alg.gens().len())
        .map(|g| {
            let b = alg.gen_elt(g);
            random_matrix(a.field(), dims[b.tgt], dims[b.src], rng)
        })
        .collect();
    Module::new(alg.clone(), dims, maps).map_err(err)
}

/// `[c(X), c(Y)] = [X, Y]`.
pub fn full_faithfulness(seed: u64) -> Result<(), String> {
    let t = random_tower(seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfa);
    let x = random_rep(&t.a, &mut rng)?;
    let y = random_rep(&t.a, &mut rng)?;
    let cx = intermediate_extension(&x, &t.b).map_err(err)?;
    let cy = intermediate_extension(&y, &t.b).map_err(err)?;
    let (lhs, rhs) = (
        hom_dim(&cx, &cy).map_err(err)?,
        hom_dim(&x, &y).map_err(err)?,
    );
    ensure(lhs == rhs, || format!("[cX, cY] = {lhs}, [X, Y] = {rhs}"))
}

/// `e c(X) = X`.
pub fn restriction_inverts(seed: u64) -> Result<(), String> {
    let t = random_tower(seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xec);
    let x = random_rep(&t.a, &mut rng)?;
    let back = restrict_e(&intermediate_extension(&x, &t.b).map_err(err)?, &t.b).map_err(err)?;
    ensure(
        is_isomorphic(&back, &x, DEFAULT_SEED)
            .map_err(err)?
            .is_some(),
        || format!("e c(X) differs from X {:?}", x.dims()),
    )
}

pub type Property = fn(u64) -> Result<(), String>;

/// Every invariant with its runner salt.
pub const PROPERTIES: &[(&str, u64, Property)] = &[
    ("hom additivity", 1, hom_additivity),
    ("Yoneda dimensions", 2, yoneda_dimensions),
    ("duality", 3, duality),
    ("Krull-Schmidt determinism", 4, krull_schmidt),
    ("AR formula", 5, ar_formula),
    ("Euler form at upstairs points", 6, euler_tangent),
    ("c fully faithful", 7, full_faithfulness),
    ("e c = id", 8, restriction_inverts),
];
