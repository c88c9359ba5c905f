//! Linear categories built from modules and from two-term complexes, and
//! algebras presented as opposite endomorphism rings of their objects.

use crate::algebra::{Category, StructAlgebra};
use crate::error::{Error, Result};
use crate::linalg::matalg::Quotient;
use crate::linalg::{Elem, Field, Matrix};
use crate::module::{hom_space, HomSpace, ModMap, Module};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Full subcategory of modules on a list of objects.
pub struct ModuleCategory {
    pub objects: Vec<Module>,
    pub homs: Vec<Vec<HomSpace>>,
}

impl ModuleCategory {
    pub fn new(objects: Vec<Module>) -> Result<ModuleCategory> {
        let homs = objects
            .iter()
            .map(|s| {
                objects
                    .iter()
                    .map(|t| hom_space(s, t))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleCategory { objects, homs })
    }

    pub fn morphism(&self, s: usize, t: usize, c: &[Elem]) -> ModMap {
        self.homs[s][t].combine(c)
    }
}

impl Category for ModuleCategory {
    fn n_objects(&self) -> usize {
        self.objects.len()
    }

    fn hom_dim(&self, s: usize, t: usize) -> usize {
        self.homs[s][t].dim()
    }

    fn identity(&self, s: usize) -> Vec<Elem> {
        self.homs[s][s].coords(&ModMap::identity(&self.objects[s]))
    }

    fn compose(&self, s: usize, t: usize, u: usize, i: usize, j: usize) -> Vec<Elem> {
        let g = self.homs[s][t].basis[i].then(&self.homs[t][u].basis[j]);
        self.homs[s][u].coords(&g)
    }
}

/// A two-term complex `src -> tgt` given by its differential.
#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    pub d: ModMap,
}

impl TwoTermComplex {
    pub fn stalk_top(q: &Module) -> TwoTermComplex {
        TwoTermComplex {
            d: ModMap::zero(&Module::zero(q.alg()), q),
        }
    }

    /// `p -> 0`.
    pub fn stalk_bottom(p: &Module) -> TwoTermComplex {
        TwoTermComplex {
            d: ModMap::zero(p, &Module::zero(p.alg())),
        }
    }

    /// The dual complex `D tgt -> D src` over the opposite algebra.
    pub fn dual(&self) -> TwoTermComplex {
        TwoTermComplex { d: self.d.dual() }
    }
}

/// Morphisms between two complexes modulo null-homotopic ones.
pub struct ChainHoms {
    h0: HomSpace,
    h1: HomSpace,
    /// Chain maps as columns in `(h0, h1)` coordinates; identity at `free`.
    chains: Matrix,
    free: Vec<usize>,
    quotient: Quotient,
    /// One chain map per basis element of the homotopy quotient.
    pub reps: Vec<(ModMap, ModMap)>,
}

impl ChainHoms {
    pub fn new(x: &TwoTermComplex, y: &TwoTermComplex) -> Result<ChainHoms> {
        let f = x.d.src.field().clone();
        let h0 = hom_space(&x.d.src, &y.d.src)?;
        let h1 = hom_space(&x.d.tgt, &y.d.tgt)?;
        let (a, b) = (h0.dim(), h1.dim());
        // columns: d' phi0 and -phi1 d, flattened
        let mut cols: Vec<Vec<Elem>> = vec![];
        for p in &h0.basis {
            cols.push(p.then(&y.d).flatten());
        }
        for p in &h1.basis {
            cols.push(x.d.then(p).flatten().iter().map(|e| f.neg(e)).collect());
        }
        let rows =
            x.d.src
                .dims()
                .iter()
                .zip(y.d.tgt.dims())
                .map(|(s, t)| s * t)
                .sum();
        let sys = Matrix::from_cols(&f, rows, &cols);
        let chains = if a + b == 0 {
            Matrix::zeros(&f, 0, 0)
        } else {
            sys.kernel_basis()
        };
        let (_, piv) = sys.rref();
        let free: Vec<usize> = (0..a + b).filter(|c| !piv.contains(c)).collect();
        let homotopies = hom_space(&x.d.tgt, &y.d.src)?;
        let null: Vec<Vec<Elem>> = homotopies
            .basis
            .iter()
            .map(|h| {
                let mut v = h0.coords(&x.d.then(h));
                v.extend(h1.coords(&h.then(&y.d)));
                free.iter().map(|&i| v[i].clone()).collect()
            })
            .collect();
        let quotient = Quotient::new(&f, free.len(), &null);
        let mut out = ChainHoms {
            h0,
            h1,
            chains,
            free,
            quotient,
            reps: vec![],
        };
        out.reps = out
            .quotient
            .complement
            .iter()
            .map(|&c| out.chain_from(&out.chains.col(c)))
            .collect();
        Ok(out)
    }

    fn chain_from(&self, v: &[Elem]) -> (ModMap, ModMap) {
        let a = self.h0.dim();
        (self.h0.combine(&v[..a]), self.h1.combine(&v[a..]))
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// A basis of all chain maps, not reduced modulo homotopy.
    pub fn chain_maps(&self) -> Vec<(ModMap, ModMap)> {
        (0..self.chains.cols())
            .map(|c| self.chain_from(&self.chains.col(c)))
            .collect()
    }

    /// Coordinates of the class of a chain map.
    pub fn coords(&self, phi: &(ModMap, ModMap)) -> Vec<Elem> {
        let mut v = self.h0.coords(&phi.0);
        v.extend(self.h1.coords(&phi.1));
        let c: Vec<Elem> = self.free.iter().map(|&i| v[i].clone()).collect();
        self.quotient.project(&c)
    }

    pub fn combine(&self, c: &[Elem]) -> (ModMap, ModMap) {
        let f = self.h0.src.field();
        let mut acc = (
            ModMap::zero(&self.h0.src, &self.h0.tgt),
            ModMap::zero(&self.h1.src, &self.h1.tgt),
        );
        for ((p0, p1), x) in self.reps.iter().zip(c) {
            if !f.is_zero(x) {
                acc = (acc.0.add(&p0.scale(x)), acc.1.add(&p1.scale(x)));
            }
        }
        acc
    }
}

/// A chain map `x -> y` that is an isomorphism in both degrees, found by
/// sampling random chain maps.
pub fn complex_iso(
    x: &TwoTermComplex,
    y: &TwoTermComplex,
    seed: u64,
) -> Result<Option<(ModMap, ModMap)>> {
    if x.d.src.dims() != y.d.src.dims() || x.d.tgt.dims() != y.d.tgt.dims() {
        return Ok(None);
    }
    let h = ChainHoms::new(x, y)?;
    let basis = h.chain_maps();
    let f = x.d.src.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let mut acc = (
            ModMap::zero(&x.d.src, &y.d.src),
            ModMap::zero(&x.d.tgt, &y.d.tgt),
        );
        for (p0, p1) in &basis {
            let c = f.random(&mut rng);
            acc = (acc.0.add(&p0.scale(&c)), acc.1.add(&p1.scale(&c)));
        }
        if acc.0.is_iso() && acc.1.is_iso() {
            return Ok(Some(acc));
        }
    }
    Ok(None)
}

/// Full subcategory of the homotopy category on two-term complexes.
pub struct ComplexCategory {
    pub objects: Vec<TwoTermComplex>,
    pub homs: Vec<Vec<ChainHoms>>,
}

impl ComplexCategory {
    pub fn new(objects: Vec<TwoTermComplex>) -> Result<ComplexCategory> {
        let homs = objects
            .iter()
            .map(|s| {
                objects
                    .iter()
                    .map(|t| ChainHoms::new(s, t))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ComplexCategory { objects, homs })
    }

    pub fn morphism(&self, s: usize, t: usize, c: &[Elem]) -> (ModMap, ModMap) {
        self.homs[s][t].combine(c)
    }
}

impl Category for ComplexCategory {
    fn n_objects(&self) -> usize {
        self.objects.len()
    }

    fn hom_dim(&self, s: usize, t: usize) -> usize {
        self.homs[s][t].dim()
    }

    fn identity(&self, s: usize) -> Vec<Elem> {
        let d = &self.objects[s].d;
        self.homs[s][s].coords(&(ModMap::identity(&d.src), ModMap::identity(&d.tgt)))
    }

    fn compose(&self, s: usize, t: usize, u: usize, i: usize, j: usize) -> Vec<Elem> {
        let (a0, a1) = &self.homs[s][t].reps[i];
        let (b0, b1) = &self.homs[t][u].reps[j];
        self.homs[s][u].coords(&(a0.then(b0), a1.then(b1)))
    }
}

/// An algebra built by [`StructAlgebra::from_category_op`] together with the
/// morphism underlying each basis element.
#[derive(Clone, Debug)]
pub struct CatAlgebra {
    pub alg: Arc<StructAlgebra>,
    pub under: Vec<(usize, usize, Vec<Elem>)>,
}

impl CatAlgebra {
    pub fn build(
        field: &Field,
        labels: Vec<String>,
        special: Vec<bool>,
        cat: &dyn Category,
    ) -> Result<CatAlgebra> {
        let (alg, under) = StructAlgebra::from_category_op(field, labels, special, cat)?;
        Ok(CatAlgebra {
            alg: Arc::new(alg),
            under,
        })
    }

    /// The algebra element whose underlying morphism `s -> t` has the given
    /// coordinates.
    pub fn element(&self, s: usize, t: usize, c: &[Elem]) -> Result<Vec<Elem>> {
        let f = self.alg.field().clone();
        let idx: Vec<usize> = (0..self.under.len())
            .filter(|&k| self.under[k].0 == s && self.under[k].1 == t)
            .collect();
        let mut out = vec![f.zero(); self.alg.dim()];
        if idx.is_empty() {
            if c.iter().all(|x| f.is_zero(x)) {
                return Ok(out);
            }
            return Err(Error::Falsified("morphism outside the algebra".into()));
        }
        let cols: Vec<Vec<Elem>> = idx.iter().map(|&k| self.under[k].2.clone()).collect();
        let m = Matrix::from_cols(&f, c.len(), &cols);
        let x = m
            .solve_unique(&Matrix::column_vector(&f, c))
            .ok_or_else(|| Error::Falsified("morphism not in the span of the basis".into()))?;
        for (j, &k) in idx.iter().enumerate() {
            out[k] = x.get(j, 0).clone();
        }
        Ok(out)
    }
}

/// Whether the images `corner` of the basis of `base` in `alg` form an
/// algebra isomorphism onto the corner at the first `n` vertices.
pub fn corner_is_iso(
    base: &StructAlgebra,
    alg: &StructAlgebra,
    corner: &[Vec<Elem>],
    n: usize,
) -> Result<bool> {
    let verts: Vec<usize> = (0..n).collect();
    let (c, kept) = alg.corner(&verts)?;
    let phi: Vec<Vec<Elem>> = corner
        .iter()
        .map(|x| kept.iter().map(|&k| x[k].clone()).collect())
        .collect();
    Ok(is_algebra_iso(base, &c, &phi))
}

/// Checks that `phi` (images of the basis of `a` in `b`) is an algebra
/// isomorphism: bijective and multiplicative on all basis pairs.
pub fn is_algebra_iso(a: &StructAlgebra, b: &StructAlgebra, phi: &[Vec<Elem>]) -> bool {
    let f = a.field();
    if a.dim() != b.dim() || phi.len() != a.dim() {
        return false;
    }
    if !Matrix::from_cols(f, b.dim(), phi).is_invertible() {
        return false;
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = b.mul(&phi[i], &phi[j]);
            let prod = a.mul(&a.unit_vector(i), &a.unit_vector(j));
            let mut rhs = vec![f.zero(); b.dim()];
            for (k, c) in prod.iter().enumerate() {
                if !f.is_zero(c) {
                    for (r, x) in phi[k].iter().enumerate() {
                        rhs[r] = f.add(&rhs[r], &f.mul(c, x));
                    }
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}
