//! Modules given by one matrix per algebra generator, and module maps.

use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Elem, Field, Matrix};
use rand::Rng;
use std::sync::Arc;

/// A left module: a vector space `e_v X` per vertex and, for every generator
/// `g: s -> t`, a matrix of shape `dims[t] x dims[s]`.
#[derive(Clone, Debug)]
pub struct Module {
    alg: Arc<StructAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
    acts: Vec<Matrix>,
}

impl Module {
    pub fn new(alg: Arc<StructAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Module> {
        let m = Module::unchecked(alg, dims, maps)?;
        m.check_relations()?;
        Ok(m)
    }

    /// Builds the module without checking that the relations hold; shapes are
    /// still validated.
    pub(crate) fn unchecked(
        alg: Arc<StructAlgebra>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Module> {
        if dims.len() != alg.n_vertices() {
            return Err(Error::Dimension(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                alg.n_vertices()
            )));
        }
        if maps.len() != alg.gens().len() {
            return Err(Error::Dimension(format!(
                "{} maps for {} generators",
                maps.len(),
                alg.gens().len()
            )));
        }
        for (g, m) in maps.iter().enumerate() {
            let b = alg.gen_elt(g);
            if m.rows() != dims[b.tgt] || m.cols() != dims[b.src] {
                return Err(Error::Dimension(format!(
                    "map for {} is {}x{}, expected {}x{}",
                    b.label,
                    m.rows(),
                    m.cols(),
                    dims[b.tgt],
                    dims[b.src]
                )));
            }
            if m.field() != alg.field() {
                return Err(Error::FieldMismatch);
            }
        }
        let f = alg.field().clone();
        let acts = alg
            .basis()
            .iter()
            .map(|b| {
                let mut acc = Matrix::identity(&f, dims[b.src]);
                for &g in b.factors.iter().rev() {
                    acc = maps[g].mul(&acc);
                }
                acc
            })
            .collect();
        Ok(Module {
            alg,
            dims,
            maps,
            acts,
        })
    }

    /// `X(g) X(b) = sum c_k X(b_k)` for every generator `g` and basis element
    /// `b`; this forces the action to factor through the algebra.
    fn check_relations(&self) -> Result<()> {
        let f = self.field();
        for (g, &gi) in self.alg.gens().iter().enumerate() {
            let ge = &self.alg.basis()[gi];
            for (bi, b) in self.alg.basis().iter().enumerate() {
                if b.tgt != ge.src {
                    continue;
                }
                let lhs = self.maps[g].mul(&self.acts[bi]);
                let mut rhs = Matrix::zeros(f, self.dims[ge.tgt], self.dims[b.src]);
                for (r, c) in self.alg.product(gi, bi) {
                    rhs = rhs.add(&self.acts[*r].scale(c));
                }
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "relation violated: {} * {}",
                        ge.label, b.label
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(alg: &Arc<StructAlgebra>) -> Module {
        let dims = vec![0; alg.n_vertices()];
        let f = alg.field().clone();
        let maps = alg.gens().iter().map(|_| Matrix::zeros(&f, 0, 0)).collect();
        Module::unchecked(alg.clone(), dims, maps).expect("zero module")
    }

    pub fn alg(&self) -> &Arc<StructAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> &Field {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Offset of `e_v X` inside the total space.
    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, g: usize) -> &Matrix {
        &self.maps[g]
    }

    /// Action of basis element `b` as a map `e_src X -> e_tgt X`.
    pub fn act(&self, b: usize) -> &Matrix {
        &self.acts[b]
    }

    /// Action of basis element `b` on the total space.
    pub fn full_act(&self, b: usize) -> Matrix {
        let be = &self.alg.basis()[b];
        let n = self.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        m.set_block(self.offset(be.tgt), self.offset(be.src), &self.acts[b]);
        m
    }

    /// Action of an arbitrary algebra element on the total space.
    pub fn element_act(&self, a: &[Elem]) -> Matrix {
        let f = self.field();
        let n = self.dim();
        let mut m = Matrix::zeros(f, n, n);
        for (b, c) in a.iter().enumerate() {
            if !f.is_zero(c) {
                m = m.add(&self.full_act(b).scale(c));
            }
        }
        m
    }

    pub fn same_algebra(&self, other: &Module) -> Result<()> {
        if self.alg.fingerprint() != other.alg.fingerprint() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn direct_sum(parts: &[Module]) -> Result<Module> {
        let Some(first) = parts.first() else {
            return Err(Error::Precondition(
                "empty direct sum needs an algebra".into(),
            ));
        };
        for p in parts {
            first.same_algebra(p)?;
        }
        let alg = first.alg.clone();
        let f = alg.field().clone();
        let n = alg.n_vertices();
        let dims: Vec<usize> = (0..n)
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let maps = (0..alg.gens().len())
            .map(|g| {
                Matrix::block_diag(
                    &f,
                    &parts.iter().map(|p| p.maps[g].clone()).collect::<Vec<_>>(),
                )
            })
            .collect();
        Module::unchecked(alg, dims, maps)
    }

    pub fn direct_sum_with(&self, other: &Module) -> Result<Module> {
        Module::direct_sum(&[self.clone(), other.clone()])
    }

    pub fn power(&self, k: usize) -> Module {
        if k == 0 {
            return Module::zero(&self.alg);
        }
        Module::direct_sum(&vec![self.clone(); k]).expect("same algebra")
    }

    /// `X'(g) = P_t X(g) P_s^{-1}` for invertible per-vertex matrices `P`.
    pub fn conjugate(&self, p: &[Matrix]) -> Result<Module> {
        let inv: Vec<Matrix> = p
            .iter()
            .map(|m| {
                m.inverse()
                    .ok_or_else(|| Error::Precondition("base change is not invertible".into()))
            })
            .collect::<Result<_>>()?;
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(g, m)| {
                let b = self.alg.gen_elt(g);
                p[b.tgt].mul(m).mul(&inv[b.src])
            })
            .collect();
        Module::unchecked(self.alg.clone(), self.dims.clone(), maps)
    }

    /// Random invertible base change, returned with the conjugated module and
    /// the isomorphism `self -> result`.
    pub fn random_conjugate<R: Rng>(&self, rng: &mut R) -> (Module, ModMap) {
        let f = self.field().clone();
        let p: Vec<Matrix> = self
            .dims
            .iter()
            .map(|&d| random_invertible(&f, d, rng))
            .collect();
        let m = self.conjugate(&p).expect("invertible");
        let iso = ModMap {
            src: self.clone(),
            tgt: m.clone(),
            comps: p,
        };
        (m, iso)
    }

    pub fn dual(&self) -> Module {
        self.dual_over(&self.alg.opposite_arc())
            .expect("opposite algebra")
    }

    /// The vector-space dual as a module over `op`, which must be the
    /// opposite of this module's algebra.
    pub fn dual_over(&self, op: &Arc<StructAlgebra>) -> Result<Module> {
        if !self.alg.is_opposite_of(op) {
            return Err(Error::AlgebraMismatch);
        }
        let maps = self.maps.iter().map(|m| m.transpose()).collect();
        Module::unchecked(op.clone(), self.dims.clone(), maps)
    }

    /// Structural equality of the presentations (same bases).
    pub fn same_matrices(&self, other: &Module) -> bool {
        self.alg.fingerprint() == other.alg.fingerprint()
            && self.dims == other.dims
            && self.maps == other.maps
    }
}

pub fn random_invertible<R: Rng>(f: &Field, d: usize, rng: &mut R) -> Matrix {
    loop {
        let m = Matrix::from_fn(f, d, d, |_, _| f.random(rng));
        if m.is_invertible() {
            return m;
        }
    }
}

/// A module homomorphism, one matrix per vertex.
#[derive(Clone, Debug)]
pub struct ModMap {
    pub src: Module,
    pub tgt: Module,
    pub comps: Vec<Matrix>,
}

impl ModMap {
    pub fn new(src: Module, tgt: Module, comps: Vec<Matrix>) -> Result<ModMap> {
        src.same_algebra(&tgt)?;
        if comps.len() != src.dims.len() {
            return Err(Error::Dimension("one component per vertex".into()));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.rows() != tgt.dims[v] || c.cols() != src.dims[v] {
                return Err(Error::Dimension(format!(
                    "component at vertex {v} has the wrong shape"
                )));
            }
        }
        let m = ModMap { src, tgt, comps };
        if !m.commutes() {
            return Err(Error::Precondition(
                "linear maps do not commute with the action".into(),
            ));
        }
        Ok(m)
    }

    pub fn commutes(&self) -> bool {
        (0..self.src.maps.len()).all(|g| {
            let b = self.src.alg.gen_elt(g);
            self.tgt.maps[g].mul(&self.comps[b.src]) == self.comps[b.tgt].mul(&self.src.maps[g])
        })
    }

    pub fn identity(m: &Module) -> ModMap {
        let f = m.field().clone();
        let comps = m.dims.iter().map(|&d| Matrix::identity(&f, d)).collect();
        ModMap {
            src: m.clone(),
            tgt: m.clone(),
            comps,
        }
    }

    pub fn zero(src: &Module, tgt: &Module) -> ModMap {
        let f = src.field().clone();
        let comps = (0..src.dims.len())
            .map(|v| Matrix::zeros(&f, tgt.dims[v], src.dims[v]))
            .collect();
        ModMap {
            src: src.clone(),
            tgt: tgt.clone(),
            comps,
        }
    }

    /// `other o self`.
    pub fn then(&self, other: &ModMap) -> ModMap {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| b.mul(a))
            .collect();
        ModMap {
            src: self.src.clone(),
            tgt: other.tgt.clone(),
            comps,
        }
    }

    pub fn add(&self, other: &ModMap) -> ModMap {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect();
        ModMap {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            comps,
        }
    }

    pub fn scale(&self, c: &Elem) -> ModMap {
        ModMap {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            comps: self.comps.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// Block-diagonal matrix on the total spaces.
    pub fn full(&self) -> Matrix {
        Matrix::block_diag(self.src.field(), &self.comps)
    }

    pub fn rank(&self) -> usize {
        self.comps.iter().map(|c| c.rank()).sum()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.src.dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.tgt.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.src.dims == self.tgt.dims && self.is_mono()
    }

    pub fn inverse(&self) -> Option<ModMap> {
        let comps = self
            .comps
            .iter()
            .map(|c| c.inverse())
            .collect::<Option<Vec<_>>>()?;
        Some(ModMap {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            comps,
        })
    }

    /// The transposed map between dual modules, `D(tgt) -> D(src)`.
    pub fn dual(&self) -> ModMap {
        ModMap {
            src: self.tgt.dual(),
            tgt: self.src.dual(),
            comps: self.comps.iter().map(|c| c.transpose()).collect(),
        }
    }

    /// Flattened components, vertex by vertex, row-major.
    pub fn flatten(&self) -> Vec<Elem> {
        self.comps.iter().flat_map(|c| c.flatten()).collect()
    }
}
