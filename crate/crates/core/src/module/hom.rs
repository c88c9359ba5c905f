//! Hom spaces, submodules, quotients and kernel/image/cokernel factorisation.

use super::repr::{ModMap, Module};
use crate::error::{Error, Result};
use crate::linalg::matalg::Quotient;
use crate::linalg::matrix::coords_in;
use crate::linalg::{Elem, Matrix};
use rand::Rng;

/// A basis of `Hom(src, tgt)`. Coordinates of a map are its entries at the
/// free variables of the defining linear system.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub src: Module,
    pub tgt: Module,
    pub basis: Vec<ModMap>,
    free: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, f: &ModMap) -> Vec<Elem> {
        let flat = f.flatten();
        self.free.iter().map(|&i| flat[i].clone()).collect()
    }

    pub fn combine(&self, c: &[Elem]) -> ModMap {
        let mut acc = ModMap::zero(&self.src, &self.tgt);
        for (b, x) in self.basis.iter().zip(c) {
            if !self.src.field().is_zero(x) {
                acc = acc.add(&b.scale(x));
            }
        }
        acc
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> ModMap {
        let f = self.src.field();
        let c: Vec<Elem> = (0..self.dim()).map(|_| f.random(rng)).collect();
        self.combine(&c)
    }
}

/// Coefficient matrix of the commuting-square system whose kernel is
/// `Hom(m, n)`; unknowns are the components, vertex by vertex, row-major.
fn hom_system(m: &Module, n: &Module) -> Matrix {
    let f = m.field();
    let alg = m.alg();
    let nv = alg.n_vertices();
    let mut off = vec![0; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + n.dims()[v] * m.dims()[v];
    }
    let mut rows = 0;
    for g in 0..alg.gens().len() {
        let b = alg.gen_elt(g);
        rows += n.dims()[b.tgt] * m.dims()[b.src];
    }
    let mut a = Matrix::zeros(f, rows, off[nv]);
    let mut r0 = 0;
    for g in 0..alg.gens().len() {
        let b = alg.gen_elt(g);
        let (s, t) = (b.src, b.tgt);
        let (mg, ng) = (m.map(g), n.map(g));
        let (ms, mt) = (m.dims()[s], m.dims()[t]);
        let nt = n.dims()[t];
        let ns = n.dims()[s];
        for i in 0..nt {
            for j in 0..ms {
                let row = r0 + i * ms + j;
                // N_g phi_s: sum_k N_g[i,k] phi_s[k,j]
                for k in 0..ns {
                    let c = ng.get(i, k);
                    if !f.is_zero(c) {
                        let col = off[s] + k * ms + j;
                        let v = f.add(a.get(row, col), c);
                        a.set(row, col, v);
                    }
                }
                // - phi_t M_g: sum_k phi_t[i,k] M_g[k,j]
                for k in 0..mt {
                    let c = mg.get(k, j);
                    if !f.is_zero(c) {
                        let col = off[t] + i * mt + k;
                        let v = f.sub(a.get(row, col), c);
                        a.set(row, col, v);
                    }
                }
            }
        }
        r0 += nt * ms;
    }
    a
}

pub fn hom_space(m: &Module, n: &Module) -> Result<HomSpace> {
    m.same_algebra(n)?;
    let f = m.field().clone();
    let a = hom_system(m, n);
    let (_, piv) = a.rref();
    let free: Vec<usize> = (0..a.cols()).filter(|c| !piv.contains(c)).collect();
    let k = a.kernel_basis();
    let basis = (0..k.cols())
        .map(|j| {
            let col = k.col(j);
            let mut pos = 0;
            let comps = (0..m.dims().len())
                .map(|v| {
                    let (r, c) = (n.dims()[v], m.dims()[v]);
                    let blk = Matrix::from_flat(&f, r, c, &col[pos..pos + r * c]);
                    pos += r * c;
                    blk
                })
                .collect();
            ModMap {
                src: m.clone(),
                tgt: n.clone(),
                comps,
            }
        })
        .collect();
    Ok(HomSpace {
        src: m.clone(),
        tgt: n.clone(),
        basis,
        free,
    })
}

/// `dim Hom(m, n)`.
pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    m.same_algebra(n)?;
    let a = hom_system(m, n);
    Ok(a.cols() - a.rank())
}

/// The submodule spanned per vertex by the columns of `bases` (independent,
/// invariant under the action), with its inclusion.
pub fn submodule(m: &Module, bases: &[Matrix]) -> Result<ModMap> {
    let alg = m.alg().clone();
    let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
    let maps = (0..alg.gens().len())
        .map(|g| {
            let b = alg.gen_elt(g);
            let img = m.map(g).mul(&bases[b.src]);
            coords_in(&bases[b.tgt], &img).ok_or_else(|| {
                Error::Precondition("subspaces are not invariant under the action".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sub = Module::unchecked(alg, dims, maps)?;
    Ok(ModMap {
        src: sub,
        tgt: m.clone(),
        comps: bases.to_vec(),
    })
}

/// Quotient of `m` by the invariant subspaces spanned by `bases`, with the
/// projection. The quotient basis is a fixed complement of standard vectors.
pub fn quotient(m: &Module, bases: &[Matrix]) -> Result<ModMap> {
    let f = m.field().clone();
    let alg = m.alg().clone();
    let qs: Vec<Quotient> = bases
        .iter()
        .enumerate()
        .map(|(v, b)| Quotient::new(&f, m.dims()[v], &b.columns()))
        .collect();
    let sections: Vec<Matrix> = qs
        .iter()
        .enumerate()
        .map(|(v, q)| {
            let mut s = Matrix::zeros(&f, m.dims()[v], q.dim());
            for (j, &c) in q.complement.iter().enumerate() {
                s.set(c, j, f.one());
            }
            s
        })
        .collect();
    let dims: Vec<usize> = qs.iter().map(|q| q.dim()).collect();
    let maps = (0..alg.gens().len())
        .map(|g| {
            let b = alg.gen_elt(g);
            qs[b.tgt].projection().mul(m.map(g)).mul(&sections[b.src])
        })
        .collect();
    let quo = Module::unchecked(alg, dims, maps)?;
    let proj = ModMap {
        src: m.clone(),
        tgt: quo,
        comps: qs.iter().map(|q| q.projection().clone()).collect(),
    };
    if !proj.commutes() {
        return Err(Error::Precondition(
            "subspaces are not invariant under the action".into(),
        ));
    }
    Ok(proj)
}

#[derive(Clone, Debug)]
pub struct Factorization {
    /// `ker f -> src`
    pub kernel: ModMap,
    /// `src -> im f`
    pub coimage: ModMap,
    /// `im f -> tgt`
    pub image: ModMap,
    /// `tgt -> coker f`
    pub cokernel: ModMap,
}

pub fn factorize(f: &ModMap) -> Result<Factorization> {
    let kb: Vec<Matrix> = f.comps.iter().map(|c| c.kernel_basis()).collect();
    let kernel = submodule(&f.src, &kb)?;
    let ib: Vec<Matrix> = f.comps.iter().map(|c| c.column_space()).collect();
    let image = submodule(&f.tgt, &ib)?;
    let co: Vec<Matrix> = f
        .comps
        .iter()
        .zip(&ib)
        .map(|(c, b)| coords_in(b, c).expect("image contains the columns"))
        .collect();
    let coimage = ModMap {
        src: f.src.clone(),
        tgt: image.src.clone(),
        comps: co,
    };
    let cokernel = quotient(&f.tgt, &ib)?;
    Ok(Factorization {
        kernel,
        coimage,
        image,
        cokernel,
    })
}

/// Map between direct sums assembled from blocks; `block(i, j)` is the
/// component `src_parts[j] -> tgt_parts[i]` (absent means zero).
pub fn block_map(
    src: &Module,
    tgt: &Module,
    src_parts: &[Module],
    tgt_parts: &[Module],
    block: &dyn Fn(usize, usize) -> Option<ModMap>,
) -> ModMap {
    let f = src.field().clone();
    let nv = src.dims().len();
    let mut comps: Vec<Matrix> = (0..nv)
        .map(|v| Matrix::zeros(&f, tgt.dims()[v], src.dims()[v]))
        .collect();
    let mut roff = vec![0; nv];
    for (i, tp) in tgt_parts.iter().enumerate() {
        let mut coff = vec![0; nv];
        for (j, sp) in src_parts.iter().enumerate() {
            if let Some(b) = block(i, j) {
                for v in 0..nv {
                    comps[v].set_block(roff[v], coff[v], &b.comps[v]);
                }
            }
            for v in 0..nv {
                coff[v] += sp.dims()[v];
            }
        }
        for v in 0..nv {
            roff[v] += tp.dims()[v];
        }
    }
    ModMap {
        src: src.clone(),
        tgt: tgt.clone(),
        comps,
    }
}

/// Inclusions of the summands into their direct sum.
pub fn inclusions(sum: &Module, parts: &[Module]) -> Vec<ModMap> {
    (0..parts.len())
        .map(|k| {
            block_map(&parts[k], sum, &parts[k..=k], parts, &|i, _| {
                if i == k {
                    Some(ModMap::identity(&parts[k]))
                } else {
                    None
                }
            })
        })
        .collect()
}

/// Projections of a direct sum onto its summands.
pub fn projections(sum: &Module, parts: &[Module]) -> Vec<ModMap> {
    (0..parts.len())
        .map(|k| {
            block_map(sum, &parts[k], parts, &parts[k..=k], &|_, j| {
                if j == k {
                    Some(ModMap::identity(&parts[k]))
                } else {
                    None
                }
            })
        })
        .collect()
}
