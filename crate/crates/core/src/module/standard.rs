//! Indecomposable projectives, injectives and simples; socle, radical and
//! top; minimal injective envelopes and projective covers.

use super::hom::block_map;
use super::repr::{ModMap, Module};
use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::linalg::matalg::Quotient;
use crate::linalg::{Elem, Matrix};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Projective,
    Injective,
    Simple,
}

pub fn standard_module(alg: &Arc<StructAlgebra>, kind: StandardKind, v: usize) -> Result<Module> {
    if v >= alg.n_vertices() {
        return Err(Error::Precondition(format!("no vertex {v}")));
    }
    Ok(match kind {
        StandardKind::Projective => projective(alg, v),
        StandardKind::Injective => injective(alg, v),
        StandardKind::Simple => simple(alg, v),
    })
}

/// Basis of `A e_v` grouped by target vertex.
pub fn projective_basis(alg: &StructAlgebra, v: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]; alg.n_vertices()];
    for i in alg.basis_from(v) {
        out[alg.basis()[i].tgt].push(i);
    }
    out
}

/// `P(v) = A e_v` acting by left multiplication.
pub fn projective(alg: &Arc<StructAlgebra>, v: usize) -> Module {
    let f = alg.field().clone();
    let pb = projective_basis(alg, v);
    let dims: Vec<usize> = pb.iter().map(|l| l.len()).collect();
    let maps = alg
        .gens()
        .iter()
        .map(|&gi| {
            let g = &alg.basis()[gi];
            let mut m = Matrix::zeros(&f, dims[g.tgt], dims[g.src]);
            for (c, &b) in pb[g.src].iter().enumerate() {
                for (r, x) in alg.product(gi, b) {
                    let row = pb[g.tgt]
                        .iter()
                        .position(|&k| k == *r)
                        .expect("homogeneous product");
                    m.set(row, c, x.clone());
                }
            }
            m
        })
        .collect();
    Module::unchecked(alg.clone(), dims, maps).expect("shapes")
}

/// `Q(v) = D(e_v A)`, the dual of the opposite projective.
pub fn injective(alg: &Arc<StructAlgebra>, v: usize) -> Module {
    projective(&alg.opposite_arc(), v)
        .dual_over(alg)
        .expect("opposite")
}

pub fn simple(alg: &Arc<StructAlgebra>, v: usize) -> Module {
    let f = alg.field().clone();
    let dims: Vec<usize> = (0..alg.n_vertices()).map(|w| usize::from(w == v)).collect();
    let maps = alg
        .gens()
        .iter()
        .map(|&gi| {
            let g = &alg.basis()[gi];
            Matrix::zeros(&f, dims[g.tgt], dims[g.src])
        })
        .collect();
    Module::unchecked(alg.clone(), dims, maps).expect("shapes")
}

/// Right multiplication by `y`, an element of `e_u A e_v`, as a map
/// `P(u) -> P(v)`.
pub fn projective_hom(alg: &Arc<StructAlgebra>, u: usize, v: usize, y: &[Elem]) -> ModMap {
    let f = alg.field().clone();
    let pu = projective(alg, u);
    let pv = projective(alg, v);
    let bu = projective_basis(alg, u);
    let bv = projective_basis(alg, v);
    let comps = (0..alg.n_vertices())
        .map(|w| {
            let mut m = Matrix::zeros(&f, bv[w].len(), bu[w].len());
            for (c, &b) in bu[w].iter().enumerate() {
                for (yi, yc) in y.iter().enumerate() {
                    if f.is_zero(yc) {
                        continue;
                    }
                    for (r, x) in alg.product(b, yi) {
                        let row = bv[w]
                            .iter()
                            .position(|&k| k == *r)
                            .expect("homogeneous product");
                        let val = f.add(m.get(row, c), &f.mul(x, yc));
                        m.set(row, c, val);
                    }
                }
            }
            m
        })
        .collect();
    ModMap {
        src: pu,
        tgt: pv,
        comps,
    }
}

/// Per vertex, a basis of `soc_v X`: vectors killed by every generator
/// leaving `v`.
pub fn socle_bases(m: &Module) -> Vec<Matrix> {
    let alg = m.alg();
    let f = m.field();
    (0..alg.n_vertices())
        .map(|v| {
            let out: Vec<Matrix> = (0..alg.gens().len())
                .filter(|&g| alg.gen_elt(g).src == v)
                .map(|g| m.map(g).clone())
                .collect();
            if out.is_empty() {
                Matrix::identity(f, m.dims()[v])
            } else {
                Matrix::vstack_all(f, m.dims()[v], &out).kernel_basis()
            }
        })
        .collect()
}

/// Per vertex, a basis of `e_v rad X`: the span of images of generators
/// entering `v`.
pub fn radical_bases(m: &Module) -> Vec<Matrix> {
    let alg = m.alg();
    let f = m.field();
    (0..alg.n_vertices())
        .map(|v| {
            let inc: Vec<Matrix> = (0..alg.gens().len())
                .filter(|&g| alg.gen_elt(g).tgt == v)
                .map(|g| m.map(g).clone())
                .collect();
            if inc.is_empty() {
                Matrix::zeros(f, m.dims()[v], 0)
            } else {
                Matrix::hstack_all(f, m.dims()[v], &inc).column_space()
            }
        })
        .collect()
}

pub fn socle_dims(m: &Module) -> Vec<usize> {
    socle_bases(m).iter().map(|b| b.cols()).collect()
}

pub fn top_dims(m: &Module) -> Vec<usize> {
    radical_bases(m)
        .iter()
        .zip(m.dims())
        .map(|(b, d)| d - b.cols())
        .collect()
}

/// Standard basis vectors complementing the radical at each vertex.
pub fn top_complement(m: &Module) -> Vec<Matrix> {
    let f = m.field();
    radical_bases(m)
        .iter()
        .enumerate()
        .map(|(v, b)| {
            let q = Quotient::new(f, m.dims()[v], &b.columns());
            let mut s = Matrix::zeros(f, m.dims()[v], q.dim());
            for (j, &c) in q.complement.iter().enumerate() {
                s.set(c, j, f.one());
            }
            s
        })
        .collect()
}

/// A map into or out of a direct sum of indecomposable projectives or
/// injectives, listing the vertex of each summand.
#[derive(Clone, Debug)]
pub struct SumMap {
    pub map: ModMap,
    pub vertices: Vec<usize>,
}

/// Minimal injective envelope `m -> (+)_v Q(v)^{dim soc_v m}`, extending the
/// socle inclusion. Minimality is verified, not assumed.
pub fn injective_envelope(m: &Module) -> Result<SumMap> {
    let alg = m.alg();
    let f = m.field().clone();
    let op = alg.opposite_arc();
    let soc = socle_bases(m);
    let mut parts = vec![];
    let mut vertices = vec![];
    let mut pieces: Vec<ModMap> = vec![];
    for v in 0..alg.n_vertices() {
        let s = &soc[v];
        if s.cols() == 0 {
            continue;
        }
        // functionals on e_v m restricting to the dual basis of the socle
        let (lt, _) = s
            .transpose()
            .solve_affine(&Matrix::identity(&f, s.cols()))?
            .expect("socle basis is independent");
        let lambda = lt.transpose();
        let qv = injective(alg, v);
        let duals = projective_basis(&op, v);
        for k in 0..s.cols() {
            let row = Matrix::from_rows(&f, m.dims()[v], &[lambda.row(k).to_vec()]);
            let comps = (0..alg.n_vertices())
                .map(|w| {
                    let rows: Vec<Vec<Elem>> = duals[w]
                        .iter()
                        .map(|&b| row.mul(m.act(b)).row(0).to_vec())
                        .collect();
                    Matrix::from_rows(&f, m.dims()[w], &rows)
                })
                .collect();
            pieces.push(ModMap::new(m.clone(), qv.clone(), comps)?);
            parts.push(qv.clone());
            vertices.push(v);
        }
    }
    let target = if parts.is_empty() {
        Module::zero(alg)
    } else {
        Module::direct_sum(&parts)?
    };
    let map = block_map(m, &target, std::slice::from_ref(m), &parts, &|i, _| {
        Some(pieces[i].clone())
    });
    if !map.is_mono() || socle_dims(&target) != socle_dims(m) {
        return Err(Error::Falsified("injective envelope is not minimal".into()));
    }
    Ok(SumMap { map, vertices })
}

/// Minimal projective cover `(+)_v P(v)^{dim top_v m} -> m`, sending the
/// idempotents to a complement of the radical.
pub fn projective_cover(m: &Module) -> Result<SumMap> {
    let alg = m.alg();
    let f = m.field().clone();
    let tops = top_complement(m);
    let mut parts = vec![];
    let mut vertices = vec![];
    let mut pieces: Vec<ModMap> = vec![];
    for v in 0..alg.n_vertices() {
        let pv = projective(alg, v);
        let pb = projective_basis(alg, v);
        for k in 0..tops[v].cols() {
            let x = Matrix::column_vector(&f, &tops[v].col(k));
            let comps = (0..alg.n_vertices())
                .map(|w| {
                    let cols: Vec<Vec<Elem>> =
                        pb[w].iter().map(|&b| m.act(b).mul(&x).col(0)).collect();
                    Matrix::from_cols(&f, m.dims()[w], &cols)
                })
                .collect();
            pieces.push(ModMap::new(pv.clone(), m.clone(), comps)?);
            parts.push(pv.clone());
            vertices.push(v);
        }
    }
    let source = if parts.is_empty() {
        Module::zero(alg)
    } else {
        Module::direct_sum(&parts)?
    };
    let map = block_map(&source, m, &parts, std::slice::from_ref(m), &|_, j| {
        Some(pieces[j].clone())
    });
    if !map.is_epi() || top_dims(&source) != top_dims(m) {
        return Err(Error::Falsified("projective cover is not minimal".into()));
    }
    Ok(SumMap { map, vertices })
}

pub fn is_projective(m: &Module) -> bool {
    let top = top_dims(m);
    let alg = m.alg();
    let d: usize = (0..alg.n_vertices())
        .map(|v| top[v] * alg.basis_from(v).len())
        .sum();
    d == m.dim()
}

pub fn is_injective(m: &Module) -> bool {
    is_projective(&m.dual())
}
