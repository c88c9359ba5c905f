//! Syzygies, Ext groups, projective and injective dimension, and the
//! Auslander-Reiten translates.

use super::hom::{block_map, factorize, hom_dim, hom_space};
use super::repr::{ModMap, Module};
use super::standard::{
    is_projective, projective, projective_basis, projective_cover, projective_hom,
};
use crate::error::{Error, Result};
use crate::linalg::{Elem, Matrix};

/// First syzygy: the kernel of a minimal projective cover, with its
/// inclusion into the cover and the cover itself.
pub fn syzygy(m: &Module) -> Result<(ModMap, ModMap)> {
    let cover = projective_cover(m)?;
    let fac = factorize(&cover.map)?;
    Ok((fac.kernel, cover.map))
}

#[derive(Clone, Debug)]
pub struct Ext1 {
    pub dim: usize,
    /// Inclusion `Omega m -> P_0` of the first syzygy.
    pub syzygy: ModMap,
    /// Maps `Omega m -> n` whose classes form a basis of `Ext^1(m, n)`.
    pub cocycles: Vec<ModMap>,
}

/// `dim Ext^1(m, n) = [Omega m, n] - [P_0, n] + [m, n]`.
pub fn ext1_dim(m: &Module, n: &Module) -> Result<usize> {
    m.same_algebra(n)?;
    let (omega, cover) = syzygy(m)?;
    Ok(hom_dim(&omega.src, n)? + hom_dim(m, n)? - hom_dim(&cover.src, n)?)
}

/// `Ext^1(m, n)` with cocycle representatives.
pub fn ext1(m: &Module, n: &Module) -> Result<Ext1> {
    m.same_algebra(n)?;
    let f = m.field().clone();
    let (omega, _) = syzygy(m)?;
    let on = hom_space(&omega.src, n)?;
    let pn = hom_space(&omega.tgt, n)?;
    let restricted: Vec<Vec<Elem>> = pn.basis.iter().map(|h| on.coords(&omega.then(h))).collect();
    let k = on.dim();
    let piv = if restricted.is_empty() {
        vec![]
    } else {
        Matrix::from_rows(&f, k, &restricted).rref().1
    };
    let cocycles: Vec<ModMap> = (0..k)
        .filter(|c| !piv.contains(c))
        .map(|c| on.basis[c].clone())
        .collect();
    Ok(Ext1 {
        dim: cocycles.len(),
        syzygy: omega,
        cocycles,
    })
}

/// `dim Ext^i(m, n)` via iterated syzygies (`i = 0` gives `[m, n]`).
pub fn ext_dim(m: &Module, n: &Module, i: usize) -> Result<usize> {
    if i == 0 {
        return hom_dim(m, n);
    }
    let mut cur = m.clone();
    for _ in 1..i {
        cur = syzygy(&cur)?.0.src;
    }
    ext1_dim(&cur, n)
}

/// Projective dimension, or `None` if it exceeds `bound`.
pub fn pdim(m: &Module, bound: usize) -> Result<Option<usize>> {
    let mut cur = m.clone();
    for d in 0..=bound {
        if is_projective(&cur) {
            return Ok(Some(d));
        }
        cur = syzygy(&cur)?.0.src;
    }
    Ok(None)
}

pub fn idim(m: &Module, bound: usize) -> Result<Option<usize>> {
    pdim(&m.dual(), bound)
}

/// Minimal projective presentation `P_1 -> P_0 -> m -> 0` as the matrix of
/// elements `y[k][j]` of `e_{u_k} A e_{v_j}`: the summand `P(u_k)` of `P_1`
/// maps to the summand `P(v_j)` of `P_0` by right multiplication.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub entries: Vec<Vec<Vec<Elem>>>,
}

pub fn minimal_presentation(m: &Module) -> Result<Presentation> {
    let alg = m.alg();
    let f = m.field().clone();
    let cover0 = projective_cover(m)?;
    let omega = factorize(&cover0.map)?.kernel;
    let cover1 = projective_cover(&omega.src)?;
    let d = cover1.map.then(&omega);
    let p0 = cover0.vertices.clone();
    let p1 = cover1.vertices.clone();
    // offsets of summands inside P_0 and P_1 at each vertex
    let sizes =
        |v: usize| -> Vec<usize> { projective_basis(alg, v).iter().map(|l| l.len()).collect() };
    let s0: Vec<Vec<usize>> = p0.iter().map(|&v| sizes(v)).collect();
    let s1: Vec<Vec<usize>> = p1.iter().map(|&v| sizes(v)).collect();
    let mut entries = vec![vec![vec![f.zero(); alg.dim()]; p0.len()]; p1.len()];
    for (k, &u) in p1.iter().enumerate() {
        let off1: usize = s1[..k].iter().map(|s| s[u]).sum();
        let idem_pos = projective_basis(alg, u)[u]
            .iter()
            .position(|&b| b == alg.idempotent(u))
            .expect("idempotent");
        let col = d.comps[u].col(off1 + idem_pos);
        for (j, &v) in p0.iter().enumerate() {
            let off0: usize = s0[..j].iter().map(|s| s[u]).sum();
            for (r, &b) in projective_basis(alg, v)[u].iter().enumerate() {
                entries[k][j][b] = col[off0 + r].clone();
            }
        }
    }
    Ok(Presentation { p0, p1, entries })
}

/// Transpose `Tr m` over the opposite algebra: the cokernel of the dual
/// presentation.
pub fn transpose(m: &Module) -> Result<Module> {
    let op = m.alg().opposite_arc();
    let pres = minimal_presentation(m)?;
    if pres.p1.is_empty() {
        return Ok(Module::zero(&op));
    }
    let src_parts: Vec<Module> = pres.p0.iter().map(|&v| projective(&op, v)).collect();
    let tgt_parts: Vec<Module> = pres.p1.iter().map(|&u| projective(&op, u)).collect();
    let src = if src_parts.is_empty() {
        Module::zero(&op)
    } else {
        Module::direct_sum(&src_parts)?
    };
    let tgt = Module::direct_sum(&tgt_parts)?;
    let map = block_map(&src, &tgt, &src_parts, &tgt_parts, &|k, j| {
        Some(projective_hom(
            &op,
            pres.p0[j],
            pres.p1[k],
            &pres.entries[k][j],
        ))
    });
    if !map.commutes() {
        return Err(Error::Falsified(
            "dual presentation is not a module map".into(),
        ));
    }
    Ok(factorize(&map)?.cokernel.tgt)
}

/// `tau m = D Tr m`.
pub fn tau(m: &Module) -> Result<Module> {
    transpose(m)?.dual_over(m.alg())
}

/// `tau^- m = Tr D m`, computed as `D tau_{A^op} D m`.
pub fn tau_inv(m: &Module) -> Result<Module> {
    tau(&m.dual())?.dual_over(m.alg())
}
