//! Rank varieties `{N : [N, E_i] >= m_i}` (or `[E_i, N] >= m_i`), orbit
//! closures of gen-finite modules, the extended dimension vectors of their
//! affine-quotient presentations, and the Hom-order relative to test modules.

use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::module::{decompose, hom_dim, socle_dims, top_dims, Module, DEFAULT_SEED};
use crate::subrep::{ClosureStatus, GenClosureReport};
use crate::tilt::{CogenTilted, GenCotilted};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `[N, E_i] >= m_i`
    Into,
    /// `[E_i, N] >= m_i`
    From,
}

#[derive(Clone, Debug)]
pub struct RankProfile {
    pub dims: Vec<usize>,
    pub parts: Vec<Module>,
    pub thresholds: Vec<usize>,
    pub side: Side,
}

impl RankProfile {
    /// Thresholds read off `m` against the indecomposable summands of `e`.
    pub fn of(m: &Module, e: &Module, side: Side) -> Result<RankProfile> {
        let parts = decompose(e, DEFAULT_SEED)?.indecomposables();
        let thresholds = match side {
            Side::Into => hom_vector(m, &parts)?,
            Side::From => co_hom_vector(m, &parts)?,
        };
        Ok(RankProfile {
            dims: m.dims().to_vec(),
            parts,
            thresholds,
            side,
        })
    }
}

/// `([N, E_1], ..., [N, E_t])`.
pub fn hom_vector(n: &Module, parts: &[Module]) -> Result<Vec<usize>> {
    parts.iter().map(|e| hom_dim(n, e)).collect()
}

/// `([E_1, N], ..., [E_t, N])`.
pub fn co_hom_vector(n: &Module, parts: &[Module]) -> Result<Vec<usize>> {
    parts.iter().map(|e| hom_dim(e, n)).collect()
}

pub fn rank_variety_member(n: &Module, prof: &RankProfile) -> Result<bool> {
    if n.dims() != prof.dims.as_slice() {
        return Err(Error::Dimension(format!(
            "module has dimensions {:?}, profile {:?}",
            n.dims(),
            prof.dims
        )));
    }
    let v = match prof.side {
        Side::Into => hom_vector(n, &prof.parts)?,
        Side::From => co_hom_vector(n, &prof.parts)?,
    };
    Ok(v.iter().zip(&prof.thresholds).all(|(a, b)| a >= b))
}

/// Membership in the orbit closure of `m`, which equals the rank variety of
/// `m` against the members of `gen(m)`.
pub fn clorbit_member_genfinite(n: &Module, m: &Module, genrep: &GenClosureReport) -> Result<bool> {
    if genrep.status != ClosureStatus::CertifiedComplete {
        return Err(Error::CapReached(
            "closure is not certified complete".into(),
        ));
    }
    if n.dims() != m.dims() {
        return Err(Error::Dimension(
            "modules have different dimension vectors".into(),
        ));
    }
    let prof = RankProfile {
        dims: m.dims().to_vec(),
        thresholds: hom_vector(m, &genrep.members)?,
        parts: genrep.members.clone(),
        side: Side::Into,
    };
    rank_variety_member(n, &prof)
}

/// Dual statement: membership in the orbit closure of a cogen-finite `m`
/// through `[X, N] >= [X, M]` for the members of `cogen(m)`.
pub fn clorbit_member_cogenfinite(
    n: &Module,
    m: &Module,
    cogenrep: &GenClosureReport,
) -> Result<bool> {
    if cogenrep.status != ClosureStatus::CertifiedComplete {
        return Err(Error::CapReached(
            "closure is not certified complete".into(),
        ));
    }
    if n.dims() != m.dims() {
        return Err(Error::Dimension(
            "modules have different dimension vectors".into(),
        ));
    }
    let prof = RankProfile {
        dims: m.dims().to_vec(),
        thresholds: co_hom_vector(m, &cogenrep.members)?,
        parts: cogenrep.members.clone(),
        side: Side::From,
    };
    rank_variety_member(n, &prof)
}

/// `[d, Q(X)]` from dimensions alone: `Q(X) = (+) Q(i)^{soc_i X}` and
/// `dim Hom(N, Q(i)) = d_i`.
fn hom_into_envelope(d: &[usize], socle: &[usize]) -> usize {
    d.iter().zip(socle).map(|(a, b)| a * b).sum()
}

/// `(d, s)` with `s_j = [d, Q(E_j)] - m_j` over the non-injective summands
/// `E_j`; `thresholds` is indexed like `b.summands`.
pub fn desing_dimvec(d: &[usize], thresholds: &[usize], b: &CogenTilted) -> Result<Vec<usize>> {
    if d.len() != b.n_special() || thresholds.len() != b.summands.len() {
        return Err(Error::Dimension(
            "dimension vector or thresholds have the wrong length".into(),
        ));
    }
    let mut out = d.to_vec();
    for (k, &j) in b.non_injective.iter().enumerate() {
        let envelope_socle = socle_dims(&b.cat.objects[b.n_special() + k].d.tgt);
        let bound = hom_into_envelope(d, &envelope_socle);
        if thresholds[j] > bound {
            return Err(Error::Precondition(format!(
                "empty rank variety certificate: threshold {} for {} exceeds [d, Q] = {}",
                thresholds[j], b.labels[j], bound
            )));
        }
        out.push(bound - thresholds[j]);
    }
    Ok(out)
}

/// `(d, s)` with `s_j = [P(E_j), d] - m_j` over the non-projective summands.
pub fn desing_dimvec_generator(
    d: &[usize],
    thresholds: &[usize],
    g: &GenCotilted,
) -> Result<Vec<usize>> {
    if d.len() != g.n_special() || thresholds.len() != g.summands.len() {
        return Err(Error::Dimension(
            "dimension vector or thresholds have the wrong length".into(),
        ));
    }
    let mut out = d.to_vec();
    for (k, &j) in g.non_projective.iter().enumerate() {
        let top = top_dims(&g.cat.objects[g.n_special() + k].d.src);
        let bound = hom_into_envelope(d, &top);
        if thresholds[j] > bound {
            return Err(Error::Precondition(format!(
                "empty rank variety certificate: threshold {} for {} exceeds [P, d] = {}",
                thresholds[j], g.labels[j], bound
            )));
        }
        out.push(bound - thresholds[j]);
    }
    Ok(out)
}

/// `[N, U] >= [M, U]` for every `U` in `tests`. This is the Hom-order only
/// relative to the supplied test modules.
pub fn hom_order_leq(m: &Module, n: &Module, tests: &[Module]) -> Result<bool> {
    if m.dims() != n.dims() {
        return Err(Error::Dimension(
            "modules have different dimension vectors".into(),
        ));
    }
    for u in tests {
        if hom_dim(n, u)? < hom_dim(m, u)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `sum x_i y_i - sum_{arrows s -> t} x_s y_t` on the Gabriel quiver; this is
/// the Euler form when the algebra is hereditary.
pub fn quiver_euler_form(alg: &StructAlgebra, x: &[usize], y: &[usize]) -> Result<i64> {
    let n = alg.n_vertices();
    if x.len() != n || y.len() != n {
        return Err(Error::Dimension(format!(
            "dimension vectors must have length {n}"
        )));
    }
    let counts = alg.quiver_arrow_counts()?;
    let mut v: i64 = (0..n).map(|i| (x[i] * y[i]) as i64).sum();
    for s in 0..n {
        for t in 0..n {
            v -= (counts[s][t] * x[s] * y[t]) as i64;
        }
    }
    Ok(v)
}
