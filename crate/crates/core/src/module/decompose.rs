//! Krull-Schmidt decomposition and isomorphism testing.
//!
//! A module is split along an endomorphism `w` that is neither nilpotent nor
//! invertible (Fitting: `ker w^N (+) im w^N`). Such a `w` is sought among
//! basis endomorphisms, their products and sums and seeded random
//! combinations, after shifting by a coprime factor of the minimal
//! polynomial. Locality of the endomorphism ring is decided by the radical.

use super::hom::{block_map, hom_space, submodule, HomSpace};
use super::repr::{ModMap, Module};
use super::standard::{socle_dims, top_dims};
use crate::error::{Error, Result};
use crate::linalg::matalg::{Locality, MatrixAlgebra};
use crate::linalg::poly::{coprime_factor, degree, minimal_polynomial};
use crate::linalg::Matrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x005e_ed0f_7117;
const RANDOM_TRIALS: usize = 200;

/// Indecomposable summands with multiplicities and an explicit isomorphism
/// from their direct sum onto the module.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// One representative per isomorphism class with its multiplicity.
    pub classes: Vec<(Module, usize)>,
    /// Inclusions of all indecomposable summands, grouped by class.
    pub pieces: Vec<ModMap>,
    /// `(+) pieces -> m`, an isomorphism.
    pub witness: ModMap,
}

impl Decomposition {
    pub fn indecomposables(&self) -> Vec<Module> {
        self.pieces.iter().map(|p| p.src.clone()).collect()
    }

    pub fn n_summands(&self) -> usize {
        self.pieces.len()
    }
}

pub fn end_algebra(h: &HomSpace) -> MatrixAlgebra {
    let n = h.src.dim();
    MatrixAlgebra::new(h.src.field(), n, h.basis.iter().map(|b| b.full()).collect())
}

pub fn is_indecomposable(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let end = hom_space(m, m)?;
    match end_algebra(&end).locality()? {
        Locality::Local(_) => Ok(true),
        Locality::NotLocal => Ok(false),
        Locality::Undecided => {
            Ok(split(m, &mut ChaCha8Rng::seed_from_u64(DEFAULT_SEED)).map(|v| v.len() == 1)?)
        }
    }
}

pub fn decompose(m: &Module, seed: u64) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces = split(m, &mut rng)?;
    // deterministic order: by invariants, then grouped into iso classes
    pieces.sort_by_key(|p| invariant_key(&p.src));
    let mut classes: Vec<(Module, usize)> = vec![];
    let mut grouped: Vec<Vec<ModMap>> = vec![];
    for p in pieces {
        let mut placed = false;
        for (k, (rep, mult)) in classes.iter_mut().enumerate() {
            if invariant_key(rep) == invariant_key(&p.src)
                && iso_indecomposable(rep, &p.src)?.is_some()
            {
                *mult += 1;
                grouped[k].push(p.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((p.src.clone(), 1));
            grouped.push(vec![p]);
        }
    }
    let pieces: Vec<ModMap> = grouped.into_iter().flatten().collect();
    let witness = assemble(m, &pieces)?;
    if !witness.is_iso() {
        return Err(Error::Decomposition(
            "summands do not recombine to the module".into(),
        ));
    }
    Ok(Decomposition {
        classes,
        pieces,
        witness,
    })
}

fn assemble(m: &Module, pieces: &[ModMap]) -> Result<ModMap> {
    let parts: Vec<Module> = pieces.iter().map(|p| p.src.clone()).collect();
    let sum = if parts.is_empty() {
        Module::zero(m.alg())
    } else {
        Module::direct_sum(&parts)?
    };
    Ok(block_map(
        &sum,
        m,
        &parts,
        std::slice::from_ref(m),
        &|_, j| Some(pieces[j].clone()),
    ))
}

/// Invariants used to bucket modules before a full isomorphism test:
/// dimensions, socle and top dimensions (that is, `[S(i), -]` and `[-, S(i)]`).
pub fn invariant_key(m: &Module) -> (usize, Vec<usize>, Vec<usize>, Vec<usize>) {
    (m.dim(), m.dims().to_vec(), socle_dims(m), top_dims(m))
}

/// Inclusions of indecomposable summands whose images sum directly to `m`.
fn split(m: &Module, rng: &mut ChaCha8Rng) -> Result<Vec<ModMap>> {
    if m.is_zero() {
        return Ok(vec![]);
    }
    let end = hom_space(m, m)?;
    let locality = end_algebra(&end).locality()?;
    if let Locality::Local(_) = locality {
        return Ok(vec![ModMap::identity(m)]);
    }
    let Some((a, b)) = find_split(m, &end, rng)? else {
        return Err(Error::Decomposition(match locality {
            Locality::Undecided => format!(
                "no splitting endomorphism found in {RANDOM_TRIALS} trials; the endomorphism ring may be a non-split division algebra"
            ),
            _ => format!("endomorphism ring is not local but no splitting endomorphism found in {RANDOM_TRIALS} trials"),
        }));
    };
    let mut out = vec![];
    for inc in [a, b] {
        for p in split(&inc.src, rng)? {
            out.push(p.then(&inc));
        }
    }
    Ok(out)
}

fn find_split(
    m: &Module,
    end: &HomSpace,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(ModMap, ModMap)>> {
    let basis = &end.basis;
    for z in basis {
        if let Some(s) = try_split(m, z, rng)? {
            return Ok(Some(s));
        }
    }
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if let Some(s) = try_split(m, &basis[j].then(&basis[i]), rng)? {
                return Ok(Some(s));
            }
            if i < j {
                if let Some(s) = try_split(m, &basis[i].add(&basis[j]), rng)? {
                    return Ok(Some(s));
                }
            }
        }
    }
    for _ in 0..RANDOM_TRIALS {
        let z = end.random(rng);
        if let Some(s) = try_split(m, &z, rng)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

fn try_split(m: &Module, z: &ModMap, rng: &mut ChaCha8Rng) -> Result<Option<(ModMap, ModMap)>> {
    let f = m.field().clone();
    let full = z.full();
    let mp = minimal_polynomial(&full);
    let deg = degree(&f, &mp).unwrap_or(0);
    if deg == 0 {
        return Ok(None);
    }
    let nilpotent = mp.iter().take(deg).all(|c| f.is_zero(c));
    if nilpotent {
        return Ok(None);
    }
    let w = if f.is_zero(&mp[0]) {
        z.clone()
    } else {
        let Some(g) = coprime_factor(&f, &mp, rng) else {
            return Ok(None);
        };
        let comps = z
            .comps
            .iter()
            .map(|c| crate::linalg::poly::eval_matrix(&f, &g, c))
            .collect();
        ModMap {
            src: m.clone(),
            tgt: m.clone(),
            comps,
        }
    };
    let n = m.dim() as u64;
    let powered: Vec<Matrix> = w.comps.iter().map(|c| c.pow(n.max(1))).collect();
    let kb: Vec<Matrix> = powered.iter().map(|c| c.kernel_basis()).collect();
    let ib: Vec<Matrix> = powered.iter().map(|c| c.column_space()).collect();
    let kd: usize = kb.iter().map(|b| b.cols()).sum();
    if kd == 0 || kd == m.dim() {
        return Ok(None);
    }
    Ok(Some((submodule(m, &kb)?, submodule(m, &ib)?)))
}

/// Isomorphism between modules with local endomorphism rings: some basis
/// pair `(f, g)` has `g f` invertible exactly when they are isomorphic.
pub fn iso_indecomposable(a: &Module, b: &Module) -> Result<Option<ModMap>> {
    if a.dims() != b.dims() {
        return Ok(None);
    }
    let ab = hom_space(a, b)?;
    if ab.dim() == 0 {
        return Ok(if a.is_zero() {
            Some(ModMap::zero(a, b))
        } else {
            None
        });
    }
    let ba = hom_space(b, a)?;
    for f in &ab.basis {
        if f.is_iso() {
            return Ok(Some(f.clone()));
        }
        for g in &ba.basis {
            if f.then(g).is_iso() {
                return Ok(Some(f.clone()));
            }
        }
    }
    Ok(None)
}

/// Decides isomorphism, returning a witness `x -> y`.
pub fn is_isomorphic(x: &Module, y: &Module, seed: u64) -> Result<Option<ModMap>> {
    x.same_algebra(y)?;
    if invariant_key(x) != invariant_key(y) {
        return Ok(None);
    }
    if x.is_zero() {
        return Ok(Some(ModMap::zero(x, y)));
    }
    let h = hom_space(x, y)?;
    if h.dim() == 0 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let f = h.random(&mut rng);
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    let dx = decompose(x, seed)?;
    let dy = decompose(y, seed)?;
    if dx.pieces.len() != dy.pieces.len() {
        return Ok(None);
    }
    let mut used = vec![false; dy.pieces.len()];
    let mut isos = vec![];
    for p in &dx.pieces {
        let mut found = None;
        for (j, q) in dy.pieces.iter().enumerate() {
            if used[j] || invariant_key(&p.src) != invariant_key(&q.src) {
                continue;
            }
            if let Some(iso) = iso_indecomposable(&p.src, &q.src)? {
                found = Some((j, iso));
                break;
            }
        }
        let Some((j, iso)) = found else {
            return Ok(None);
        };
        used[j] = true;
        isos.push((j, iso));
    }
    let xparts: Vec<Module> = dx.pieces.iter().map(|p| p.src.clone()).collect();
    let yparts: Vec<Module> = dy.pieces.iter().map(|p| p.src.clone()).collect();
    let middle = block_map(
        &dx.witness.src,
        &dy.witness.src,
        &xparts,
        &yparts,
        &|i, j| isos.get(j).filter(|(t, _)| *t == i).map(|(_, m)| m.clone()),
    );
    let back = dx.witness.inverse().expect("witness is an isomorphism");
    let w = back.then(&middle).then(&dy.witness);
    debug_assert!(w.is_iso());
    Ok(Some(w))
}
