//! Point-level checks of the desingularisations: quiver Grassmannians of
//! `c(M)` mapping to `Gr(M, d)` by `U |-> eU`, and stable `B`-modules of
//! dimension `Dim c(M)` modulo `Gl_s` mapping onto the orbit closure of `M`.

use super::grassmannian::{grassmannian_report_by, GrassmannianReport, StrataBy};
use super::rankvar::clorbit_member_genfinite;
use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Elem, Field, Matrix};
use crate::module::{is_isomorphic, ModMap, Module, DEFAULT_SEED};
use crate::subrep::{gen_closure, Caps, ClosureStatus, GenClosureReport, SubmoduleRecord};
use crate::tilt::intext::{restrict_to_corner, IdentityCheck};
use crate::tilt::{
    build_b, cogenerator_completion, intermediate_extension, intermediate_extension_generator,
    stability_flags, CogenTilted, GenCotilted,
};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct DesingComponent {
    /// The stratum class this component resolves.
    pub class: Module,
    pub label: String,
    pub dimvec: Vec<usize>,
    pub upstairs: GrassmannianReport,
    /// Downstairs point of every upstairs point.
    pub images: Vec<usize>,
    pub tangent_constant: bool,
}

#[derive(Clone, Debug)]
pub struct DesingReport {
    pub downstairs: GrassmannianReport,
    pub components: Vec<DesingComponent>,
    /// Number of upstairs points over each downstairs point.
    pub fibers: Vec<usize>,
    pub checks: Vec<IdentityCheck>,
}

impl DesingReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Fibre size -> number of downstairs points.
    pub fn fiber_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &f in &self.fibers {
            *h.entry(f).or_insert(0) += 1;
        }
        h
    }

    /// Downstairs points with more than one preimage.
    pub fn multiple_preimages(&self) -> Vec<usize> {
        (0..self.fibers.len())
            .filter(|&i| self.fibers[i] > 1)
            .collect()
    }
}

/// The certified closure of `m`, refusing capped runs.
pub fn certified_closure(m: &Module) -> Result<GenClosureReport> {
    let r = gen_closure(m, Caps::for_module(m))?;
    if r.status != ClosureStatus::CertifiedComplete {
        return Err(Error::CapReached(
            r.note
                .clone()
                .unwrap_or_else(|| "closure not certified".into()),
        ));
    }
    Ok(r)
}

/// Echelon key of the subspace spanned by the columns of `cols`.
fn column_key(f: &Field, cols: &Matrix) -> Vec<u64> {
    cols.transpose()
        .row_space()
        .data()
        .iter()
        .map(|e| f.index_of(e))
        .collect()
}

/// Maps upstairs points into the downstairs Grassmannian through the
/// isomorphism `iso: eX -> M` on the special vertices.
fn image_of(
    u: &SubmoduleRecord,
    iso: &ModMap,
    index: &HashMap<Vec<Vec<u64>>, usize>,
) -> Result<usize> {
    let f = iso.src.field().clone();
    let key: Vec<Vec<u64>> = iso
        .comps
        .iter()
        .enumerate()
        .map(|(v, c)| column_key(&f, &c.mul(&u.bases[v].transpose())))
        .collect();
    index.get(&key).copied().ok_or_else(|| {
        Error::Falsified("image of an upstairs point is not a point of Gr(M, d)".into())
    })
}

fn assemble(
    downstairs: GrassmannianReport,
    components: Vec<DesingComponent>,
    open_component: &[usize],
) -> DesingReport {
    let mut fibers = vec![0; downstairs.total()];
    let mut per_component = vec![vec![0usize; downstairs.total()]; components.len()];
    for (k, c) in components.iter().enumerate() {
        for &i in &c.images {
            fibers[i] += 1;
            per_component[k][i] += 1;
        }
    }
    let mut checks = vec![];
    let constant = components.iter().all(|c| c.tangent_constant);
    checks.push(IdentityCheck {
        name: "upstairs tangent dimension constant".into(),
        pass: constant,
        detail: components
            .iter()
            .map(|c| format!("{}: {:?}", c.label, c.upstairs.tangent_histogram()))
            .collect::<Vec<_>>()
            .join("; "),
    });
    let surjective = fibers.iter().all(|&n| n > 0);
    checks.push(IdentityCheck {
        name: "every point has a preimage".into(),
        pass: surjective,
        detail: format!(
            "{} of {} points hit",
            fibers.iter().filter(|&&n| n > 0).count(),
            fibers.len()
        ),
    });
    let mut bad = vec![];
    for (i, p) in downstairs.points.iter().enumerate() {
        let k = open_component[p.stratum];
        if per_component[k][i] != 1 {
            bad.push(format!(
                "point {i}: {} preimages in its own component",
                per_component[k][i]
            ));
        }
    }
    checks.push(IdentityCheck {
        name: "bijective over each stratum".into(),
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            "one preimage per stratum point".into()
        } else {
            bad.join("; ")
        },
    });
    DesingReport {
        downstairs,
        components,
        fibers,
        checks,
    }
}

fn component(
    class: Module,
    label: String,
    cx: &Module,
    dimvec: Vec<usize>,
    iso: &ModMap,
    index: &HashMap<Vec<Vec<u64>>, usize>,
    workers: usize,
) -> Result<DesingComponent> {
    let upstairs = grassmannian_report_by(cx, &dimvec, StrataBy::Quotient, workers)?;
    let images = upstairs
        .points
        .iter()
        .map(|p| image_of(&p.sub, iso, index))
        .collect::<Result<Vec<_>>>()?;
    let tangent_constant = upstairs.tangent_histogram().len() <= 1;
    Ok(DesingComponent {
        class,
        label,
        dimvec,
        upstairs,
        images,
        tangent_constant,
    })
}

fn sub_dims(a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            x.checked_sub(*y)
                .ok_or_else(|| Error::Falsified("Dim c(N) exceeds Dim c(M)".into()))
        })
        .collect()
}

/// `Gr_B(c(M), (d, s_i)) -> Gr_A(M, d)` for every quotient class `N_i`,
/// with `(d, s_i) = Dim c(M) - Dim c(N_i)`.
pub fn grassmannian_desing_report(
    m: &Module,
    d: &[usize],
    workers: usize,
) -> Result<(CogenTilted, DesingReport)> {
    let rep = certified_closure(m)?;
    let e = cogenerator_completion(m, &rep)?;
    let b = build_b(&e)?;
    let r = grassmannian_desing_report_with(m, d, &b, workers)?;
    Ok((b, r))
}

pub fn grassmannian_desing_report_with(
    m: &Module,
    d: &[usize],
    b: &CogenTilted,
    workers: usize,
) -> Result<DesingReport> {
    let downstairs = grassmannian_report_by(m, d, StrataBy::Quotient, workers)?;
    let cm = intermediate_extension(m, b)?;
    let em = restrict_to_corner(&cm, b.alg(), &b.base, &b.corner)?;
    let iso = is_isomorphic(&em, m, DEFAULT_SEED)?
        .ok_or_else(|| Error::Falsified("ec(M) is not isomorphic to M".into()))?;
    let index = downstairs.index();
    let mut components = vec![];
    for s in &downstairs.strata {
        let cn = intermediate_extension(&s.class, b)?;
        let dimvec = sub_dims(cm.dims(), cn.dims())?;
        components.push(component(
            s.class.clone(),
            s.label.clone(),
            &cm,
            dimvec,
            &iso,
            &index,
            workers,
        )?);
    }
    let open: Vec<usize> = (0..downstairs.strata.len()).collect();
    Ok(assemble(downstairs, components, &open))
}

/// The dual construction for a generator-cotilted algebra: strata of
/// `Gr_A(N, d)` by submodule class `K_j`, components
/// `Gr_B(c(N), Dim c(K_j))`.
pub fn grassmannian_desing_report_generator(
    n: &Module,
    d: &[usize],
    g: &GenCotilted,
    workers: usize,
) -> Result<DesingReport> {
    let downstairs = grassmannian_report_by(n, d, StrataBy::Submodule, workers)?;
    let cn = intermediate_extension_generator(n, g)?;
    let en = restrict_to_corner(&cn, g.alg(), &g.base, &g.corner)?;
    let iso = is_isomorphic(&en, n, DEFAULT_SEED)?
        .ok_or_else(|| Error::Falsified("ec(N) is not isomorphic to N".into()))?;
    let index = downstairs.index();
    let mut components = vec![];
    for s in &downstairs.strata {
        let dimvec = intermediate_extension_generator(&s.class, g)?
            .dims()
            .to_vec();
        components.push(component(
            s.class.clone(),
            s.label.clone(),
            &cn,
            dimvec,
            &iso,
            &index,
            workers,
        )?);
    }
    let open: Vec<usize> = (0..downstairs.strata.len()).collect();
    Ok(assemble(downstairs, components, &open))
}

/// All representations of `alg` with dimension vector `dims` over a finite
/// field, indexed by the base-`q` digits of their matrix entries.
pub struct RepSpace {
    pub alg: Arc<StructAlgebra>,
    pub dims: Vec<usize>,
    elems: Vec<Elem>,
    shapes: Vec<(usize, usize)>,
    pub n_entries: usize,
    pub size: u64,
}

impl RepSpace {
    pub fn new(alg: &Arc<StructAlgebra>, dims: &[usize], budget: u64) -> Result<RepSpace> {
        let f = alg.field();
        let elems = f.elements().ok_or_else(|| {
            Error::Precondition("representation spaces need a finite field".into())
        })?;
        let q = elems.len() as u64;
        let shapes: Vec<(usize, usize)> = alg
            .gens()
            .iter()
            .map(|&g| (dims[alg.basis()[g].tgt], dims[alg.basis()[g].src]))
            .collect();
        let n_entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let size = q
            .checked_pow(n_entries as u32)
            .filter(|&s| s <= budget)
            .ok_or_else(|| {
                Error::Budget(format!("{q}^{n_entries} points exceed the budget {budget}"))
            })?;
        Ok(RepSpace {
            alg: alg.clone(),
            dims: dims.to_vec(),
            elems,
            shapes,
            n_entries,
            size,
        })
    }

    /// The point with the given index, if its matrices satisfy the relations.
    pub fn point(&self, mut index: u64) -> Option<Module> {
        let f = self.alg.field();
        let q = self.elems.len() as u64;
        let mut maps = vec![];
        for &(r, c) in &self.shapes {
            let mut data = vec![];
            for _ in 0..r * c {
                data.push(self.elems[(index % q) as usize].clone());
                index /= q;
            }
            maps.push(Matrix::new(f.clone(), r, c, data).expect("shape"));
        }
        Module::new(self.alg.clone(), self.dims.clone(), maps).ok()
    }

    pub fn index_of(&self, m: &Module) -> u64 {
        let f = self.alg.field();
        let q = self.elems.len() as u64;
        let mut index = 0u64;
        let mut place = 1u64;
        for g in m.maps() {
            for e in g.data() {
                index += f.index_of(e) * place;
                place = place.saturating_mul(q);
            }
        }
        index
    }
}

fn sweep<T: Send, F>(size: u64, workers: usize, f: F) -> Result<Vec<T>>
where
    F: Fn(u64) -> Result<Option<T>> + Sync + Send,
{
    let found: Vec<Result<Option<T>>> = if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?;
        pool.install(|| (0..size).into_par_iter().map(&f).collect())
    } else {
        (0..size).map(&f).collect()
    };
    let mut out = vec![];
    for r in found {
        if let Some(x) = r? {
            out.push(x);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct OrbitDesingReport {
    pub dims: Vec<usize>,
    pub dimvec: Vec<usize>,
    pub q: u64,
    /// Points of the representation space (relations included).
    pub rep_points: usize,
    /// Indices of the points in the orbit closure of `M`.
    pub members: Vec<u64>,
    /// Stable points of `rep(B, Dim c(M))` and their `Gl_s`-orbits.
    pub stable_points: usize,
    pub upstairs: usize,
    /// Fibre size over each member, in the order of `members`.
    pub fibers: Vec<usize>,
    /// Members isomorphic to `M`.
    pub open_orbit: Vec<u64>,
    pub checks: Vec<IdentityCheck>,
}

impl OrbitDesingReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn fiber_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &f in &self.fibers {
            *h.entry(f).or_insert(0) += 1;
        }
        h
    }
}

/// All elements of `GL_k` over a finite field.
fn general_linear(f: &Field, k: usize, budget: u64) -> Result<Vec<Matrix>> {
    let elems = f.elements().expect("finite field");
    let q = elems.len() as u64;
    let total = q
        .checked_pow((k * k) as u32)
        .filter(|&s| s <= budget)
        .ok_or_else(|| Error::Budget(format!("GL_{k} enumeration exceeds the budget {budget}")))?;
    let mut out = vec![];
    for mut i in 0..total {
        let mut data = vec![];
        for _ in 0..k * k {
            data.push(elems[(i % q) as usize].clone());
            i /= q;
        }
        let m = Matrix::new(f.clone(), k, k, data).expect("shape");
        if m.is_invertible() {
            out.push(m);
        }
    }
    Ok(out)
}

/// Smallest entry key over the `Gl_s`-orbit of `x`.
fn orbit_key(x: &Module, group: &[Vec<Matrix>], n_special: usize) -> Vec<u64> {
    let f = x.field();
    let key = |m: &Module| -> Vec<u64> {
        m.maps()
            .iter()
            .flat_map(|g| g.data().iter().map(|e| f.index_of(e)))
            .collect()
    };
    let mut best = key(x);
    for g in group {
        let p: Vec<Matrix> = (0..x.dims().len())
            .map(|v| {
                if v < n_special {
                    Matrix::identity(f, x.dims()[v])
                } else {
                    g[v - n_special].clone()
                }
            })
            .collect();
        let y = x.conjugate(&p).expect("invertible");
        let k = key(&y);
        if k < best {
            best = k;
        }
    }
    best
}

fn group_product(parts: &[Vec<Matrix>]) -> Vec<Vec<Matrix>> {
    let mut out: Vec<Vec<Matrix>> = vec![vec![]];
    for choices in parts {
        let mut next = vec![];
        for prefix in &out {
            for c in choices {
                let mut v = prefix.clone();
                v.push(c.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Exhaustive sweep of `rep(A, Dim M)` and of the stable points of
/// `rep(B, Dim c(M))`; the map is `X |-> eX` on `Gl_s`-orbits.
pub fn orbit_desing_report(
    m: &Module,
    b: &CogenTilted,
    genrep: &GenClosureReport,
    budget: u64,
    workers: usize,
) -> Result<OrbitDesingReport> {
    let alg = m.alg().clone();
    let f = alg.field().clone();
    let q = f
        .size()
        .ok_or_else(|| Error::Precondition("orbit sweep needs a finite field".into()))?;
    let down = RepSpace::new(&alg, m.dims(), budget)?;
    let points: Vec<(u64, bool)> = sweep(down.size, workers, |i| {
        Ok(match down.point(i) {
            Some(n) => Some((i, clorbit_member_genfinite(&n, m, genrep)?)),
            None => None,
        })
    })?;
    let members: Vec<u64> = points.iter().filter(|p| p.1).map(|p| p.0).collect();
    let cm = intermediate_extension(m, b)?;
    let n = b.n_special();
    let up = RepSpace::new(b.alg(), cm.dims(), budget)?;
    let group_parts = cm.dims()[n..]
        .iter()
        .map(|&k| general_linear(&f, k, budget))
        .collect::<Result<Vec<_>>>()?;
    let group = group_product(&group_parts);
    if (group.len() as u64).saturating_mul(up.size) > budget.saturating_mul(64) {
        return Err(Error::Budget("orbit bucketing exceeds the budget".into()));
    }
    let stable: Vec<(Vec<u64>, u64)> = sweep(up.size, workers, |i| {
        let Some(x) = up.point(i) else {
            return Ok(None);
        };
        if !stability_flags(&x, b).stable {
            return Ok(None);
        }
        let ex = restrict_to_corner(&x, b.alg(), &b.base, &b.corner)?;
        Ok(Some((orbit_key(&x, &group, n), down.index_of(&ex))))
    })?;
    let mut orbits: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for (k, img) in &stable {
        orbits.insert(k.clone(), *img);
    }
    let mut over: HashMap<u64, usize> = HashMap::new();
    for img in orbits.values() {
        *over.entry(*img).or_insert(0) += 1;
    }
    let fibers: Vec<usize> = members
        .iter()
        .map(|i| over.get(i).copied().unwrap_or(0))
        .collect();
    let member_set: std::collections::HashSet<u64> = members.iter().copied().collect();
    let mut open_orbit = vec![];
    for &i in &members {
        let p = down.point(i).expect("member is a point");
        if is_isomorphic(&p, m, DEFAULT_SEED)?.is_some() {
            open_orbit.push(i);
        }
    }
    let mut checks = vec![];
    let outside = over.keys().filter(|i| !member_set.contains(i)).count();
    checks.push(IdentityCheck {
        name: "images lie in the orbit closure".into(),
        pass: outside == 0,
        detail: format!("{outside} images outside"),
    });
    let missed = fibers.iter().filter(|&&x| x == 0).count();
    checks.push(IdentityCheck {
        name: "every orbit-closure point has a preimage".into(),
        pass: missed == 0,
        detail: format!("{missed} points missed"),
    });
    let open_ok = open_orbit.iter().all(|i| over.get(i) == Some(&1));
    checks.push(IdentityCheck {
        name: "isomorphism over the open orbit".into(),
        pass: open_ok && !open_orbit.is_empty(),
        detail: format!("{} points in the orbit of M", open_orbit.len()),
    });
    Ok(OrbitDesingReport {
        dims: m.dims().to_vec(),
        dimvec: cm.dims().to_vec(),
        q,
        rep_points: points.len(),
        members,
        stable_points: stable.len(),
        upstairs: orbits.len(),
        fibers,
        open_orbit,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::{subspace_algebra, subspace_module};

    #[test]
    fn grassmannian_desingularisation_of_example() {
        let a = subspace_algebra(2, Field::prime(2).unwrap()).unwrap();
        let m = subspace_module(&a).unwrap();
        let (_, r) = grassmannian_desing_report(&m, &[1, 1, 1], 2).unwrap();
        assert!(r.pass(), "{:?}", r.checks);
        let mut up: Vec<(usize, Vec<(usize, usize)>)> = r
            .components
            .iter()
            .map(|c| {
                (
                    c.upstairs.total(),
                    c.upstairs.tangent_histogram().into_iter().collect(),
                )
            })
            .collect();
        up.sort();
        assert_eq!(up, vec![(3, vec![(1, 3)]), (9, vec![(2, 9)])]);
        assert_eq!(
            r.fiber_histogram().into_iter().collect::<Vec<_>>(),
            vec![(1, 10), (2, 1)]
        );
        let two = r.fibers.iter().position(|&x| x == 2).unwrap();
        assert_eq!(r.downstairs.points[two].tangent, 3);
    }

    #[test]
    fn orbit_desingularisation_of_example() {
        let a = subspace_algebra(2, Field::prime(2).unwrap()).unwrap();
        let m = subspace_module(&a).unwrap();
        let rep = certified_closure(&m).unwrap();
        let b = build_b(&cogenerator_completion(&m, &rep).unwrap()).unwrap();
        let r = orbit_desing_report(&m, &b, &rep, 1 << 20, 2).unwrap();
        assert_eq!(r.rep_points, 256);
        assert_eq!(r.members.len(), 46);
        assert_eq!(r.upstairs, 48);
        assert_eq!(
            r.fiber_histogram().into_iter().collect::<Vec<_>>(),
            vec![(1, 45), (3, 1)]
        );
        assert!(r.pass(), "{:?}", r.checks);
    }
}
