//! Exhaustive enumeration of submodules over a finite field.
//!
//! Vertices are visited in order. At vertex `v` the subspace must contain
//! the images of already chosen subspaces under generators entering `v`, and
//! must map into already chosen subspaces under generators leaving `v`; every
//! subspace between these bounds is tried. Results are returned in canonical
//! order: lexicographic on the reduced echelon bases, vertex by vertex.

use crate::error::{Error, Result};
use crate::linalg::matalg::Quotient;
use crate::linalg::matrix::coords_in;
use crate::linalg::{Elem, Field, Matrix};
use crate::module::decompose::invariant_key;
use crate::module::{is_isomorphic, quotient, submodule, ModMap, Module, DEFAULT_SEED};
use rayon::prelude::*;

/// A submodule given by a reduced echelon row basis at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleRecord {
    pub bases: Vec<Matrix>,
    pub dims: Vec<usize>,
}

impl SubmoduleRecord {
    /// Bases with the basis vectors as columns.
    pub fn column_bases(&self) -> Vec<Matrix> {
        self.bases.iter().map(|b| b.transpose()).collect()
    }

    pub fn inclusion(&self, m: &Module) -> Result<ModMap> {
        submodule(m, &self.column_bases())
    }

    pub fn projection(&self, m: &Module) -> Result<ModMap> {
        quotient(m, &self.column_bases())
    }

    pub fn key(&self, f: &Field) -> Vec<Vec<u64>> {
        self.bases
            .iter()
            .map(|b| b.data().iter().map(|e| f.index_of(e)).collect())
            .collect()
    }
}

/// All subspaces of `F^k` of dimension `r`, as reduced echelon row bases.
pub fn subspaces(f: &Field, k: usize, r: usize) -> Result<Vec<Matrix>> {
    let elems = f
        .elements()
        .ok_or_else(|| Error::Precondition("enumeration needs a finite field".into()))?;
    let mut out = vec![];
    if r > k {
        return Ok(out);
    }
    let mut pivots = vec![];
    pivot_sets(k, r, 0, &mut pivots, &mut |piv| {
        let free: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| {
                ((piv[i] + 1)..k)
                    .filter(|c| !piv.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let total = (elems.len() as u64).pow(free.len() as u32);
        for mut idx in 0..total {
            let mut m = Matrix::zeros(f, r, k);
            for (i, &p) in piv.iter().enumerate() {
                m.set(i, p, f.one());
            }
            for &(i, c) in &free {
                let q = elems.len() as u64;
                m.set(i, c, elems[(idx % q) as usize].clone());
                idx /= q;
            }
            out.push(m);
        }
    });
    Ok(out)
}

fn pivot_sets(
    k: usize,
    r: usize,
    start: usize,
    cur: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if cur.len() == r {
        emit(cur);
        return;
    }
    for c in start..k {
        if k - c < r - cur.len() {
            break;
        }
        cur.push(c);
        pivot_sets(k, r, c + 1, cur, emit);
        cur.pop();
    }
}

struct Enumerator<'a> {
    m: &'a Module,
    target: Option<&'a [usize]>,
}

impl<'a> Enumerator<'a> {
    fn field(&self) -> &Field {
        self.m.field()
    }

    /// Candidate subspaces at vertex `v` given the choices at vertices `< v`.
    fn choices(&self, v: usize, chosen: &[Matrix]) -> Result<Vec<Matrix>> {
        let f = self.field().clone();
        let alg = self.m.alg();
        let dv = self.m.dims()[v];
        // lower bound: images of chosen subspaces
        let mut low_rows: Vec<Vec<Elem>> = vec![];
        // upper bound: preimages of chosen subspaces
        let mut constraints: Vec<Vec<Elem>> = vec![];
        for g in 0..alg.gens().len() {
            let b = alg.gen_elt(g);
            if b.tgt == v && b.src < v {
                let img = chosen[b.src].mul(&self.m.map(g).transpose());
                for i in 0..img.rows() {
                    low_rows.push(img.row(i).to_vec());
                }
            }
            if b.src == v && b.tgt < v {
                let ann = chosen[b.tgt].kernel_basis().transpose();
                let c = ann.mul(self.m.map(g));
                for i in 0..c.rows() {
                    constraints.push(c.row(i).to_vec());
                }
            }
        }
        let low = if low_rows.is_empty() {
            Matrix::zeros(&f, 0, dv)
        } else {
            Matrix::from_rows(&f, dv, &low_rows).row_space()
        };
        let pre = if constraints.is_empty() {
            Matrix::identity(&f, dv)
        } else {
            Matrix::from_rows(&f, dv, &constraints).kernel_basis()
        };
        let Some(wc) = coords_in(&pre, &low.transpose()) else {
            return Ok(vec![]);
        };
        let p = pre.cols();
        let q = Quotient::new(&f, p, &wc.columns());
        let comp = pre.select_cols(&q.complement);
        let k = comp.cols();
        let w = low.rows();
        let ranks: Vec<usize> = match self.target {
            Some(d) => {
                if d[v] < w || d[v] - w > k {
                    return Ok(vec![]);
                }
                vec![d[v] - w]
            }
            None => (0..=k).collect(),
        };
        let loops: Vec<usize> = (0..alg.gens().len())
            .filter(|&g| alg.gen_elt(g).src == v && alg.gen_elt(g).tgt == v)
            .collect();
        let mut out = vec![];
        for r in ranks {
            for s in subspaces(&f, k, r)? {
                let lifted = s.mul(&comp.transpose());
                let u = if w == 0 { lifted } else { low.vstack(&lifted) };
                let u = if u.rows() == 0 { u } else { u.row_space() };
                if loops.iter().all(|&g| {
                    let img = u.mul(&self.m.map(g).transpose());
                    u.rows() == 0 || u.vstack(&img).rank() == u.rows()
                }) {
                    out.push(u);
                }
            }
        }
        Ok(out)
    }

    fn dfs(
        &self,
        v: usize,
        chosen: &mut Vec<Matrix>,
        out: &mut Vec<SubmoduleRecord>,
    ) -> Result<()> {
        if v == self.m.dims().len() {
            out.push(SubmoduleRecord {
                bases: chosen.clone(),
                dims: chosen.iter().map(|b| b.rows()).collect(),
            });
            return Ok(());
        }
        for u in self.choices(v, chosen)? {
            chosen.push(u);
            self.dfs(v + 1, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }
}

/// Every submodule of `m` (of dimension vector `d` when given) exactly once,
/// in canonical order. Work is split across `workers` threads by the choice
/// at the first vertex; the result does not depend on `workers`.
pub fn enumerate_submodules(
    m: &Module,
    d: Option<&[usize]>,
    workers: usize,
) -> Result<Vec<SubmoduleRecord>> {
    let f = m.field().clone();
    if !f.is_finite() {
        return Err(Error::Precondition(
            "submodule enumeration needs a finite field".into(),
        ));
    }
    if let Some(d) = d {
        if d.len() != m.dims().len() {
            return Err(Error::Dimension("dimension vector length".into()));
        }
        if d.iter().zip(m.dims()).any(|(a, b)| a > b) {
            return Ok(vec![]);
        }
    }
    let e = Enumerator { m, target: d };
    let mut out: Vec<SubmoduleRecord> = if m.dims().is_empty() {
        vec![SubmoduleRecord {
            bases: vec![],
            dims: vec![],
        }]
    } else {
        let first = e.choices(0, &[])?;
        let run = |u: &Matrix| -> Result<Vec<SubmoduleRecord>> {
            let mut local = vec![];
            let mut chosen = vec![u.clone()];
            e.dfs(1, &mut chosen, &mut local)?;
            Ok(local)
        };
        let parts: Vec<Result<Vec<SubmoduleRecord>>> = if workers > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::Io(e.to_string()))?;
            pool.install(|| first.par_iter().map(run).collect())
        } else {
            first.iter().map(run).collect()
        };
        let mut all = vec![];
        for p in parts {
            all.extend(p?);
        }
        all
    };
    out.sort_by_cached_key(|r| r.key(&f));
    Ok(out)
}

/// Submodules of dimension vector `d` grouped by the isomorphism class of
/// the quotient.
#[derive(Clone, Debug)]
pub struct Stratum {
    /// Representative quotient `m / U`.
    pub quotient: Module,
    pub count: usize,
    /// Positions of the members in the canonical enumeration.
    pub points: Vec<usize>,
}

/// Strata in order of first appearance in the canonical enumeration.
pub fn quotient_strata(m: &Module, d: &[usize], workers: usize) -> Result<Vec<Stratum>> {
    let subs = enumerate_submodules(m, Some(d), workers)?;
    let mut strata: Vec<Stratum> = vec![];
    for (i, u) in subs.iter().enumerate() {
        let n = u.projection(m)?.tgt;
        let key = invariant_key(&n);
        let mut hit = None;
        for (k, s) in strata.iter().enumerate() {
            if invariant_key(&s.quotient) == key
                && is_isomorphic(&s.quotient, &n, DEFAULT_SEED)?.is_some()
            {
                hit = Some(k);
                break;
            }
        }
        match hit {
            Some(k) => {
                strata[k].count += 1;
                strata[k].points.push(i);
            }
            None => strata.push(Stratum {
                quotient: n,
                count: 1,
                points: vec![i],
            }),
        }
    }
    Ok(strata)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::injective;
    use crate::subspace::{subspace_algebra, subspace_module};

    #[test]
    fn subspace_counts() {
        let f = Field::prime(2).unwrap();
        assert_eq!(subspaces(&f, 2, 1).unwrap().len(), 3);
        assert_eq!(subspaces(&f, 4, 2).unwrap().len(), 35);
        let g = Field::prime(3).unwrap();
        assert_eq!(subspaces(&g, 3, 1).unwrap().len(), 13);
        assert_eq!(subspaces(&g, 3, 0).unwrap().len(), 1);
    }

    #[test]
    fn submodules_of_injective() {
        let a = subspace_algebra(2, Field::prime(2).unwrap()).unwrap();
        let q = injective(a.structure(), 0);
        assert_eq!(enumerate_submodules(&q, None, 1).unwrap().len(), 5);
    }

    #[test]
    fn grassmannian_of_example() {
        for (p, expect) in [(2u64, 11usize), (3, 19)] {
            let a = subspace_algebra(2, Field::prime(p).unwrap()).unwrap();
            let m = subspace_module(&a).unwrap();
            let subs = enumerate_submodules(&m, Some(&[1, 1, 1]), 1).unwrap();
            assert_eq!(subs.len(), expect);
            let par = enumerate_submodules(&m, Some(&[1, 1, 1]), 3).unwrap();
            assert_eq!(subs, par);
        }
    }

    #[test]
    fn zero_module_has_one_submodule() {
        let a = subspace_algebra(2, Field::prime(2).unwrap()).unwrap();
        let z = Module::zero(a.structure());
        assert_eq!(enumerate_submodules(&z, None, 1).unwrap().len(), 1);
    }

    #[test]
    fn strata_of_example() {
        let a = subspace_algebra(2, Field::prime(2).unwrap()).unwrap();
        let m = subspace_module(&a).unwrap();
        let st = quotient_strata(&m, &[1, 1, 1], 2).unwrap();
        let mut counts: Vec<(Vec<usize>, usize)> = st
            .iter()
            .map(|s| (s.quotient.dims().to_vec(), s.count))
            .collect();
        counts.sort();
        assert_eq!(counts, vec![(vec![1, 1, 1], 2), (vec![1, 1, 1], 9)]);
        let all = quotient_strata(&m, &[0, 0, 0], 1).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].count, 1);
        let top = quotient_strata(&m, &[2, 2, 2], 1).unwrap();
        assert_eq!((top.len(), top[0].quotient.dim()), (1, 0));
    }
}
