//! Quiver Grassmannians over a finite field: every point with its tangent
//! dimension `dim Hom(U, X/U)`, grouped into strata by the isomorphism class
//! of the quotient (or of the submodule).

use crate::error::Result;
use crate::module::decompose::invariant_key;
use crate::module::{decompose, hom_dim, is_isomorphic, Module, DEFAULT_SEED};
use crate::subrep::{enumerate_submodules, SubmoduleRecord};
use crate::tilt::summand_label;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Point counts over a finite field stand in for statements about varieties
/// over an algebraically closed field of characteristic zero; tangent
/// dimensions are computed exactly at each rational point.
pub const FINITE_FIELD_CAVEAT: &str =
    "finite-field point counts and tangent dimensions are proxies for smoothness and fibre statements";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrataBy {
    Quotient,
    Submodule,
}

impl StrataBy {
    pub fn as_str(&self) -> &'static str {
        match self {
            StrataBy::Quotient => "quotient",
            StrataBy::Submodule => "submodule",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GrassPoint {
    pub sub: SubmoduleRecord,
    pub stratum: usize,
    pub tangent: usize,
    /// Tangent dimension above every other point of its stratum.
    pub singular_candidate: bool,
}

#[derive(Clone, Debug)]
pub struct GrassStratum {
    /// Representative of the quotient (or submodule) class.
    pub class: Module,
    pub label: String,
    pub count: usize,
    /// Tangent dimension -> number of points.
    pub tangents: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug)]
pub struct GrassmannianReport {
    pub ambient: Module,
    pub d: Vec<usize>,
    pub q: u64,
    pub by: StrataBy,
    pub points: Vec<GrassPoint>,
    pub strata: Vec<GrassStratum>,
}

impl GrassmannianReport {
    pub fn total(&self) -> usize {
        self.points.len()
    }

    pub fn tangent_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for p in &self.points {
            *h.entry(p.tangent).or_insert(0) += 1;
        }
        h
    }

    pub fn singular_candidates(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| self.points[i].singular_candidate)
            .collect()
    }

    /// Position of the point with the given echelon key.
    pub fn index(&self) -> std::collections::HashMap<Vec<Vec<u64>>, usize> {
        let f = self.ambient.field();
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.sub.key(f), i))
            .collect()
    }
}

/// `S0+S1+Q0`-style name of a module from its indecomposable summands.
pub fn class_label(x: &Module) -> Result<String> {
    if x.is_zero() {
        return Ok("0".into());
    }
    let mut names = decompose(x, DEFAULT_SEED)?
        .indecomposables()
        .iter()
        .map(summand_label)
        .collect::<Result<Vec<_>>>()?;
    names.sort();
    Ok(names.join("+"))
}

pub fn grassmannian_report(x: &Module, d: &[usize], workers: usize) -> Result<GrassmannianReport> {
    grassmannian_report_by(x, d, StrataBy::Quotient, workers)
}

pub fn grassmannian_report_by(
    x: &Module,
    d: &[usize],
    by: StrataBy,
    workers: usize,
) -> Result<GrassmannianReport> {
    let q = x.field().size().unwrap_or(0);
    let subs = enumerate_submodules(x, Some(d), workers)?;
    let local = |u: &SubmoduleRecord| -> Result<(Module, usize)> {
        let inc = u.inclusion(x)?;
        let quo = u.projection(x)?.tgt;
        let tangent = hom_dim(&inc.src, &quo)?;
        Ok((
            if by == StrataBy::Quotient {
                quo
            } else {
                inc.src
            },
            tangent,
        ))
    };
    let computed: Vec<Result<(Module, usize)>> = if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| crate::error::Error::Io(e.to_string()))?;
        pool.install(|| subs.par_iter().map(local).collect())
    } else {
        subs.iter().map(local).collect()
    };
    let mut strata: Vec<GrassStratum> = vec![];
    let mut points = vec![];
    for (u, c) in subs.into_iter().zip(computed) {
        let (class, tangent) = c?;
        let key = invariant_key(&class);
        let mut hit = None;
        for (k, s) in strata.iter().enumerate() {
            if invariant_key(&s.class) == key
                && is_isomorphic(&s.class, &class, DEFAULT_SEED)?.is_some()
            {
                hit = Some(k);
                break;
            }
        }
        let k = match hit {
            Some(k) => k,
            None => {
                strata.push(GrassStratum {
                    label: class_label(&class)?,
                    class,
                    count: 0,
                    tangents: BTreeMap::new(),
                });
                strata.len() - 1
            }
        };
        strata[k].count += 1;
        *strata[k].tangents.entry(tangent).or_insert(0) += 1;
        points.push(GrassPoint {
            sub: u,
            stratum: k,
            tangent,
            singular_candidate: false,
        });
    }
    for p in &mut points {
        let t = &strata[p.stratum].tangents;
        let others_max = t
            .iter()
            .filter(|(&dim, &n)| dim != p.tangent || n > 1)
            .map(|(&dim, _)| dim)
            .max();
        p.singular_candidate = others_max.is_some_and(|m| p.tangent > m);
    }
    Ok(GrassmannianReport {
        ambient: x.clone(),
        d: d.to_vec(),
        q,
        by,
        points,
        strata,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::subspace::{subspace_algebra, subspace_module};

    #[test]
    fn example_grassmannian() {
        let a = subspace_algebra(2, Field::prime(2).unwrap()).unwrap();
        let m = subspace_module(&a).unwrap();
        let r = grassmannian_report(&m, &[1, 1, 1], 2).unwrap();
        assert_eq!(r.total(), 11);
        let mut counts: Vec<(String, usize)> = r
            .strata
            .iter()
            .map(|s| (s.label.clone(), s.count))
            .collect();
        counts.sort();
        assert_eq!(
            counts,
            vec![("Q0".to_string(), 2), ("S0+S1+S2".to_string(), 9)]
        );
        assert_eq!(
            r.tangent_histogram().into_iter().collect::<Vec<_>>(),
            vec![(1, 2), (2, 8), (3, 1)]
        );
        let sing = r.singular_candidates();
        assert_eq!(sing.len(), 1);
        assert_eq!(r.points[sing[0]].tangent, 3);
    }

    #[test]
    fn extreme_dimensions_are_points() {
        let a = subspace_algebra(2, Field::prime(3).unwrap()).unwrap();
        let m = subspace_module(&a).unwrap();
        for d in [[0, 0, 0], [2, 2, 2]] {
            let r = grassmannian_report(&m, &d, 1).unwrap();
            assert_eq!((r.total(), r.strata.len()), (1, 1));
        }
    }
}
