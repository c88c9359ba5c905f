//! Admissible quotients of path algebras with an explicit basis of path
//! residues.
//!
//! The basis is found by truncating at path length `N` and echelonising,
//! inside each class of parallel paths, the span of `u r w` (relations `r`
//! multiplied by paths on both sides). Columns are ordered longest path
//! first, so pivots fall on long paths and the surviving residues are the
//! shortest available. The first `N` at which every path of length `N` is a
//! pivot gives `rad^N = 0` (the ideal contains all long enough paths by
//! admissibility) and the construction stops there.

use super::quiver::{Path, Quiver, Relation};
use super::structalg::{BasisElt, StructAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Elem, Field, Matrix};
use std::collections::HashMap;
use std::sync::Arc;

pub const DEFAULT_LENGTH_CAP: usize = 24;

#[derive(Clone, Debug)]
pub struct PathBasisAlgebra {
    quiver: Quiver,
    relations: Vec<Relation>,
    field: Field,
    basis: Vec<Path>,
    loewy: usize,
    reduction: HashMap<Path, Vec<(usize, Elem)>>,
    structure: Arc<StructAlgebra>,
}

impl PartialEq for PathBasisAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver
            && self.relations == other.relations
            && self.structure == other.structure
    }
}

pub fn build_algebra(
    quiver: Quiver,
    relations: Vec<Relation>,
    field: Field,
) -> Result<PathBasisAlgebra> {
    build_algebra_capped(quiver, relations, field, DEFAULT_LENGTH_CAP)
}

pub fn build_algebra_capped(
    quiver: Quiver,
    relations: Vec<Relation>,
    field: Field,
    cap: usize,
) -> Result<PathBasisAlgebra> {
    let f = field.clone();
    for r in &relations {
        for (_, p) in &r.terms {
            if p.len() < 2 {
                return Err(Error::NonAdmissible(format!(
                    "{} has length {}",
                    quiver.label(p),
                    p.len()
                )));
            }
            quiver.path_from_indices(p.arrows.clone())?;
        }
    }
    let mut by_len: Vec<Vec<Path>> = vec![quiver.paths_of_length(0)];
    for n in 1..=cap {
        by_len.push(quiver.paths_of_length(n));
        if let Some((basis, reduction)) = try_truncation(&quiver, &relations, &f, &by_len, n) {
            let structure = Arc::new(structure_of(&quiver, &f, &basis, &reduction)?);
            return Ok(PathBasisAlgebra {
                quiver,
                relations,
                field,
                basis,
                loewy: n,
                reduction,
                structure,
            });
        }
    }
    Err(Error::PossiblyInfinite(cap))
}

type Reduction = HashMap<Path, Vec<(usize, Elem)>>;

fn try_truncation(
    quiver: &Quiver,
    relations: &[Relation],
    f: &Field,
    by_len: &[Vec<Path>],
    n: usize,
) -> Option<(Vec<Path>, Reduction)> {
    let nv = quiver.n_vertices();
    // ideal generators u r w truncated at length n, grouped by class
    let mut gens: HashMap<(usize, usize), Vec<Vec<(Elem, Path)>>> = HashMap::new();
    for r in relations {
        let Some((_, p0)) = r.terms.first() else {
            continue;
        };
        let m = r.min_len();
        if m > n {
            continue;
        }
        for lu in 0..=(n - m) {
            for u in by_len[lu].iter().filter(|u| u.src == p0.tgt) {
                for lw in 0..=(n - m - lu) {
                    for w in by_len[lw].iter().filter(|w| w.tgt == p0.src) {
                        let terms: Vec<(Elem, Path)> = r
                            .terms
                            .iter()
                            .filter(|(_, p)| p.len() + lu + lw <= n)
                            .map(|(c, p)| (c.clone(), u.compose(&p.compose(w).unwrap()).unwrap()))
                            .collect();
                        if !terms.is_empty() {
                            gens.entry((w.src, u.tgt)).or_default().push(terms);
                        }
                    }
                }
            }
        }
    }
    let mut survivors: Vec<Path> = vec![];
    let mut pivot_rows: Vec<(Path, (usize, usize), Vec<Elem>, Vec<Path>)> = vec![];
    for s in 0..nv {
        for t in 0..nv {
            // columns: longest paths first, then lexicographic
            let mut cols: Vec<Path> = by_len[..=n]
                .iter()
                .flatten()
                .filter(|p| p.src == s && p.tgt == t)
                .cloned()
                .collect();
            cols.sort_by(|a, b| b.len().cmp(&a.len()).then(a.arrows.cmp(&b.arrows)));
            if cols.is_empty() {
                continue;
            }
            let index: HashMap<&Path, usize> =
                cols.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let rows: Vec<Vec<Elem>> = gens
                .get(&(s, t))
                .map(|g| {
                    g.iter()
                        .map(|terms| {
                            let mut row = vec![f.zero(); cols.len()];
                            for (c, p) in terms {
                                let i = index[p];
                                row[i] = f.add(&row[i], c);
                            }
                            row
                        })
                        .collect()
                })
                .unwrap_or_default();
            let (ech, piv) = if rows.is_empty() {
                (Matrix::zeros(f, 0, cols.len()), vec![])
            } else {
                Matrix::from_rows(f, cols.len(), &rows).rref()
            };
            if cols
                .iter()
                .enumerate()
                .any(|(i, p)| p.len() == n && !piv.contains(&i))
            {
                return None;
            }
            for (i, p) in cols.iter().enumerate() {
                if !piv.contains(&i) {
                    survivors.push(p.clone());
                }
            }
            for (r, &pc) in piv.iter().enumerate() {
                pivot_rows.push((cols[pc].clone(), (s, t), ech.row(r).to_vec(), cols.clone()));
            }
        }
    }
    // basis order: trivial paths by vertex, then by length and arrows
    survivors.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then(a.src.cmp(&b.src))
            .then(a.arrows.cmp(&b.arrows))
    });
    let pos: HashMap<Path, usize> = survivors
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let mut reduction: Reduction = HashMap::new();
    for (i, p) in survivors.iter().enumerate() {
        reduction.insert(p.clone(), vec![(i, f.one())]);
    }
    for (p, _, row, cols) in pivot_rows {
        let red: Vec<(usize, Elem)> = row
            .iter()
            .enumerate()
            .filter(|(j, c)| !f.is_zero(c) && cols[*j] != p)
            .map(|(j, c)| (pos[&cols[j]], f.neg(c)))
            .collect();
        reduction.insert(p, red);
    }
    Some((survivors, reduction))
}

fn structure_of(
    quiver: &Quiver,
    f: &Field,
    basis: &[Path],
    reduction: &Reduction,
) -> Result<StructAlgebra> {
    let k = basis.len();
    let mut table = vec![vec![vec![]; k]; k];
    for i in 0..k {
        for j in 0..k {
            if let Some(p) = basis[i].compose(&basis[j]) {
                table[i][j] = reduce_path(f, reduction, &p);
            }
        }
    }
    let gens: Vec<usize> = (0..quiver.arrows.len())
        .map(|a| {
            basis.iter().position(|p| p.arrows == [a]).ok_or_else(|| {
                Error::NonAdmissible(format!("arrow {} lies in the ideal", quiver.arrows[a].name))
            })
        })
        .collect::<Result<_>>()?;
    let elts = basis
        .iter()
        .map(|p| BasisElt {
            label: quiver.label(p),
            src: p.src,
            tgt: p.tgt,
            factors: p.arrows.clone(),
        })
        .collect();
    StructAlgebra::new(
        f.clone(),
        quiver.vertices.clone(),
        elts,
        gens,
        table,
        vec![false; quiver.n_vertices()],
    )
}

fn reduce_path(f: &Field, reduction: &Reduction, p: &Path) -> Vec<(usize, Elem)> {
    let _ = f;
    reduction.get(p).cloned().unwrap_or_default()
}

impl PathBasisAlgebra {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.quiver.n_vertices()
    }

    /// Smallest `L` with `rad^L = 0`.
    pub fn loewy_length(&self) -> usize {
        self.loewy
    }

    pub fn structure(&self) -> &Arc<StructAlgebra> {
        &self.structure
    }

    pub fn is_hereditary_presentation(&self) -> bool {
        self.relations.iter().all(|r| r.terms.is_empty())
    }

    /// Coordinates of an arbitrary path in the basis (zero for long paths).
    pub fn reduce(&self, p: &Path) -> Vec<(usize, Elem)> {
        reduce_path(&self.field, &self.reduction, p)
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|p| self.quiver.label(p)).collect()
    }

    /// Arrows reversed, relations and basis paths reversed; the structure
    /// constants are the transposed table.
    pub fn opposite(&self) -> PathBasisAlgebra {
        let reduction = self
            .reduction
            .iter()
            .map(|(p, r)| (p.reversed(), r.clone()))
            .collect();
        PathBasisAlgebra {
            quiver: self.quiver.opposite(),
            relations: self.relations.iter().map(|r| r.reversed()).collect(),
            field: self.field.clone(),
            basis: self.basis.iter().map(|p| p.reversed()).collect(),
            loewy: self.loewy,
            reduction,
            structure: Arc::new(self.structure.opposite()),
        }
    }

    /// Cartan matrix `C[i][j] = dim e_i A e_j`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let n = self.n_vertices();
        let mut c = vec![vec![0; n]; n];
        for p in &self.basis {
            c[p.tgt][p.src] += 1;
        }
        c
    }

    /// Euler form. Without relations this is the quiver form. With relations
    /// it is `x^T C^{-T} y` and requires `finite_gldim` to be asserted by the
    /// caller.
    pub fn euler_form(&self, x: &[i64], y: &[i64], finite_gldim: bool) -> Result<i64> {
        let n = self.n_vertices();
        if x.len() != n || y.len() != n {
            return Err(Error::Dimension(format!(
                "dimension vectors must have length {n}"
            )));
        }
        if self.is_hereditary_presentation() {
            let diag: i64 = (0..n).map(|v| x[v] * y[v]).sum();
            let arr: i64 = self.quiver.arrows.iter().map(|a| x[a.src] * y[a.tgt]).sum();
            return Ok(diag - arr);
        }
        if !finite_gldim {
            return Err(Error::Precondition(
                "Euler form with relations needs an explicit finite global dimension flag".into(),
            ));
        }
        let q = Field::Rationals;
        let c = self.cartan();
        let cm = Matrix::from_fn(&q, n, n, |i, j| q.from_i64(c[i][j] as i64));
        let inv = cm
            .transpose()
            .inverse()
            .ok_or_else(|| Error::Precondition("Cartan matrix is singular".into()))?;
        let xv: Vec<Elem> = x.iter().map(|&v| q.from_i64(v)).collect();
        let yv: Vec<Elem> = y.iter().map(|&v| q.from_i64(v)).collect();
        let iy = inv.mul_vec(&yv);
        let val = xv
            .iter()
            .zip(&iy)
            .fold(q.zero(), |acc, (a, b)| q.add(&acc, &q.mul(a, b)));
        if !q.is_integral(&val) {
            return Err(Error::Precondition("Euler form is not integral".into()));
        }
        q.rational(&val)
            .to_integer()
            .try_into()
            .map_err(|_| Error::Dimension("overflow".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::Arrow;

    pub(crate) fn subspace_quiver(n: usize) -> Quiver {
        let vertices = (0..=n).map(|i| i.to_string()).collect();
        let arrows = (1..=n)
            .map(|i| Arrow {
                name: format!("a{i}"),
                src: i,
                tgt: 0,
            })
            .collect();
        Quiver::new(vertices, arrows).unwrap()
    }

    #[test]
    fn subspace_algebra_dimension() {
        let a = build_algebra(subspace_quiver(2), vec![], Field::Rationals).unwrap();
        assert_eq!(a.dim(), 5);
        assert_eq!(a.loewy_length(), 2);
        a.structure().check_axioms().unwrap();
    }

    #[test]
    fn loop_squared() {
        let f = Field::prime(3).unwrap();
        let q = Quiver::new(
            vec!["0".into()],
            vec![Arrow {
                name: "x".into(),
                src: 0,
                tgt: 0,
            }],
        )
        .unwrap();
        let r = Relation::new(&f, vec![(f.one(), q.path(&["x", "x"]).unwrap())]).unwrap();
        let a = build_algebra(q, vec![r], f).unwrap();
        assert_eq!(a.dim(), 2);
        a.structure().check_axioms().unwrap();
    }

    #[test]
    fn free_loop_hits_the_cap() {
        let q = Quiver::new(
            vec!["0".into()],
            vec![Arrow {
                name: "x".into(),
                src: 0,
                tgt: 0,
            }],
        )
        .unwrap();
        assert!(matches!(
            build_algebra_capped(q, vec![], Field::Rationals, 6),
            Err(Error::PossiblyInfinite(6))
        ));
    }

    #[test]
    fn short_relation_rejected() {
        let f = Field::Rationals;
        let q = subspace_quiver(1);
        assert!(matches!(
            Relation::new(&f, vec![(f.one(), q.arrow_path(0))]),
            Err(Error::NonAdmissible(_))
        ));
    }

    #[test]
    fn commutative_square() {
        // 0 -> 1 -> 3, 0 -> 2 -> 3 with ba = dc
        let f = Field::Rationals;
        let arrows = vec![
            Arrow {
                name: "a".into(),
                src: 0,
                tgt: 1,
            },
            Arrow {
                name: "b".into(),
                src: 1,
                tgt: 3,
            },
            Arrow {
                name: "c".into(),
                src: 0,
                tgt: 2,
            },
            Arrow {
                name: "d".into(),
                src: 2,
                tgt: 3,
            },
        ];
        let q = Quiver::new((0..4).map(|i| i.to_string()).collect(), arrows).unwrap();
        let r = Relation::new(
            &f,
            vec![
                (f.one(), q.path(&["b", "a"]).unwrap()),
                (f.from_i64(-1), q.path(&["d", "c"]).unwrap()),
            ],
        )
        .unwrap();
        let a = build_algebra(q, vec![r], f).unwrap();
        assert_eq!(a.dim(), 9);
        a.structure().check_axioms().unwrap();
        let o = a.opposite();
        assert_eq!(o.opposite(), a);
        o.structure().check_axioms().unwrap();
    }

    #[test]
    fn relation_extended_on_both_sides() {
        // 0 -> 1 -> 2 -> 3 -> 4 with cb = 0, so dcb, cba and dcba vanish too
        let f = Field::prime(2).unwrap();
        let arrows = ["a", "b", "c", "d"]
            .iter()
            .enumerate()
            .map(|(i, n)| Arrow {
                name: n.to_string(),
                src: i,
                tgt: i + 1,
            })
            .collect();
        let q = Quiver::new((0..5).map(|i| i.to_string()).collect(), arrows).unwrap();
        let r = Relation::new(&f, vec![(f.one(), q.path(&["c", "b"]).unwrap())]).unwrap();
        let a = build_algebra(q, vec![r], f).unwrap();
        assert_eq!(a.dim(), 5 + 4 + 2);
        a.structure().check_axioms().unwrap();
    }

    #[test]
    fn euler_form_of_a2() {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![Arrow {
                name: "a".into(),
                src: 0,
                tgt: 1,
            }],
        )
        .unwrap();
        let a = build_algebra(q, vec![], Field::Rationals).unwrap();
        assert_eq!(a.euler_form(&[1, 0], &[0, 1], false).unwrap(), -1);
        assert_eq!(a.euler_form(&[0, 1], &[1, 0], false).unwrap(), 0);
        assert_eq!(a.euler_form(&[3, 2], &[0, 0], false).unwrap(), 0);
    }
}
