//! Algebras given by a homogeneous basis and structure constants.
//!
//! Every basis element lies in some `e_t A e_s` (source `s`, target `t`); the
//! trivial idempotents are basis elements; every other basis element is a
//! product of designated radical generators (its `factors`, left factor
//! first). Path algebras, endomorphism algebras and the algebras built from
//! two-term complexes all take this shape.

use crate::error::{Error, Result};
use crate::linalg::matalg::{MatrixAlgebra, Quotient};
use crate::linalg::{Elem, Field, Matrix};
use sha2::{Digest, Sha256};
use std::sync::{Arc, OnceLock};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElt {
    pub label: String,
    pub src: usize,
    pub tgt: usize,
    /// Generator indices whose product (left factor first) is this element;
    /// empty for the idempotent of `src`.
    pub factors: Vec<usize>,
}

impl BasisElt {
    pub fn is_idempotent(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Sparse product of two basis elements.
pub type Product = Vec<(usize, Elem)>;

#[derive(Clone, Debug)]
pub struct StructAlgebra {
    field: Field,
    vertices: Vec<String>,
    basis: Vec<BasisElt>,
    gens: Vec<usize>,
    table: Vec<Vec<Product>>,
    special: Vec<bool>,
    idem: Vec<usize>,
    fingerprint: String,
    op: OnceLock<Arc<StructAlgebra>>,
}

impl PartialEq for StructAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
    }
}

impl StructAlgebra {
    pub fn new(
        field: Field,
        vertices: Vec<String>,
        basis: Vec<BasisElt>,
        gens: Vec<usize>,
        table: Vec<Vec<Product>>,
        special: Vec<bool>,
    ) -> Result<StructAlgebra> {
        let n = vertices.len();
        let k = basis.len();
        if table.len() != k || table.iter().any(|r| r.len() != k) {
            return Err(Error::Dimension(
                "structure table is not square in the basis".into(),
            ));
        }
        if special.len() != n {
            return Err(Error::Dimension(
                "special flags must be indexed by vertices".into(),
            ));
        }
        let mut idem = vec![usize::MAX; n];
        for (i, b) in basis.iter().enumerate() {
            if b.src >= n || b.tgt >= n {
                return Err(Error::Dimension(format!(
                    "basis element {} has an undeclared vertex",
                    b.label
                )));
            }
            if b.is_idempotent() {
                if b.src != b.tgt || idem[b.src] != usize::MAX {
                    return Err(Error::Precondition(format!("bad idempotent {}", b.label)));
                }
                idem[b.src] = i;
            }
            if b.factors.iter().any(|&g| g >= gens.len()) {
                return Err(Error::Dimension(format!(
                    "basis element {} uses an unknown generator",
                    b.label
                )));
            }
        }
        if idem.contains(&usize::MAX) {
            return Err(Error::Precondition("some vertex has no idempotent".into()));
        }
        for i in 0..k {
            for j in 0..k {
                for (r, c) in &table[i][j] {
                    if field.is_zero(c) {
                        continue;
                    }
                    let (bi, bj, br) = (&basis[i], &basis[j], &basis[*r]);
                    if bi.src != bj.tgt || br.src != bj.src || br.tgt != bi.tgt {
                        return Err(Error::Precondition(format!(
                            "product {}*{} is not homogeneous",
                            bi.label, bj.label
                        )));
                    }
                }
            }
        }
        let mut a = StructAlgebra {
            field,
            vertices,
            basis,
            gens,
            table,
            special,
            idem,
            fingerprint: String::new(),
            op: OnceLock::new(),
        };
        a.fingerprint = a.compute_fingerprint();
        Ok(a)
    }

    fn compute_fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{}|{:?}|", self.field, self.vertices));
        for b in &self.basis {
            h.update(format!("{}:{}:{}:{:?};", b.label, b.src, b.tgt, b.factors));
        }
        h.update(format!("{:?}|{:?}|", self.gens, self.special));
        for row in &self.table {
            for prod in row {
                for (r, c) in prod {
                    h.update(format!("{}={},", r, self.field.format(c)));
                }
                h.update(";");
            }
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn basis(&self) -> &[BasisElt] {
        &self.basis
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn gen_elt(&self, g: usize) -> &BasisElt {
        &self.basis[self.gens[g]]
    }

    pub fn special(&self) -> &[bool] {
        &self.special
    }

    pub fn special_vertices(&self) -> Vec<usize> {
        (0..self.n_vertices())
            .filter(|&v| self.special[v])
            .collect()
    }

    pub fn with_special(&self, special: Vec<bool>) -> Result<StructAlgebra> {
        StructAlgebra::new(
            self.field.clone(),
            self.vertices.clone(),
            self.basis.clone(),
            self.gens.clone(),
            self.table.clone(),
            special,
        )
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idem[v]
    }

    pub fn product(&self, i: usize, j: usize) -> &Product {
        &self.table[i][j]
    }

    /// Basis indices of `A e_v` (elements with source `v`).
    pub fn basis_from(&self, v: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].src == v)
            .collect()
    }

    /// Basis indices of `e_t A e_s`.
    pub fn basis_between(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].src == s && self.basis[i].tgt == t)
            .collect()
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Elem> {
        let f = &self.field;
        (0..self.dim())
            .map(|j| if i == j { f.one() } else { f.zero() })
            .collect()
    }

    pub fn one(&self) -> Vec<Elem> {
        let f = &self.field;
        let mut v = vec![f.zero(); self.dim()];
        for &i in &self.idem {
            v[i] = f.one();
        }
        v
    }

    /// Product of two elements given by coordinates.
    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for (r, c) in &self.table[i][j] {
                    out[*r] = f.add(&out[*r], &f.mul(&xy, c));
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `a` on the algebra.
    pub fn left_mult(&self, a: &[Elem]) -> Matrix {
        let cols: Vec<Vec<Elem>> = (0..self.dim())
            .map(|j| self.mul(a, &self.unit_vector(j)))
            .collect();
        Matrix::from_cols(&self.field, self.dim(), &cols)
    }

    /// The left regular representation as a matrix algebra.
    pub fn regular(&self) -> MatrixAlgebra {
        let mats = (0..self.dim())
            .map(|i| self.left_mult(&self.unit_vector(i)))
            .collect();
        MatrixAlgebra::new(&self.field, self.dim(), mats)
    }

    /// Coefficient vectors spanning the Jacobson radical.
    pub fn radical(&self) -> Result<Vec<Vec<Elem>>> {
        self.regular().radical()
    }

    /// The opposite algebra, computed once and shared.
    pub fn opposite_arc(&self) -> Arc<StructAlgebra> {
        self.op.get_or_init(|| Arc::new(self.opposite())).clone()
    }

    pub fn is_opposite_of(&self, other: &StructAlgebra) -> bool {
        self.opposite_arc().fingerprint == other.fingerprint
    }

    pub fn opposite(&self) -> StructAlgebra {
        let k = self.dim();
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElt {
                label: reverse_label(&b.label),
                src: b.tgt,
                tgt: b.src,
                factors: b.factors.iter().rev().cloned().collect(),
            })
            .collect();
        let table = (0..k)
            .map(|i| (0..k).map(|j| self.table[j][i].clone()).collect())
            .collect();
        StructAlgebra::new(
            self.field.clone(),
            self.vertices.clone(),
            basis,
            self.gens.clone(),
            table,
            self.special.clone(),
        )
        .expect("opposite of a valid algebra is valid")
    }

    /// Checks associativity on all basis triples and the idempotent relations.
    pub fn check_axioms(&self) -> Result<()> {
        let f = &self.field;
        let k = self.dim();
        for i in 0..k {
            for j in 0..k {
                let ij = self.mul(&self.unit_vector(i), &self.unit_vector(j));
                for l in 0..k {
                    let lhs = self.mul(&ij, &self.unit_vector(l));
                    let jl = self.mul(&self.unit_vector(j), &self.unit_vector(l));
                    let rhs = self.mul(&self.unit_vector(i), &jl);
                    if lhs != rhs {
                        return Err(Error::Falsified(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[i].label, self.basis[j].label, self.basis[l].label
                        )));
                    }
                }
            }
        }
        for v in 0..self.n_vertices() {
            for w in 0..self.n_vertices() {
                let p = self.mul(
                    &self.unit_vector(self.idem[v]),
                    &self.unit_vector(self.idem[w]),
                );
                let expect = if v == w {
                    self.unit_vector(self.idem[v])
                } else {
                    vec![f.zero(); k]
                };
                if p != expect {
                    return Err(Error::Falsified("idempotents are not orthogonal".into()));
                }
            }
        }
        let one = self.one();
        for i in 0..k {
            let u = self.unit_vector(i);
            if self.mul(&one, &u) != u || self.mul(&u, &one) != u {
                return Err(Error::Falsified(
                    "idempotents do not sum to the identity".into(),
                ));
            }
        }
        Ok(())
    }

    /// Restriction to `e A e` for the idempotent `e` = sum of the given
    /// vertices, with the same basis elements (those between chosen vertices).
    pub fn corner(&self, verts: &[usize]) -> Result<(StructAlgebra, Vec<usize>)> {
        let keep: Vec<usize> = (0..self.dim())
            .filter(|&i| verts.contains(&self.basis[i].src) && verts.contains(&self.basis[i].tgt))
            .collect();
        let vmap = |v: usize| verts.iter().position(|&w| w == v).unwrap();
        let pos = |i: usize| keep.iter().position(|&j| j == i);
        let mut table = vec![vec![vec![]; keep.len()]; keep.len()];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                table[a][b] = self.table[i][j]
                    .iter()
                    .map(|(r, c)| (pos(*r).expect("corner closed under products"), c.clone()))
                    .collect();
            }
        }
        // the corner algebra is re-presented with all its radical basis
        // elements as generators
        let mut gens = vec![];
        let basis: Vec<BasisElt> = keep
            .iter()
            .map(|&i| {
                let b = &self.basis[i];
                let factors = if b.is_idempotent() {
                    vec![]
                } else {
                    gens.push(pos(i).unwrap());
                    vec![gens.len() - 1]
                };
                BasisElt {
                    label: b.label.clone(),
                    src: vmap(b.src),
                    tgt: vmap(b.tgt),
                    factors,
                }
            })
            .collect();
        let sa = StructAlgebra::new(
            self.field.clone(),
            verts.iter().map(|&v| self.vertices[v].clone()).collect(),
            basis,
            gens,
            table,
            verts.iter().map(|&v| self.special[v]).collect(),
        )?;
        Ok((sa, keep))
    }

    /// Dimension of `e_t (rad/rad^2) e_s` for every pair: the arrow counts of
    /// the Gabriel quiver.
    pub fn quiver_arrow_counts(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.n_vertices();
        let rad = self.radical()?;
        let rad2 = products_span(self, &rad, &rad);
        let mut counts = vec![vec![0; n]; n];
        for s in 0..n {
            for t in 0..n {
                let r1 = block_part(self, &rad, s, t);
                let r2 = block_part(self, &rad2, s, t);
                counts[s][t] =
                    span_dim(&self.field, self.dim(), &r1) - span_dim(&self.field, self.dim(), &r2);
            }
        }
        Ok(counts)
    }

    /// Builds the opposite of the endomorphism algebra of a direct sum of
    /// objects `0..n` from a basis of each morphism space and a composition
    /// rule. Returns the algebra, re-presented by idempotents, arrows and
    /// words in the arrows, together with the underlying morphism of every
    /// new basis element as `(source object, target object, coordinates)`.
    pub fn from_category_op(
        field: &Field,
        labels: Vec<String>,
        special: Vec<bool>,
        cat: &dyn Category,
    ) -> Result<(StructAlgebra, Vec<(usize, usize, Vec<Elem>)>)> {
        build_from_category(field, labels, special, cat)
    }
}

/// A small linear category: objects `0..n`, morphism spaces with chosen
/// bases and composition in coordinates.
pub trait Category {
    fn n_objects(&self) -> usize;
    /// Dimension of the space of morphisms `s -> t`.
    fn hom_dim(&self, s: usize, t: usize) -> usize;
    /// Coordinates of the identity of `s` in the basis of `s -> s`.
    fn identity(&self, s: usize) -> Vec<Elem>;
    /// Coordinates (in the basis of `s -> u`) of `g o f` for basis morphisms
    /// `f: s -> t` (index `i`) and `g: t -> u` (index `j`).
    fn compose(&self, s: usize, t: usize, u: usize, i: usize, j: usize) -> Vec<Elem>;
}

fn reverse_label(l: &str) -> String {
    if l.contains('*') {
        l.split('*').rev().collect::<Vec<_>>().join("*")
    } else {
        l.to_string()
    }
}

fn block_part(a: &StructAlgebra, vecs: &[Vec<Elem>], s: usize, t: usize) -> Vec<Vec<Elem>> {
    let f = a.field();
    vecs.iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .map(|(i, x)| {
                    if a.basis()[i].src == s && a.basis()[i].tgt == t {
                        x.clone()
                    } else {
                        f.zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn products_span(a: &StructAlgebra, x: &[Vec<Elem>], y: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut out = vec![];
    for u in x {
        for v in y {
            out.push(a.mul(u, v));
        }
    }
    basis_of_span(a.field(), a.dim(), &out)
}

pub(crate) fn span_dim(f: &Field, k: usize, vecs: &[Vec<Elem>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Matrix::from_cols(f, k, vecs).rank()
}

pub(crate) fn basis_of_span(f: &Field, k: usize, vecs: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    if vecs.is_empty() {
        return vec![];
    }
    Matrix::from_cols(f, k, vecs).column_space().columns()
}

fn build_from_category(
    field: &Field,
    labels: Vec<String>,
    special: Vec<bool>,
    cat: &dyn Category,
) -> Result<(StructAlgebra, Vec<(usize, usize, Vec<Elem>)>)> {
    let f = field;
    let n = cat.n_objects();
    // original basis: morphisms (s, t, i); as algebra elements src = t, tgt = s
    let mut orig: Vec<(usize, usize, usize)> = vec![];
    for s in 0..n {
        for t in 0..n {
            for i in 0..cat.hom_dim(s, t) {
                orig.push((s, t, i));
            }
        }
    }
    let k = orig.len();
    let offset = |s: usize, t: usize| {
        orig.iter()
            .position(|&(a, b, _)| a == s && b == t)
            .unwrap_or(0)
    };
    // structure constants of the op algebra in the original basis
    let mut table: Vec<Vec<Vec<Elem>>> = vec![vec![vec![]; k]; k];
    for (x, &(sx, tx, ix)) in orig.iter().enumerate() {
        for (y, &(sy, ty, iy)) in orig.iter().enumerate() {
            if tx != sy {
                continue;
            }
            // b_x * b_y = y o x : sx -> ty
            let c = cat.compose(sx, tx, ty, ix, iy);
            let mut full = vec![f.zero(); k];
            let o = offset(sx, ty);
            for (l, v) in c.into_iter().enumerate() {
                full[o + l] = v;
            }
            table[x][y] = full;
        }
    }
    let mul = |a: &[Elem], b: &[Elem]| -> Vec<Elem> {
        let mut out = vec![f.zero(); k];
        for (x, u) in a.iter().enumerate() {
            if f.is_zero(u) {
                continue;
            }
            for (y, v) in b.iter().enumerate() {
                if f.is_zero(v) || table[x][y].is_empty() {
                    continue;
                }
                let uv = f.mul(u, v);
                for (r, c) in table[x][y].iter().enumerate() {
                    if !f.is_zero(c) {
                        out[r] = f.add(&out[r], &f.mul(&uv, c));
                    }
                }
            }
        }
        out
    };
    let unit = |i: usize| -> Vec<Elem> {
        (0..k)
            .map(|j| if i == j { f.one() } else { f.zero() })
            .collect()
    };
    // element src/tgt in algebra convention
    let elt_src = |x: usize| orig[x].1;
    let elt_tgt = |x: usize| orig[x].0;
    let idems: Vec<Vec<Elem>> = (0..n)
        .map(|s| {
            let mut v = vec![f.zero(); k];
            let o = offset(s, s);
            for (l, c) in cat.identity(s).into_iter().enumerate() {
                v[o + l] = c;
            }
            v
        })
        .collect();
    // radical via the regular representation
    let regular: Vec<Matrix> = (0..k)
        .map(|i| {
            let ui = unit(i);
            let cols: Vec<Vec<Elem>> = (0..k).map(|j| mul(&ui, &unit(j))).collect();
            Matrix::from_cols(f, k, &cols)
        })
        .collect();
    let rad = MatrixAlgebra::new(f, k, regular).radical()?;
    let homog = |vecs: &[Vec<Elem>], s: usize, t: usize| -> Vec<Vec<Elem>> {
        vecs.iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .map(|(i, x)| {
                        if elt_src(i) == s && elt_tgt(i) == t {
                            x.clone()
                        } else {
                            f.zero()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let mut rad_blocks = vec![vec![vec![]; n]; n];
    for s in 0..n {
        for t in 0..n {
            rad_blocks[s][t] = basis_of_span(f, k, &homog(&rad, s, t));
        }
        let dim_ss = cat.hom_dim(s, s);
        if dim_ss != rad_blocks[s][s].len() + 1 {
            return Err(Error::Decomposition(format!(
                "endomorphism ring of object {} is not split local (dimension {}, radical {})",
                labels[s],
                dim_ss,
                rad_blocks[s][s].len()
            )));
        }
    }
    let rad_all: Vec<Vec<Elem>> = rad_blocks.iter().flatten().flatten().cloned().collect();
    let mut rad2 = vec![];
    for u in &rad_all {
        for v in &rad_all {
            let p = mul(u, v);
            if p.iter().any(|x| !f.is_zero(x)) {
                rad2.push(p);
            }
        }
    }
    // arrows: per block, a complement of rad^2 in rad
    let mut arrows: Vec<(usize, usize, Vec<Elem>)> = vec![];
    for s in 0..n {
        for t in 0..n {
            let r2 = basis_of_span(f, k, &homog(&rad2, s, t));
            let mut chosen = r2.clone();
            for v in &rad_blocks[s][t] {
                let mut trial = chosen.clone();
                trial.push(v.clone());
                if span_dim(f, k, &trial) > chosen.len() {
                    chosen.push(v.clone());
                    arrows.push((s, t, v.clone()));
                }
            }
        }
    }
    // words in the arrows spanning the radical
    let mut words: Vec<(Vec<usize>, Vec<Elem>, usize, usize)> = arrows
        .iter()
        .enumerate()
        .map(|(g, (s, t, v))| (vec![g], v.clone(), *s, *t))
        .collect();
    let mut span: Vec<Vec<Elem>> = words.iter().map(|w| w.1.clone()).collect();
    let mut frontier: Vec<usize> = (0..words.len()).collect();
    while !frontier.is_empty() {
        let mut next = vec![];
        for &w in &frontier {
            for (g, (s, t, a)) in arrows.iter().enumerate() {
                // arrow g after word w: need src(g) == tgt(w)
                if *s != words[w].3 {
                    continue;
                }
                let prod = mul(a, &words[w].1);
                if prod.iter().all(|x| f.is_zero(x)) {
                    continue;
                }
                let mut trial = span.clone();
                trial.push(prod.clone());
                if span_dim(f, k, &trial) > span.len() {
                    span.push(prod.clone());
                    let mut factors = vec![g];
                    factors.extend(words[w].0.iter().cloned());
                    words.push((factors, prod, words[w].2, *t));
                    next.push(words.len() - 1);
                }
            }
        }
        frontier = next;
    }
    if n + words.len() != k {
        return Err(Error::Decomposition(format!(
            "arrows do not generate the radical ({} + {} != {})",
            n,
            words.len(),
            k
        )));
    }
    // new basis: idempotents then words
    let mut new_vecs: Vec<Vec<Elem>> = idems.clone();
    let mut basis: Vec<BasisElt> = (0..n)
        .map(|v| BasisElt {
            label: format!("e[{}]", labels[v]),
            src: v,
            tgt: v,
            factors: vec![],
        })
        .collect();
    let gens: Vec<usize> = (0..arrows.len()).map(|g| n + g).collect();
    for (factors, v, s, t) in &words {
        let label = factors
            .iter()
            .map(|g| format!("g{g}"))
            .collect::<Vec<_>>()
            .join("*");
        basis.push(BasisElt {
            label,
            src: *s,
            tgt: *t,
            factors: factors.clone(),
        });
        new_vecs.push(v.clone());
    }
    let change = Matrix::from_cols(f, k, &new_vecs);
    let inv = change
        .inverse()
        .ok_or_else(|| Error::Decomposition("word basis is not a basis".into()))?;
    let mut new_table = vec![vec![vec![]; k]; k];
    for i in 0..k {
        for j in 0..k {
            if basis[i].src != basis[j].tgt {
                continue;
            }
            let p = mul(&new_vecs[i], &new_vecs[j]);
            let c = inv.mul_vec(&p);
            new_table[i][j] = c
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !f.is_zero(x))
                .collect();
        }
    }
    let sa = StructAlgebra::new(f.clone(), labels, basis, gens, new_table, special)?;
    let morphisms = new_vecs
        .iter()
        .zip(sa.basis())
        .map(|(v, b)| {
            // algebra element with src t, tgt s is a morphism s -> t
            let (s, t) = (b.tgt, b.src);
            let o = offset(s, t);
            let d = cat.hom_dim(s, t);
            (s, t, v[o..o + d].to_vec())
        })
        .collect();
    Ok((sa, morphisms))
}

/// Quotient helper re-exported for algebra-level computations.
pub fn quotient_by(f: &Field, k: usize, sub: &[Vec<Elem>]) -> Quotient {
    Quotient::new(f, k, sub)
}
