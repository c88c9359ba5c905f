//! Subalgebras of a full matrix algebra given by a basis: coordinates,
//! Jacobson radical and a locality test.

use super::field::{Elem, Field};
use super::matrix::Matrix;
use crate::error::{Error, Result};

pub struct MatrixAlgebra {
    field: Field,
    n: usize,
    basis: Vec<Matrix>,
    flat: Matrix,
}

/// Outcome of a locality test on a matrix algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locality {
    /// The quotient by the radical is a field; carries its dimension.
    Local(usize),
    /// The quotient by the radical is not a division algebra.
    NotLocal,
    /// The quotient may be a non-split division algebra over the rationals.
    Undecided,
}

impl MatrixAlgebra {
    /// `basis` must be linearly independent square matrices of equal size.
    pub fn new(field: &Field, n: usize, basis: Vec<Matrix>) -> MatrixAlgebra {
        let cols: Vec<Vec<Elem>> = basis.iter().map(|b| b.flatten()).collect();
        let flat = Matrix::from_cols(field, n * n, &cols);
        MatrixAlgebra {
            field: field.clone(),
            n,
            basis,
            flat,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn coords(&self, m: &Matrix) -> Option<Vec<Elem>> {
        if self.basis.is_empty() {
            return if m.is_zero() { Some(vec![]) } else { None };
        }
        let v = Matrix::column_vector(&self.field, &m.flatten());
        self.flat.solve_unique(&v).map(|x| x.col(0))
    }

    pub fn element(&self, c: &[Elem]) -> Matrix {
        let f = &self.field;
        let mut acc = Matrix::zeros(f, self.n, self.n);
        for (b, x) in self.basis.iter().zip(c) {
            if !f.is_zero(x) {
                acc = acc.add(&b.scale(x));
            }
        }
        acc
    }

    /// Coefficient vectors of a basis of the Jacobson radical.
    ///
    /// Over the rationals this is the kernel of the trace form. Over a prime
    /// field the trace form is refined by the p-power trace functionals of
    /// Friedl and Ronyai, which coincides with the trace form whenever the
    /// representation has dimension below p.
    pub fn radical(&self) -> Result<Vec<Vec<Elem>>> {
        let f = &self.field;
        let k = self.dim();
        match f {
            Field::Rationals => {
                let g = Matrix::from_fn(f, k, k, |i, j| self.basis[i].mul(&self.basis[j]).trace());
                Ok(g.kernel_basis().columns())
            }
            Field::Prime(p) => {
                let p = *p;
                let mut current: Vec<Vec<Elem>> = (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| if i == j { f.one() } else { f.zero() })
                            .collect()
                    })
                    .collect();
                let mut level = 0u32;
                let mut pp = 1usize;
                loop {
                    if current.is_empty() {
                        break;
                    }
                    let elems: Vec<Matrix> = current.iter().map(|c| self.element(c)).collect();
                    let rows: Vec<Vec<Elem>> = self
                        .basis
                        .iter()
                        .map(|y| {
                            elems
                                .iter()
                                .map(|a| Elem::P(trace_functional(&a.mul(y), p, level)))
                                .collect()
                        })
                        .collect();
                    let g = Matrix::from_rows(f, current.len(), &rows);
                    let kern = g.kernel_basis();
                    current = kern
                        .columns()
                        .iter()
                        .map(|c| {
                            let mut acc = vec![f.zero(); k];
                            for (coef, base) in c.iter().zip(&current) {
                                for (slot, b) in acc.iter_mut().zip(base) {
                                    *slot = f.add(slot, &f.mul(coef, b));
                                }
                            }
                            acc
                        })
                        .collect();
                    pp *= p as usize;
                    if pp > self.n {
                        break;
                    }
                    level += 1;
                }
                Ok(current)
            }
            Field::Extension(_) => Err(Error::Field("radical over an extension field".into())),
        }
    }

    /// Tests whether the algebra is local, i.e. its quotient by the radical
    /// is a division algebra.
    pub fn locality(&self) -> Result<Locality> {
        let f = &self.field;
        let rad = self.radical()?;
        let k = self.dim();
        let s = k - rad.len();
        if s == 1 {
            return Ok(Locality::Local(1));
        }
        if s == 0 {
            return Ok(Locality::NotLocal);
        }
        let quotient = Quotient::new(f, k, &rad);
        let reps: Vec<Matrix> = quotient
            .complement
            .iter()
            .map(|&i| self.basis[i].clone())
            .collect();
        // commutativity modulo the radical
        for a in &reps {
            for b in &reps {
                let c = a.mul(b).sub(&b.mul(a));
                let cc = self.coords(&c).expect("closed under products");
                if quotient.project(&cc).iter().any(|x| !f.is_zero(x)) {
                    return Ok(Locality::NotLocal);
                }
            }
        }
        match f {
            Field::Prime(p) => {
                // fixed points of the Frobenius on a commutative semisimple
                // algebra count its field factors
                let cols: Vec<Vec<Elem>> = reps
                    .iter()
                    .map(|a| {
                        let ap = a.pow(*p);
                        quotient.project(&self.coords(&ap).expect("closed under products"))
                    })
                    .collect();
                let frob = Matrix::from_cols(f, s, &cols);
                let fixed = frob.sub(&Matrix::identity(f, s)).kernel_basis().cols();
                Ok(if fixed == 1 {
                    Locality::Local(s)
                } else {
                    Locality::NotLocal
                })
            }
            Field::Rationals => {
                // a rational eigenvalue whose shift is not nilpotent exhibits a
                // non-invertible, non-nilpotent element
                for a in &reps {
                    let mp = super::poly::minimal_polynomial(a);
                    for lambda in super::poly::rational_roots(f, &mp) {
                        let shifted = a.sub(&Matrix::identity(f, self.n).scale(&lambda));
                        if !shifted.pow(self.n as u64).is_zero() {
                            return Ok(Locality::NotLocal);
                        }
                    }
                }
                Ok(Locality::Undecided)
            }
            Field::Extension(_) => Ok(Locality::Undecided),
        }
    }
}

/// Value of the `level`-th Friedl-Ronyai functional on a matrix over F_p:
/// lift to integers, take the trace of the p^level power modulo p^(level+1)
/// and divide by p^level.
fn trace_functional(a: &Matrix, p: u64, level: u32) -> u64 {
    let n = a.rows();
    let modulus = (p as u128).pow(level + 1);
    let lift: Vec<u128> = a
        .data()
        .iter()
        .map(|e| if let Elem::P(x) = e { *x as u128 } else { 0 })
        .collect();
    let mut power = lift.clone();
    let exp = (p as u128).pow(level);
    let mut e = 1u128;
    while e < exp {
        let mut next = vec![0u128; n * n];
        for i in 0..n {
            for l in 0..n {
                let x = power[i * n + l];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i * n + j] = (next[i * n + j] + x * lift[l * n + j]) % modulus;
                }
            }
        }
        power = next;
        e += 1;
    }
    let tr = (0..n).fold(0u128, |acc, i| (acc + power[i * n + i]) % modulus);
    let scale = (p as u128).pow(level);
    ((tr / scale) % p as u128) as u64
}

/// A quotient of coordinate space by a subspace, with a fixed complement of
/// standard basis vectors.
pub struct Quotient {
    pub complement: Vec<usize>,
    reduce: Matrix,
}

impl Quotient {
    /// `sub` lists coefficient vectors spanning the subspace of `field^k`.
    pub fn new(field: &Field, k: usize, sub: &[Vec<Elem>]) -> Quotient {
        let s = Matrix::from_cols(field, k, sub);
        // pivot coordinates of the echelonised subspace are dependent; the rest
        // form the complement
        let (ech, piv) = s.transpose().rref();
        let complement: Vec<usize> = (0..k).filter(|c| !piv.contains(c)).collect();
        // projection: x minus its subspace part, read off on the complement
        let mut reduce = Matrix::zeros(field, complement.len(), k);
        for (row, &c) in complement.iter().enumerate() {
            reduce.set(row, c, field.one());
        }
        for (i, &pc) in piv.iter().enumerate() {
            // x_pc e_pc is replaced by x_pc (e_pc - ech_row_i)
            for (row, &c) in complement.iter().enumerate() {
                let v = field.neg(ech.get(i, c));
                reduce.set(row, pc, v);
            }
        }
        Quotient { complement, reduce }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn project(&self, x: &[Elem]) -> Vec<Elem> {
        self.reduce.mul_vec(x)
    }

    pub fn projection(&self) -> &Matrix {
        &self.reduce
    }
}
