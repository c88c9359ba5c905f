//! Univariate polynomials over an exact field (coefficients low degree first)
//! and the matrix polynomials needed for idempotent splitting.

use super::field::{Elem, Field};
use super::fpoly;
use super::matrix::Matrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub type Poly = Vec<Elem>;

pub fn trim(f: &Field, a: &mut Poly) {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
}

pub fn degree(f: &Field, a: &Poly) -> Option<usize> {
    a.iter().rposition(|c| !f.is_zero(c))
}

pub fn sub(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut r: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
            let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
            f.sub(&x, &y)
        })
        .collect();
    trim(f, &mut r);
    r
}

pub fn mul(f: &Field, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] = f.add(&r[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut r);
    r
}

pub fn divrem(f: &Field, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = degree(f, b).expect("division by zero polynomial");
    let li = f.inv(&b[db]).unwrap();
    let mut r = a.clone();
    trim(f, &mut r);
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &li);
        for j in 0..=db {
            r[dr - db + j] = f.sub(&r[dr - db + j], &f.mul(&c, &b[j]));
        }
        q[dr - db] = c;
        trim(f, &mut r);
    }
    trim(f, &mut q);
    (q, r)
}

pub fn monic(f: &Field, a: &Poly) -> Poly {
    let mut r = a.clone();
    trim(f, &mut r);
    if let Some(d) = degree(f, &r) {
        let li = f.inv(&r[d]).unwrap();
        r = r.iter().map(|c| f.mul(c, &li)).collect();
    }
    r
}

pub fn gcd(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let r = divrem(f, &x, &y).1;
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative(f: &Field, a: &Poly) -> Poly {
    let mut r: Poly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
        .collect();
    trim(f, &mut r);
    r
}

/// Evaluates `p(m)` by Horner's rule.
pub fn eval_matrix(f: &Field, p: &Poly, m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut acc = Matrix::zeros(f, n, n);
    for c in p.iter().rev() {
        acc = acc.mul(m).add(&Matrix::identity(f, n).scale(c));
    }
    acc
}

/// Monic minimal polynomial of a square matrix.
pub fn minimal_polynomial(m: &Matrix) -> Poly {
    let f = m.field().clone();
    let n = m.rows();
    let mut powers: Vec<Vec<Elem>> = vec![Matrix::identity(&f, n).flatten()];
    let mut cur = Matrix::identity(&f, n);
    for _ in 0..=n {
        cur = cur.mul(m);
        powers.push(cur.flatten());
        let a = Matrix::from_cols(&f, n * n, &powers);
        let k = a.kernel_basis();
        if k.cols() > 0 {
            let v = k.col(0);
            return monic(&f, &v);
        }
    }
    unreachable!("Cayley-Hamilton bounds the minimal polynomial degree")
}

fn to_fpoly(a: &Poly) -> Vec<u64> {
    let mut v: Vec<u64> = a
        .iter()
        .map(|e| if let Elem::P(x) = e { *x } else { 0 })
        .collect();
    fpoly::trim(&mut v);
    v
}

fn from_fpoly(v: &[u64]) -> Poly {
    v.iter().map(|&x| Elem::P(x)).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Some(vec![]);
    }
    if n > BigInt::from(1_000_000_000_000i64) {
        return None;
    }
    let mut out = vec![];
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of a polynomial with rational coefficients (distinct).
pub fn rational_roots(f: &Field, a: &Poly) -> Vec<Elem> {
    let mut p = a.clone();
    trim(f, &mut p);
    let mut roots = vec![];
    if p.len() <= 1 {
        return roots;
    }
    // strip factors of x
    while p.first().is_some_and(|c| f.is_zero(c)) {
        p.remove(0);
        if !roots.contains(&f.zero()) {
            roots.push(f.zero());
        }
    }
    if p.len() <= 1 {
        return roots;
    }
    let denom_lcm = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(f.rational(c).denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (f.rational(c) * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let (Some(num), Some(den)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return roots;
    };
    for a0 in &num {
        for an in &den {
            for sign in [1, -1] {
                let cand = Elem::Q(BigRational::new(a0 * sign, an.clone()));
                if roots.contains(&cand) {
                    continue;
                }
                let val = p
                    .iter()
                    .rev()
                    .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, &cand), c));
                if f.is_zero(&val) {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

/// A polynomial `g` dividing the radical of `p` such that `g` and `p/g`
/// share no root, or `None` when `p` is a power of one irreducible (as far
/// as the field allows us to tell).
pub fn coprime_factor<R: Rng>(f: &Field, p: &Poly, rng: &mut R) -> Option<Poly> {
    match f {
        Field::Prime(q) => {
            let fp = to_fpoly(p);
            let groups = fpoly::distinct_degree(&fp, *q);
            if groups.len() >= 2 {
                return Some(from_fpoly(&groups[0].1));
            }
            let (d, g) = groups.into_iter().next()?;
            if fpoly::degree(&g).unwrap_or(0) > d {
                let facs = fpoly::equal_degree(&g, d, *q, rng);
                return Some(from_fpoly(&facs[0]));
            }
            None
        }
        Field::Rationals => {
            let roots = rational_roots(f, p);
            let sq = {
                let g = gcd(f, p, &derivative(f, p));
                divrem(f, p, &g).0
            };
            if degree(f, &sq).unwrap_or(0) <= 1 {
                return None;
            }
            roots.first().map(|r| vec![f.neg(r), f.one()])
        }
        Field::Extension(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_polynomial_of_projection() {
        let f = Field::Rationals;
        let m = Matrix::from_i64(&f, &[vec![1, 0], vec![0, 0]]);
        let mp = minimal_polynomial(&m);
        assert_eq!(mp, vec![f.zero(), f.from_i64(-1), f.one()]);
        assert!(eval_matrix(&f, &mp, &m).is_zero());
    }

    #[test]
    fn rational_roots_found() {
        let f = Field::Rationals;
        // (2x - 1)(x + 3) = 2x^2 + 5x - 3
        let p = vec![f.from_i64(-3), f.from_i64(5), f.from_i64(2)];
        let mut r = rational_roots(&f, &p);
        r.sort_by_key(|e| f.format(e));
        assert_eq!(r.len(), 2);
        assert!(r.contains(&f.parse("1/2").unwrap()));
        assert!(r.contains(&f.from_i64(-3)));
    }
}
