//! Exact scalar fields: the rationals, prime fields, and finite extensions of
//! prime fields (internal only, never serialised).

use super::fpoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite extension `F_p[x]/(f)` with `f` monic and irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    p: u64,
    modulus: Vec<u64>,
}

impl ExtField {
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<ExtField> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        let m = fpoly::monic(&modulus.iter().map(|c| c % p).collect::<Vec<_>>(), p);
        if !fpoly::is_irreducible(&m, p) {
            return Err(Error::Field(format!(
                "{modulus:?} is not irreducible over F_{p}"
            )));
        }
        Ok(ExtField { p, modulus: m })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn reduce(&self, mut a: Vec<u64>) -> Vec<u64> {
        a = fpoly::rem(&a, &self.modulus, self.p);
        a.resize(self.degree(), 0);
        a
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
    Extension(Arc<ExtField>),
}

/// A field element. The variant always matches the field it came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Q(BigRational),
    P(u64),
    E(Vec<u64>),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::Field(format!("{p} is not prime")))
        }
    }

    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Field> {
        Ok(Field::Extension(Arc::new(ExtField::new(p, modulus)?)))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
            Field::Extension(e) => e.p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn size(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
            Field::Extension(e) => Some(e.p.pow(e.degree() as u32)),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    pub fn zero(&self) -> Elem {
        match self {
            Field::Rationals => Elem::Q(BigRational::zero()),
            Field::Prime(_) => Elem::P(0),
            Field::Extension(e) => Elem::E(vec![0; e.degree()]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match self {
            Field::Rationals => Elem::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Elem::P(v.rem_euclid(*p as i64) as u64),
            Field::Extension(e) => {
                let mut c = vec![0; e.degree()];
                c[0] = v.rem_euclid(e.p as i64) as u64;
                Elem::E(c)
            }
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(x) => x.is_zero(),
            Elem::P(x) => *x == 0,
            Elem::E(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (_, Elem::Q(x), Elem::Q(y)) => Elem::Q(x + y),
            (Field::Prime(p), Elem::P(x), Elem::P(y)) => Elem::P((x + y) % p),
            (Field::Extension(e), Elem::E(x), Elem::E(y)) => {
                Elem::E(x.iter().zip(y).map(|(u, v)| (u + v) % e.p).collect())
            }
            _ => panic!("field mismatch in add"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (_, Elem::Q(x)) => Elem::Q(-x),
            (Field::Prime(p), Elem::P(x)) => Elem::P((p - x) % p),
            (Field::Extension(e), Elem::E(x)) => {
                Elem::E(x.iter().map(|u| (e.p - u) % e.p).collect())
            }
            _ => panic!("field mismatch in neg"),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (_, Elem::Q(x), Elem::Q(y)) => Elem::Q(x * y),
            (Field::Prime(p), Elem::P(x), Elem::P(y)) => Elem::P(fpoly::mulmod(*x, *y, *p)),
            (Field::Extension(e), Elem::E(x), Elem::E(y)) => {
                Elem::E(e.reduce(fpoly::mul(x, y, e.p)))
            }
            _ => panic!("field mismatch in mul"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (_, Elem::Q(x)) => Some(Elem::Q(x.recip())),
            (Field::Prime(p), Elem::P(x)) => fpoly::inv_u64(*x, *p).map(Elem::P),
            (Field::Extension(e), Elem::E(x)) => {
                let mut xt = x.clone();
                fpoly::trim(&mut xt);
                fpoly::inverse_mod(&xt, &e.modulus, e.p).map(|v| Elem::E(e.reduce(v)))
            }
            _ => panic!("field mismatch in inv"),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// A random element; over the rationals a small integer.
    pub fn random<R: Rng>(&self, rng: &mut R) -> Elem {
        match self {
            Field::Rationals => self.from_i64(rng.gen_range(-3..=3)),
            Field::Prime(p) => Elem::P(rng.gen_range(0..*p)),
            Field::Extension(e) => {
                Elem::E((0..e.degree()).map(|_| rng.gen_range(0..e.p)).collect())
            }
        }
    }

    /// All elements of a finite field in a fixed order (0 first).
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..*p).map(Elem::P).collect()),
            Field::Extension(e) => {
                let q = self.size()?;
                let d = e.degree();
                Some(
                    (0..q)
                        .map(|mut k| {
                            let mut c = vec![0; d];
                            for slot in c.iter_mut() {
                                *slot = k % e.p;
                                k /= e.p;
                            }
                            Elem::E(c)
                        })
                        .collect(),
                )
            }
        }
    }

    /// Integer index of an element of a finite field, consistent with `elements`.
    pub fn index_of(&self, a: &Elem) -> u64 {
        match (self, a) {
            (Field::Prime(_), Elem::P(x)) => *x,
            (Field::Extension(e), Elem::E(c)) => c.iter().rev().fold(0, |acc, &d| acc * e.p + d),
            _ => panic!("index_of on an infinite field"),
        }
    }

    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        match self {
            Field::Rationals => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n: BigInt = n
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational numerator '{s}'")))?;
                let d: BigInt = d
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational denominator '{s}'")))?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in '{s}'")));
                }
                Ok(Elem::Q(BigRational::new(n, d)))
            }
            Field::Prime(p) => {
                let v: i128 = if let Some((n, d)) = s.split_once('/') {
                    let n: i128 = n
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad residue '{s}'")))?;
                    let d: i128 = d
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad residue '{s}'")))?;
                    let dm = d.rem_euclid(*p as i128) as u64;
                    let di = fpoly::inv_u64(dm, *p).ok_or_else(|| {
                        Error::Parse(format!("denominator not invertible in '{s}'"))
                    })?;
                    (n.rem_euclid(*p as i128) * di as i128) % *p as i128
                } else {
                    s.parse()
                        .map_err(|_| Error::Parse(format!("bad residue '{s}'")))?
                };
                Ok(Elem::P(v.rem_euclid(*p as i128) as u64))
            }
            Field::Extension(_) => Err(Error::Parse("extension fields have no file format".into())),
        }
    }

    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Q(x) => format!("{}/{}", x.numer(), x.denom()),
            Elem::P(x) => x.to_string(),
            Elem::E(c) => format!("{c:?}"),
        }
    }

    /// Lifts a prime-field element to its least nonnegative residue.
    pub fn residue(&self, a: &Elem) -> u64 {
        match a {
            Elem::P(x) => *x,
            _ => panic!("residue on a non-prime field"),
        }
    }

    /// Rational value when the field is the rationals.
    pub fn rational(&self, a: &Elem) -> BigRational {
        match a {
            Elem::Q(x) => x.clone(),
            _ => panic!("rational on a finite field"),
        }
    }

    pub fn is_integral(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(x) => x.is_integer(),
            _ => true,
        }
    }

    pub fn abs_height(&self, a: &Elem) -> BigInt {
        match a {
            Elem::Q(x) => x.numer().abs() + x.denom().abs(),
            _ => BigInt::one(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Extension(e) => write!(f, "F_{}[x]/({:?})", e.p, e.modulus),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_serialisation_is_reduced() {
        let f = Field::Rationals;
        let a = f.parse("6/-4").unwrap();
        assert_eq!(f.format(&a), "-3/2");
        assert_eq!(f.format(&f.parse("5").unwrap()), "5/1");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        let inv = f.inv(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &inv)));
        assert_eq!(f.format(&f.from_i64(-1)), "6");
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn extension_field_is_a_field() {
        let f = Field::extension(2, vec![1, 1, 1]).unwrap();
        let elems = f.elements().unwrap();
        assert_eq!(elems.len(), 4);
        for a in &elems {
            if !f.is_zero(a) {
                assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
            }
        }
        assert!(Field::extension(2, vec![1, 0, 1]).is_err());
    }
}
