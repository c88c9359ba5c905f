//! Dense polynomials over a prime field, coefficients stored low degree first.
//!
//! These back the extension-field arithmetic and the factor splitting used by
//! module decomposition.

use num_bigint::BigUint;
use rand::Rng;

pub type FPoly = Vec<u64>;

pub fn trim(a: &mut FPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub fn inv_u64(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    Some(powmod_u64(a, p - 2, p))
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> FPoly {
    let n = a.len().max(b.len());
    let mut r = vec![0; n];
    for (i, slot) in r.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % p;
    }
    trim(&mut r);
    r
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FPoly {
    let n = a.len().max(b.len());
    let mut r = vec![0; n];
    for (i, slot) in r.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    trim(&mut r);
    r
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(&mut r);
    r
}

/// Quotient and remainder; panics on division by the zero polynomial.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (FPoly, FPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_u64(b[db], p).expect("leading coefficient invertible");
    let mut r: FPoly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mulmod(r[dr], lead_inv, p);
        q[dr - db] = c;
        for j in 0..=db {
            let t = mulmod(c, b[j], p);
            r[dr - db + j] = (r[dr - db + j] + p - t) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> FPoly {
    divrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> FPoly {
    let mut r = a.to_vec();
    trim(&mut r);
    if let Some(d) = degree(&r) {
        let inv = inv_u64(r[d], p).unwrap();
        for c in r.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
    r
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> FPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Extended gcd: returns (g, s) with s*a = g mod b.
pub fn inverse_mod(a: &[u64], m: &[u64], p: u64) -> Option<FPoly> {
    let (mut r0, mut r1) = (m.to_vec(), rem(a, m, p));
    let (mut s0, mut s1): (FPoly, FPoly) = (vec![], vec![1]);
    trim(&mut r0);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let inv = inv_u64(r0[0], p)?;
    let s: FPoly = s0.iter().map(|&c| mulmod(c, inv, p)).collect();
    Some(rem(&s, m, p))
}

pub fn mulmod_poly(a: &[u64], b: &[u64], m: &[u64], p: u64) -> FPoly {
    rem(&mul(a, b, p), m, p)
}

pub fn powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> FPoly {
    let mut result: FPoly = rem(&[1], m, p);
    let b = rem(base, m, p);
    let bits = e.bits();
    for i in (0..bits).rev() {
        result = mulmod_poly(&result, &result, m, p);
        if e.bit(i) {
            result = mulmod_poly(&result, &b, m, p);
        }
    }
    result
}

fn x_pow_p_iter(m: &[u64], p: u64, times: usize) -> FPoly {
    let mut h: FPoly = rem(&[0, 1], m, p);
    let pe = BigUint::from(p);
    for _ in 0..times {
        h = powmod(&h, &pe, m, p);
    }
    h
}

/// Rabin irreducibility test for a polynomial of positive degree.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = monic(f, p);
    let n = match degree(&f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let x: FPoly = vec![0, 1];
    // x^(p^n) = x mod f
    let h = x_pow_p_iter(&f, p, n);
    if !sub(&h, &rem(&x, &f, p), p).is_empty() {
        return false;
    }
    for q in prime_divisors(n as u64) {
        let k = n / q as usize;
        let hk = x_pow_p_iter(&f, p, k);
        let g = gcd(&f, &sub(&hk, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Distinct-degree factorisation of the radical of `f`: pairs (d, product of
/// the distinct monic irreducible factors of degree d).
pub fn distinct_degree(f: &[u64], p: u64) -> Vec<(usize, FPoly)> {
    let mut rest = monic(f, p);
    let mut out = vec![];
    let x: FPoly = vec![0, 1];
    let mut d = 0;
    while degree(&rest).is_some_and(|k| k >= 1) {
        d += 1;
        let h = x_pow_p_iter(&rest, p, d);
        let g = gcd(&rest, &sub(&h, &x, p), p);
        if degree(&g).is_some_and(|k| k >= 1) {
            // strip every power of g's factors
            loop {
                let c = gcd(&rest, &g, p);
                if degree(&c) == Some(0) {
                    break;
                }
                rest = divrem(&rest, &c, p).0;
            }
            out.push((d, g));
        }
        if d > 4096 {
            break;
        }
    }
    out
}

/// Splits a squarefree product of irreducibles of common degree `d` into
/// its irreducible factors (Cantor-Zassenhaus).
pub fn equal_degree<R: Rng>(f: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<FPoly> {
    let f = monic(f, p);
    let n = degree(&f).unwrap_or(0);
    if n <= d {
        return vec![f];
    }
    loop {
        let a: FPoly = {
            let mut v: FPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
            trim(&mut v);
            v
        };
        if degree(&a).is_none_or(|k| k == 0) {
            continue;
        }
        let g = gcd(&a, &f, p);
        let cand = if degree(&g).is_some_and(|k| k >= 1) {
            g
        } else if p == 2 {
            let mut t = rem(&a, &f, p);
            let mut acc = t.clone();
            for _ in 1..d {
                t = mulmod_poly(&t, &t, &f, p);
                acc = add(&acc, &t, p);
            }
            gcd(&acc, &f, p)
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            let b = powmod(&a, &e, &f, p);
            gcd(&sub(&b, &[1], p), &f, p)
        };
        let dc = degree(&cand).unwrap_or(0);
        if dc >= 1 && dc < n {
            let other = divrem(&f, &cand, p).0;
            let mut out = equal_degree(&cand, d, p, rng);
            out.extend(equal_degree(&other, d, p, rng));
            return out;
        }
    }
}

/// A monic irreducible polynomial of the given degree: the first in
/// lexicographic order of coefficient vectors.
pub fn first_irreducible(deg: usize, p: u64) -> FPoly {
    let mut coeffs = vec![0u64; deg];
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible(&[0, 0, 1], 3));
        assert!(is_irreducible(&[1, 0, 1], 3));
    }

    #[test]
    fn ddf_and_edf_recover_factors() {
        let p = 3;
        // (x+1)(x+2)(x^2+1)
        let f = mul(&mul(&[1, 1], &[2, 1], p), &[1, 0, 1], p);
        let dd = distinct_degree(&f, p);
        assert_eq!(dd.len(), 2);
        assert_eq!(dd[0].0, 1);
        assert_eq!(degree(&dd[0].1), Some(2));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut fac = equal_degree(&dd[0].1, 1, p, &mut rng);
        fac.sort();
        assert_eq!(fac, vec![vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn inverse_mod_roundtrip() {
        let p = 2;
        let m = vec![1, 1, 1];
        let a = vec![0, 1];
        let inv = inverse_mod(&a, &m, p).unwrap();
        assert_eq!(mulmod_poly(&a, &inv, &m, p), vec![1]);
    }
}
