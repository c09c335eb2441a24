//! Integer polynomials and their arithmetic modulo prime powers: Hensel
//! lifting of coprime factorizations and of the matching idempotents.

use super::fp::Fp;
use super::poly;
use super::rational::pow_u;
use super::ring::{Integers, Ring, ZMod};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn from_fp(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn to_fp(fp: &Fp, a: &[BigInt]) -> Vec<u64> {
    poly::trim(fp, a.iter().map(|c| fp.reduce_big(c)).collect())
}

pub fn to_q(a: &[BigInt]) -> Vec<BigRational> {
    a.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Integer coefficients of a rational polynomial, if they are all integral.
pub fn from_q(a: &[BigRational]) -> Option<ZPoly> {
    a.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

/// Division by a monic polynomial over any coefficient ring.
pub fn divrem_monic<R: Ring<Elem = BigInt>>(r: &R, a: &[BigInt], b: &[BigInt]) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    debug_assert!(r.is_one(&b[db]));
    let mut rem: Vec<BigInt> = a.iter().map(|c| r.add(c, &r.zero())).collect();
    if rem.len() <= db {
        return (Vec::new(), poly::trim(r, rem));
    }
    let mut q = vec![BigInt::zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] = r.sub(&rem[k + j], &r.mul(&c, bj));
            }
        }
        q[k] = c;
    }
    rem.truncate(db);
    (poly::trim(r, q), poly::trim(r, rem))
}

pub fn rem_monic<R: Ring<Elem = BigInt>>(r: &R, a: &[BigInt], b: &[BigInt]) -> ZPoly {
    divrem_monic(r, a, b).1
}

pub fn reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    poly::trim(&Integers, a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Lifts `f = g*h (mod p)` to `f = G*H (mod p^n)`, `g` monic and coprime to
/// `h` modulo p. Returns `G, H` with least nonnegative coefficients.
pub fn hensel_lift(f: &[BigInt], g: &[u64], h: &[u64], p: u64, n: u32) -> (ZPoly, ZPoly) {
    let fp = Fp::new(p);
    let (one, s, t) = poly::xgcd(&fp, g, h);
    assert_eq!(one, vec![1], "factors are not coprime mod p");
    let mut big_g = from_fp(g);
    let mut big_h = from_fp(h);
    for k in 1..n {
        let pk = pow_u(p, k);
        let diff = poly::sub(&Integers, f, &poly::mul(&Integers, &big_g, &big_h));
        let e: ZPoly = diff
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&pk);
                debug_assert!(r.is_zero(), "lifting invariant broken");
                q
            })
            .collect();
        let e = to_fp(&fp, &e);
        if e.is_empty() {
            continue;
        }
        let (q, r) = poly::divrem(&fp, &poly::mul(&fp, &t, &e), g);
        let dh = poly::add(&fp, &poly::mul(&fp, &s, &e), &poly::mul(&fp, &q, h));
        let dg: ZPoly = from_fp(&r).iter().map(|c| c * &pk).collect();
        let dh: ZPoly = from_fp(&dh).iter().map(|c| c * &pk).collect();
        big_g = poly::add(&Integers, &big_g, &dg);
        big_h = poly::add(&Integers, &big_h, &dh);
    }
    let m = pow_u(p, n);
    (reduce(&big_g, &m), reduce(&big_h, &m))
}

/// Lifts a factorization of `f` mod p into pairwise coprime monic factors
/// to precision p^n. Each factor is lifted against its cofactor.
pub fn lift_factorization(f: &[BigInt], factors: &[Vec<u64>], p: u64, n: u32) -> Vec<ZPoly> {
    let fp = Fp::new(p);
    (0..factors.len())
        .map(|i| {
            let cof = factors
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(vec![1u64], |acc, (_, g)| poly::mul(&fp, &acc, g));
            hensel_lift(f, &factors[i], &cof, p, n).0
        })
        .collect()
}

/// Orthogonal idempotents of `Z/p^n[X]/(f)` attached to a coprime
/// factorization of `f` mod p.
pub fn idempotents(f: &[BigInt], factors: &[Vec<u64>], p: u64, n: u32) -> Vec<ZPoly> {
    let fp = Fp::new(p);
    let zm = ZMod::new(pow_u(p, n));
    let f_mod = reduce(f, &zm.modulus);
    factors
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let cof = factors
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(vec![1u64], |acc, (_, h)| poly::mul(&fp, &acc, h));
            let (_, _, t) = poly::xgcd(&fp, g, &cof);
            let mut e = from_fp(&poly::mul(&fp, &t, &cof));
            let mut prec = 1;
            loop {
                e = rem_monic(&zm, &e, &f_mod);
                if prec >= n {
                    break;
                }
                let e2 = rem_monic(&zm, &poly::mul(&zm, &e, &e), &f_mod);
                let e3 = rem_monic(&zm, &poly::mul(&zm, &e2, &e), &f_mod);
                let three = zm.from_i64(3);
                let two = zm.from_i64(2);
                e = poly::sub(&zm, &poly::scale(&zm, &e2, &three), &poly::scale(&zm, &e3, &two));
                prec *= 2;
            }
            e
        })
        .collect()
}

/// The n-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> ZPoly {
    assert!(n >= 1);
    let mut num: ZPoly = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = exact_div_monic(&num, &cyclotomic(d));
        }
    }
    num
}

pub fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (q, r) = divrem_monic(&Integers, a, b);
    assert!(r.is_empty(), "inexact division");
    q
}

/// Squared 2-norm rounded up to an integer bound on the 2-norm.
pub fn norm2_ceil(a: &[BigInt]) -> BigInt {
    let s: BigInt = a.iter().map(|c| c * c).sum();
    let r = s.sqrt();
    if &r * &r == s {
        r
    } else {
        r + 1
    }
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub fn max_abs(a: &[BigInt]) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_default()
}
