#![allow(dead_code)]

use num_rational::BigRational;
use prime_scope::arith::poly;
use prime_scope::arith::ring::Rationals;
use prime_scope::field::{FieldElement, NumberField};
use proptest::prelude::*;

pub const FIELDS: &[&str] = &["X", "X^2+1", "X^2-2", "X^2+X+1", "X^2-5", "X^3-2", "X^3-X-1", "X^4-X-1", "X^4+1"];

pub fn field(s: &str) -> NumberField {
    NumberField::parse(s).unwrap()
}

pub fn small_rat(h: i64) -> impl Strategy<Value = BigRational> {
    (-h..=h, 1..=h).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

/// Rational with a numerator and denominator carrying powers of small primes,
/// so valuations at 2, 3, 5, 7 vary.
pub fn padic_rat() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 0u32..4, 0u32..4, 1i64..30).prop_map(|(a, i, j, b)| {
        let num = a * 5i64.pow(i) * 2i64.pow(j);
        let den = b * 3i64.pow(j % 2) * 7i64.pow(i % 2);
        BigRational::new(num.into(), den.into())
    })
}

pub fn elem_in(k: &NumberField, coords: &[BigRational]) -> FieldElement {
    k.elem(coords.iter().take(k.degree).cloned().collect())
}

pub fn coords(h: i64) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(small_rat(h), 4)
}

pub fn padic_coords() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(padic_rat(), 4)
}

fn vp_i128(mut n: i128, p: i128) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Root of the monic integer polynomial g (ascending coefficients) in Z_p,
/// searched digit by digit modulo p^depth on the squarefree part of g. Some(true) when a residue meets
/// v(g(x)) > 2 v(g'(x)) or is an exact root, Some(false) when no residue
/// survives, None when the search runs out of depth undecided.
pub fn zp_root_oracle(g: &[i64], p: u64, depth: u32) -> Option<bool> {
    let q: Vec<BigRational> = g.iter().map(|&c| BigRational::from_integer(c.into())).collect();
    let sf = poly::monic(&Rationals, &poly::squarefree_part(&Rationals, &q));
    let g: Vec<i64> = sf.iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect();
    let p = p as i128;
    let eval = |x: i128| g.iter().rev().fold(0i128, |acc, &c| acc * x + c as i128);
    let deval = |x: i128| g.iter().enumerate().skip(1).rev().fold(0i128, |acc, (i, &c)| acc * x + i as i128 * c as i128);
    let mut level = vec![0i128];
    let mut modulus = 1i128;
    for j in 1..=depth {
        let mut next = Vec::new();
        for &x0 in &level {
            for d in 0..p {
                let x = x0 + d * modulus;
                let vg = vp_i128(eval(x), p);
                if vg < j {
                    continue;
                }
                let vd = vp_i128(deval(x), p);
                if vg == u32::MAX || (vd != u32::MAX && vg > 2 * vd) {
                    return Some(true);
                }
                next.push(x);
            }
        }
        if next.is_empty() {
            return Some(false);
        }
        level = next;
        modulus *= p;
    }
    None
}
