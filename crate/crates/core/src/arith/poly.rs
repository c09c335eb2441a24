//! Dense univariate polynomials, lowest degree first, over any ring context.
//!
//! Polynomials are plain `Vec<E>` kept trimmed: no trailing zero
//! coefficients, and the zero polynomial is the empty vector.

use super::ring::{Field, Ring};
use num_bigint::BigUint;
use num_traits::Zero;

pub fn trim<R: Ring>(r: &R, mut a: Vec<R::Elem>) -> Vec<R::Elem> {
    while a.last().is_some_and(|c| r.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, or `None` for the zero polynomial.
pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn constant<R: Ring>(r: &R, c: R::Elem) -> Vec<R::Elem> {
    trim(r, vec![c])
}

/// The monomial `X^k`.
pub fn monomial<R: Ring>(r: &R, k: usize) -> Vec<R::Elem> {
    let mut v = vec![r.zero(); k + 1];
    v[k] = r.one();
    v
}

pub fn add<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let c = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => r.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        out.push(c);
    }
    trim(r, out)
}

pub fn neg<R: Ring>(r: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    a.iter().map(|c| r.neg(c)).collect()
}

pub fn sub<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    add(r, a, &neg(r, b))
}

pub fn scale<R: Ring>(r: &R, a: &[R::Elem], c: &R::Elem) -> Vec<R::Elem> {
    trim(r, a.iter().map(|x| r.mul(x, c)).collect())
}

pub fn mul<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = r.mul(x, y);
            out[i + j] = r.add(&out[i + j], &t);
        }
    }
    trim(r, out)
}

pub fn pow<R: Ring>(r: &R, a: &[R::Elem], mut e: u32) -> Vec<R::Elem> {
    let mut acc = constant(r, r.one());
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(r, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(r, &base, &base);
        }
    }
    acc
}

pub fn eval<R: Ring>(r: &R, a: &[R::Elem], x: &R::Elem) -> R::Elem {
    let mut acc = r.zero();
    for c in a.iter().rev() {
        acc = r.add(&r.mul(&acc, x), c);
    }
    acc
}

pub fn derivative<R: Ring>(r: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| r.mul(c, &r.from_i64(i as i64)))
        .collect();
    trim(r, out)
}

/// Composition `a(b(X))`.
pub fn compose<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let mut acc: Vec<R::Elem> = Vec::new();
    for c in a.iter().rev() {
        acc = add(r, &mul(r, &acc, b), &constant(r, c.clone()));
    }
    acc
}

pub fn leading<R: Ring>(a: &[R::Elem]) -> Option<&R::Elem> {
    a.last()
}

/// Euclidean division `a = q*b + rem`. Panics if `b` is zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lc_inv = f.inv(&b[db]).expect("leading coefficient is a unit");
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut q = vec![f.zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = f.mul(&rem[k + db], &lc_inv);
        if !f.is_zero(&c) {
            for (j, bj) in b.iter().enumerate() {
                let t = f.mul(&c, bj);
                rem[k + j] = f.sub(&rem[k + j], &t);
            }
        }
        q[k] = c;
    }
    rem.truncate(db);
    (trim(f, q), trim(f, rem))
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(f, a, b).1
}

/// Exact quotient; panics if the division leaves a remainder.
pub fn exact_div<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let (q, r) = divrem(f, a, b);
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = f.inv(lc).expect("nonzero leading coefficient");
            scale(f, a, &inv)
        }
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn xgcd<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>, Vec<F::Elem>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (constant(f, f.one()), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), constant(f, f.one()));
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match r0.last() {
        None => (Vec::new(), s0, t0),
        Some(lc) => {
            let inv = f.inv(lc).expect("unit");
            (scale(f, &r0, &inv), scale(f, &s0, &inv), scale(f, &t0, &inv))
        }
    }
}

/// `a^e mod m` with a big exponent.
pub fn powmod<F: Field>(f: &F, a: &[F::Elem], e: &BigUint, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(f, &constant(f, f.one()), m);
    if e.is_zero() {
        return acc;
    }
    let base = rem(f, a, m);
    for i in (0..e.bits()).rev() {
        acc = rem(f, &mul(f, &acc, &acc), m);
        if e.bit(i) {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
    }
    acc
}

/// Resultant of `a` and `b` via the Euclidean remainder sequence.
pub fn resultant<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    if a.is_empty() || b.is_empty() {
        return f.zero();
    }
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    let mut acc = f.one();
    loop {
        let m = a.len() - 1;
        let n = b.len() - 1;
        if n == 0 {
            return f.mul(&acc, &f.pow(&b[0], m as u64));
        }
        let r = rem(f, &a, &b);
        if r.is_empty() {
            return f.zero();
        }
        let k = r.len() - 1;
        if (m * n) % 2 == 1 {
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &f.pow(&b[n], (m - k) as u64));
        a = b;
        b = r;
    }
}

/// Discriminant of a monic polynomial: `(-1)^{n(n-1)/2} Res(a, a')`.
pub fn discriminant_monic<F: Field>(f: &F, a: &[F::Elem]) -> F::Elem {
    let n = a.len() - 1;
    let res = resultant(f, a, &derivative(f, a));
    if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        f.neg(&res)
    } else {
        res
    }
}

/// Squarefree part `a / gcd(a, a')`, made monic. Characteristic zero only.
pub fn squarefree_part<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let g = gcd(f, a, &derivative(f, a));
    monic(f, &exact_div(f, a, &g))
}
