//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! and equal-degree (Cantor-Zassenhaus) splitting. The random stream used for
//! equal-degree splitting is seeded from the input, so results are
//! reproducible.

use super::fp::Fp;
use super::poly;
use super::rational::{prime_factors_u64, vp_rat};
use super::ring::FiniteField;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A monic irreducible factor with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ModPFactor {
    pub factor: Vec<u64>,
    pub multiplicity: u32,
}

fn x_poly<F: FiniteField>(f: &F) -> Vec<F::Elem> {
    poly::monomial(f, 1)
}

fn order_big<F: FiniteField>(f: &F) -> BigUint {
    f.order()
}

/// p-th root of a polynomial whose derivative vanishes.
fn pth_root<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let p = f.characteristic() as usize;
    // c -> c^{p^{k-1}} inverts the Frobenius on F_{p^k}
    let e = f.characteristic().pow(f.degree() - 1);
    let out = a.iter().step_by(p).map(|c| f.pow(c, e)).collect();
    poly::trim(f, out)
}

/// Squarefree factorization of a monic polynomial.
pub fn squarefree_factorization<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(Vec<F::Elem>, u32)> {
    let mut out = Vec::new();
    if poly::degree(a).unwrap_or(0) == 0 {
        return out;
    }
    let one = poly::constant(f, f.one());
    let c0 = poly::gcd(f, a, &poly::derivative(f, a));
    let mut w = poly::exact_div(f, a, &c0);
    let mut c = c0;
    let mut i = 1;
    while w != one {
        let y = poly::gcd(f, &w, &c);
        let fac = poly::exact_div(f, &w, &y);
        if fac != one {
            out.push((fac, i));
        }
        c = poly::exact_div(f, &c, &y);
        w = y;
        i += 1;
    }
    if c != one {
        let root = pth_root(f, &c);
        let p = f.characteristic() as u32;
        for (g, m) in squarefree_factorization(f, &root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial.
pub fn distinct_degree<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(Vec<F::Elem>, usize)> {
    let one = poly::constant(f, f.one());
    let x = x_poly(f);
    let q = order_big(f);
    let mut out = Vec::new();
    let mut rest = a.to_vec();
    let mut h = poly::rem(f, &x, &rest);
    let mut i = 1;
    while poly::degree(&rest).unwrap_or(0) >= 2 * i {
        h = poly::powmod(f, &h, &q, &rest);
        let g = poly::gcd(f, &rest, &poly::sub(f, &h, &x));
        if g != one {
            rest = poly::exact_div(f, &rest, &g);
            h = poly::rem(f, &h, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest != one && !rest.is_empty() {
        let d = rest.len() - 1;
        out.push((rest, d));
    }
    out
}

fn random_poly<F: FiniteField>(f: &F, deg_bound: usize, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    let q = f.order();
    let qq: u128 = q.try_into().unwrap_or(u128::MAX);
    let v = (0..deg_bound).map(|_| f.element(rng.gen_range(0..qq))).collect();
    poly::trim(f, v)
}

/// Splits a squarefree monic product of irreducibles of degree `d`.
pub fn equal_degree<F: FiniteField>(
    f: &F,
    a: &[F::Elem],
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<F::Elem>> {
    let n = a.len() - 1;
    if n == d {
        return vec![a.to_vec()];
    }
    let q = order_big(f);
    let one = poly::constant(f, f.one());
    loop {
        let r = random_poly(f, n, rng);
        if poly::degree(&r).unwrap_or(0) == 0 {
            continue;
        }
        let b = if f.characteristic() == 2 {
            // absolute trace to F_2: r + r^2 + ... + r^{2^{kd-1}}
            let k = f.degree() as usize * d;
            let mut t = r.clone();
            let mut acc = r.clone();
            for _ in 1..k {
                t = poly::rem(f, &poly::mul(f, &t, &t), a);
                acc = poly::add(f, &acc, &t);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) >> 1;
            poly::sub(f, &poly::powmod(f, &r, &e, a), &one)
        };
        let g = poly::gcd(f, a, &b);
        let dg = poly::degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let other = poly::exact_div(f, a, &g);
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &other, d, rng));
            return out;
        }
    }
}

fn seed_for<F: FiniteField>(f: &F, a: &[F::Elem]) -> u64 {
    // FNV-1a over the canonical coefficient indices
    let mut h: u64 = 0xcbf29ce484222325;
    let mut feed = |x: u128| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    feed(f.characteristic() as u128);
    feed(f.degree() as u128);
    for c in a {
        feed(f.index_of(c));
    }
    h
}

fn canonical_key<F: FiniteField>(f: &F, a: &[F::Elem]) -> (usize, Vec<u128>) {
    (a.len(), a.iter().map(|c| f.index_of(c)).collect())
}

/// Complete factorization of a nonzero polynomial into monic irreducibles,
/// sorted by degree and then by coefficients (lowest degree first).
pub fn factor<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(Vec<F::Elem>, u32)> {
    let a = poly::monic(f, a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(f, &a));
    let mut out = Vec::new();
    for (sq, m) in squarefree_factorization(f, &a) {
        for (part, d) in distinct_degree(f, &sq) {
            for irr in equal_degree(f, &part, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by_key(|(g, _)| canonical_key(f, g));
    out
}

/// Roots in `f` of a nonzero polynomial, sorted by canonical index.
pub fn roots<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let a = poly::monic(f, a);
    if poly::degree(&a).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let x = x_poly(f);
    let xq = poly::powmod(f, &x, &f.order(), &a);
    let g = poly::gcd(f, &a, &poly::sub(f, &xq, &x));
    if poly::degree(&g).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(f, &g));
    let mut out: Vec<F::Elem> = equal_degree(f, &g, 1, &mut rng)
        .into_iter()
        .map(|lin| f.neg(&lin[0]))
        .collect();
    out.sort_by_key(|r| f.index_of(r));
    out
}

/// Rabin's irreducibility test over F_p.
pub fn is_irreducible_fp(fp: &Fp, a: &[u64]) -> bool {
    let Some(d) = poly::degree(a) else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let a = poly::monic(fp, a);
    let x = poly::monomial(fp, 1);
    let p = BigUint::from(fp.p);
    let frob = |k: usize| -> Vec<u64> {
        let mut h = x.clone();
        for _ in 0..k {
            h = poly::powmod(fp, &h, &p, &a);
        }
        h
    };
    if frob(d) != x {
        return false;
    }
    for r in prime_factors_u64(d as u64) {
        let h = poly::sub(fp, &frob(d / r as usize), &x);
        if poly::gcd(fp, &a, &h) != vec![1] {
            return false;
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `d` over F_p, where the
/// coefficient vector is read lowest degree first.
pub fn least_irreducible(p: u64, d: usize) -> Vec<u64> {
    assert!(d >= 1);
    let fp = Fp::new(p);
    let total = (p as u128).pow(d as u32);
    // c0 = 0 makes X a factor, so for d >= 2 start at c0 = 1
    let start = if d >= 2 { total / p as u128 } else { 0 };
    for idx in start..total {
        // c0 is the most significant digit of idx
        let mut coeffs = vec![0u64; d + 1];
        let mut k = idx;
        for i in (0..d).rev() {
            coeffs[i] = (k % p as u128) as u64;
            k /= p as u128;
        }
        coeffs[d] = 1;
        if is_irreducible_fp(&fp, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Deterministic irreducible polynomial over Z of degree `d` whose reduction
/// mod p is irreducible: the least one in lexicographic order.
pub fn irreducible_poly(p: u64, d: usize) -> Vec<BigInt> {
    least_irreducible(p, d).into_iter().map(BigInt::from).collect()
}

/// Factorization modulo p of a p-integral rational polynomial.
pub fn poly_factor_mod_p(g: &[BigRational], p: u64) -> Result<Vec<ModPFactor>> {
    let fp = Fp::new(p);
    let mut red = Vec::with_capacity(g.len());
    for c in g {
        if c.is_zero() {
            red.push(0);
            continue;
        }
        if vp_rat(c, p).unwrap() < 0 {
            return Err(Error::NotPIntegral(p));
        }
        let m = BigInt::from(p);
        let inv = super::rational::inv_mod(c.denom(), &m).expect("p-integral");
        red.push(fp.reduce_big(&(c.numer() * inv)));
    }
    let red = poly::trim(&fp, red);
    if red.is_empty() {
        return Err(Error::ZeroModP(p));
    }
    Ok(factor(&fp, &red)
        .into_iter()
        .map(|(factor, multiplicity)| ModPFactor { factor, multiplicity })
        .collect())
}

pub fn fmt_fp_poly(a: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in a.iter().enumerate() {
        if c == 0 {
            continue;
        }
        terms.push(match (i, c) {
            (0, _) => c.to_string(),
            (1, 1) => "X".into(),
            (1, _) => format!("{c}*X"),
            (_, 1) => format!("X^{i}"),
            _ => format!("{c}*X^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;
    use crate::arith::ring::Ring;

    fn qpoly(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn factor_x2_plus_1_mod_5() {
        let f = poly_factor_mod_p(&qpoly(&[1, 0, 1]), 5).unwrap();
        assert_eq!(
            f,
            vec![
                ModPFactor { factor: vec![2, 1], multiplicity: 1 },
                ModPFactor { factor: vec![3, 1], multiplicity: 1 }
            ]
        );
    }

    #[test]
    fn factor_x2_plus_1_mod_2() {
        let f = poly_factor_mod_p(&qpoly(&[1, 0, 1]), 2).unwrap();
        assert_eq!(f, vec![ModPFactor { factor: vec![1, 1], multiplicity: 2 }]);
    }

    #[test]
    fn factor_x_mod_3() {
        let f = poly_factor_mod_p(&qpoly(&[0, 1]), 3).unwrap();
        assert_eq!(f, vec![ModPFactor { factor: vec![0, 1], multiplicity: 1 }]);
    }

    #[test]
    fn factor_rejects_non_integral() {
        let g = vec![crate::arith::rational::frac(1, 5), int(1)];
        assert_eq!(poly_factor_mod_p(&g, 5), Err(Error::NotPIntegral(5)));
        assert_eq!(poly_factor_mod_p(&qpoly(&[5, 10]), 5), Err(Error::ZeroModP(5)));
    }

    #[test]
    fn factor_with_pth_powers() {
        // (X+1)^4 (X^2+X+1) over F_2
        let fp = Fp::new(2);
        let a = poly::mul(&fp, &poly::pow(&fp, &[1, 1], 4), &[1, 1, 1]);
        assert_eq!(factor(&fp, &a), vec![(vec![1, 1], 4), (vec![1, 1, 1], 1)]);
    }

    #[test]
    fn least_irreducibles() {
        assert_eq!(irreducible_poly(2, 2), vec![1, 1, 1].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(irreducible_poly(3, 1), vec![BigInt::from(0), BigInt::from(1)]);
        // lowest-degree-first lex order: X^2 + X + 1 precedes X^2 + 2
        assert_eq!(least_irreducible(5, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn least_irreducible_matches_exhaustive_scan() {
        // oracle: a quadratic or cubic is irreducible iff it has no root
        for p in [2u64, 3, 5, 7] {
            for d in [2usize, 3] {
                let fp = Fp::new(p);
                let mut expected = None;
                'scan: for idx in 0..(p as u128).pow(d as u32) {
                    let mut c = vec![0u64; d + 1];
                    let mut k = idx;
                    for i in (0..d).rev() {
                        c[i] = (k % p as u128) as u64;
                        k /= p as u128;
                    }
                    c[d] = 1;
                    for x in 0..p {
                        if poly::eval(&fp, &c, &x) == 0 {
                            continue 'scan;
                        }
                    }
                    expected = Some(c);
                    break;
                }
                assert_eq!(Some(least_irreducible(p, d)), expected, "p={p} d={d}");
            }
        }
    }

    #[test]
    fn roots_in_extension() {
        let f9 = crate::arith::gf::GaloisField::new(3, 2);
        // X^2 + 1 over F_9 has roots Y and 2Y
        let one = f9.one();
        let a = vec![one.clone(), f9.zero(), one];
        let r = roots(&f9, &a);
        assert_eq!(r, vec![vec![0, 1], vec![0, 2]]);
    }
}
