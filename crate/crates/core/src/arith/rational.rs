//! Rational helpers: parsing, p-adic valuation, reduction modulo p^k.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `n`, `-n`, `n/d`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// p-adic valuation of a nonzero integer.
pub fn vp_int(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        m = q;
        k += 1;
    }
}

/// p-adic valuation of a rational; `None` for zero.
pub fn vp_rat(q: &BigRational, p: u64) -> Option<i64> {
    let a = vp_int(q.numer(), p)? as i64;
    let b = vp_int(q.denom(), p).unwrap_or(0) as i64;
    Some(a - b)
}

pub fn pow_u(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

/// Least nonnegative residue of an integer.
pub fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Image of a p-integral rational in Z/p^k, as a least nonnegative residue.
pub fn rat_mod(q: &BigRational, p: u64, k: u32) -> Result<BigInt> {
    let m = pow_u(p, k);
    let inv = inv_mod(q.denom(), &m).ok_or(Error::NotPIntegral(p))?;
    Ok((q.numer() * inv).mod_floor(&m))
}

/// Symmetric residue in (-m/2, m/2].
pub fn symmetric(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Exact square root of a rational, if it is a square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let a = q.numer().sqrt();
    let b = q.denom().sqrt();
    if &a * &a == *q.numer() && &b * &b == *q.denom() {
        Some(BigRational::new(a, b))
    } else {
        None
    }
}

/// Height of a rational: max(|numerator|, denominator).
pub fn height(q: &BigRational) -> BigInt {
    q.numer().abs().max(q.denom().clone())
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Small primes by trial division; fine for the desk-scale bounds used here.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime_u64(k)).collect()
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Distinct prime factors of a positive integer, ascending.
pub fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

pub fn divisors_u128(n: u128) -> Vec<u128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d: u128 = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(fmt_rational(&frac(-3, 2)), "-3/2");
        assert_eq!(fmt_rational(&int(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(vp_rat(&int(50), 5), Some(2));
        assert_eq!(vp_rat(&frac(3, 25), 5), Some(-2));
        assert_eq!(vp_rat(&int(0), 5), None);
    }

    #[test]
    fn reduction_mod_prime_power() {
        // 3/4 mod 25 = 57 mod 25 = 7
        assert_eq!(rat_mod(&frac(3, 4), 5, 2).unwrap(), BigInt::from(7));
        assert!(rat_mod(&frac(1, 5), 5, 2).is_err());
    }

    #[test]
    fn divisor_listing() {
        assert_eq!(divisors_u128(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors_u128(1), vec![1]);
    }
}
