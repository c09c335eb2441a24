//! Sums of squares, total positivity, the Kochen operator and levels of
//! finite fields.

use crate::arith::factor::roots;
use crate::arith::gf::GaloisField;
use crate::arith::rational::fmt_rational;
use crate::arith::ring::{FiniteField, Ring};
use crate::closure::{eval, refined_real_roots, sign_under, squarefree_monic, trim};
use crate::dense::{abs_lower, lipschitz_radius, simultaneous_ball, Ball, Check, Limits, WitnessReport};
use crate::error::{Error, Result};
use crate::field::{real_embeddings, sign_at, FieldElement, NumberField, Ordering};
use crate::primes::{PValuation, Prime};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use serde_json::json;

fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

fn ser_rationals<S: Serializer>(qs: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(fmt_rational))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SquareDecomposition {
    #[serde(serialize_with = "ser_rational")]
    pub input: BigRational,
    #[serde(serialize_with = "ser_rationals")]
    pub parts: Vec<BigRational>,
}

/// Integers up to this bound get the lexicographically largest
/// decomposition; above it a descending search with a prime remainder.
const GREEDY_LIMIT: u64 = 1_000_000;

fn three_squares_ok(mut m: u64) -> bool {
    while m != 0 && m % 4 == 0 {
        m /= 4;
    }
    m % 8 != 7
}

fn square_root_u64(m: u64) -> Option<u64> {
    let r = m.isqrt();
    (r * r == m).then_some(r)
}

fn two_squares_small(m: u64) -> Option<(u64, u64)> {
    let mut y = m.isqrt();
    loop {
        if let Some(z) = square_root_u64(m - y * y) {
            return Some((y, z));
        }
        if y == 0 || y * y * 2 < m {
            return None;
        }
        y -= 1;
    }
}

fn greedy_four(n: u64) -> [u64; 4] {
    let mut w = n.isqrt();
    while !three_squares_ok(n - w * w) {
        w -= 1;
    }
    let rem = n - w * w;
    let mut x = rem.isqrt();
    loop {
        if let Some((y, z)) = two_squares_small(rem - x * x) {
            return [w, x, y, z];
        }
        x -= 1;
    }
}

fn exact_sqrt(m: &BigInt) -> Option<BigInt> {
    if m.is_negative() {
        return None;
    }
    let r = m.sqrt();
    (&r * &r == *m).then_some(r)
}

fn pow_mod(b: &BigInt, e: &BigInt, m: &BigInt) -> BigInt {
    b.modpow(e, m)
}

/// Miller-Rabin with fixed bases; callers re-verify whatever they build on
/// the answer.
fn probably_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let nm1: BigInt = n - 1;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for b in BASES {
        let mut x = pow_mod(&BigInt::from(b), &d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// a^2 + b^2 = p for a prime p = 1 mod 4, by Hermite-Serret.
fn two_squares_prime(p: &BigInt) -> Option<(BigInt, BigInt)> {
    let e = (p - 1) >> 1;
    let nm1 = p - 1;
    let mut c = BigInt::from(2);
    while pow_mod(&c, &e, p) != nm1 {
        c += 1;
        if c > BigInt::from(1000) {
            return None;
        }
    }
    let t = pow_mod(&c, &((p - 1) >> 2), p);
    let (mut a, mut b) = (p.clone(), t);
    while &b * &b > *p {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let rest = p - &b * &b;
    let c = exact_sqrt(&rest)?;
    Some((b, c))
}

fn two_squares_big(m: &BigInt) -> Option<(BigInt, BigInt)> {
    if m.is_zero() {
        return Some((BigInt::zero(), BigInt::zero()));
    }
    if let Some(r) = exact_sqrt(m) {
        return Some((r, BigInt::zero()));
    }
    if (m % 4u32) == BigInt::one() && probably_prime(m) {
        return two_squares_prime(m);
    }
    None
}

fn descent_four(n: &BigInt) -> [BigInt; 4] {
    let root = |m: &BigInt| m.sqrt();
    let mut w = root(n);
    loop {
        let rem = n - &w * &w;
        let mut x = root(&rem);
        for _ in 0..2000 {
            let m = &rem - &x * &x;
            if let Some((y, z)) = two_squares_big(&m) {
                if &w * &w + &x * &x + &y * &y + &z * &z == *n {
                    return [w, x, y, z];
                }
            }
            if x.is_zero() {
                break;
            }
            x -= 1;
        }
        w -= 1;
    }
}

/// n = w^2 + x^2 + y^2 + z^2 with w >= x >= y >= z >= 0.
pub fn int_four_squares(n: &BigInt) -> [BigInt; 4] {
    match n.to_u64() {
        Some(m) if m <= GREEDY_LIMIT => greedy_four(m).map(BigInt::from),
        _ => {
            // with 4 | n the remainder could never be a prime = 1 mod 4
            let mut core = n.clone();
            let mut scale = BigInt::one();
            while (&core % 4u32).is_zero() {
                core >>= 2;
                scale <<= 1;
            }
            let mut out = if core.to_u64().is_some_and(|m| m <= GREEDY_LIMIT) {
                greedy_four(core.to_u64().unwrap()).map(BigInt::from)
            } else {
                descent_four(&core)
            };
            for c in out.iter_mut() {
                *c *= &scale;
            }
            out.sort_by(|a, b| b.cmp(a));
            out
        }
    }
}

/// q as a sum of at most four rational squares: with q = a/b in lowest
/// terms, decompose ab and divide by b.
pub fn four_squares(q: &BigRational) -> Result<SquareDecomposition> {
    if q.is_negative() {
        return Err(Error::Negative);
    }
    if q.is_zero() {
        return Ok(SquareDecomposition { input: q.clone(), parts: Vec::new() });
    }
    let b = q.denom().clone();
    let parts = int_four_squares(&(q.numer() * &b))
        .into_iter()
        .map(|c| BigRational::new(c, b.clone()))
        .collect();
    Ok(SquareDecomposition { input: q.clone(), parts })
}

/// Totally nonnegative, i.e. a sum of squares in K.
pub fn r_infinity_member(k: &NumberField, x: &FieldElement) -> bool {
    real_embeddings(k).iter().all(|o| sign_at(o, x) >= 0)
}

/// gamma(x) = (1/p) (x^p - x) / ((x^p - x)^2 - 1), or None where the
/// denominator vanishes.
pub fn kochen(p: u64, x: &FieldElement) -> Option<FieldElement> {
    let k = &x.field;
    let u = &x.pow(p) - x;
    let d = &(&u * &u) - &k.one_elem();
    let den = &d * &k.from_int(p as i64);
    u.div(&den).ok()
}

/// Least number of squares summing to -1 in F_{p^f}: 1 or 2 (1 for p = 2).
pub fn level_finite_field(p: u64, f: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let gf = GaloisField::new(p, f);
    let q = gf.size();
    let minus_one = gf.neg(&gf.one());
    if q <= 1 << 16 {
        let square = (0..q).any(|i| {
            let x = gf.element(i);
            gf.mul(&x, &x) == minus_one
        });
        return if square { 1 } else { 2 };
    }
    // -1 is a square iff the multiplicative group has an element of order 4
    if q % 4 == 1 {
        1
    } else {
        2
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome")]
pub enum ShortRepOutcome {
    Certified,
    CounterexampleFound { x: String, y: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct ShortRepReport {
    #[serde(flatten)]
    pub outcome: ShortRepOutcome,
    pub residue_level: u32,
    pub candidates: u64,
    pub height_bound: u64,
}

/// Checks that eps^2 - g(x)^2 is not a sum of s-1 squares for any x of
/// height at most `height_bound`, after validating the hypotheses that make
/// this a theorem: g P-integral with rootless reduction, v(eps) > 0, and
/// 2 <= s <= level of the residue field. Over Q only.
pub fn no_short_representation_check(
    v: &PValuation,
    g: &[FieldElement],
    eps: &FieldElement,
    s: u32,
    height_bound: u64,
) -> Result<ShortRepReport> {
    let violated = |c: &str| Err(Error::PreconditionViolated(c.to_string()));
    if !v.field.is_rationals() {
        return Err(Error::Unsupported("the bounded search runs over Q only".into()));
    }
    let g = trim(g);
    if g.len() < 2 {
        return violated("g must be nonconstant");
    }
    if !g.iter().all(|c| v.in_ring(c)) {
        return violated("g must have P-integral coefficients");
    }
    let gf = &*v.residue_field;
    let gbar: Vec<Vec<u64>> = g.iter().map(|c| v.residue(c).map(|r| r.coords)).collect::<Result<_>>()?;
    let mut gbar = gbar;
    while gbar.last().is_some_and(|c| gf.is_zero(c)) {
        gbar.pop();
    }
    if gbar.len() >= 2 && !roots(gf, &gbar).is_empty() {
        return violated("the reduction of g has a root in the residue field");
    }
    if !v.valuation(eps).is_some_and(|w| w > 0) {
        return violated("v(eps) must be positive");
    }
    if s < 2 {
        return violated("s must be at least 2");
    }
    let level = level_finite_field(v.p, v.f as u32);
    if level < s {
        return violated(&format!("s = {s} exceeds the residue field level {level}"));
    }
    // level <= 2 forces s = 2: eps^2 - g(x)^2 must be a rational square
    let coeffs: Vec<BigRational> = g.iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let gz: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let e = eps.as_rational().unwrap();
    let d = gz.len() - 1;
    let mut candidates = 0u64;
    let h = height_bound as i64;
    for b in 1..=h {
        for a in -h..=h {
            if a.gcd(&b) != 1 {
                continue;
            }
            candidates += 1;
            if let Some(y) = square_gap(&gz, &den, e, a, b, d) {
                let x = BigRational::new(a.into(), b.into());
                return Ok(ShortRepReport {
                    outcome: ShortRepOutcome::CounterexampleFound { x: fmt_rational(&x), y: fmt_rational(&y) },
                    residue_level: level,
                    candidates,
                    height_bound,
                });
            }
        }
    }
    Ok(ShortRepReport { outcome: ShortRepOutcome::Certified, residue_level: level, candidates, height_bound })
}

/// y with eps^2 - g(a/b)^2 = y^2, if one exists. With G the homogenised
/// D g, eps^2 - g^2 = (en^2 D^2 b^2d - ed^2 G^2) / (ed D b^d)^2.
fn square_gap(gz: &[BigInt], den: &BigInt, e: &BigRational, a: i64, b: i64, d: usize) -> Option<BigRational> {
    if let Some(y) = square_gap_i128(gz, den, e, a, b, d) {
        return y;
    }
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    let mut g = BigInt::zero();
    for (i, c) in gz.iter().enumerate() {
        g += c * a.pow(i as u32) * b.pow((d - i) as u32);
    }
    let bd = b.pow(d as u32);
    let num = e.numer() * den * &bd;
    let n = &num * &num - e.denom() * e.denom() * &g * &g;
    let r = exact_sqrt(&n)?;
    Some(BigRational::new(r, e.denom() * den * bd))
}

/// The same computation in i128; None when an intermediate overflows.
#[allow(clippy::option_option)]
fn square_gap_i128(gz: &[BigInt], den: &BigInt, e: &BigRational, a: i64, b: i64, d: usize) -> Option<Option<BigRational>> {
    let (a, b) = (a as i128, b as i128);
    let mut g: i128 = 0;
    for (i, c) in gz.iter().enumerate() {
        let t = c.to_i128()?.checked_mul(a.checked_pow(i as u32)?)?.checked_mul(b.checked_pow((d - i) as u32)?)?;
        g = g.checked_add(t)?;
    }
    let bd = b.checked_pow(d as u32)?;
    let num = e.numer().to_i128()?.checked_mul(den.to_i128()?)?.checked_mul(bd)?;
    let ed = e.denom().to_i128()?;
    let lhs = num.checked_mul(num)?;
    let rhs = ed.checked_mul(g)?.checked_mul(ed.checked_mul(g)?)?;
    let n = lhs.checked_sub(rhs)?;
    if n < 0 {
        return Some(None);
    }
    let r = (n as u128).isqrt();
    if r * r != n as u128 {
        return Some(None);
    }
    Some(Some(BigRational::new(BigInt::from(r), BigInt::from(ed) * den * BigInt::from(bd))))
}

/// At one ordering: a rational x with eps^2 - g(x)^2 > 0 found by bisection
/// from [floor(r), floor(r) + 1] toward the largest real root r of g, and
/// a radius around it on which the inequality persists.
fn ordering_sos_ball(o: &Ordering, g: &[FieldElement], sf: &[FieldElement], eps: &FieldElement, steps: u32) -> Result<Ball> {
    let k = &o.field;
    let eps2 = eps * eps;
    let good = |x: &BigRational| {
        let gx = eval(g, &k.from_rational(x.clone()));
        sign_at(o, &(&eps2 - &(&gx * &gx))) > 0
    };
    let mut width = BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
    let (mut lo, mut hi) = loop {
        let (rl, rh) = refined_real_roots(o, sf, &width).pop().expect("odd degree has a real root");
        let (fl, fh) = (rl.floor(), rh.floor());
        if sign_under(o, sf, &fh) == 0 {
            break (fh.clone(), fh);
        }
        if fl == fh {
            break (fl.clone(), fl + BigRational::one());
        }
        width = &width * &width;
    };
    let mut found = None;
    if good(&lo) {
        found = Some(lo.clone());
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut i = 0;
    while found.is_none() && i < steps {
        let mid = (&lo + &hi) / &two;
        if good(&mid) {
            found = Some(mid);
            break;
        }
        if sign_under(o, sf, &lo) * sign_under(o, sf, &mid) <= 0 {
            hi = mid;
        } else {
            lo = mid;
        }
        i += 1;
    }
    let Some(xq) = found else {
        return Err(Error::NoneWithinBound(format!("no bisection point within {steps} steps at {}", Prime::Ordering(o.clone()).label())));
    };
    let x = k.from_rational(xq);
    let gx = eval(g, &x);
    // margin = |eps| - |g(x)| from above and below
    let margin = if gx.is_zero() {
        abs_lower(o, eps)
    } else {
        let mut tight = BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
        loop {
            let (el, eh) = o.enclose(eps, &tight);
            let (gl, gh) = o.enclose(&gx, &tight);
            let e_low = if el.is_positive() || eh.is_negative() { el.abs().min(eh.abs()) } else { BigRational::zero() };
            let g_high = gl.abs().max(gh.abs());
            if e_low > g_high {
                break e_low - g_high;
            }
            tight = &tight * &tight;
        }
    };
    let rho = lipschitz_radius(o, g, &x, &margin);
    Ball::new(Prime::Ordering(o.clone()), x, k.from_rational(rho))
}

/// x in K with eps^2 - g(x)^2 totally positive, hence a sum of squares;
/// g of odd degree.
pub fn d_sos_witness(k: &NumberField, g: &[FieldElement], eps: &FieldElement, limits: Limits) -> Result<WitnessReport> {
    let g = trim(g);
    if g.len() % 2 != 0 {
        return Err(Error::Invalid("g must have odd degree".into()));
    }
    if eps.is_zero() {
        return Err(Error::ZeroElement);
    }
    let sf = squarefree_monic(k, &g)?;
    let orderings = real_embeddings(k);
    let balls = orderings
        .iter()
        .map(|o| ordering_sos_ball(o, &g, &sf, eps, limits.precision))
        .collect::<Result<Vec<_>>>()?;
    let merged = simultaneous_ball(k, &balls, limits)?;
    let x = merged.witness.clone().expect("merge returns a witness");
    let gx = eval(&g, &x);
    let value = &(eps * eps) - &(&gx * &gx);
    let checks: Vec<Check> = orderings
        .iter()
        .map(|o| {
            let s = sign_at(o, &value);
            Check { prime: Prime::Ordering(o.clone()).label(), value: format!("sign(eps^2-g(x)^2) = {s}"), holds: s >= 0 }
        })
        .collect();
    if !r_infinity_member(k, &value) {
        return Err(Error::LocalWitnessInvalid(format!("eps^2 - g({x})^2 is not totally nonnegative")));
    }
    Ok(WitnessReport {
        witness: Some(x),
        verified_at: checks,
        search_stats: json!({ "orderings": orderings.len(), "merge": merged.search_stats }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int, vp_rat};
    use crate::primes::primes_above;

    fn parts(q: BigRational) -> Vec<String> {
        four_squares(&q).unwrap().parts.iter().map(fmt_rational).collect()
    }

    #[test]
    fn four_square_examples() {
        assert_eq!(parts(int(7)), ["2", "1", "1", "1"]);
        assert!(parts(int(0)).is_empty());
        assert_eq!(parts(frac(1, 2)), ["1/2", "1/2", "0", "0"]);
        assert_eq!(four_squares(&int(-1)), Err(Error::Negative));
    }

    #[test]
    fn large_inputs_use_descent() {
        let n: BigInt = "123456789012345678901234567".parse().unwrap();
        let [a, b, c, d] = int_four_squares(&n);
        assert_eq!(&a * &a + &b * &b + &c * &c + &d * &d, n);
        assert!(a >= b && b >= c && c >= d);
        for n in ["3049055680", "4194304", "7340032", "1099511627776"] {
            let n: BigInt = n.parse().unwrap();
            let [a, b, c, d] = int_four_squares(&n);
            assert_eq!(&a * &a + &b * &b + &c * &c + &d * &d, n);
        }
    }

    #[test]
    fn total_positivity() {
        let k = NumberField::parse("X^2 - 2").unwrap();
        let alpha = k.gen_elem();
        assert!(r_infinity_member(&k, &(&k.from_int(2) - &alpha)));
        assert!(!r_infinity_member(&k, &alpha));
        assert!(!r_infinity_member(&NumberField::rationals(), &NumberField::rationals().from_int(-1)));
    }

    #[test]
    fn kochen_examples() {
        let q = NumberField::rationals();
        assert_eq!(kochen(3, &q.from_int(2)).unwrap().to_string(), "2/35");
        assert!(kochen(3, &q.from_int(1)).unwrap().is_zero());
        let g = kochen(3, &q.from_rational(frac(1, 3))).unwrap();
        assert_eq!(g.to_string(), "72/665");
        assert_eq!(vp_rat(g.as_rational().unwrap(), 3), Some(2));
        assert!(kochen(2, &q.from_int(0)).unwrap().is_zero());
    }

    #[test]
    fn levels() {
        assert_eq!(level_finite_field(3, 1), 2);
        assert_eq!(level_finite_field(5, 1), 1);
        assert_eq!(level_finite_field(3, 2), 1);
        assert_eq!(level_finite_field(2, 3), 1);
    }

    #[test]
    fn short_representation_examples() {
        let q = NumberField::rationals();
        let v3 = primes_above(&q, 3).unwrap().remove(0);
        let v5 = primes_above(&q, 5).unwrap().remove(0);
        let r = no_short_representation_check(&v3, &q.parse_poly("X^2+1").unwrap(), &q.from_int(3), 2, 1000).unwrap();
        assert_eq!(r.outcome, ShortRepOutcome::Certified);
        assert_eq!(r.residue_level, 2);
        let e = no_short_representation_check(&v5, &q.parse_poly("X^2+2").unwrap(), &q.from_int(5), 2, 10).unwrap_err();
        assert!(matches!(e, Error::PreconditionViolated(ref c) if c.contains("level")), "{e:?}");
        let e = no_short_representation_check(&v3, &q.parse_poly("X-1").unwrap(), &q.from_int(3), 2, 10).unwrap_err();
        assert!(matches!(e, Error::PreconditionViolated(ref c) if c.contains("root")), "{e:?}");
    }

    #[test]
    fn sos_witness_examples() {
        let q = NumberField::rationals();
        let one = q.one_elem();
        let r = d_sos_witness(&q, &q.parse_poly("X^3-2").unwrap(), &one, Limits::default()).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "5/4");
        let r = d_sos_witness(&q, &q.parse_poly("X").unwrap(), &one, Limits::default()).unwrap();
        assert!(r.witness.unwrap().is_zero());
        let k = NumberField::parse("X^2 - 2").unwrap();
        let g = vec![-k.gen_elem(), k.zero_elem(), k.zero_elem(), k.one_elem()];
        let r = d_sos_witness(&k, &g, &k.one_elem(), Limits::default()).unwrap();
        assert_eq!(r.verified_at.len(), 2);
        assert!(r.verified_at.iter().all(|c| c.holds));
    }
}
