//! Roots of polynomials over K in the completion at a prime: the real
//! closure for an ordering, the p-adic completion for a valuation.
//!
//! p-adic side: g is made monic, squarefree and P-integral (X -> X/lambda),
//! then a digit-by-digit search over residues mod pi^N keeps the classes x
//! with v(h(x)) >= N. With D = v(disc h), a class mod pi^(2D+1) that passes
//! and has v(h'(x)) <= D satisfies the Hensel-Rychlik condition
//! v(h(x)) > 2 v(h'(x)), so it contains a root; conversely every root lies in
//! such a class.

use crate::arith::poly;
use crate::field::real::{bisect, count_real_roots_under, isolate_real_roots, sturm_chain, Embedded, RealField};
use crate::field::{FieldElement, NumberField, Ordering};
use crate::primes::{PValuation, Prime};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Serialize)]
pub struct RootReport {
    pub has_root: bool,
    pub prime: String,
    pub certificate: Value,
}

/// Monic, squarefree, P-integral polynomial whose roots are lambda times the
/// roots of g, together with lambda.
pub(crate) struct LocalPoly {
    pub h: Vec<FieldElement>,
    pub dh: Vec<FieldElement>,
    pub lambda: FieldElement,
    pub lambda_val: i64,
    pub disc_val: i64,
}

fn monic(g: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let g = trim(g);
    let Some(lc) = g.last() else {
        return Err(Error::Invalid("zero polynomial".into()));
    };
    let inv = lc.inv()?;
    Ok(g.iter().map(|c| c * &inv).collect())
}

pub(crate) fn trim(g: &[FieldElement]) -> Vec<FieldElement> {
    let mut g = g.to_vec();
    while g.last().is_some_and(|c| c.is_zero()) {
        g.pop();
    }
    g
}

fn to_coords(g: &[FieldElement]) -> Vec<Vec<BigRational>> {
    g.iter().map(|c| c.coords.clone()).collect()
}

fn from_coords(k: &NumberField, g: Vec<Vec<BigRational>>) -> Vec<FieldElement> {
    g.into_iter().map(|c| FieldElement::new(k.clone(), c)).collect()
}

/// Squarefree part over K, made monic.
pub(crate) fn squarefree_monic(k: &NumberField, g: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let g = monic(g)?;
    let sf = poly::squarefree_part(k, &to_coords(&g));
    monic(&from_coords(k, sf))
}

pub(crate) fn eval(g: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = x.field.zero_elem();
    for c in g.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

pub(crate) fn derivative(g: &[FieldElement]) -> Vec<FieldElement> {
    g.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&BigRational::from_integer(BigInt::from(i))))
        .collect()
}

impl LocalPoly {
    pub(crate) fn new(v: &PValuation, g: &[FieldElement]) -> Result<Self> {
        let k = &v.field;
        let g = squarefree_monic(k, g)?;
        let d = g.len() - 1;
        // smallest m with m*(d-i) + v(c_i) >= 0 for all i
        let mut m = 0i64;
        for (i, c) in g.iter().enumerate().take(d) {
            if let Some(vc) = v.valuation(c) {
                let w = (d - i) as i64;
                if vc < 0 {
                    m = m.max((-vc + w - 1) / w);
                }
            }
        }
        let lambda = v.uniformizer.powi(m)?;
        let h: Vec<FieldElement> = g.iter().enumerate().map(|(i, c)| c * &lambda.pow((d - i) as u64)).collect();
        let dh = derivative(&h);
        let disc_val = if d == 1 {
            0
        } else {
            let r = poly::resultant(k, &to_coords(&h), &to_coords(&dh));
            v.valuation(&FieldElement::new(k.clone(), r)).expect("squarefree polynomial has nonzero discriminant")
        };
        Ok(LocalPoly { h, dh, lambda, lambda_val: m, disc_val })
    }
}

/// Valuations of the roots of g read off the Newton polygon, as fractions
/// (numerator, denominator) in lowest terms, ascending.
pub fn newton_slopes(v: &PValuation, g: &[FieldElement]) -> Vec<(i64, i64)> {
    let pts: Vec<(i64, i64)> = g
        .iter()
        .enumerate()
        .filter_map(|(i, c)| v.valuation(c).map(|w| (i as i64, w)))
        .collect();
    // lower convex hull
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            if (b.1 - a.1) * (p.0 - a.0) >= (p.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out: Vec<(i64, i64)> = hull
        .windows(2)
        .map(|w| {
            let (num, den) = (w[0].1 - w[1].1, w[1].0 - w[0].0);
            let gcd = num_integer::gcd(num, den);
            (num / gcd, den / gcd)
        })
        .collect();
    if pts.first().is_some_and(|p| p.0 > 0) {
        // zero is a root
        out.push((i64::MAX, 1));
    }
    out.sort_by(|a, b| (a.0 as i128 * b.1 as i128).cmp(&(b.0 as i128 * a.1 as i128)));
    out
}

/// Residue digits: lifts sum c_j a^j (0 <= c_j < p, j < f) in index order.
pub(crate) fn digits(v: &PValuation) -> Vec<FieldElement> {
    let q = v.residue_size();
    (0..q)
        .map(|idx| {
            let mut coords = Vec::with_capacity(v.f as usize);
            let mut r = idx;
            for _ in 0..v.f {
                coords.push(BigRational::from_integer(BigInt::from((r % v.p as u128) as u64)));
                r /= v.p as u128;
            }
            v.field.from_poly(&coords)
        })
        .collect()
}

fn val_at_least(v: &PValuation, x: &FieldElement, n: i64) -> bool {
    v.valuation(x).is_none_or(|w| w >= n)
}

/// One surviving class: digits (least significant first) and the element.
#[derive(Clone)]
struct Class {
    digits: Vec<usize>,
    x: FieldElement,
}

/// Classes mod pi^level containing roots of the local polynomial.
fn root_classes(v: &PValuation, lp: &LocalPoly, level: i64) -> Vec<Class> {
    let ds = digits(v);
    let mut frontier = vec![Class { digits: Vec::new(), x: v.field.zero_elem() }];
    let mut pi_pow = v.field.one_elem();
    for n in 0..level {
        let mut next = Vec::new();
        for c in &frontier {
            for (i, d) in ds.iter().enumerate() {
                let x = &c.x + &(d * &pi_pow);
                if val_at_least(v, &eval(&lp.h, &x), n + 1) {
                    let mut digits = c.digits.clone();
                    digits.push(i);
                    next.push(Class { digits, x });
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
        pi_pow = &pi_pow * &v.uniformizer;
    }
    frontier.retain(|c| v.valuation(&eval(&lp.dh, &c.x)).is_none_or(|w| w <= lp.disc_val));
    frontier
}

/// Decides whether g has a root in the completion of K at `prime`.
pub fn has_root_in_closure(prime: &Prime, g: &[FieldElement]) -> Result<RootReport> {
    let g = trim(g);
    if g.len() < 2 {
        return Err(Error::Invalid("polynomial must be nonconstant".into()));
    }
    match prime {
        Prime::Ordering(o) => {
            let n = count_real_roots_under(o, &g);
            let intervals = real_roots_under(o, &g);
            Ok(RootReport {
                has_root: n > 0,
                prime: prime.label(),
                certificate: json!({
                    "method": "sturm",
                    "real_roots": n,
                    "intervals": intervals
                        .iter()
                        .map(|(a, b)| [crate::arith::rational::fmt_rational(a), crate::arith::rational::fmt_rational(b)])
                        .collect::<Vec<_>>(),
                }),
            })
        }
        Prime::PAdic(v) => {
            let slopes = newton_slopes(v, &monic(&g)?);
            let slope_json: Vec<String> = slopes.iter().map(|(a, b)| fmt_slope(*a, *b)).collect();
            if !slopes.iter().any(|&(_, den)| den == 1) {
                return Ok(RootReport {
                    has_root: false,
                    prime: prime.label(),
                    certificate: json!({"method": "newton-polygon", "root_valuations": slope_json}),
                });
            }
            let lp = LocalPoly::new(v, &g)?;
            let level = 2 * lp.disc_val + 1;
            let classes = root_classes(v, &lp, level);
            let cert = match classes.first() {
                Some(c) => {
                    let hx = eval(&lp.h, &c.x);
                    json!({
                        "method": "hensel-rychlik",
                        "root_valuations": slope_json,
                        "scale_valuation": lp.lambda_val,
                        "discriminant_valuation": lp.disc_val,
                        "level": level,
                        "approximation": (&c.x * &lp.lambda.inv()?).to_string(),
                        "v_h": v.valuation(&hx),
                        "v_dh": v.valuation(&eval(&lp.dh, &c.x)),
                    })
                }
                None => json!({
                    "method": "residue-search",
                    "root_valuations": slope_json,
                    "discriminant_valuation": lp.disc_val,
                    "level": level,
                }),
            };
            Ok(RootReport { has_root: !classes.is_empty(), prime: prime.label(), certificate: cert })
        }
    }
}

fn fmt_slope(a: i64, b: i64) -> String {
    if a == i64::MAX {
        "inf".into()
    } else if b == 1 {
        a.to_string()
    } else {
        format!("{a}/{b}")
    }
}

fn real_roots_under(o: &Ordering, g: &[FieldElement]) -> Vec<(BigRational, BigRational)> {
    crate::field::real::real_roots_under(o, g)
}

/// Truncation mod pi^k of a P-integral root of g, the least in canonical
/// order: digit sequences compared from the least significant digit, so the
/// answer is the Hensel lift of the least residue root (for K = Q and
/// X^2+1 at 5: 2 mod 5, 57 mod 125).
pub fn padic_root(v: &PValuation, g: &[FieldElement], k: u32, max_precision: u32) -> Result<FieldElement> {
    match truncations(v, g, k, max_precision)?.into_iter().find(|t| t.integral) {
        Some(t) => Ok(t.x),
        None => Err(Error::NoRoot),
    }
}

pub(crate) struct Truncation {
    pub x: FieldElement,
    pub integral: bool,
}

/// For each root r of g in the completion, an element x with
/// v(x - r) >= k: the digit truncation of r (integral roots) or of
/// lambda * r divided by lambda. Integral roots come first, each group in
/// canonical order.
pub(crate) fn truncations(v: &PValuation, g: &[FieldElement], k: u32, max_precision: u32) -> Result<Vec<Truncation>> {
    let g = trim(g);
    if g.len() < 2 {
        return Err(Error::Invalid("polynomial must be nonconstant".into()));
    }
    let lp = LocalPoly::new(v, &g)?;
    let level = k as i64 + 2 * lp.disc_val + 1 + lp.lambda_val;
    if level > max_precision as i64 {
        return Err(Error::PrecisionOverflow(format!(
            "search needs precision {level}, limit is {max_precision}"
        )));
    }
    let classes = root_classes(v, &lp, level);
    let lam_inv = lp.lambda.inv()?;
    let ds = digits(v);
    let mut found: Vec<(bool, Vec<usize>, FieldElement)> = Vec::new();
    for c in classes {
        let approx = &c.x * &lam_inv;
        let (integral, dig, x) = if v.in_ring(&approx) {
            let (dig, x) = expand_digits(v, &ds, &approx, k);
            (true, dig, x)
        } else {
            let (dig, y) = expand_digits(v, &ds, &c.x, k + lp.lambda_val as u32);
            (false, dig, &y * &lam_inv)
        };
        if !found.iter().any(|(i, d, _)| *i == integral && *d == dig) {
            found.push((integral, dig, x));
        }
    }
    found.sort_by(|a, b| (!a.0, &a.1).cmp(&(!b.0, &b.1)));
    Ok(found.into_iter().map(|(integral, _, x)| Truncation { x, integral }).collect())
}

/// Digits of x mod pi^k (x P-integral) and the corresponding representative.
pub(crate) fn expand_digits(v: &PValuation, ds: &[FieldElement], x: &FieldElement, k: u32) -> (Vec<usize>, FieldElement) {
    let index: Vec<u128> = ds.iter().map(|d| v.residue(d).map(|r| gf_index(v, &r)).unwrap()).collect();
    let mut out = Vec::new();
    let mut acc = v.field.zero_elem();
    let mut pi_pow = v.field.one_elem();
    let pi_inv = v.uniformizer.inv().expect("nonzero");
    let mut scaled = x.clone();
    for _ in 0..k {
        let r = v.residue(&scaled).expect("integral");
        let ri = gf_index(v, &r);
        let j = index.iter().position(|&t| t == ri).expect("digits cover the residue field");
        out.push(j);
        acc = &acc + &(&ds[j] * &pi_pow);
        scaled = &(&scaled - &ds[j]) * &pi_inv;
        pi_pow = &pi_pow * &v.uniformizer;
    }
    (out, acc)
}

fn gf_index(v: &PValuation, r: &crate::arith::gf::FFieldElement) -> u128 {
    use crate::arith::ring::FiniteField;
    v.residue_field.index_of(&r.coords)
}

/// Real roots of g under an ordering, refined to width at most eps.
pub fn refined_real_roots(o: &Ordering, g: &[FieldElement], eps: &BigRational) -> Vec<(BigRational, BigRational)> {
    let e = Embedded { ordering: o };
    let coords = to_coords(&trim(g));
    if coords.len() < 2 {
        return Vec::new();
    }
    let sf = poly::squarefree_part(&e, &coords);
    let chain = sturm_chain(&e, &sf);
    isolate_real_roots(&e, &sf)
        .into_iter()
        .map(|(mut lo, mut hi)| {
            while &hi - &lo > *eps {
                (lo, hi) = bisect(&e, &chain, &lo, &hi);
            }
            (lo, hi)
        })
        .collect()
}

/// Sign of g(x) for rational x under an ordering.
pub fn sign_under(o: &Ordering, g: &[FieldElement], x: &BigRational) -> i8 {
    let e = Embedded { ordering: o };
    let xv = e.from_q(x);
    let val = poly::eval(&e, &to_coords(g), &xv);
    e.sign(&val)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::real_embeddings;
    use crate::primes::primes_above;

    fn qpoly(s: &str) -> Vec<FieldElement> {
        NumberField::rationals().parse_poly(s).unwrap()
    }

    fn at(p: u64) -> Prime {
        Prime::PAdic(primes_above(&NumberField::rationals(), p).unwrap().remove(0))
    }

    #[test]
    fn has_root_examples() {
        assert!(has_root_in_closure(&at(5), &qpoly("X^2+1")).unwrap().has_root);
        assert!(!has_root_in_closure(&at(3), &qpoly("X^2+1")).unwrap().has_root);
        assert!(!has_root_in_closure(&at(5), &qpoly("X^2-5")).unwrap().has_root);
        assert!(has_root_in_closure(&at(2), &qpoly("X^2+7")).unwrap().has_root);
        assert!(!has_root_in_closure(&at(2), &qpoly("X^2+3")).unwrap().has_root);
        let k = NumberField::parse("X^3-2").unwrap();
        let o = Prime::Ordering(real_embeddings(&k).remove(0));
        let g = k.parse_poly("X^3 - a").unwrap();
        assert!(has_root_in_closure(&o, &g).unwrap().has_root);
    }

    #[test]
    fn padic_root_examples() {
        let q = NumberField::rationals();
        let p5 = primes_above(&q, 5).unwrap().remove(0);
        assert_eq!(padic_root(&p5, &qpoly("X^2+1"), 3, 1000).unwrap().to_string(), "57");
        assert_eq!(padic_root(&p5, &qpoly("X^2+1"), 1, 1000).unwrap().to_string(), "2");
        let p3 = primes_above(&q, 3).unwrap().remove(0);
        assert_eq!(padic_root(&p3, &qpoly("X^2+1"), 2, 1000), Err(Error::NoRoot));
        assert!(matches!(padic_root(&p5, &qpoly("X^2+1"), 50, 10), Err(Error::PrecisionOverflow(_))));
    }

    #[test]
    fn gaussian_roots_at_split_prime() {
        let k = NumberField::parse("X^2+1").unwrap();
        let ps = primes_above(&k, 5).unwrap();
        // X - a has a root everywhere; X^2 - 3 has none at 5 (3 is not a square mod 5)
        let g = k.parse_poly("X^2 - 3").unwrap();
        for v in &ps {
            assert!(!has_root_in_closure(&Prime::PAdic(v.clone()), &g).unwrap().has_root);
        }
        let g = k.parse_poly("X^2 + 1").unwrap();
        let x = padic_root(&ps[0], &g, 2, 1000).unwrap();
        assert!(ps[0].valuation(&eval(&g, &x)).unwrap() >= 2);
    }

    #[test]
    fn canonical_order_lifts_least_residue_root() {
        let k = NumberField::parse("X^2+1").unwrap();
        let g = k.parse_poly("X^2 - 3").unwrap();
        for v in primes_above(&k, 13).unwrap() {
            assert_eq!(padic_root(&v, &g, 2, 1000).unwrap().as_rational(), Some(&crate::arith::rational::int(108)));
        }
    }

    #[test]
    fn slopes() {
        let q = NumberField::rationals();
        let p5 = primes_above(&q, 5).unwrap().remove(0);
        assert_eq!(newton_slopes(&p5, &qpoly("X^2-5")), vec![(1, 2)]);
        assert_eq!(newton_slopes(&p5, &qpoly("X^2 - 26*X + 25")), vec![(0, 1), (2, 1)]);
    }
}
