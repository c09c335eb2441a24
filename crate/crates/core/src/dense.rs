//! Witnesses for the denseness condition at a single prime and the uniform
//! condition over a finite set of primes, together with the approximation
//! tools they rest on: prescribed valuations, simultaneous balls, and the
//! Z-group witnesses.
//!
//! The archimedean part of a simultaneous approximation is solved as
//! x = x0 + M*w, where x0 meets the p-adic balls, M is a power product of the
//! rational primes involved, and w has coefficients in Z[1/q] for a prime q
//! outside them. Its real images are fitted to the ordering balls by a
//! Vandermonde solve on rational approximations of the real roots, then
//! everything is re-checked exactly.

use crate::arith::poly;
use crate::arith::rational::{factorial, inv_mod, is_prime_u64, pow_u};
use crate::closure::{eval, has_root_in_closure, sign_under, trim, truncations};
use crate::error::{Error, Result};
use crate::field::real::{bisect, isolate_real_roots, sturm_chain, Embedded};
use crate::field::{sign_at, FieldElement, NumberField, Ordering};
use crate::primes::{idempotent_elem, primes_above, primes_of_type, shell, PValuation, Place, Prime, PrimeType};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

/// B_P(y, z): v(x - y) > v(z) at a valuation, |x - y| < |z| at an ordering.
#[derive(Debug, Clone)]
pub struct Ball {
    pub prime: Prime,
    pub y: FieldElement,
    pub z: FieldElement,
}

impl Ball {
    pub fn new(prime: Prime, y: FieldElement, z: FieldElement) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(Ball { prime, y, z })
    }
}

pub fn ball_member(b: &Ball, x: &FieldElement) -> bool {
    let d = x - &b.y;
    match &b.prime {
        Prime::PAdic(v) => match v.valuation(&d) {
            None => true,
            Some(w) => w > v.valuation(&b.z).expect("ball radius is nonzero"),
        },
        Prime::Ordering(o) => sign_at(o, &(&(&b.z * &b.z) - &(&d * &d))) > 0,
    }
}

/// One exact re-verification at a prime.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub prime: String,
    pub value: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub witness: Option<FieldElement>,
    pub verified_at: Vec<Check>,
    pub search_stats: Value,
}

/// Search limits shared by the witness searches.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Largest power of the uniformizer a p-adic search may work modulo.
    pub precision: u32,
    /// Decimal digits for ordering-side searches, refinement rounds for the
    /// archimedean merge.
    pub steps: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { precision: 1000, steps: 64 }
    }
}

/// 1 - g(x)^2 a^-2, checked for membership in the ring of the prime.
pub fn d_condition(prime: &Prime, g: &[FieldElement], x: &FieldElement, a: &FieldElement) -> Result<Check> {
    let gx = eval(g, x);
    let ratio = gx.div(a)?;
    let value = &x.field.one_elem() - &(&ratio * &ratio);
    let holds = prime.in_ring(&value);
    let shown = match prime {
        Prime::PAdic(v) => match v.valuation(&value) {
            Some(w) => format!("v(1-g(x)^2/a^2) = {w}"),
            None => "1-g(x)^2/a^2 = 0".to_string(),
        },
        Prime::Ordering(o) => format!("sign(1-g(x)^2/a^2) = {}", sign_at(o, &value)),
    };
    Ok(Check { prime: prime.label(), value: shown, holds })
}

/// x in K with 1 - g(x)^2 a^-2 in the ring of `prime`.
pub fn d_witness(prime: &Prime, g: &[FieldElement], a: &FieldElement, limits: Limits) -> Result<WitnessReport> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let g = trim(g);
    if !has_root_in_closure(prime, &g)?.has_root {
        return Err(Error::NoRootInClosure);
    }
    let (x, stats) = match prime {
        Prime::PAdic(v) => padic_witness(v, &g, a, limits)?,
        Prime::Ordering(o) => {
            let (x, steps) = ordering_witness(o, &g, a, limits)?;
            (o.field.from_rational(x), json!({"method": "decimal-truncation", "steps": steps}))
        }
    };
    let check = d_condition(prime, &g, &x, a)?;
    if !check.holds {
        return Err(Error::LocalWitnessInvalid(format!("{} fails at {}", x, check.prime)));
    }
    Ok(WitnessReport { witness: Some(x), verified_at: vec![check], search_stats: stats })
}

fn padic_witness(v: &PValuation, g: &[FieldElement], a: &FieldElement, limits: Limits) -> Result<(FieldElement, Value)> {
    let va = v.valuation(a).expect("nonzero");
    let mut k = va.max(0) as u32;
    loop {
        for t in truncations(v, g, k, limits.precision)? {
            if v.valuation(&eval(g, &t.x)).is_none_or(|w| w >= va) {
                return Ok((t.x, json!({"method": "root-truncation", "k": k, "v_a": va})));
            }
        }
        k += 1;
        if k > limits.precision {
            return Err(Error::PrecisionOverflow(format!("no truncation below precision {}", limits.precision)));
        }
    }
}

/// Decimal truncations (toward zero) of the largest real root of g under
/// the ordering, with 0, 1, 2, ... digits, until |g(x)| <= |bound|.
fn ordering_witness(o: &Ordering, g: &[FieldElement], bound: &FieldElement, limits: Limits) -> Result<(BigRational, u32)> {
    let e = Embedded { ordering: o };
    let coords: Vec<Vec<BigRational>> = g.iter().map(|c| c.coords.clone()).collect();
    let sf = poly::squarefree_part(&e, &coords);
    let chain = sturm_chain(&e, &sf);
    let sf_elems: Vec<FieldElement> = sf.iter().map(|c| FieldElement::new(o.field.clone(), c.clone())).collect();
    let (mut lo, mut hi) = isolate_real_roots(&e, &sf).pop().ok_or(Error::NoRootInClosure)?;
    let b2 = bound * bound;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut scale = BigRational::one();
    for digits in 0..=limits.steps {
        let x = loop {
            let (tl, th) = ((&lo * &scale).trunc(), (&hi * &scale).trunc());
            if tl == th {
                break tl / &scale;
            }
            let c = &th / &scale;
            if c > lo && sign_under(o, &sf_elems, &c) == 0 {
                break c;
            }
            (lo, hi) = bisect(&e, &chain, &lo, &hi);
        };
        let gx = eval(g, &o.field.from_rational(x.clone()));
        if sign_at(o, &(&b2 - &(&gx * &gx))) >= 0 {
            return Ok((x, digits));
        }
        scale *= &ten;
    }
    Err(Error::NoneWithinBound(format!("no decimal truncation with at most {} digits", limits.steps)))
}

/// Elements with prescribed valuations at primes above one rational prime:
/// a small-height search first, then a CRT construction from idempotents.
pub fn weak_approx_valuations(k: &NumberField, targets: &[(PValuation, i64)]) -> Result<FieldElement> {
    let Some((first, _)) = targets.first() else {
        return Ok(k.one_elem());
    };
    let p = first.p;
    for (i, (v, _)) in targets.iter().enumerate() {
        if v.p != p || v.field != *k {
            return Err(Error::Invalid("all primes must lie above one rational prime of K".into()));
        }
        if targets[..i].iter().any(|(w, _)| w == v) {
            return Err(Error::NonDisjoint);
        }
    }
    // x = p^s u with u integral
    let s = targets.iter().map(|(v, w)| w.div_euclid(v.e as i64)).min().unwrap();
    let shifted: Vec<i64> = targets.iter().map(|(v, w)| w - s * v.e as i64).collect();
    let ps = k.from_int(p as i64).powi(s)?;
    let ok = |u: &FieldElement| targets.iter().zip(&shifted).all(|((v, _), w)| v.valuation(u) == Some(*w));
    let mut tried = 0;
    'search: for h in 1.. {
        for c in shell(k.degree, h) {
            tried += 1;
            if tried > 4000 {
                break 'search;
            }
            let u = k.elem(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect());
            if ok(&u) {
                return Ok(&ps * &u);
            }
        }
    }
    let n = *shifted.iter().max().unwrap() as u32 + 1;
    let mut u = k.zero_elem();
    for ((v, _), w) in targets.iter().zip(&shifted) {
        u = &u + &(&idempotent_elem(v, n) * &v.uniformizer.pow(*w as u64));
    }
    if !ok(&u) {
        return Err(Error::LocalWitnessInvalid("CRT construction missed a valuation".into()));
    }
    Ok(&ps * &u)
}

/// z with v_P(z) = v_P(z_i) for every P in S_i.
pub fn weak_approx_value(k: &NumberField, parts: &[(Vec<PValuation>, FieldElement)]) -> Result<FieldElement> {
    let mut targets = Vec::new();
    for (set, z) in parts {
        if z.is_zero() {
            return Err(Error::ZeroElement);
        }
        for v in set {
            if targets.iter().any(|(w, _): &(PValuation, i64)| w == v) {
                return Err(Error::NonDisjoint);
            }
            targets.push((v.clone(), v.valuation(z).expect("nonzero")));
        }
    }
    weak_approx_valuations(k, &targets)
}

/// x with v_P(x - y_P) >= r_P for each target.
fn crt(k: &NumberField, targets: &[(PValuation, FieldElement, i64)]) -> FieldElement {
    if targets.is_empty() {
        return k.zero_elem();
    }
    let mut n = 1i64;
    for (v, _, r) in targets {
        let worst = targets.iter().filter_map(|(_, y, _)| v.valuation(y)).min().unwrap_or(0).min(0);
        n = n.max(r - worst + 1);
    }
    let n = n as u32;
    let mut rational_primes: Vec<u64> = targets.iter().map(|(v, _, _)| v.p).collect();
    rational_primes.sort();
    rational_primes.dedup();
    let mut x = k.zero_elem();
    for (v, y, _) in targets {
        let pn = pow_u(v.p, n);
        let others = rational_primes.iter().filter(|&&q| q != v.p).fold(BigInt::one(), |acc, &q| acc * pow_u(q, n));
        let c = &others * inv_mod(&others, &pn).expect("coprime");
        let e = idempotent_elem(v, n).scale(&BigRational::from_integer(c));
        x = &x + &(&e * y);
    }
    x
}

fn rational_midpoint(iv: &(BigRational, BigRational)) -> BigRational {
    (&iv.0 + &iv.1) / BigRational::from_integer(BigInt::from(2))
}

/// Solves a square linear system over Q (Gaussian elimination).
fn solve(mut m: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        b.swap(col, piv);
        let inv = m[col][col].recip();
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                for c in col..n {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &m[i][i]).collect())
}

fn ball_check(b: &Ball, x: &FieldElement) -> Check {
    let d = x - &b.y;
    let value = match &b.prime {
        Prime::PAdic(v) => format!(
            "v(x-y) = {}, v(z) = {}",
            v.valuation(&d).map_or("inf".to_string(), |w| w.to_string()),
            v.valuation(&b.z).expect("nonzero")
        ),
        Prime::Ordering(o) => format!("sign(z^2-(x-y)^2) = {}", sign_at(o, &(&(&b.z * &b.z) - &(&d * &d)))),
    };
    Check { prime: b.prime.label(), value, holds: ball_member(b, x) }
}

/// A single x in every ball (identity maps; the centers are the local
/// solutions).
pub fn simultaneous_ball(k: &NumberField, balls: &[Ball], limits: Limits) -> Result<WitnessReport> {
    for (i, b) in balls.iter().enumerate() {
        if b.prime.field() != k || b.y.field != *k || b.z.field != *k {
            return Err(Error::Invalid("ball over a different field".into()));
        }
        if b.z.is_zero() {
            return Err(Error::LocalWitnessInvalid(format!("zero radius at {}", b.prime.label())));
        }
        if balls[..i].iter().any(|c| c.prime == b.prime) {
            return Err(Error::Invalid(format!("two balls at {}", b.prime.label())));
        }
    }
    let report = |x: FieldElement, stats: Value| WitnessReport {
        verified_at: balls.iter().map(|b| ball_check(b, &x)).collect(),
        witness: Some(x),
        search_stats: stats,
    };
    if balls.is_empty() {
        return Ok(report(k.zero_elem(), json!({"method": "empty"})));
    }
    if let Some(b) = balls.iter().find(|b| balls.iter().all(|c| ball_member(c, &b.y))) {
        return Ok(report(b.y.clone(), json!({"method": "common-center"})));
    }
    let mut targets = Vec::new();
    let mut orderings = Vec::new();
    for b in balls {
        match &b.prime {
            Prime::PAdic(v) => targets.push((v.clone(), b.y.clone(), v.valuation(&b.z).unwrap() + 1)),
            Prime::Ordering(o) => orderings.push((o.clone(), b)),
        }
    }
    let mut x0 = crt(k, &targets);
    // M = prod p^m with v_P(M) >= r_P: adding M times a P-integral element
    // keeps every p-adic condition
    let mut m = BigInt::one();
    let mut ps: Vec<u64> = targets.iter().map(|(v, _, _)| v.p).collect();
    ps.sort();
    ps.dedup();
    for &p in &ps {
        let need = targets
            .iter()
            .filter(|(v, _, _)| v.p == p)
            .map(|(v, _, r)| r.max(&0).div_ceil(&(v.e as i64)))
            .max()
            .unwrap();
        m *= pow_u(p, need as u32);
    }
    let mq = BigRational::from_integer(m.clone());
    if x0.coords.iter().all(|c| c.is_integer()) {
        let reduced = x0
            .coords
            .iter()
            .map(|c| BigRational::from_integer(crate::arith::rational::symmetric(&c.to_integer(), &m)))
            .collect();
        x0 = x0.with(reduced);
    }
    if orderings.is_empty() {
        let r = report(x0, json!({"method": "crt", "modulus": m.to_string()}));
        return finish(r);
    }
    let q = (2u64..).find(|q| is_prime_u64(*q) && !ps.contains(q)).unwrap();
    let r = orderings.len();
    for round in 1..=limits.steps {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << (8 * round));
        let roots: Vec<BigRational> = orderings.iter().map(|(o, _)| rational_midpoint(&o.refined(&eps))).collect();
        let rhs: Vec<BigRational> =
            orderings.iter().map(|(o, b)| rational_midpoint(&o.enclose(&(&b.y - &x0), &eps)) / &mq).collect();
        let mat: Vec<Vec<BigRational>> = roots
            .iter()
            .map(|rho| (0..r).map(|j| num_traits::pow(rho.clone(), j)).collect())
            .collect();
        let Some(c) = solve(mat, rhs) else { continue };
        let mut scale = BigInt::one();
        while scale < (BigInt::one() << (8 * round)) {
            scale *= q;
        }
        let sq = BigRational::from_integer(scale);
        let mut coords: Vec<BigRational> = c.iter().map(|cj| (cj * &sq).round() / &sq).collect();
        coords.resize(k.degree, BigRational::zero());
        let w = k.elem(coords);
        let x = &x0 + &w.scale(&mq);
        if balls.iter().all(|b| ball_member(b, &x)) {
            let rep = report(x, json!({"method": "crt+archimedean", "modulus": m.to_string(), "q": q, "rounds": round}));
            return finish(rep);
        }
    }
    Err(Error::NoneWithinBound(format!("archimedean adjustment failed after {} rounds", limits.steps)))
}

fn finish(r: WitnessReport) -> Result<WitnessReport> {
    if let Some(c) = r.verified_at.iter().find(|c| !c.holds) {
        return Err(Error::LocalWitnessInvalid(format!("merged witness fails at {}", c.prime)));
    }
    Ok(r)
}

/// Taylor coefficients of g at x: g(X + x) = sum c_k X^k.
fn taylor(g: &[FieldElement], x: &FieldElement) -> Vec<FieldElement> {
    let k = &x.field;
    let mut out = vec![k.zero_elem(); g.len()];
    // Horner with polynomials in X: acc = acc*(X + x) + c
    for c in g.iter().rev() {
        let mut next = vec![k.zero_elem(); g.len()];
        for (i, a) in out.iter().enumerate() {
            if i + 1 < next.len() {
                next[i + 1] = &next[i + 1] + a;
            }
            next[i] = &next[i] + &(a * x);
        }
        next[0] = &next[0] + c;
        out = next;
    }
    out
}

/// A positive lower bound for |a| under an ordering; a must be nonzero.
pub(crate) fn abs_lower(o: &Ordering, a: &FieldElement) -> BigRational {
    let mut tight = BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
    loop {
        let (lo, hi) = o.enclose(a, &tight);
        if lo.is_positive() || hi.is_negative() {
            return lo.abs().min(hi.abs());
        }
        tight = &tight * &tight;
    }
}

/// rho = 2^-j such that |g(x') - g(x)| <= margin/2 whenever |x' - x| <= rho
/// under the ordering, bounded through the Taylor coefficients at x.
pub(crate) fn lipschitz_radius(o: &Ordering, g: &[FieldElement], x: &FieldElement, margin: &BigRational) -> BigRational {
    let eps = BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
    let uppers: Vec<BigRational> = taylor(g, x)
        .iter()
        .skip(1)
        .map(|c| {
            let (lo, hi) = o.enclose(c, &eps);
            lo.abs().max(hi.abs())
        })
        .collect();
    let mut rho = BigRational::one();
    loop {
        let mut total = BigRational::zero();
        let mut pw = rho.clone();
        for u in &uppers {
            total += u * &pw;
            pw = &pw * &rho;
        }
        if total * BigRational::from_integer(BigInt::from(2)) <= *margin {
            return rho;
        }
        rho /= BigRational::from_integer(BigInt::from(2));
    }
}

/// A ball around a local witness inside which the denseness condition keeps
/// holding.
fn local_ball(prime: &Prime, g: &[FieldElement], a: &FieldElement, limits: Limits) -> Result<Ball> {
    match prime {
        Prime::PAdic(v) => {
            let x = d_witness(prime, g, a, limits)?.witness.unwrap();
            let va = v.valuation(a).unwrap();
            let mut r = 1i64;
            for (i, c) in taylor(g, &x).iter().enumerate().skip(1) {
                if let Some(w) = v.valuation(c) {
                    r = r.max(Integer::div_ceil(&(va - w), &(i as i64)));
                }
            }
            Ball::new(prime.clone(), x, v.uniformizer.powi(r - 1)?)
        }
        Prime::Ordering(o) => {
            let half = a.scale(&BigRational::new(BigInt::one(), BigInt::from(2)));
            let (xq, _) = ordering_witness(o, g, &half, limits)?;
            let x = o.field.from_rational(xq);
            let rho = lipschitz_radius(o, g, &x, &abs_lower(o, a));
            Ball::new(prime.clone(), x, o.field.from_rational(rho))
        }
    }
}

/// x with 1 - g(x)^2 a^-2 in O_P for every P in S at which g has a root in
/// the closure.
pub fn ud_witness(k: &NumberField, s: &[Prime], g: &[FieldElement], a: &FieldElement, limits: Limits) -> Result<WitnessReport> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let g = trim(g);
    let mut sg = Vec::new();
    for pr in s {
        if has_root_in_closure(pr, &g)?.has_root {
            sg.push(pr.clone());
        }
    }
    let balls = sg.iter().map(|pr| local_ball(pr, &g, a, limits)).collect::<Result<Vec<_>>>()?;
    let merged = simultaneous_ball(k, &balls, limits)?;
    let x = merged.witness.clone().unwrap();
    let checks = sg.iter().map(|pr| d_condition(pr, &g, &x, a)).collect::<Result<Vec<_>>>()?;
    if let Some(c) = checks.iter().find(|c| !c.holds) {
        return Err(Error::LocalWitnessInvalid(format!("{x} fails at {}", c.prime)));
    }
    Ok(WitnessReport {
        witness: Some(x),
        verified_at: checks,
        search_stats: json!({
            "s_g": sg.iter().map(|p| p.label()).collect::<Vec<_>>(),
            "merge": merged.search_stats,
        }),
    })
}

/// x_0..x_{n-1} with v_P(y^{e!} p^i x_i^n) >= 0 for all i, with equality
/// for some i, at every prime of type <= tau above p.
pub fn zgroup_witness(k: &NumberField, p: u64, tau: PrimeType, n: u32, y: &FieldElement) -> Result<Vec<FieldElement>> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    if y.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ef = factorial(tau.e as u64) as i64;
    let primes: Vec<PValuation> = primes_of_type(k, Place::Finite(p), tau, false)?
        .into_iter()
        .filter_map(|pr| pr.as_padic().cloned())
        .collect();
    (0..n as i64)
        .map(|i| {
            let targets: Vec<(PValuation, i64)> = primes
                .iter()
                .map(|v| {
                    let num = -ef * v.valuation(y).unwrap() - i * v.e as i64;
                    (v.clone(), Integer::div_ceil(&num, &(n as i64)))
                })
                .collect();
            weak_approx_valuations(k, &targets)
        })
        .collect()
}

/// The valuation conditions that `zgroup_witness` guarantees.
pub fn zgroup_check(k: &NumberField, p: u64, tau: PrimeType, y: &FieldElement, xs: &[FieldElement]) -> Result<bool> {
    let ef = factorial(tau.e as u64);
    let n = xs.len() as u64;
    let base = y.pow(ef);
    for v in primes_above(k, p)?.iter().filter(|v| v.prime_type().le(&tau)) {
        let vals: Vec<Option<i64>> = xs
            .iter()
            .enumerate()
            .map(|(i, x)| v.valuation(&(&(&base * &k.from_int(p as i64).pow(i as u64)) * &x.pow(n))))
            .collect();
        if vals.iter().any(|w| w.is_none_or(|w| w < 0)) || !vals.contains(&Some(0)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::frac;
    use crate::field::real_embeddings;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn at(k: &NumberField, p: u64, i: usize) -> Prime {
        Prime::PAdic(primes_above(k, p).unwrap().remove(i))
    }

    fn inf(k: &NumberField) -> Prime {
        Prime::Ordering(real_embeddings(k).remove(0))
    }

    #[test]
    fn ball_examples() {
        let k = q();
        let b = Ball::new(at(&k, 5, 0), k.from_int(0), k.from_int(5)).unwrap();
        assert!(ball_member(&b, &k.from_int(50)));
        assert!(!ball_member(&b, &k.from_int(5)));
        let b = Ball::new(inf(&k), k.from_int(0), k.from_rational(frac(1, 10))).unwrap();
        assert!(ball_member(&b, &k.from_rational(frac(1, 100))));
    }

    #[test]
    fn d_witness_examples() {
        let k = q();
        let g = k.parse_poly("X^2+1").unwrap();
        let r = d_witness(&at(&k, 5, 0), &g, &k.from_int(125), Limits::default()).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "57");
        let g2 = k.parse_poly("X^2-2").unwrap();
        let r = d_witness(&inf(&k), &g2, &k.from_rational(frac(1, 100)), Limits::default()).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "707/500");
        assert_eq!(
            d_witness(&at(&k, 3, 0), &g, &k.from_int(3), Limits::default()).unwrap_err(),
            Error::NoRootInClosure
        );
    }

    #[test]
    fn weak_approximation_examples() {
        let k = NumberField::parse("X^2+1").unwrap();
        let ps = primes_above(&k, 5).unwrap();
        let z = weak_approx_valuations(&k, &[(ps[0].clone(), 1), (ps[1].clone(), 0)]).unwrap();
        assert_eq!(z.to_string(), "[2, 1]");
        let z = weak_approx_valuations(&k, &[(ps[0].clone(), 2), (ps[1].clone(), 0)]).unwrap();
        assert_eq!((ps[0].valuation(&z), ps[1].valuation(&z)), (Some(2), Some(0)));
        let dup = weak_approx_valuations(&k, &[(ps[0].clone(), 1), (ps[0].clone(), 0)]);
        assert_eq!(dup.unwrap_err(), Error::NonDisjoint);
        // the fallback construction for large targets
        let z = weak_approx_valuations(&k, &[(ps[0].clone(), 9), (ps[1].clone(), -3)]).unwrap();
        assert_eq!((ps[0].valuation(&z), ps[1].valuation(&z)), (Some(9), Some(-3)));
    }

    #[test]
    fn simultaneous_examples() {
        let k = q();
        assert_eq!(simultaneous_ball(&k, &[], Limits::default()).unwrap().witness.unwrap().to_string(), "0");
        let balls = [
            Ball::new(at(&k, 5, 0), k.from_int(2), k.from_int(25)).unwrap(),
            Ball::new(inf(&k), k.from_int(2), k.from_int(10)).unwrap(),
        ];
        assert_eq!(simultaneous_ball(&k, &balls, Limits::default()).unwrap().witness.unwrap().to_string(), "2");
        // p-adic center far from the archimedean one
        let balls = [
            Ball::new(at(&k, 5, 0), k.from_int(2), k.from_int(25)).unwrap(),
            Ball::new(at(&k, 3, 0), k.from_int(1), k.from_int(9)).unwrap(),
            Ball::new(inf(&k), k.from_rational(frac(7, 5)), k.from_rational(frac(1, 1000))).unwrap(),
        ];
        let r = simultaneous_ball(&k, &balls, Limits::default()).unwrap();
        assert!(r.verified_at.iter().all(|c| c.holds));
    }

    #[test]
    fn gaussian_crt_balls() {
        let k = NumberField::parse("X^2+1").unwrap();
        let i = k.gen_elem();
        let balls = [
            Ball::new(at(&k, 5, 0), i.clone(), k.from_int(5)).unwrap(),
            Ball::new(at(&k, 5, 1), -&i, k.from_int(5)).unwrap(),
        ];
        let r = simultaneous_ball(&k, &balls, Limits::default()).unwrap();
        assert!(r.verified_at.iter().all(|c| c.holds));
    }

    #[test]
    fn real_quadratic_archimedean_merge() {
        let k = NumberField::parse("X^2-2").unwrap();
        let os = real_embeddings(&k);
        let tiny = k.from_rational(frac(1, 10000));
        let balls = [
            Ball::new(Prime::Ordering(os[0].clone()), k.from_int(3), tiny.clone()).unwrap(),
            Ball::new(Prime::Ordering(os[1].clone()), k.from_int(-5), tiny).unwrap(),
            Ball::new(at(&k, 7, 0), k.from_int(1), k.from_int(49)).unwrap(),
        ];
        let r = simultaneous_ball(&k, &balls, Limits::default()).unwrap();
        assert!(r.verified_at.iter().all(|c| c.holds));
    }

    #[test]
    fn ud_examples() {
        let k = NumberField::parse("X^2+1").unwrap();
        let s = vec![at(&k, 13, 0), at(&k, 13, 1)];
        let g = k.parse_poly("X^2-3").unwrap();
        let r = ud_witness(&k, &s, &g, &k.from_int(169), Limits::default()).unwrap();
        assert_eq!(r.witness.unwrap().as_rational(), Some(&crate::arith::rational::int(108)));
        let q = q();
        let s = vec![at(&q, 5, 0), inf(&q)];
        let g = q.parse_poly("X^2+1").unwrap();
        let r = ud_witness(&q, &s, &g, &q.from_int(25), Limits::default()).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "7");
        let s = vec![at(&q, 3, 0)];
        let r = ud_witness(&q, &s, &g, &q.from_int(25), Limits::default()).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "0");
    }

    #[test]
    fn ud_with_real_and_padic_roots() {
        let q = q();
        let s = vec![at(&q, 7, 0), inf(&q)];
        let g = q.parse_poly("X^2-2").unwrap();
        let a = q.from_rational(frac(7, 1000));
        let r = ud_witness(&q, &s, &g, &a, Limits::default()).unwrap();
        assert_eq!(r.verified_at.len(), 2);
    }

    #[test]
    fn zgroup_examples() {
        let k = q();
        let tau = PrimeType::new(1, 1).unwrap();
        let xs = zgroup_witness(&k, 5, tau, 2, &k.from_int(5)).unwrap();
        assert_eq!(xs.iter().map(|x| x.to_string()).collect::<Vec<_>>(), vec!["1", "1/5"]);
        let xs = zgroup_witness(&k, 5, tau, 1, &k.from_int(1)).unwrap();
        assert_eq!(xs.iter().map(|x| x.to_string()).collect::<Vec<_>>(), vec!["1"]);
        let g = NumberField::parse("X^2+1").unwrap();
        let y = g.parse_elem("2+a").unwrap();
        let xs = zgroup_witness(&g, 5, tau, 2, &y).unwrap();
        assert!(zgroup_check(&g, 5, tau, &y, &xs).unwrap());
    }
}
