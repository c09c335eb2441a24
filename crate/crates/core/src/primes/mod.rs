//! Primes of a number field: p-adic valuations above a rational prime and
//! orderings. Valuations are normalized so that v(K^x) = Z, hence v(p) = e.
//!
//! Splitting is read off the factorization of the defining polynomial mod p,
//! which is valid exactly when Dedekind's criterion holds. Local computations
//! take place in Z_p[X]/(F), where F is the Hensel lift of the factor
//! phi^e; under Dedekind's criterion this ring is the valuation ring of the
//! completion, with uniformizer p (e = 1) or phi(a) (e > 1).

mod quadratic;

pub use quadratic::{local_behavior, quadratic_step_search, Behavior, QuadraticStep};
pub(crate) use quadratic::shell;

use crate::arith::factor::{factor, roots};
use crate::arith::fp::Fp;
use crate::arith::gf::{FFieldElement, GaloisField};
use crate::arith::poly;
use crate::arith::rational::{divisors_u128, is_prime_u64, pow_u, vp_int, vp_rat};
use crate::arith::ring::{FiniteField, Integers, Ring, ZMod};
use crate::arith::text::fmt_poly_with;
use crate::arith::zpoly::{from_fp, hensel_lift, idempotents, reduce, rem_monic, to_fp, ZPoly};
use crate::error::{Error, Result};
use crate::field::{real_embeddings, sign_at, FieldElement, NumberField, Ordering};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Serialize, Serializer};
use std::fmt;
use std::sync::{Arc, Mutex};

/// Relative type (e, f): ramification bound and residue degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimeType {
    pub e: u32,
    pub f: u32,
}

impl PrimeType {
    pub fn new(e: u32, f: u32) -> Result<Self> {
        if e == 0 || f == 0 {
            return Err(Error::Invalid("prime type entries must be positive".into()));
        }
        Ok(PrimeType { e, f })
    }

    /// `self <= other`: e' <= e and f' | f.
    pub fn le(&self, other: &PrimeType) -> bool {
        self.e <= other.e && other.f % self.f == 0
    }
}

impl fmt::Display for PrimeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.e, self.f)
    }
}

/// Where a prime of K lies: above a rational prime, or at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl Place {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(Place::Infinite),
            t => {
                let p: u64 = t.parse().map_err(|_| Error::Invalid(format!("bad prime {t:?}")))?;
                if !is_prime_u64(p) {
                    return Err(Error::Invalid(format!("{p} is not prime")));
                }
                Ok(Place::Finite(p))
            }
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug)]
struct LocalData {
    /// phi^e mod p for every prime above p, in canonical order.
    powers: Vec<Vec<u64>>,
    /// Best lift of this prime's local factor so far, with its precision.
    lift: Mutex<(u32, ZPoly)>,
}

/// A p-adic prime of K.
#[derive(Debug, Clone)]
pub struct PValuation {
    pub field: NumberField,
    pub p: u64,
    pub index: usize,
    pub e: u32,
    pub f: u32,
    /// The irreducible factor phi of the defining polynomial mod p.
    pub factor: Vec<u64>,
    pub residue_field: Arc<GaloisField>,
    /// Root of phi in the residue field that the residue map sends a to.
    pub root: Vec<u64>,
    pub uniformizer: FieldElement,
    local: Arc<LocalData>,
}

impl PartialEq for PValuation {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.p == o.p && self.index == o.index
    }
}

impl Eq for PValuation {}

impl Serialize for PValuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PValuation", 7)?;
        st.serialize_field("kind", "p-adic")?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("e", &self.e)?;
        st.serialize_field("f", &self.f)?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("factor", &fmt_fp(&self.factor))?;
        st.serialize_field("uniformizer", &self.uniformizer)?;
        st.end()
    }
}

fn fmt_fp(a: &[u64]) -> String {
    fmt_poly_with(a, |c| *c == 0, |c| c.to_string())
}

/// A prime of K: an ordering or a p-adic valuation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Prime {
    Ordering(Ordering),
    PAdic(PValuation),
}

impl Prime {
    pub fn field(&self) -> &NumberField {
        match self {
            Prime::Ordering(o) => &o.field,
            Prime::PAdic(v) => &v.field,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Prime::Ordering(o) => format!("inf#{}", o.index),
            Prime::PAdic(v) => format!("{}#{}", v.p, v.index),
        }
    }

    pub fn as_padic(&self) -> Option<&PValuation> {
        match self {
            Prime::PAdic(v) => Some(v),
            Prime::Ordering(_) => None,
        }
    }
}

/// Dedekind's criterion: with f = prod phi_i^{e_i} + p*F, the index of Z[a]
/// is prime to p iff no phi_i with e_i >= 2 divides F mod p.
fn dedekind_check(f: &[BigInt], p: u64, facs: &[(Vec<u64>, u32)]) -> Result<()> {
    let fp = Fp::new(p);
    let prod = facs.iter().fold(vec![BigInt::one()], |acc, (g, e)| {
        poly::mul(&Integers, &acc, &poly::pow(&Integers, &from_fp(g), *e))
    });
    let diff = poly::sub(&Integers, f, &prod);
    let pb = BigInt::from(p);
    let big_f: ZPoly = diff.iter().map(|c| c / &pb).collect();
    let fbar = to_fp(&fp, &big_f);
    for (g, e) in facs {
        if *e >= 2 && poly::rem(&fp, &fbar, g).is_empty() {
            return Err(Error::IndexDivisible(p));
        }
    }
    Ok(())
}

/// The p-adic primes of K above p, in canonical order (by the factor of the
/// defining polynomial mod p: degree, then coefficients).
pub fn primes_above(k: &NumberField, p: u64) -> Result<Vec<PValuation>> {
    if !is_prime_u64(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let fp = Fp::new(p);
    let fbar = to_fp(&fp, &k.poly);
    let facs = factor(&fp, &fbar);
    dedekind_check(&k.poly, p, &facs)?;
    let powers: Vec<Vec<u64>> = facs.iter().map(|(g, e)| poly::pow(&fp, g, *e)).collect();
    let mut out = Vec::with_capacity(facs.len());
    for (index, (g, e)) in facs.iter().enumerate() {
        let f = (g.len() - 1) as u32;
        let gf = Arc::new(GaloisField::new(p, f));
        let lifted: Vec<Vec<u64>> = g.iter().map(|&c| gf.from_i64(c as i64)).collect();
        let root = roots(gf.as_ref(), &lifted).into_iter().next().expect("phi splits in its residue field");
        let cof = powers
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != index)
            .fold(vec![1u64], |acc, (_, h)| poly::mul(&fp, &acc, h));
        let lift0 = hensel_lift(&k.poly, &powers[index], &cof, p, 1).0;
        let uniformizer = if *e == 1 {
            k.from_int(p as i64)
        } else {
            k.from_poly(&crate::arith::zpoly::to_q(&from_fp(g)))
        };
        let local = Arc::new(LocalData { powers: powers.clone(), lift: Mutex::new((1, lift0)) });
        out.push(PValuation {
            field: k.clone(),
            p,
            index,
            e: *e,
            f,
            factor: g.clone(),
            residue_field: gf,
            root,
            uniformizer,
            local,
        });
    }
    for v in &out {
        debug_assert_eq!(v.valuation(&v.uniformizer), Some(1));
    }
    Ok(out)
}

impl PValuation {
    pub fn prime_type(&self) -> PrimeType {
        PrimeType { e: self.e, f: self.f }
    }

    /// Size of the residue field, p^f.
    pub fn residue_size(&self) -> u128 {
        self.residue_field.size()
    }

    /// The local factor F (F = phi^e mod p) lifted to precision p^n.
    pub fn local_factor(&self, n: u32) -> ZPoly {
        let mut guard = self.local.lift.lock().expect("lift cache");
        if guard.0 < n {
            let target = n.max(2 * guard.0);
            let fp = Fp::new(self.p);
            let cof = self
                .local
                .powers
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != self.index)
                .fold(vec![1u64], |acc, (_, h)| poly::mul(&fp, &acc, h));
            let lift = hensel_lift(&self.field.poly, &self.local.powers[self.index], &cof, self.p, target).0;
            *guard = (target, lift);
        }
        if guard.0 == n {
            guard.1.clone()
        } else {
            reduce(&guard.1, &pow_u(self.p, n))
        }
    }

    /// The idempotent of Z/p^n[X]/(f) that is 1 at this prime and 0 at the
    /// other primes above p.
    pub fn idempotent(&self, n: u32) -> ZPoly {
        if self.local.powers.len() == 1 {
            return vec![BigInt::one()];
        }
        idempotents(&self.field.poly, &self.local.powers, self.p, n).swap_remove(self.index)
    }

    /// Writes x = h(a)/d with h integral and d > 0.
    fn integral_parts(x: &FieldElement) -> (ZPoly, BigInt) {
        let d = x.denominator();
        let h: ZPoly = x.coords.iter().map(|c| (c * &d).to_integer()).collect();
        (poly::trim(&Integers, h), d)
    }

    /// Image of an integral polynomial in Z/p^n[X]/(F).
    fn local_image(&self, h: &[BigInt], n: u32) -> ZPoly {
        let zm = ZMod::new(pow_u(self.p, n));
        let big_f = self.local_factor(n);
        rem_monic(&zm, &reduce(h, &zm.modulus), &big_f)
    }

    fn phi_order(&self, c: &[u64]) -> u32 {
        let fp = Fp::new(self.p);
        let mut c = c.to_vec();
        let mut k = 0;
        while k < self.e {
            let (q, r) = poly::divrem(&fp, &c, &self.factor);
            if !r.is_empty() {
                break;
            }
            c = q;
            k += 1;
        }
        k
    }

    /// v(x), or `None` for x = 0.
    pub fn valuation(&self, x: &FieldElement) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        if let Some(q) = x.as_rational() {
            return Some(self.e as i64 * vp_rat(q, self.p).unwrap());
        }
        let (h, d) = Self::integral_parts(x);
        let k = vp_int(&d, self.p).unwrap() as i64;
        let mut n = 8u32;
        loop {
            let c = self.local_image(&h, n);
            if !c.is_empty() {
                let m = c.iter().filter_map(|a| vp_int(a, self.p)).min().unwrap();
                let pm = pow_u(self.p, m as u32);
                let fp = Fp::new(self.p);
                let unit_part = to_fp(&fp, &c.iter().map(|a| a / &pm).collect::<Vec<_>>());
                let ord = self.phi_order(&unit_part);
                return Some(self.e as i64 * (m as i64 - k) + ord as i64);
            }
            n *= 2;
        }
    }

    /// Residue class of an element with v(x) >= 0.
    pub fn residue(&self, x: &FieldElement) -> Result<FFieldElement> {
        let gf = self.residue_field.clone();
        let Some(v) = self.valuation(x) else {
            return Ok(FFieldElement::from_int(gf, 0));
        };
        if v < 0 {
            return Err(Error::NegativeValuation);
        }
        let (h, d) = Self::integral_parts(x);
        let k = vp_int(&d, self.p).unwrap() as u32;
        let c = self.local_image(&h, k + 1);
        let pk = pow_u(self.p, k);
        let pb = BigInt::from(self.p);
        let d_unit = &d / &pk;
        let d_inv = crate::arith::rational::inv_mod(&d_unit, &pb).expect("unit");
        let fp = Fp::new(self.p);
        let c: Vec<u64> = c
            .iter()
            .map(|a| {
                debug_assert!(a.is_multiple_of(&pk));
                fp.reduce_big(&(a / &pk * &d_inv))
            })
            .collect();
        let c = poly::rem(&fp, &poly::trim(&fp, c), &self.factor);
        let mut acc = gf.zero();
        for &a in c.iter().rev() {
            acc = gf.add(&gf.mul(&acc, &self.root), &gf.from_i64(a as i64));
        }
        Ok(FFieldElement { field: gf, coords: acc })
    }

    pub fn in_ring(&self, x: &FieldElement) -> bool {
        self.valuation(x).is_none_or(|v| v >= 0)
    }

    pub fn is_unit(&self, x: &FieldElement) -> bool {
        self.valuation(x) == Some(0)
    }

    /// An element whose residue is the given residue-field element.
    pub fn lift_residue(&self, r: &FFieldElement) -> FieldElement {
        // residue(h(a)) = h(root); solve in the basis of powers of the root
        let gf = &self.residue_field;
        let target = gf.index_of(&r.coords);
        let fl = self.f as usize;
        // the powers 1, root, ..., root^{f-1} form an F_p-basis
        for idx in 0..gf.size() {
            let coeffs: Vec<u64> = gf.element(idx);
            let mut acc = gf.zero();
            for &a in coeffs.iter().take(fl).rev() {
                acc = gf.add(&gf.mul(&acc, &self.root), &gf.from_i64(a as i64));
            }
            if gf.index_of(&acc) == target {
                let q: Vec<_> = coeffs.iter().map(|&a| num_rational::BigRational::from_integer(a.into())).collect();
                return self.field.from_poly(&q);
            }
        }
        unreachable!("root generates the residue field")
    }
}

impl Prime {
    /// Membership in the valuation ring, or in the positive cone for an
    /// ordering.
    pub fn in_ring(&self, x: &FieldElement) -> bool {
        match self {
            Prime::PAdic(v) => v.in_ring(x),
            Prime::Ordering(o) => sign_at(o, x) >= 0,
        }
    }
}

/// The set S_p^tau(K) (or its exact-type part), orderings included for p = inf.
pub fn primes_of_type(k: &NumberField, place: Place, tau: PrimeType, exact: bool) -> Result<Vec<Prime>> {
    match place {
        Place::Infinite => Ok(real_embeddings(k).into_iter().map(Prime::Ordering).collect()),
        Place::Finite(p) => Ok(primes_above(k, p)?
            .into_iter()
            .filter(|v| {
                let t = v.prime_type();
                if exact {
                    t == tau
                } else {
                    t.le(&tau)
                }
            })
            .map(Prime::PAdic)
            .collect()),
    }
}

/// Membership test for S_p^{=tau}(K, t, s): t^e/p and s are units, and
/// s^n - 1 is a unit for every proper divisor n of p^f - 1. Orderings always
/// belong.
pub fn chi_member(prime: &Prime, tau: PrimeType, t: &FieldElement, s: &FieldElement) -> bool {
    let v = match prime {
        Prime::Ordering(_) => return true,
        Prime::PAdic(v) => v,
    };
    match v.valuation(t) {
        Some(vt) if tau.e as i64 * vt == v.e as i64 => {}
        _ => return false,
    }
    if !v.is_unit(s) {
        return false;
    }
    let rs = v.residue(s).expect("unit");
    let q = (v.p as u128).pow(tau.f) - 1;
    divisors_u128(q)
        .into_iter()
        .filter(|&n| n != q)
        .all(|n| {
            let r = pow_ff(&rs, n);
            !r.field.is_one(&r.coords)
        })
}

pub(crate) fn pow_ff(x: &FFieldElement, mut e: u128) -> FFieldElement {
    let mut acc = FFieldElement::from_int(x.field.clone(), 1);
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    acc
}

/// Membership in the holomorphy domain R_p^tau(K).
pub fn holomorphy_member(k: &NumberField, place: Place, tau: PrimeType, x: &FieldElement) -> Result<bool> {
    Ok(primes_of_type(k, place, tau, false)?.iter().all(|pr| pr.in_ring(x)))
}

/// Parses `inf` / a rational prime plus an index into a prime of K.
pub fn select_prime(k: &NumberField, place: Place, index: usize) -> Result<Prime> {
    let all: Vec<Prime> = match place {
        Place::Infinite => real_embeddings(k).into_iter().map(Prime::Ordering).collect(),
        Place::Finite(p) => primes_above(k, p)?.into_iter().map(Prime::PAdic).collect(),
    };
    let n = all.len();
    all.into_iter()
        .nth(index)
        .ok_or_else(|| Error::Invalid(format!("prime index {index} out of range ({n} primes at {place})")))
}

/// Multiplicative order check helper used by tests and the CLI.
pub fn residue_generates(v: &PValuation, s: &FieldElement) -> Result<bool> {
    let r = v.residue(s)?;
    if r.is_zero() {
        return Ok(false);
    }
    Ok(r.order()? as u128 == v.residue_size() - 1)
}

/// Integer x with x = 1 mod p^n at `v` and x = 0 mod p^n at the other primes
/// above p, as an element of K.
pub fn idempotent_elem(v: &PValuation, n: u32) -> FieldElement {
    let e = v.idempotent(n);
    v.field.from_poly(&crate::arith::zpoly::to_q(&e))
}
