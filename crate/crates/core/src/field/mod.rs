//! Number fields K = Q(a) given by a monic irreducible integer polynomial.
//! Elements are rational coordinate vectors in the power basis 1, a, ..., a^{n-1}.

mod irreducible;
pub mod real;

pub use irreducible::{certify_irreducible, factor_over_z};
pub use real::{real_embeddings, sign_at, Ordering};

use crate::arith::poly;
use crate::arith::rational::fmt_rational;
use crate::arith::ring::{Field, Rationals, Ring};
use crate::arith::text::{fmt_coords, fmt_poly_with, fmt_zpoly, parse_const, parse_poly, ParseCoeffs};
use crate::arith::zpoly::{from_q, ZPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

#[derive(Debug)]
pub struct FieldData {
    pub poly: ZPoly,
    pub poly_q: Vec<BigRational>,
    pub degree: usize,
    pub discriminant: BigInt,
    /// Isolating intervals of the real roots, ascending.
    pub(crate) intervals: Vec<(BigRational, BigRational)>,
}

/// A handle to a number field; cheap to clone.
#[derive(Debug, Clone)]
pub struct NumberField(Arc<FieldData>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.poly == other.0.poly
    }
}

impl Eq for NumberField {}

impl std::ops::Deref for NumberField {
    type Target = FieldData;
    fn deref(&self) -> &FieldData {
        &self.0
    }
}

impl NumberField {
    /// Builds the field defined by a monic integer polynomial, certifying
    /// irreducibility over Q.
    pub fn new(f: &[BigRational]) -> Result<Self> {
        let f = poly::trim(&Rationals, f.to_vec());
        if f.len() < 2 {
            return Err(Error::Invalid("defining polynomial must be nonconstant".into()));
        }
        if !f.last().unwrap().is_one() {
            return Err(Error::NotMonic);
        }
        let z = from_q(&f).ok_or_else(|| Error::Invalid("defining polynomial must have integer coefficients".into()))?;
        certify_irreducible(&z)?;
        let disc = poly::discriminant_monic(&Rationals, &f).to_integer();
        let intervals = real::isolate_defining_roots(&f);
        Ok(NumberField(Arc::new(FieldData {
            degree: z.len() - 1,
            poly: z,
            poly_q: f,
            discriminant: disc,
            intervals,
        })))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(&parse_poly(&Rationals, s)?)
    }

    /// The field Q, defined by X.
    pub fn rationals() -> Self {
        Self::new(&[BigRational::zero(), BigRational::one()]).expect("X is irreducible")
    }

    pub fn is_rationals(&self) -> bool {
        self.degree == 1
    }

    pub fn elem(&self, coords: Vec<BigRational>) -> FieldElement {
        FieldElement::new(self.clone(), coords)
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        let mut c = vec![BigRational::zero(); self.degree];
        c[0] = q;
        FieldElement { field: self.clone(), coords: c }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(&self, n: BigInt) -> FieldElement {
        self.from_rational(BigRational::from_integer(n))
    }

    pub fn zero_elem(&self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one_elem(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The generator a, the class of X.
    pub fn gen_elem(&self) -> FieldElement {
        self.elem(poly::monomial(&Rationals, 1))
    }

    /// Element whose coordinates are the coefficients of `h`, reduced mod f.
    pub fn from_poly(&self, h: &[BigRational]) -> FieldElement {
        let r = poly::rem(&Rationals, &poly::trim(&Rationals, h.to_vec()), &self.poly_q);
        self.elem(r)
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElement> {
        let c = parse_const(self, s)?;
        Ok(FieldElement { field: self.clone(), coords: c })
    }

    /// Parses a polynomial in X over K.
    pub fn parse_poly(&self, s: &str) -> Result<Vec<FieldElement>> {
        let p = parse_poly(self, s)?;
        Ok(p.into_iter().map(|c| FieldElement { field: self.clone(), coords: c }).collect())
    }

    pub fn fmt_poly(&self) -> String {
        fmt_zpoly(&self.poly)
    }

    fn pad(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        v.resize(self.degree, BigRational::zero());
        v
    }
}

impl Ring for NumberField {
    type Elem = Vec<BigRational>;

    fn zero(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.degree]
    }
    fn one(&self) -> Vec<BigRational> {
        let mut v = self.zero();
        v[0] = BigRational::one();
        v
    }
    fn add(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn sub(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn mul(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        let n = self.degree;
        if n == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        // reduce with the monic relation a^n = -sum f_i a^i
        for k in (n..2 * n - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                if !self.poly_q[i].is_zero() {
                    prod[k - n + i] -= &c * &self.poly_q[i];
                }
            }
        }
        prod.truncate(n);
        prod
    }
    fn neg(&self, a: &Vec<BigRational>) -> Vec<BigRational> {
        a.iter().map(|x| -x).collect()
    }
    fn is_zero(&self, a: &Vec<BigRational>) -> bool {
        a.iter().all(|x| x.is_zero())
    }
    fn from_i64(&self, n: i64) -> Vec<BigRational> {
        let mut v = self.zero();
        v[0] = BigRational::from_integer(n.into());
        v
    }
}

impl Field for NumberField {
    fn inv(&self, a: &Vec<BigRational>) -> Option<Vec<BigRational>> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree == 1 {
            return Some(vec![a[0].recip()]);
        }
        let h = poly::trim(&Rationals, a.clone());
        let (g, s, _) = poly::xgcd(&Rationals, &h, &self.poly_q);
        debug_assert!(g.len() == 1, "defining polynomial is irreducible");
        Some(self.pad(s))
    }
}

impl ParseCoeffs for NumberField {
    fn rational(&self, q: &BigRational) -> Vec<BigRational> {
        let mut v = self.zero();
        v[0] = q.clone();
        v
    }
    fn generator(&self) -> Option<Vec<BigRational>> {
        Some(self.pad(poly::rem(&Rationals, &poly::monomial(&Rationals, 1), &self.poly_q)))
    }
    fn vector(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() > self.degree {
            return Err(Error::Invalid(format!(
                "coordinate vector of length {} for a field of degree {}",
                v.len(),
                self.degree
            )));
        }
        Ok(self.pad(v.to_vec()))
    }
}

impl Serialize for NumberField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("NumberField", 3)?;
        st.serialize_field("defining_poly", &self.fmt_poly())?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("discriminant", &self.discriminant.to_string())?;
        st.end()
    }
}

/// An element of a number field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    pub field: NumberField,
    pub coords: Vec<BigRational>,
}

impl FieldElement {
    /// Pads or reduces `coords` to the power basis of `field`.
    pub fn new(field: NumberField, coords: Vec<BigRational>) -> Self {
        let coords = if coords.len() > field.degree {
            let r = poly::rem(&Rationals, &poly::trim(&Rationals, coords), &field.poly_q);
            field.pad(r)
        } else {
            field.pad(coords)
        };
        FieldElement { field, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coords[1..].iter().all(|c| c.is_zero()).then(|| &self.coords[0])
    }

    pub fn inv(&self) -> Result<FieldElement> {
        self.field
            .inv(&self.coords)
            .map(|c| self.with(c))
            .ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, o: &FieldElement) -> Result<FieldElement> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(&self.coords, e))
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn scale(&self, q: &BigRational) -> FieldElement {
        self.with(self.coords.iter().map(|c| c * q).collect())
    }

    /// The power-basis polynomial h with self = h(a).
    pub fn as_poly(&self) -> Vec<BigRational> {
        poly::trim(&Rationals, self.coords.clone())
    }

    /// Norm N_{K/Q}, the resultant of f and h.
    pub fn norm(&self) -> BigRational {
        if self.field.degree == 1 {
            return self.coords[0].clone();
        }
        let h = self.as_poly();
        if h.is_empty() {
            return BigRational::zero();
        }
        poly::resultant(&Rationals, &self.field.poly_q, &h)
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn with(&self, coords: Vec<BigRational>) -> FieldElement {
        FieldElement { field: self.field.clone(), coords }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            write!(f, "{}", fmt_rational(&self.coords[0]))
        } else {
            write!(f, "{}", fmt_coords(&self.coords))
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Formats a polynomial over K. Coefficients in Q print as plain rationals.
pub fn fmt_kpoly(a: &[FieldElement]) -> String {
    fmt_poly_with(a, |c| c.is_zero(), |c| match c.as_rational() {
        Some(q) => fmt_rational(q),
        None => c.to_string(),
    })
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &'a FieldElement) -> FieldElement {
                debug_assert!(self.field == o.field, "elements of different fields");
                self.with(self.field.$m(&self.coords, &o.coords))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg(&self.coords))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Evaluates a polynomial over K at an element of K.
pub fn eval_kpoly(g: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = x.field.zero_elem();
    for c in g.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Lifts a rational polynomial into K[X].
pub fn kpoly_from_q(k: &NumberField, g: &[BigRational]) -> Vec<FieldElement> {
    g.iter().map(|c| k.from_rational(c.clone())).collect()
}

/// Coordinates of a K-polynomial, for the generic routines in `arith::poly`.
pub fn kpoly_coords(g: &[FieldElement]) -> Vec<Vec<BigRational>> {
    g.iter().map(|c| c.coords.clone()).collect()
}

pub fn kpoly_from_coords(k: &NumberField, g: Vec<Vec<BigRational>>) -> Vec<FieldElement> {
    g.into_iter().map(|c| FieldElement { field: k.clone(), coords: c }).collect()
}
