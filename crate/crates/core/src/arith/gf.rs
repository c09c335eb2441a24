//! Finite fields F_{p^f} = F_p[Y]/(m) with the canonical modulus `m`, the
//! lexicographically least monic irreducible of degree f.

use super::factor::least_irreducible;
use super::fp::Fp;
use super::poly;
use super::rational::prime_factors_u64;
use super::ring::{FiniteField, Field, Ring};
use crate::error::{Error, Result};
use serde::{Serialize, Serializer};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaloisField {
    pub p: u64,
    pub f: u32,
    /// Monic modulus, lowest degree first, length f + 1.
    pub modulus: Vec<u64>,
}

impl GaloisField {
    pub fn new(p: u64, f: u32) -> Self {
        assert!(f >= 1);
        let modulus = least_irreducible(p, f as usize);
        GaloisField { p, f, modulus }
    }

    pub fn base(&self) -> Fp {
        Fp::new(self.p)
    }

    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.f)
    }

    /// Coordinates from an arbitrary F_p polynomial (reduced mod the modulus).
    pub fn reduce(&self, a: &[u64]) -> Vec<u64> {
        let fp = self.base();
        let r = poly::rem(&fp, &poly::trim(&fp, a.to_vec()), &self.modulus);
        self.pad(r)
    }

    fn pad(&self, mut r: Vec<u64>) -> Vec<u64> {
        r.resize(self.f as usize, 0);
        r
    }

    /// The class of Y, a generator of F_{p^f} over F_p.
    pub fn gen(&self) -> Vec<u64> {
        self.reduce(&[0, 1])
    }
}

impl Ring for GaloisField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.f as usize]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let fp = self.base();
        a.iter().zip(b).map(|(x, y)| fp.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let fp = self.base();
        a.iter().zip(b).map(|(x, y)| fp.sub(x, y)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let fp = self.base();
        let prod = poly::mul(&fp, &poly::trim(&fp, a.clone()), &poly::trim(&fp, b.clone()));
        self.pad(poly::rem(&fp, &prod, &self.modulus))
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        let fp = self.base();
        a.iter().map(|x| fp.neg(x)).collect()
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = self.base().reduce_i64(n);
        v
    }
}

impl Field for GaloisField {
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let fp = self.base();
        let (g, s, _) = poly::xgcd(&fp, &poly::trim(&fp, a.clone()), &self.modulus);
        debug_assert_eq!(g, vec![1]);
        Some(self.pad(s))
    }
}

impl FiniteField for GaloisField {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> u32 {
        self.f
    }
    fn element(&self, mut index: u128) -> Vec<u64> {
        let p = self.p as u128;
        let mut v = Vec::with_capacity(self.f as usize);
        for _ in 0..self.f {
            v.push((index % p) as u64);
            index /= p;
        }
        v
    }
    fn index_of(&self, a: &Vec<u64>) -> u128 {
        a.iter().rev().fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }
}

/// An element of F_{p^f} together with its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FFieldElement {
    pub field: Arc<GaloisField>,
    pub coords: Vec<u64>,
}

impl FFieldElement {
    pub fn new(field: Arc<GaloisField>, coords: &[u64]) -> Self {
        let coords = field.reduce(coords);
        FFieldElement { field, coords }
    }

    pub fn from_int(field: Arc<GaloisField>, n: i64) -> Self {
        let coords = field.from_i64(n);
        FFieldElement { field, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.coords)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.with(self.field.add(&self.coords, &o.coords))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.with(self.field.sub(&self.coords, &o.coords))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.with(self.field.mul(&self.coords, &o.coords))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(&self.coords, e))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field.inv(&self.coords).map(|c| self.with(c)).ok_or(Error::ZeroElement)
    }

    fn with(&self, coords: Vec<u64>) -> Self {
        FFieldElement { field: self.field.clone(), coords }
    }

    /// Multiplicative order.
    pub fn order(&self) -> Result<u64> {
        ffield_order(self)
    }
}

impl fmt::Display for FFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 if c == 1 => "Y".to_string(),
                1 => format!("{c}*Y"),
                _ if c == 1 => format!("Y^{i}"),
                _ => format!("{c}*Y^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Serialize for FFieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

/// Multiplicative order of a nonzero element of F_{p^f}.
pub fn ffield_order(s: &FFieldElement) -> Result<u64> {
    if s.is_zero() {
        return Err(Error::ZeroElement);
    }
    let q = s.field.size();
    let group = u64::try_from(q - 1).map_err(|_| Error::Unsupported("field too large".into()))?;
    let mut n = group;
    for r in prime_factors_u64(group) {
        while n % r == 0 && s.field.is_one(&s.field.pow(&s.coords, n / r)) {
            n /= r;
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Arc<GaloisField> {
        Arc::new(GaloisField::new(5, 1))
    }

    #[test]
    fn orders_in_f5() {
        assert_eq!(FFieldElement::from_int(f5(), 2).order().unwrap(), 4);
        assert_eq!(FFieldElement::from_int(f5(), 4).order().unwrap(), 2);
        assert_eq!(FFieldElement::from_int(f5(), 1).order().unwrap(), 1);
        assert_eq!(FFieldElement::from_int(f5(), 0).order(), Err(Error::ZeroElement));
    }

    #[test]
    fn f9_modulus_and_generator() {
        let f9 = Arc::new(GaloisField::new(3, 2));
        assert_eq!(f9.modulus, vec![1, 0, 1]);
        let y = FFieldElement::new(f9.clone(), &[0, 1]);
        // Y^2 = -1, so Y has order 4 in a group of order 8
        assert_eq!(y.mul(&y), FFieldElement::from_int(f9.clone(), -1));
        assert_eq!(y.order().unwrap(), 4);
        let g = FFieldElement::new(f9, &[1, 1]);
        assert_eq!(g.order().unwrap(), 8);
    }

    #[test]
    fn element_indexing_round_trips() {
        let f = GaloisField::new(3, 3);
        for i in 0..f.size() {
            assert_eq!(f.index_of(&f.element(i)), i);
        }
    }

    #[test]
    fn inverse_times_element_is_one() {
        let f = Arc::new(GaloisField::new(7, 3));
        for i in 1..f.size() {
            let a = FFieldElement::new(f.clone(), &f.element(i));
            assert!(f.is_one(&a.mul(&a.inv().unwrap()).coords));
        }
    }
}
