//! The polynomials phi_n: phi_1 = X1, phi_2(X, Y) = Y^d g(X/Y) for a monic g
//! whose reduction has no zero in the residue field, and
//! phi_n = phi_2(X1, phi_{n-1}(X2, ..., Xn)). At a prime whose residue field
//! g has no zero in, v(phi_2(x, y)) = d min(v(x), v(y)), so phi_n(x) is a
//! unit exactly when min v(x_i) = 0.

use super::Term;
use crate::arith::factor::irreducible_poly;
use crate::arith::rational::is_prime_u64;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial with integer coefficients in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly { nvars, terms: BTreeMap::from([(e, BigInt::one())]) }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            let s = out.terms.remove(e).unwrap_or_default() + c;
            if !s.is_zero() {
                out.terms.insert(e.clone(), s);
            }
        }
        out
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let s = out.terms.remove(&e).unwrap_or_default() + c1 * c2;
                if !s.is_zero() {
                    out.terms.insert(e, s);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> MPoly {
        (0..n).fold(MPoly::constant(self.nvars, BigInt::one()), |acc, _| acc.mul(self))
    }

    /// Substitutes polynomials (all in a common ring) for the variables.
    pub fn compose(&self, vals: &[MPoly]) -> MPoly {
        let nv = vals[0].nvars;
        let mut out = MPoly::zero(nv);
        for (e, c) in &self.terms {
            let mut m = MPoly::constant(nv, c.clone());
            for (v, &k) in vals.iter().zip(e) {
                m = m.mul(&v.pow(k));
            }
            out = out.add(&m);
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, xs: &[FieldElement]) -> FieldElement {
        let k = &xs[0].field;
        let top: Vec<u32> = (0..self.nvars).map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0)).collect();
        let powers: Vec<Vec<FieldElement>> = xs
            .iter()
            .zip(&top)
            .map(|(x, &t)| {
                let mut ps = vec![k.one_elem()];
                for _ in 0..t {
                    let next = ps.last().unwrap() * x;
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut acc = k.zero_elem();
        for (e, c) in &self.terms {
            let mut m = k.from_bigint(c.clone());
            for (ps, &n) in powers.iter().zip(e) {
                if n > 0 {
                    m = &m * &ps[n as usize];
                }
            }
            acc = &acc + &m;
        }
        acc
    }

    /// The polynomial as a term, with the given terms for the variables.
    pub fn to_term(&self, vals: &[Term]) -> Term {
        let monomials = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut fs = vec![Term::rational(c.clone().into())];
                for (v, &k) in vals.iter().zip(e) {
                    if k > 0 {
                        fs.push(v.clone().pow(k));
                    }
                }
                Term::product(fs)
            })
            .collect();
        Term::sum(monomials)
    }

    fn var_names(&self) -> Vec<String> {
        if self.nvars == 2 {
            vec!["X".into(), "Y".into()]
        } else {
            (1..=self.nvars).map(|i| format!("X{i}")).collect()
        }
    }
}

impl fmt::Display for MPoly {
    /// Monomials in decreasing lexicographic order of exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.var_names();
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut vars: Vec<String> = Vec::new();
            for (name, &k) in names.iter().zip(e) {
                match k {
                    0 => {}
                    1 => vars.push(name.clone()),
                    _ => vars.push(format!("{name}^{k}")),
                }
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            let body = match (vars.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => vars.join("*"),
                (false, false) => format!("{mag}*{}", vars.join("*")),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// (g, phi_n) for residue fields inside F_{p^f_abs}: g is the least monic
/// irreducible mod p of the least prime degree d > f_abs.
pub fn build_phi_n(p: u64, f_abs: u32, n: u32) -> Result<(Vec<BigInt>, MPoly)> {
    if n == 0 || f_abs == 0 {
        return Err(Error::Invalid("n and f must be positive".into()));
    }
    if !is_prime_u64(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let d = (f_abs as u64 + 1..).find(|&d| is_prime_u64(d)).unwrap() as usize;
    let g = irreducible_poly(p, d);
    let mut phi2 = MPoly::zero(2);
    for (i, c) in g.iter().enumerate() {
        if !c.is_zero() {
            phi2.terms.insert(vec![i as u32, (d - i) as u32], c.clone());
        }
    }
    let n = n as usize;
    // phi_k in the last k of n variables, built from the innermost out
    let mut phi = MPoly::var(n, n - 1);
    for i in (0..n - 1).rev() {
        phi = phi2.compose(&[MPoly::var(n, i), phi]);
    }
    Ok((g, phi))
}
