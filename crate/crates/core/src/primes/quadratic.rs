//! Search for quadratic extensions K(sqrt d)/K with prescribed local
//! behaviour at the primes above an odd p.

use super::{primes_above, PValuation};
use crate::arith::rational::{primes_up_to, to_f64};
use crate::arith::ring::Rationals;
use crate::error::{Error, Result};
use crate::field::{real_embeddings, sign_at, FieldElement, NumberField};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Behavior {
    Split,
    Inert,
    Ramified,
}

impl Behavior {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "split" => Ok(Behavior::Split),
            "inert" => Ok(Behavior::Inert),
            "ramified" => Ok(Behavior::Ramified),
            t => Err(Error::Invalid(format!("unknown behaviour {t:?}"))),
        }
    }
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Behavior::Split => "split",
            Behavior::Inert => "inert",
            Behavior::Ramified => "ramified",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadraticStep {
    pub d: FieldElement,
    /// Behaviour at every prime above p, in canonical order.
    pub behaviors: Vec<Behavior>,
    pub candidates_tried: u64,
}

/// Behaviour of P in K(sqrt d) for odd p and d != 0.
pub fn local_behavior(v: &PValuation, d: &FieldElement) -> Behavior {
    let val = v.valuation(d).expect("nonzero");
    if val.rem_euclid(2) == 1 {
        return Behavior::Ramified;
    }
    let unit = d * &v.uniformizer.powi(-val).expect("uniformizer is nonzero");
    let r = v.residue(&unit).expect("unit");
    // Euler's criterion in the residue field
    let q = v.residue_size();
    let chi = pow_ff(&r, (q - 1) / 2);
    if chi.field.is_one(&chi.coords) {
        Behavior::Split
    } else {
        Behavior::Inert
    }
}

fn pow_ff(x: &crate::arith::gf::FFieldElement, e: u128) -> crate::arith::gf::FFieldElement {
    super::pow_ff(x, e)
}

use crate::arith::ring::Ring;

fn zigzag(c: i64) -> u64 {
    if c > 0 {
        2 * c as u64 - 1
    } else {
        2 * c.unsigned_abs()
    }
}

/// Integer coordinate vectors of sup-norm exactly `h`, in search order.
pub(crate) fn shell(n: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-h; n];
    loop {
        if cur.iter().any(|c| c.abs() == h) {
            out.push(cur.clone());
        }
        let mut i = 0;
        while i < n && cur[i] == h {
            cur[i] = -h;
            i += 1;
        }
        if i == n {
            break;
        }
        cur[i] += 1;
    }
    out.sort_by_key(|v| v.iter().rev().map(|&c| zigzag(c)).collect::<Vec<_>>());
    out
}

/// Some prime shows that d is not a square: a non-split local behaviour or a
/// negative sign at an ordering.
fn provably_nonsquare(k: &NumberField, d: &FieldElement) -> bool {
    if let Some(q) = d.as_rational() {
        return crate::arith::rational::rational_sqrt(q).is_none();
    }
    if real_embeddings(k).iter().any(|o| sign_at(o, d) < 0) {
        return true;
    }
    for q in primes_up_to(200).into_iter().skip(1) {
        let Ok(ps) = primes_above(k, q) else { continue };
        if ps.iter().any(|v| local_behavior(v, d) != Behavior::Split) {
            return true;
        }
    }
    false
}

/// First d (by height, then the order of `shell`) such that K(sqrt d) has
/// the requested behaviour at each constrained prime above p.
pub fn quadratic_step_search(
    k: &NumberField,
    p: u64,
    constraints: &[(usize, Behavior)],
    height_bound: u64,
) -> Result<QuadraticStep> {
    if k.degree > 4 {
        return Err(Error::Unsupported(format!("degree {} exceeds 4", k.degree)));
    }
    if p == 2 {
        return Err(Error::Unsupported("p = 2 is not supported".into()));
    }
    let ps = primes_above(k, p)?;
    for (i, _) in constraints {
        if *i >= ps.len() {
            return Err(Error::Invalid(format!("prime index {i} out of range ({} primes above {p})", ps.len())));
        }
    }
    let mut tried = 0u64;
    for h in 1..=height_bound as i64 {
        for c in shell(k.degree, h) {
            tried += 1;
            let d = k.elem(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect());
            let behaviors: Vec<Behavior> = ps.iter().map(|v| local_behavior(v, &d)).collect();
            if !constraints.iter().all(|(i, b)| behaviors[*i] == *b) {
                continue;
            }
            let forced = constraints.iter().any(|(_, b)| *b != Behavior::Split);
            if !forced && !provably_nonsquare(k, &d) {
                continue;
            }
            if k.is_rationals() {
                verify_over_q(&d, p, &behaviors)?;
            }
            return Ok(QuadraticStep { d, behaviors, candidates_tried: tried });
        }
    }
    Err(Error::NoneWithinBound(format!("no d of height <= {height_bound}")))
}

/// Independent check over Q: split X^2 - d' with d' the squarefree part.
fn verify_over_q(d: &FieldElement, p: u64, expect: &[Behavior]) -> Result<()> {
    let q = d.as_rational().expect("rational");
    let n = q.numer() * q.denom();
    let mut sf = BigInt::from(1);
    let sign = if n < BigInt::from(0) { -1 } else { 1 };
    let mut m = if sign < 0 { -n } else { n };
    let mut f = BigInt::from(2);
    while &f * &f <= m {
        while (&m % (&f * &f)) == BigInt::from(0) {
            m /= &f * &f;
        }
        if (&m % &f) == BigInt::from(0) {
            sf *= &f;
            m /= &f;
        }
        f += 1;
    }
    sf *= m;
    sf *= sign;
    let field = NumberField::new(&[-BigRational::from_integer(sf), Rationals.zero(), Rationals.one()])?;
    let got: Vec<(u32, u32)> = primes_above(&field, p)?.iter().map(|v| (v.e, v.f)).collect();
    let want = match expect[0] {
        Behavior::Split => vec![(1, 1), (1, 1)],
        Behavior::Inert => vec![(1, 2)],
        Behavior::Ramified => vec![(2, 1)],
    };
    if got != want {
        return Err(Error::Invalid(format!("local test disagrees with splitting at {p} (d = {})", to_f64(q))));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_examples_at_five() {
        let q = NumberField::rationals();
        let find = |b| quadratic_step_search(&q, 5, &[(0, b)], 100).unwrap().d.to_string();
        assert_eq!(find(Behavior::Split), "-1");
        assert_eq!(find(Behavior::Inert), "2");
        assert_eq!(find(Behavior::Ramified), "5");
    }

    #[test]
    fn gaussian_mixed_constraint() {
        let k = NumberField::parse("X^2+1").unwrap();
        let st = quadratic_step_search(&k, 5, &[(0, Behavior::Inert), (1, Behavior::Split)], 20).unwrap();
        assert_eq!(st.behaviors, vec![Behavior::Inert, Behavior::Split]);
    }

    #[test]
    fn rejects_unsupported_inputs() {
        let q = NumberField::rationals();
        assert!(matches!(quadratic_step_search(&q, 2, &[], 5), Err(Error::Unsupported(_))));
        let k = NumberField::parse("X^5 - 2").unwrap();
        assert!(matches!(quadratic_step_search(&k, 3, &[], 5), Err(Error::Unsupported(_))));
    }

    #[test]
    fn shell_order() {
        assert_eq!(shell(1, 1), vec![vec![1], vec![-1]]);
        assert_eq!(shell(2, 1)[0], vec![1, 0]);
    }
}
