//! Evaluation with R read as the intersection of the valuation rings (and
//! positive cones) of a finite set of primes.

use super::{Formula, Term};
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::primes::{primes_of_type, Place, Prime, PrimeType};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;
use std::collections::HashMap;

/// Hard cap on the candidates tried per quantifier in bounded search.
const MAX_CANDIDATES: usize = 20_000;

#[derive(Debug, Clone)]
pub struct Interpretation {
    pub field: NumberField,
    pub primes: Vec<Prime>,
}

impl Interpretation {
    /// R as the holomorphy ring R_p^tau(K).
    pub fn holomorphy(k: &NumberField, place: Place, tau: PrimeType) -> Result<Self> {
        Ok(Interpretation { field: k.clone(), primes: primes_of_type(k, place, tau, false)? })
    }

    /// R as the ring of a single prime.
    pub fn at_prime(prime: &Prime) -> Self {
        Interpretation { field: prime.field().clone(), primes: vec![prime.clone()] }
    }

    fn in_r(&self, x: &FieldElement) -> bool {
        self.primes.iter().all(|p| p.in_ring(x))
    }

    fn term(&self, t: &Term, env: &HashMap<String, FieldElement>) -> Result<FieldElement> {
        Ok(match t {
            Term::Const(c) => {
                if c.len() > self.field.degree {
                    return Err(Error::Invalid(format!("constant has {} coordinates, field degree is {}", c.len(), self.field.degree)));
                }
                FieldElement::new(self.field.clone(), c.clone())
            }
            Term::Var(v) => env.get(v).cloned().ok_or_else(|| Error::Invalid(format!("free variable {v}")))?,
            Term::Add(ts) => {
                let mut acc = self.field.zero_elem();
                for t in ts {
                    acc = &acc + &self.term(t, env)?;
                }
                acc
            }
            Term::Mul(ts) => {
                let mut acc = self.field.one_elem();
                for t in ts {
                    acc = &acc * &self.term(t, env)?;
                }
                acc
            }
            Term::Pow(t, n) => self.term(t, env)?.pow(*n as u64),
            Term::Inv(t) => self.term(t, env)?.inv().map_err(|_| Error::InverseOfZero)?,
        })
    }

    fn qf(&self, f: &Formula, env: &HashMap<String, FieldElement>) -> Result<bool> {
        Ok(match f {
            Formula::Eq(a, b) => self.term(a, env)? == self.term(b, env)?,
            Formula::R(t) => self.in_r(&self.term(t, env)?),
            Formula::Not(g) => !self.qf(g, env)?,
            Formula::And(fs) => {
                for g in fs {
                    if !self.qf(g, env)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(fs) => {
                for g in fs {
                    if self.qf(g, env)? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Implies(a, b) => !self.qf(a, env)? || self.qf(b, env)?,
            Formula::Opaque(name) => return Err(Error::Unsupported(format!("opaque subformula {name}"))),
            Formula::Forall(..) | Formula::Exists(..) => {
                return Err(Error::Invalid("formula is not quantifier-free".into()))
            }
        })
    }
}

/// Truth of a closed quantifier-free formula.
pub fn eval_qf(interp: &Interpretation, f: &Formula) -> Result<bool> {
    if let Some(v) = f.free_vars().first() {
        return Err(Error::Invalid(format!("free variable {v}")));
    }
    interp.qf(f, &HashMap::new())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "bound")]
pub enum Verdict {
    Proven,
    Refuted,
    Unknown(u64),
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalResult {
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Witnesses for existentials that proved the formula, or the
    /// counterexample that refuted a universal.
    pub witness: Vec<(String, String)>,
}

#[derive(Clone, Copy, PartialEq)]
enum V3 {
    T,
    F,
    U,
}

/// Rationals of height exactly h, ordered by denominator, then absolute
/// value, positive first.
fn rationals_of_height(h: i64) -> Vec<BigRational> {
    let mut out = Vec::new();
    for b in 1..=h {
        let nums: Vec<i64> = if b == h { (0..=h).collect() } else { vec![h] };
        for a in nums {
            if a.gcd(&b) != 1 {
                continue;
            }
            out.push(BigRational::new(BigInt::from(a), BigInt::from(b)));
            if a != 0 {
                out.push(BigRational::new(BigInt::from(-a), BigInt::from(b)));
            }
        }
    }
    out
}

/// Search candidates in order of coordinate height.
fn candidates(k: &NumberField, bound: u64) -> Vec<FieldElement> {
    let n = k.degree;
    let mut by_height: Vec<Vec<BigRational>> = Vec::new();
    let mut out = Vec::new();
    for h in 1..=bound as i64 {
        by_height.push(rationals_of_height(h));
        let all: Vec<(usize, &BigRational)> =
            by_height.iter().enumerate().flat_map(|(i, v)| v.iter().map(move |q| (i, q))).collect();
        // all vectors over heights <= h with some coordinate of height h
        let mut idx = vec![0usize; n];
        loop {
            if idx.iter().any(|&i| all[i].0 == h as usize - 1) {
                out.push(k.elem(idx.iter().map(|&i| all[i].1.clone()).collect()));
                if out.len() >= MAX_CANDIDATES {
                    return out;
                }
            }
            let mut j = 0;
            while j < n && idx[j] + 1 == all.len() {
                idx[j] = 0;
                j += 1;
            }
            if j == n {
                break;
            }
            idx[j] += 1;
        }
    }
    out
}

struct Search<'a> {
    interp: &'a Interpretation,
    cands: Vec<FieldElement>,
}

impl Search<'_> {
    fn go(&self, f: &Formula, env: &mut HashMap<String, FieldElement>, wit: &mut Vec<(String, String)>) -> V3 {
        match f {
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                let universal = matches!(f, Formula::Forall(..));
                let saved = env.get(v).cloned();
                let mut result = V3::U;
                for c in &self.cands {
                    env.insert(v.clone(), c.clone());
                    let mut inner = Vec::new();
                    let r = self.go(g, env, &mut inner);
                    if (universal && r == V3::F) || (!universal && r == V3::T) {
                        wit.push((v.clone(), c.to_string()));
                        wit.extend(inner);
                        result = if universal { V3::F } else { V3::T };
                        break;
                    }
                }
                match saved {
                    Some(x) => env.insert(v.clone(), x),
                    None => env.remove(v),
                };
                result
            }
            Formula::Not(g) => match self.go(g, env, wit) {
                V3::T => V3::F,
                V3::F => V3::T,
                V3::U => V3::U,
            },
            Formula::And(fs) | Formula::Or(fs) => {
                let is_and = matches!(f, Formula::And(_));
                let (absorbing, neutral) = if is_and { (V3::F, V3::T) } else { (V3::T, V3::F) };
                let mut acc = neutral;
                for g in fs {
                    let mut inner = Vec::new();
                    match self.go(g, env, &mut inner) {
                        r if r == absorbing => {
                            wit.extend(inner);
                            return absorbing;
                        }
                        V3::U => acc = V3::U,
                        _ => wit.extend(inner),
                    }
                }
                acc
            }
            Formula::Implies(a, b) => {
                let mut wa = Vec::new();
                let ra = self.go(a, env, &mut wa);
                if ra == V3::F {
                    return V3::T;
                }
                let rb = self.go(b, env, wit);
                match (ra, rb) {
                    (_, V3::T) => V3::T,
                    (V3::T, V3::F) => V3::F,
                    _ => V3::U,
                }
            }
            atom => match self.interp.qf(atom, env) {
                Ok(true) => V3::T,
                Ok(false) => V3::F,
                Err(_) => V3::U,
            },
        }
    }
}

/// Decides what a finite search can: existentials by a verified witness,
/// universals by a verified counterexample, both among elements of
/// coordinate height at most `height_bound`.
pub fn eval_bounded(interp: &Interpretation, f: &Formula, height_bound: u64) -> EvalResult {
    let search = Search { interp, cands: if f.is_quantifier_free() { Vec::new() } else { candidates(&interp.field, height_bound) } };
    let mut witness = Vec::new();
    let verdict = match search.go(f, &mut HashMap::new(), &mut witness) {
        V3::T => Verdict::Proven,
        V3::F => Verdict::Refuted,
        V3::U => Verdict::Unknown(height_bound),
    };
    if verdict == Verdict::Unknown(height_bound) {
        witness.clear();
    }
    EvalResult { verdict, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::zgroup_witness;
    use crate::formula::{emit_chi, nu_instance, parse_formula};
    use crate::primes::{chi_member, primes_above};

    fn at5() -> Interpretation {
        Interpretation::holomorphy(&NumberField::rationals(), Place::Finite(5), PrimeType::new(1, 1).unwrap()).unwrap()
    }

    #[test]
    fn quantifier_free_examples() {
        let i = at5();
        assert!(eval_qf(&i, &parse_formula("(R 1/2)").unwrap()).unwrap());
        assert!(!eval_qf(&i, &parse_formula("(R 1/5)").unwrap()).unwrap());
        assert!(eval_qf(&i, &parse_formula("(and (R 31) (R (inv 31)))").unwrap()).unwrap());
        assert_eq!(eval_qf(&i, &parse_formula("(R (inv 0))").unwrap()), Err(Error::InverseOfZero));
    }

    #[test]
    fn bounded_examples() {
        let i = at5();
        let r = eval_bounded(&i, &parse_formula("(exists x (= (* x x) 2))").unwrap(), 20);
        assert_eq!(r.verdict, Verdict::Unknown(20));
        let r = eval_bounded(&i, &parse_formula("(forall x (R x))").unwrap(), 20);
        assert_eq!(r.verdict, Verdict::Refuted);
        assert_eq!(r.witness, vec![("x".to_string(), "1/5".to_string())]);
        let r = eval_bounded(&i, &parse_formula("(exists x (and (R x) (not (R (inv x)))))").unwrap(), 20);
        assert_eq!(r.verdict, Verdict::Proven);
        assert_eq!(r.witness, vec![("x".to_string(), "5".to_string())]);
    }

    #[test]
    fn nu_instance_is_proven() {
        let q = NumberField::rationals();
        let tau = PrimeType::new(1, 1).unwrap();
        let y = q.from_int(5);
        let xs = zgroup_witness(&q, 5, tau, 2, &y).unwrap();
        let f = nu_instance(Place::Finite(5), tau, &y, &xs).unwrap();
        assert_eq!(eval_bounded(&at5(), &f, 1).verdict, Verdict::Proven);
    }

    #[test]
    fn chi_formula_agrees_with_membership() {
        let q = NumberField::rationals();
        let tau = PrimeType::new(1, 1).unwrap();
        let p = Prime::PAdic(primes_above(&q, 5).unwrap().remove(0));
        let interp = Interpretation::at_prime(&p);
        let chi = emit_chi(Place::Finite(5), tau);
        for (t, s) in [(5, 2), (5, 4), (25, 2), (10, 3), (15, 3)] {
            let f = chi.substitute("t", &Term::int(t)).substitute("s", &Term::int(s));
            let direct = chi_member(&p, tau, &q.from_int(t), &q.from_int(s));
            assert_eq!(eval_qf(&interp, &f).unwrap(), direct, "t={t} s={s}");
        }
        let degenerate = chi.substitute("t", &Term::int(5)).substitute("s", &Term::int(1));
        assert_eq!(eval_qf(&interp, &degenerate), Err(Error::InverseOfZero));
    }

    #[test]
    fn candidate_order() {
        let q = NumberField::rationals();
        let c: Vec<String> = candidates(&q, 2).iter().map(|x| x.to_string()).collect();
        assert_eq!(c, vec!["0", "1", "-1", "2", "-2", "1/2", "-1/2"]);
    }
}
