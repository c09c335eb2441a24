//! Emitters for the explicit formula families.

use super::{build_phi_n, Formula, Term};
use crate::arith::rational::{divisors_u128, factorial};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::primes::{Place, PrimeType};
use num_bigint::BigInt;

fn p_pow(p: u64, i: u32) -> Term {
    Term::rational(BigInt::from(p).pow(i).into())
}

/// chi(t, s): t^e p^-1 and s are units and s^n - 1 is a unit for each proper
/// divisor n of p^f - 1. At infinity the trivial formula t = t.
pub fn emit_chi(place: Place, tau: PrimeType) -> Formula {
    let p = match place {
        Place::Infinite => return Formula::Eq(Term::var("t"), Term::var("t")),
        Place::Finite(p) => p,
    };
    let t = Term::var("t");
    let s = Term::var("s");
    let mut parts = vec![
        Formula::unit(Term::product(vec![t.pow(tau.e), p_pow(p, 1).inv()])),
        Formula::unit(s.clone()),
    ];
    let q = (p as u128).pow(tau.f) - 1;
    for n in divisors_u128(q).into_iter().filter(|&n| n != q) {
        parts.push(Formula::unit(Term::sum(vec![s.clone().pow(n as u32), Term::int(-1)])));
    }
    Formula::And(parts)
}

fn xvar(i: u32) -> String {
    format!("x{i}")
}

/// forall y != 0 exists x0..x_{n-1}
/// R^x(phi_n(y^{e!} p^0 x0^n, ..., y^{e!} p^{n-1} x_{n-1}^n)).
pub fn emit_nu(place: Place, tau: PrimeType, n: u32) -> Result<Formula> {
    let Place::Finite(p) = place else {
        return Err(Error::Invalid("nu is defined for finite primes only".into()));
    };
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let (_, phi) = build_phi_n(p, tau.f, n)?;
    let ef = factorial(tau.e as u64) as u32;
    let args: Vec<Term> = (0..n)
        .map(|i| Term::product(vec![Term::var("y").pow(ef), p_pow(p, i), Term::var(&xvar(i)).pow(n)]))
        .collect();
    let mut body = Formula::unit(phi.to_term(&args));
    for i in (0..n).rev() {
        body = Formula::exists(&xvar(i), body);
    }
    Ok(Formula::forall(
        "y",
        Formula::implies(Formula::not(Formula::Eq(Term::var("y"), Term::int(0))), body),
    ))
}

/// The nu sentence with y and the witnesses x_i substituted.
pub fn nu_instance(place: Place, tau: PrimeType, y: &FieldElement, xs: &[FieldElement]) -> Result<Formula> {
    let f = emit_nu(place, tau, xs.len() as u32)?;
    let names: Vec<String> = (0..xs.len() as u32).map(xvar).collect();
    let mut values: Vec<(&str, Term)> = vec![("y", Term::elem(y))];
    values.extend(names.iter().map(String::as_str).zip(xs.iter().map(Term::elem)));
    Ok(f.instantiate(&values))
}

/// Placeholder for the sentence psi_n of the uniform axioms, whose inner
/// translation is not constructed here.
pub fn emit_psi_marker(p: u64, tau: PrimeType, n: u32) -> Formula {
    Formula::Opaque(format!("phi-hat-p{p}-e{}-f{}-n{n}", tau.e, tau.f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(e: u32, f: u32) -> PrimeType {
        PrimeType::new(e, f).unwrap()
    }

    #[test]
    fn chi_shapes() {
        assert_eq!(
            emit_chi(Place::Finite(5), tau(1, 1)).to_string(),
            "(and (and (R (* t (inv 5))) (R (inv (* t (inv 5))))) (and (R s) (R (inv s))) \
             (and (R (+ s -1)) (R (inv (+ s -1)))) (and (R (+ (^ s 2) -1)) (R (inv (+ (^ s 2) -1)))))"
        );
        assert_eq!(emit_chi(Place::Infinite, tau(1, 1)).to_string(), "(= t t)");
        match emit_chi(Place::Finite(2), tau(1, 1)) {
            Formula::And(parts) => assert_eq!(parts.len(), 2),
            f => panic!("{f}"),
        }
    }

    #[test]
    fn nu_shapes() {
        let f = emit_nu(Place::Finite(5), tau(1, 1), 1).unwrap();
        assert_eq!(f.to_string(), "(forall y (implies (not (= y 0)) (exists x0 (and (R (* y x0)) (R (inv (* y x0)))))))");
        let f = emit_nu(Place::Finite(2), tau(2, 1), 2).unwrap();
        assert!(f.to_string().contains("(^ y 2)"));
        assert!(f.free_vars().is_empty());
    }
}
