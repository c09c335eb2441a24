mod common;

use common::{field, padic_rat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use prime_scope::arith::rational::{primes_up_to, to_f64};
use prime_scope::field::{FieldElement, NumberField};
use prime_scope::primes::primes_above;
use prime_scope::squares::{
    four_squares, kochen, level_finite_field, no_short_representation_check, r_infinity_member, ShortRepOutcome,
};
use prime_scope::Error;
use proptest::prelude::*;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// n as a sum of four integer squares, searching from the largest square down.
fn int_four(n: u64) -> Option<[u64; 4]> {
    let isqrt = |m: u64| {
        let mut r = (m as f64).sqrt() as u64;
        while r * r > m {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= m {
            r += 1;
        }
        r
    };
    for a in (0..=isqrt(n)).rev() {
        let n1 = n - a * a;
        for b in (0..=isqrt(n1).min(a)).rev() {
            let n2 = n1 - b * b;
            for c in (0..=isqrt(n2).min(b)).rev() {
                let d2 = n2 - c * c;
                let d = isqrt(d2);
                if d * d == d2 {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

/// a + b sqrt 2 as (c + d sqrt 2)^2 + (rational sum of four squares) with d
/// of denominator at most 20; returns the squared elements as coordinate pairs.
fn sos_search(a: i64, b: i64) -> Option<Vec<(BigRational, BigRational)>> {
    // the rational coordinate of a sum of squares is a sum of c^2 + 2 d^2
    if a < 0 {
        return None;
    }
    let candidates: Vec<BigRational> = if b == 0 {
        vec![BigRational::zero()]
    } else {
        (1..=20).flat_map(|den| (1..=100).map(move |m| q(m, den))).collect()
    };
    for d in candidates {
        let df = to_f64(&d);
        if b != 0 && (a as f64) - (b as f64 / (2.0 * df)).powi(2) - 2.0 * df * df < -1e-9 {
            continue;
        }
        let c = if b == 0 { BigRational::zero() } else { q(b, 2) / &d };
        let rest = BigRational::from_integer(a.into()) - &c * &c - q(2, 1) * &d * &d;
        if rest.is_negative() {
            continue;
        }
        // rest = n/m = (n m) / m^2
        let (n, m) = (rest.numer().clone(), rest.denom().clone());
        let nm: u64 = (&n * &m).try_into().ok()?;
        let parts = int_four(nm)?;
        let mut out = vec![(c, d)];
        for x in parts {
            out.push((BigRational::new(BigInt::from(x), m.clone()), BigRational::zero()));
        }
        return Some(out);
    }
    None
}

#[test]
fn totally_positive_elements_have_found_representations() {
    let k = field("X^2-2");
    let sqrt2 = 2f64.sqrt();
    let (mut members, mut others) = (0, 0);
    for a in -50i64..=50 {
        for b in -50i64..=50 {
            let x = k.elem(vec![q(a, 1), q(b, 1)]);
            let member = r_infinity_member(&k, &x);
            assert_eq!(member, a as f64 > sqrt2 * b.abs() as f64 || (a == 0 && b == 0), "{a} + {b} sqrt 2");
            match sos_search(a, b) {
                Some(parts) => {
                    let sum = parts.iter().fold(k.zero_elem(), |acc, (c, d)| {
                        let y = k.elem(vec![c.clone(), d.clone()]);
                        &acc + &(&y * &y)
                    });
                    assert_eq!(sum, x);
                    assert!(member, "{a} + {b} sqrt 2 has a representation but is not a member");
                    members += 1;
                }
                None => {
                    assert!(!member, "{a} + {b} sqrt 2 is a member without a found representation");
                    others += 1;
                }
            }
        }
    }
    assert!(members > 1000 && others > 1000);
}

#[test]
fn level_one_exactly_for_one_mod_four() {
    for p in primes_up_to(500).into_iter().filter(|&p| p > 2) {
        let minus_one_square = (1..p).any(|x| (x * x) % p == p - 1);
        assert_eq!(level_finite_field(p, 1) == 1, p % 4 == 1, "p = {p}");
        assert_eq!(level_finite_field(p, 1), if minus_one_square { 1 } else { 2 });
        assert_eq!(level_finite_field(p, 2), 1);
    }
    assert_eq!(level_finite_field(2, 1), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn four_squares_reconstructs_rationals(a in 0i64..1_000_000, b in 1i64..10_000) {
        let x = q(a, b);
        let d = four_squares(&x).unwrap();
        prop_assert!(d.parts.len() <= 4);
        let sum: BigRational = d.parts.iter().map(|r| r * r).sum();
        prop_assert_eq!(sum, x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2500))]

    #[test]
    fn kochen_values_are_integral_over_q(x in padic_rat(), y in -10_000i64..10_000, z in 1i64..10_000) {
        let k = NumberField::rationals();
        for p in [2u64, 3, 5, 7] {
            let v = &primes_above(&k, p).unwrap()[0];
            for x in [k.from_rational(x.clone()), k.from_rational(q(y, z))] {
                if let Some(g) = kochen(p, &x) {
                    prop_assert!(v.in_ring(&g), "gamma_{}({}) = {}", p, x, g);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn kochen_values_are_integral_over_gaussian_rationals(
        a in padic_rat(),
        b in padic_rat(),
        p in prop::sample::select(vec![5u64, 13, 17, 29]),
    ) {
        let k = field("X^2+1");
        let x: FieldElement = k.elem(vec![a, b]);
        if let Some(g) = kochen(p, &x) {
            for v in primes_above(&k, p).unwrap() {
                prop_assert!(v.in_ring(&g), "gamma_{}({}) at {}", p, x, v.index);
            }
        }
    }

    #[test]
    fn no_counterexample_on_valid_inputs(
        p in prop::sample::select(vec![3u64, 7, 11, 19, 23]),
        c in 1i64..30,
        shift in 0i64..5,
        eps_val in 1u32..3,
        eps_unit in 1i64..10,
    ) {
        let k = NumberField::rationals();
        let v = &primes_above(&k, p).unwrap()[0];
        let g = vec![k.from_int(c + shift * shift), k.from_int(2 * shift), k.one_elem()];
        let eps = k.from_int((p as i64).pow(eps_val) * eps_unit);
        match no_short_representation_check(v, &g, &eps, 2, 40) {
            Ok(r) => prop_assert!(matches!(r.outcome, ShortRepOutcome::Certified), "{:?}", r.outcome),
            Err(Error::PreconditionViolated(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}
