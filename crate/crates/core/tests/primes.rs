mod common;

use common::{elem_in, field, padic_coords, FIELDS};
use prime_scope::arith::gf::ffield_order;
use prime_scope::arith::rational::primes_up_to;
use prime_scope::field::NumberField;
use prime_scope::primes::{chi_member, holomorphy_member, primes_above, primes_of_type, PValuation, Place, Prime, PrimeType};
use prime_scope::Error;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn accepted(k: &NumberField, p: u64) -> Option<Vec<PValuation>> {
    match primes_above(k, p) {
        Ok(ps) => Some(ps),
        Err(Error::IndexDivisible(_)) => None,
        Err(e) => panic!("primes_above({p}) failed: {e}"),
    }
}

#[test]
fn ramification_and_residue_degrees_sum_to_degree() {
    for s in FIELDS {
        let k = field(s);
        for p in primes_up_to(50) {
            let Some(ps) = accepted(&k, p) else { continue };
            let total: u32 = ps.iter().map(|v| v.e * v.f).sum();
            assert_eq!(total as usize, k.degree, "{s} at {p}");
            for v in &ps {
                assert_eq!(v.valuation(&v.uniformizer), Some(1));
                assert_eq!(v.valuation(&k.from_int(p as i64)), Some(v.e as i64));
                assert_eq!(v.residue_size(), (p as u128).pow(v.f));
            }
        }
    }
}

#[test]
fn types_partition_primes() {
    for s in FIELDS {
        let k = field(s);
        for p in [2u64, 3, 5, 7, 13, 17] {
            if accepted(&k, p).is_none() {
                continue;
            }
            for e in 1..=4 {
                for f in 1..=4 {
                    let tau = PrimeType::new(e, f).unwrap();
                    let all: Vec<String> =
                        primes_of_type(&k, Place::Finite(p), tau, false).unwrap().iter().map(Prime::label).collect();
                    let mut union = Vec::new();
                    for e2 in 1..=e {
                        for f2 in (1..=f).filter(|d| f % d == 0) {
                            let t2 = PrimeType::new(e2, f2).unwrap();
                            union.extend(primes_of_type(&k, Place::Finite(p), t2, true).unwrap().iter().map(Prime::label));
                        }
                    }
                    let distinct: BTreeSet<&String> = union.iter().collect();
                    assert_eq!(distinct.len(), union.len(), "{s} at {p}: exact sets overlap");
                    assert_eq!(distinct, all.iter().collect(), "{s} at {p}, tau ({e},{f})");
                }
            }
        }
    }
}

fn case() -> impl Strategy<Value = (usize, u64, Vec<num_rational::BigRational>, Vec<num_rational::BigRational>)> {
    (0..FIELDS.len(), prop::sample::select(vec![2u64, 3, 5, 7]), padic_coords(), padic_coords())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2500))]

    #[test]
    fn ultrametric((i, p, a, b) in case()) {
        let k = field(FIELDS[i]);
        let Some(ps) = accepted(&k, p) else { return Ok(()) };
        let (x, y) = (elem_in(&k, &a), elem_in(&k, &b));
        for v in &ps {
            let (vx, vy, vs) = (v.valuation(&x), v.valuation(&y), v.valuation(&(&x + &y)));
            if let (Some(vx), Some(vy)) = (vx, vy) {
                match vs {
                    None => prop_assert_eq!(vx, vy),
                    Some(w) => {
                        prop_assert!(w >= vx.min(vy));
                        if vx != vy {
                            prop_assert_eq!(w, vx.min(vy));
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn residue_is_multiplicative((i, p, a, b) in case()) {
        let k = field(FIELDS[i]);
        let Some(ps) = accepted(&k, p) else { return Ok(()) };
        let (x, y) = (elem_in(&k, &a), elem_in(&k, &b));
        for v in &ps {
            if v.in_ring(&x) && v.in_ring(&y) {
                let lhs = v.residue(&(&x * &y)).unwrap();
                let rhs = v.residue(&x).unwrap().mul(&v.residue(&y).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn chi_membership_implies_type_and_generator((i, p, a, b) in case()) {
        let k = field(FIELDS[i]);
        let Some(ps) = accepted(&k, p) else { return Ok(()) };
        let x = elem_in(&k, &a);
        let s = elem_in(&k, &b);
        for v in &ps {
            let tau = v.prime_type();
            // t^e / p must be a unit, so v(t) = 1 when tau is the type of P
            let t = &v.uniformizer * &x;
            if chi_member(&Prime::PAdic(v.clone()), tau, &t, &s) {
                prop_assert_eq!(v.valuation(&t).map(|w| w * tau.e as i64), Some(v.e as i64));
                prop_assert_eq!(v.valuation(&t), Some(1));
                let r = v.residue(&s).unwrap();
                prop_assert_eq!(ffield_order(&r).unwrap(), p.pow(v.f) - 1);
            }
        }
    }

    #[test]
    fn holomorphy_units_have_valuation_zero((i, p, a, _b) in case(), e in 1u32..3, f in 1u32..3) {
        let k = field(FIELDS[i]);
        let Some(_) = accepted(&k, p) else { return Ok(()) };
        let x = elem_in(&k, &a);
        prop_assume!(!x.is_zero());
        let tau = PrimeType::new(e, f).unwrap();
        let place = Place::Finite(p);
        let both = holomorphy_member(&k, place, tau, &x).unwrap() && holomorphy_member(&k, place, tau, &x.inv().unwrap()).unwrap();
        let units = primes_of_type(&k, place, tau, false).unwrap().iter().all(|pr| pr.as_padic().unwrap().valuation(&x) == Some(0));
        prop_assert_eq!(both, units);
    }
}
