use num_bigint::BigInt;
use num_rational::BigRational;
use prime_scope::arith::factor::{fmt_fp_poly, poly_factor_mod_p};
use prime_scope::arith::fp::Fp;
use prime_scope::arith::gf::{ffield_order, FFieldElement, GaloisField};
use prime_scope::arith::poly;
use prime_scope::arith::ring::{Integers, Rationals};
use prime_scope::arith::rational::divisors_u128;
use prime_scope::arith::zpoly::cyclotomic;
use proptest::prelude::*;
use std::sync::Arc;

fn rat() -> impl Strategy<Value = BigRational> {
    (-1000i64..1000, 1i64..200).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

fn qpoly() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(rat(), 0..6).prop_map(|v| poly::trim(&Rationals, v))
}

fn gf_case() -> impl Strategy<Value = (u64, u32, Vec<u64>, Vec<u64>, Vec<u64>)> {
    (prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), 1u32..4).prop_flat_map(|(p, f)| {
        let c = prop::collection::vec(0..p, f as usize);
        (Just(p), Just(f), c.clone(), c.clone(), c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_ring_axioms(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert!(*a.denom() >= BigInt::from(1));
        prop_assert_eq!(num_integer::Integer::gcd(a.numer(), a.denom()), BigInt::from(1));
    }

    #[test]
    fn poly_ring_axioms(a in qpoly(), b in qpoly(), c in qpoly()) {
        let r = &Rationals;
        prop_assert_eq!(poly::add(r, &poly::add(r, &a, &b), &c), poly::add(r, &a, &poly::add(r, &b, &c)));
        prop_assert_eq!(
            poly::mul(r, &a, &poly::add(r, &b, &c)),
            poly::add(r, &poly::mul(r, &a, &b), &poly::mul(r, &a, &c))
        );
        let ab = poly::mul(r, &a, &b);
        prop_assert!(ab.last().is_none_or(|x| *x != num_traits::Zero::zero()));
    }

    #[test]
    fn ffield_ring_axioms((p, f, a, b, c) in gf_case()) {
        let gf = Arc::new(GaloisField::new(p, f));
        let (a, b, c) = (FFieldElement::new(gf.clone(), &a), FFieldElement::new(gf.clone(), &b), FFieldElement::new(gf, &c));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn ffield_order_divides_group_order((p, f, a, _b, _c) in gf_case()) {
        let gf = Arc::new(GaloisField::new(p, f));
        let s = FFieldElement::new(gf.clone(), &a);
        prop_assume!(!s.is_zero());
        let q1 = p.pow(f) - 1;
        let ord = ffield_order(&s).unwrap();
        prop_assert_eq!(q1 % ord, 0);
        prop_assert_eq!(s.pow(ord), FFieldElement::from_int(gf.clone(), 1));
        for d in divisors_u128(ord as u128) {
            if (d as u64) < ord {
                prop_assert_ne!(s.pow(d as u64), FFieldElement::from_int(gf.clone(), 1));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn factorization_mod_p_reexpands(
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
        lead in 1i64..13,
        coeffs in prop::collection::vec(-50i64..50, 1..7),
    ) {
        let fp = Fp::new(p);
        prop_assume!(lead % p as i64 != 0);
        let mut g: Vec<BigRational> = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        g.push(BigRational::from_integer(lead.into()));
        let factors = poly_factor_mod_p(&g, p).unwrap();
        let mut prod = vec![fp.reduce_i64(lead)];
        for fac in &factors {
            prop_assert_eq!(*fac.factor.last().unwrap(), 1);
            for _ in 0..fac.multiplicity {
                prod = poly::mul(&fp, &prod, &fac.factor);
            }
        }
        let red: Vec<u64> = poly::trim(&fp, g.iter().map(|c| fp.reduce_i64(c.numer().try_into().unwrap())).collect());
        prop_assert_eq!(&prod, &red, "factors {:?}", factors.iter().map(|f| fmt_fp_poly(&f.factor)).collect::<Vec<_>>());
    }
}

#[test]
fn cyclotomic_products() {
    for n in 1..=30u64 {
        let mut prod = vec![BigInt::from(1)];
        for d in divisors_u128(n as u128) {
            prod = poly::mul(&Integers, &prod, &cyclotomic(d as u64));
        }
        let mut expected = vec![BigInt::from(0); n as usize + 1];
        expected[0] = BigInt::from(-1);
        expected[n as usize] = BigInt::from(1);
        assert_eq!(prod, expected, "n = {n}");
    }
}
