mod common;

use common::{field, zp_root_oracle};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use prime_scope::arith::poly;
use prime_scope::arith::ring::Rationals;
use prime_scope::closure::{has_root_in_closure, padic_root};
use prime_scope::field::{eval_kpoly, real_embeddings, FieldElement, NumberField};
use prime_scope::primes::{primes_above, Prime};
use proptest::prelude::*;

fn monic(coeffs: &[i64]) -> Vec<i64> {
    let mut g = coeffs.to_vec();
    g.push(1);
    g
}

fn kpoly(k: &NumberField, g: &[i64]) -> Vec<FieldElement> {
    g.iter().map(|&c| k.from_int(c)).collect()
}

/// Whether g has a real root, by sign changes of its squarefree part on a
/// grid of step 1/256 over [-8, 8].
fn has_real_root_grid(g: &[i64]) -> bool {
    let q: Vec<BigRational> = g.iter().map(|&c| BigRational::from_integer(c.into())).collect();
    let sf = poly::squarefree_part(&Rationals, &q);
    let mut prev: Option<BigRational> = None;
    for i in -2048..=2048 {
        let x = BigRational::new(i.into(), 256.into());
        let y = poly::eval(&Rationals, &sf, &x);
        if y.is_zero() {
            return true;
        }
        if prev.as_ref().is_some_and(|p| p.is_positive() != y.is_positive()) {
            return true;
        }
        prev = Some(y);
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn padic_closure_matches_digit_search(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        coeffs in prop::collection::vec(-5i64..=5, 1..=3),
    ) {
        let g = monic(&coeffs);
        let k = NumberField::rationals();
        let v = primes_above(&k, p).unwrap().remove(0);
        let got = has_root_in_closure(&Prime::PAdic(v), &kpoly(&k, &g)).unwrap().has_root;
        let want = zp_root_oracle(&g, p, 12);
        prop_assert!(want.is_some(), "oracle undecided for {:?} at {}", g, p);
        prop_assert_eq!(got, want.unwrap(), "g = {:?}, p = {}", g, p);
    }

    #[test]
    fn padic_root_postcondition_and_prefixes(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        coeffs in prop::collection::vec(-5i64..=5, 1..=3),
        k_top in 1u32..10,
    ) {
        let g = monic(&coeffs);
        let k = NumberField::rationals();
        let v = primes_above(&k, p).unwrap().remove(0);
        let gk = kpoly(&k, &g);
        prop_assume!(has_root_in_closure(&Prime::PAdic(v.clone()), &gk).unwrap().has_root);
        let top = padic_root(&v, &gk, k_top, 1000).unwrap();
        let gx = eval_kpoly(&gk, &top);
        prop_assert!(v.valuation(&gx).is_none_or(|w| w >= k_top as i64));
        for j in 1..k_top {
            let x = padic_root(&v, &gk, j, 1000).unwrap();
            prop_assert!(v.valuation(&eval_kpoly(&gk, &x)).is_none_or(|w| w >= j as i64));
            prop_assert!(v.valuation(&(&x - &top)).is_none_or(|w| w >= j as i64), "g = {:?}, p = {}, k = {}, {}: {}", g, p, j, top, x);
        }
    }

    #[test]
    fn real_closure_matches_grid(coeffs in prop::collection::vec(-5i64..=5, 1..=4)) {
        let g = monic(&coeffs);
        let k = NumberField::rationals();
        let o = real_embeddings(&k).remove(0);
        let got = has_root_in_closure(&Prime::Ordering(o), &kpoly(&k, &g)).unwrap().has_root;
        prop_assert_eq!(got, has_real_root_grid(&g), "g = {:?}", g);
        if (g.len() - 1) % 2 == 1 {
            prop_assert!(got);
        }
    }

    #[test]
    fn odd_degree_has_root_at_every_ordering(
        coeffs in prop::collection::vec((-5i64..=5, -5i64..=5), 1..=5),
    ) {
        prop_assume!(coeffs.len() % 2 == 1);
        let k = field("X^2-2");
        let mut g: Vec<FieldElement> = coeffs.iter().map(|&(a, b)| k.elem(vec![a.into(), b.into()].into_iter().map(BigRational::from_integer).collect())).collect();
        g.push(k.one_elem());
        for o in real_embeddings(&k) {
            prop_assert!(has_root_in_closure(&Prime::Ordering(o), &g).unwrap().has_root);
        }
    }
}
