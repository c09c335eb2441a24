mod common;

use common::{coords, elem_in, field, FIELDS};
use num_rational::BigRational;
use prime_scope::field::{real_embeddings, sign_at};
use proptest::prelude::*;

/// Sign changes of f over the reals counted from a direct evaluation of the
/// defining polynomial on a fine rational grid; only used where the roots are
/// well separated.
fn grid_root_count(poly: &[BigRational]) -> usize {
    let eval = |x: &BigRational| poly.iter().rev().fold(BigRational::from_integer(0.into()), |acc, c| acc * x + c);
    let mut count = 0;
    let mut prev = eval(&BigRational::new((-1000).into(), 1.into()));
    for i in -10_000..=10_000 {
        let x = BigRational::new(i.into(), 100.into());
        let y = eval(&x);
        if y == BigRational::from_integer(0.into()) {
            count += 1;
        } else if (y > BigRational::from_integer(0.into())) != (prev > BigRational::from_integer(0.into()))
            && prev != BigRational::from_integer(0.into())
        {
            count += 1;
        }
        prev = y;
    }
    count
}

#[test]
fn ordering_count_matches_real_roots() {
    let expected = [1, 0, 2, 0, 2, 1, 1, 2, 0];
    for (s, &n) in FIELDS.iter().zip(&expected) {
        let k = field(s);
        assert_eq!(real_embeddings(&k).len(), n, "{s}");
        assert_eq!(grid_root_count(&k.poly_q), n, "{s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn signs_are_multiplicative(i in 0..FIELDS.len(), a in coords(50), b in coords(50)) {
        let k = field(FIELDS[i]);
        let (x, y) = (elem_in(&k, &a), elem_in(&k, &b));
        for o in real_embeddings(&k) {
            prop_assert!(sign_at(&o, &(&x * &x)) >= 0);
            prop_assert_eq!(sign_at(&o, &(&x * &y)), sign_at(&o, &x) * sign_at(&o, &y));
        }
    }

    #[test]
    fn inverse_is_two_sided(i in 0..FIELDS.len(), a in coords(50)) {
        let k = field(FIELDS[i]);
        let x = elem_in(&k, &a);
        prop_assume!(!x.is_zero());
        let y = x.inv().unwrap();
        prop_assert!((&x * &y).is_one());
        prop_assert!((&y * &x).is_one());
    }

    #[test]
    fn signs_agree_with_floating_embedding(a in coords(20)) {
        // Q(cbrt 2): the single embedding sends X to 1.2599...
        let k = field("X^3-2");
        let x = elem_in(&k, &a);
        let r = 2f64.cbrt();
        let approx: f64 = a.iter().take(3).enumerate().map(|(i, c)| prime_scope::arith::rational::to_f64(c) * r.powi(i as i32)).sum();
        prop_assume!(approx.abs() > 1e-6);
        let o = &real_embeddings(&k)[0];
        prop_assert_eq!(sign_at(o, &x), if approx > 0.0 { 1 } else { -1 });
    }
}
