//! Real embeddings. An ordering of K is a real root of the defining
//! polynomial, held as an isolating interval (lo, hi] with rational ends.
//! Signs of elements are decided exactly: interval Horner evaluation on a
//! locally refined copy of the interval, which terminates because a nonzero
//! element never vanishes at the root.

use super::{FieldElement, NumberField};
use crate::arith::poly;
use crate::arith::rational::fmt_rational;
use crate::arith::ring::{sign_q, Field, Rationals, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// A real embedding of K, the `index`-th real root in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordering {
    pub field: NumberField,
    pub index: usize,
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Serialize for Ordering {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Ordering", 3)?;
        st.serialize_field("kind", "ordering")?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("interval", &[fmt_rational(&self.lo), fmt_rational(&self.hi)])?;
        st.end()
    }
}

/// Ordered fields whose elements have exactly decidable signs.
pub trait RealField: Field {
    fn sign(&self, a: &Self::Elem) -> i8;
    fn from_q(&self, q: &BigRational) -> Self::Elem;
}

impl RealField for Rationals {
    fn sign(&self, a: &BigRational) -> i8 {
        sign_q(a)
    }
    fn from_q(&self, q: &BigRational) -> BigRational {
        q.clone()
    }
}

/// K viewed through one real embedding.
#[derive(Debug, Clone)]
pub struct Embedded<'a> {
    pub ordering: &'a Ordering,
}

impl Ring for Embedded<'_> {
    type Elem = Vec<BigRational>;
    fn zero(&self) -> Self::Elem {
        self.ordering.field.zero()
    }
    fn one(&self) -> Self::Elem {
        self.ordering.field.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ordering.field.add(a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ordering.field.sub(a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ordering.field.mul(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.ordering.field.neg(a)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.ordering.field.is_zero(a)
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.ordering.field.from_i64(n)
    }
}

impl Field for Embedded<'_> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.ordering.field.inv(a)
    }
}

impl RealField for Embedded<'_> {
    fn sign(&self, a: &Self::Elem) -> i8 {
        sign_coords(self.ordering, a)
    }
    fn from_q(&self, q: &BigRational) -> Self::Elem {
        let mut v = self.zero();
        v[0] = q.clone();
        v
    }
}

/// Sturm sequence of `a`.
pub fn sturm_chain<F: Field>(f: &F, a: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let mut chain = vec![a.to_vec()];
    let d = poly::derivative(f, a);
    if d.is_empty() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let r = poly::rem(f, &chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            return chain;
        }
        chain.push(poly::neg(f, &r));
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

pub fn variations_at<F: RealField>(f: &F, chain: &[Vec<F::Elem>], x: &BigRational) -> usize {
    let x = f.from_q(x);
    count_variations(chain.iter().map(|p| f.sign(&poly::eval(f, p, &x))))
}

/// Sign variations at +infinity (`positive`) or -infinity.
pub fn variations_at_infinity<F: RealField>(f: &F, chain: &[Vec<F::Elem>], positive: bool) -> usize {
    count_variations(chain.iter().map(|p| {
        let s = f.sign(p.last().expect("nonzero"));
        if !positive && (p.len() - 1) % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots in (lo, hi].
pub fn count_in<F: RealField>(f: &F, chain: &[Vec<F::Elem>], lo: &BigRational, hi: &BigRational) -> usize {
    variations_at(f, chain, lo) - variations_at(f, chain, hi)
}

pub fn count_real_roots<F: RealField>(f: &F, a: &[F::Elem]) -> usize {
    let chain = sturm_chain(f, a);
    variations_at_infinity(f, &chain, false) - variations_at_infinity(f, &chain, true)
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// Isolating intervals (lo, hi] for the distinct real roots of `a`,
/// ascending.
pub fn isolate_real_roots<F: RealField>(f: &F, a: &[F::Elem]) -> Vec<(BigRational, BigRational)> {
    if a.len() < 2 {
        return Vec::new();
    }
    let sf = poly::squarefree_part(f, a);
    let chain = sturm_chain(f, &sf);
    let total = variations_at_infinity(f, &chain, false) - variations_at_infinity(f, &chain, true);
    if total == 0 {
        return Vec::new();
    }
    let mut m = BigRational::one();
    while count_in(f, &chain, &-&m, &m) < total {
        m *= two();
    }
    let mut out = Vec::new();
    let mut stack = vec![(-&m, m.clone(), total)];
    while let Some((lo, hi, c)) = stack.pop() {
        if c == 0 {
            continue;
        }
        if c == 1 {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / two();
        let left = count_in(f, &chain, &lo, &mid);
        stack.push((mid.clone(), hi, c - left));
        stack.push((lo, mid, left));
    }
    out.sort();
    out
}

/// Halves an isolating interval (lo, hi] of a root of the squarefree `a`.
pub fn bisect<F: RealField>(
    f: &F,
    chain: &[Vec<F::Elem>],
    lo: &BigRational,
    hi: &BigRational,
) -> (BigRational, BigRational) {
    let mid = (lo + hi) / two();
    if count_in(f, chain, lo, &mid) == 1 {
        (lo.clone(), mid)
    } else {
        (mid, hi.clone())
    }
}

pub(crate) fn isolate_defining_roots(fq: &[BigRational]) -> Vec<(BigRational, BigRational)> {
    let chain = sturm_chain(&Rationals, fq);
    isolate_real_roots(&Rationals, fq)
        .into_iter()
        .map(|(mut lo, mut hi)| {
            // pre-refine so most sign computations need no further work
            let eps = BigRational::new(BigInt::one(), BigInt::one() << 40);
            while &hi - &lo > eps {
                (lo, hi) = bisect(&Rationals, &chain, &lo, &hi);
            }
            (lo, hi)
        })
        .collect()
}

/// The orderings of K, one per real root of the defining polynomial.
pub fn real_embeddings(k: &NumberField) -> Vec<Ordering> {
    k.intervals
        .iter()
        .enumerate()
        .map(|(index, (lo, hi))| Ordering { field: k.clone(), index, lo: lo.clone(), hi: hi.clone() })
        .collect()
}

fn imul(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> (BigRational, BigRational) {
    let c = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = c.iter().min().unwrap().clone();
    let hi = c.iter().max().unwrap().clone();
    (lo, hi)
}

/// Interval enclosing h(x) for x in [lo, hi].
fn horner_interval(h: &[BigRational], lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let x = (lo.clone(), hi.clone());
    let mut acc = (BigRational::zero(), BigRational::zero());
    for c in h.iter().rev() {
        let m = imul(&acc, &x);
        acc = (m.0 + c, m.1 + c);
    }
    acc
}

impl Ordering {
    /// The root itself when the field is Q.
    pub fn exact_root(&self) -> Option<BigRational> {
        (self.field.degree == 1).then(|| -&self.field.poly_q[0])
    }

    /// A refinement of the isolating interval with width at most `eps`.
    pub fn refined(&self, eps: &BigRational) -> (BigRational, BigRational) {
        if let Some(r) = self.exact_root() {
            return (r.clone(), r);
        }
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        let f = &self.field.poly_q;
        let s_lo = sign_q(&poly::eval(&Rationals, f, &lo));
        while &hi - &lo > *eps {
            let mid = (&lo + &hi) / two();
            if sign_q(&poly::eval(&Rationals, f, &mid)) == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }

    /// Rational interval containing the image of `x`, of width at most `eps`.
    pub fn enclose(&self, x: &FieldElement, eps: &BigRational) -> (BigRational, BigRational) {
        let h = x.as_poly();
        if h.len() <= 1 {
            let c = h.first().cloned().unwrap_or_default();
            return (c.clone(), c);
        }
        if let Some(r) = self.exact_root() {
            let v = poly::eval(&Rationals, &h, &r);
            return (v.clone(), v);
        }
        let mut width = BigRational::new(BigInt::one(), BigInt::from(1024));
        loop {
            let (lo, hi) = self.refined(&width);
            let iv = horner_interval(&h, &lo, &hi);
            if &iv.1 - &iv.0 <= *eps {
                return iv;
            }
            width = width / BigRational::from_integer(BigInt::from(1u64 << 16));
        }
    }

    pub fn approx_f64(&self, x: &FieldElement) -> f64 {
        let (lo, hi) = self.enclose(x, &BigRational::new(BigInt::one(), BigInt::one() << 60));
        crate::arith::rational::to_f64(&((lo + hi) / two()))
    }
}

fn sign_coords(p: &Ordering, coords: &[BigRational]) -> i8 {
    let h = poly::trim(&Rationals, coords.to_vec());
    match h.len() {
        0 => return 0,
        1 => return sign_q(&h[0]),
        _ => {}
    }
    if let Some(r) = p.exact_root() {
        return sign_q(&poly::eval(&Rationals, &h, &r));
    }
    let f = &p.field.poly_q;
    let (mut lo, mut hi) = (p.lo.clone(), p.hi.clone());
    let s_lo = sign_q(&poly::eval(&Rationals, f, &lo));
    loop {
        let (a, b) = horner_interval(&h, &lo, &hi);
        if a.is_positive() {
            return 1;
        }
        if b.is_negative() {
            return -1;
        }
        // refine a few steps at a time
        for _ in 0..8 {
            let mid = (&lo + &hi) / two();
            if sign_q(&poly::eval(&Rationals, f, &mid)) == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
}

/// Sign of the image of `x` under the embedding `p`.
pub fn sign_at(p: &Ordering, x: &FieldElement) -> i8 {
    debug_assert!(p.field == x.field);
    sign_coords(p, &x.coords)
}

/// Real roots of `g` in K[X] under the embedding, as isolating intervals.
pub fn real_roots_under(p: &Ordering, g: &[FieldElement]) -> Vec<(BigRational, BigRational)> {
    let e = Embedded { ordering: p };
    let coords: Vec<Vec<BigRational>> = g.iter().map(|c| c.coords.clone()).collect();
    isolate_real_roots(&e, &coords)
}

/// Count of distinct real roots of `g` under the embedding.
pub fn count_real_roots_under(p: &Ordering, g: &[FieldElement]) -> usize {
    let e = Embedded { ordering: p };
    let coords: Vec<Vec<BigRational>> = g.iter().map(|c| c.coords.clone()).collect();
    if coords.len() < 2 {
        return 0;
    }
    count_real_roots(&e, &poly::squarefree_part(&e, &coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    #[test]
    fn orderings_of_small_fields() {
        let k = NumberField::parse("X^2-2").unwrap();
        let ords = real_embeddings(&k);
        assert_eq!(ords.len(), 2);
        let a = k.gen_elem();
        let a1 = &a - &k.one_elem();
        assert_eq!(sign_at(&ords[1], &a1), 1);
        assert_eq!(sign_at(&ords[0], &a), -1);
        assert_eq!(sign_at(&ords[0], &k.zero_elem()), 0);
        assert_eq!(real_embeddings(&NumberField::parse("X^2+1").unwrap()).len(), 0);
        assert_eq!(real_embeddings(&NumberField::rationals()).len(), 1);
    }

    #[test]
    fn sign_of_tiny_element() {
        // 577/408 approximates sqrt 2 from above to about 2e-6
        let k = NumberField::parse("X^2-2").unwrap();
        let ords = real_embeddings(&k);
        let x = k.parse_elem("577/408 - a").unwrap();
        assert_eq!(sign_at(&ords[1], &x), 1);
        assert_eq!(sign_at(&ords[0], &x), 1);
        let y = k.parse_elem("665857/470832 - a").unwrap();
        assert_eq!(sign_at(&ords[1], &y), 1);
        assert_eq!(sign_at(&ords[1], &-&y), -1);
    }

    #[test]
    fn roots_over_k() {
        let k = NumberField::parse("X^2-2").unwrap();
        let ords = real_embeddings(&k);
        // X^2 - a has real roots only where a > 0
        let g = k.parse_poly("X^2 - a").unwrap();
        assert_eq!(count_real_roots_under(&ords[0], &g), 0);
        assert_eq!(count_real_roots_under(&ords[1], &g), 2);
        let g = k.parse_poly("X^3 - a").unwrap();
        assert_eq!(real_roots_under(&ords[0], &g).len(), 1);
    }

    #[test]
    fn isolation_handles_rational_roots() {
        let f = vec![int(0), int(-1), int(0), int(1)];
        let iv = isolate_real_roots(&Rationals, &f);
        assert_eq!(iv.len(), 3);
        assert!(iv.iter().any(|(lo, hi)| lo < &int(0) && &int(0) <= hi));
    }
}
