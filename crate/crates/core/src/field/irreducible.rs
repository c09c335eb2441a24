//! Irreducibility certificates for monic integer polynomials.
//!
//! Order of attempts: squarefreeness, an irreducible reduction mod some
//! p <= 1000, a degree sieve over the factorization patterns of many primes,
//! and finally Zassenhaus recombination of a Hensel-lifted factorization
//! (degree <= 8 only).

use crate::arith::factor::factor;
use crate::arith::fp::Fp;
use crate::arith::poly;
use crate::arith::rational::{pow_u, primes_up_to, symmetric};
use crate::arith::ring::{Integers, Rationals};
use crate::arith::text::fmt_zpoly;
use crate::arith::zpoly::{divrem_monic, from_q, lift_factorization, norm2_ceil, to_fp, to_q, ZPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;

const MAX_ZASSENHAUS_DEGREE: usize = 8;

fn squarefree_mod_p(fp: &Fp, a: &[u64]) -> bool {
    let d = poly::derivative(fp, a);
    !d.is_empty() && poly::gcd(fp, a, &d) == vec![1]
}

fn witness(factors: &[ZPoly]) -> String {
    factors
        .iter()
        .map(|g| format!("({})", fmt_zpoly(g)))
        .collect::<Vec<_>>()
        .join("*")
}

/// Certifies that a monic integer polynomial is irreducible over Q, or
/// returns `Reducible` with a factorization witness.
pub fn certify_irreducible(f: &[BigInt]) -> Result<()> {
    let n = f.len() - 1;
    if n == 1 {
        return Ok(());
    }
    let fq = to_q(f);
    let g = poly::gcd(&Rationals, &fq, &poly::derivative(&Rationals, &fq));
    if g.len() > 1 {
        // g divides f and is monic with integer coefficients (Gauss)
        let g = from_q(&g).expect("monic factor of a monic integer polynomial");
        let h = divrem_monic(&Integers, f, &g).0;
        return Err(Error::Reducible(witness(&[g, h])));
    }
    // degrees d such that some factor of degree d could exist
    let mut possible: Vec<bool> = vec![true; n + 1];
    let mut best: Option<(usize, u64, Vec<Vec<u64>>)> = None;
    for p in primes_up_to(1000) {
        let fp = Fp::new(p);
        let fbar = to_fp(&fp, f);
        if !squarefree_mod_p(&fp, &fbar) {
            continue;
        }
        let facs: Vec<Vec<u64>> = factor(&fp, &fbar).into_iter().map(|(g, _)| g).collect();
        if facs.len() == 1 {
            return Ok(());
        }
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for g in &facs {
            let d = g.len() - 1;
            for s in (d..=n).rev() {
                sums[s] |= sums[s - d];
            }
        }
        for d in 1..n {
            possible[d] &= sums[d];
        }
        if !possible[1..n].iter().any(|&b| b) {
            return Ok(());
        }
        if best.as_ref().is_none_or(|(r, _, _)| facs.len() < *r) {
            best = Some((facs.len(), p, facs));
        }
    }
    if n > MAX_ZASSENHAUS_DEGREE {
        return Err(Error::UncertifiedIrreducibility(format!(
            "degree {n} exceeds the supported degree {MAX_ZASSENHAUS_DEGREE}"
        )));
    }
    let (_, p, facs) = best.expect("a squarefree polynomial is squarefree mod almost every prime");
    let parts = zassenhaus(f, p, &facs);
    if parts.len() == 1 {
        Ok(())
    } else {
        Err(Error::Reducible(witness(&parts)))
    }
}

/// Full factorization over Z of a monic squarefree integer polynomial.
pub fn factor_over_z(f: &[BigInt]) -> Result<Vec<ZPoly>> {
    match certify_irreducible(f) {
        Ok(()) => Ok(vec![f.to_vec()]),
        Err(Error::Reducible(_)) => {
            for p in primes_up_to(1000) {
                let fp = Fp::new(p);
                let fbar = to_fp(&fp, f);
                if squarefree_mod_p(&fp, &fbar) {
                    let facs: Vec<Vec<u64>> = factor(&fp, &fbar).into_iter().map(|(g, _)| g).collect();
                    return Ok(zassenhaus(f, p, &facs));
                }
            }
            Err(Error::Unsupported("no prime keeps the polynomial squarefree".into()))
        }
        Err(e) => Err(e),
    }
}

/// Zassenhaus recombination: lift the factorization mod p until p^N exceeds
/// twice the Mignotte bound, then test subset products as true divisors.
fn zassenhaus(f: &[BigInt], p: u64, facs: &[Vec<u64>]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    let bound = (BigInt::one() << n) * norm2_ceil(f);
    let mut k = 1u32;
    while pow_u(p, k) <= &bound * 2 {
        k += 1;
    }
    let modulus = pow_u(p, k);
    let mut lifted = lift_factorization(f, facs, p, k);
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        for subset in combinations(lifted.len(), size) {
            let prod = subset.iter().fold(vec![BigInt::one()], |acc, &i| poly::mul(&Integers, &acc, &lifted[i]));
            let cand: ZPoly = prod.iter().map(|c| symmetric(c, &modulus)).collect();
            let (q, r) = divrem_monic(&Integers, &rest, &cand);
            if r.is_empty() {
                out.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    out.push(rest);
    out.sort();
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn irreducible_examples() {
        assert!(certify_irreducible(&z(&[1, 0, 1])).is_ok());
        assert!(certify_irreducible(&z(&[-2, 0, 1])).is_ok());
        assert!(certify_irreducible(&z(&[-1, -1, 0, 1])).is_ok());
        // X^4+1 is reducible mod every prime, irreducible over Q
        assert!(certify_irreducible(&z(&[1, 0, 0, 0, 1])).is_ok());
    }

    #[test]
    fn reducible_examples_carry_witness() {
        match certify_irreducible(&z(&[-1, 0, 1])) {
            Err(Error::Reducible(w)) => assert_eq!(w, "(-1 + X)*(1 + X)"),
            other => panic!("{other:?}"),
        }
        // (X^2+1)(X^2-2): reducible without linear factors
        assert!(matches!(certify_irreducible(&z(&[-2, 0, -1, 0, 1])), Err(Error::Reducible(_))));
        // repeated factor
        assert!(matches!(certify_irreducible(&z(&[1, 2, 1])), Err(Error::Reducible(_))));
    }

    #[test]
    fn zassenhaus_splits_products() {
        let f = poly::mul(&Integers, &z(&[1, 1, 0, 1]), &z(&[-3, 0, 1]));
        let parts = factor_over_z(&f).unwrap();
        assert_eq!(parts.len(), 2);
        let prod = parts.iter().fold(z(&[1]), |a, g| poly::mul(&Integers, &a, g));
        assert_eq!(prod, f);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }
}
