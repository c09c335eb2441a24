//! The acceptance corpus as a deterministic runner. Every case is generated
//! from the configured seed, every result is re-checked exactly, and the
//! transcript carries no timings so two runs compare byte for byte.

use crate::arith::rational::{frac, int, primes_up_to, vp_rat};
use crate::closure::has_root_in_closure;
use crate::config::Config;
use crate::dense::{d_condition, d_witness, ud_witness, zgroup_witness, Limits};
use crate::error::Error;
use crate::field::{real_embeddings, FieldElement, NumberField};
use crate::formula::{build_phi_n, emit_chi, eval_bounded, eval_qf, nu_instance, Interpretation, Term, Verdict};
use crate::primes::{chi_member, primes_above, PValuation, Place, Prime, PrimeType};
use crate::squares::{four_squares, kochen, level_finite_field, no_short_representation_check, ShortRepOutcome};
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const CRITERIA: [(u32, &str); 10] = [
    (1, "splitting"),
    (2, "denseness witnesses"),
    (3, "phi_n valuation law"),
    (4, "Z-group sentences"),
    (5, "closure root oracle"),
    (6, "uniform denseness merge"),
    (7, "Kochen integrality"),
    (8, "four squares"),
    (9, "short representations and levels"),
    (10, "chi consistency"),
];

/// Fields used for the splitting check, all of degree at most 4.
pub const SPLITTING_FIELDS: [&str; 20] = [
    "X",
    "X^2+1",
    "X^2-2",
    "X^2+2",
    "X^2-3",
    "X^2+3",
    "X^2-5",
    "X^2+5",
    "X^2-6",
    "X^2+7",
    "X^3-2",
    "X^3-3",
    "X^3+X+1",
    "X^3-X-1",
    "X^3-3*X+1",
    "X^4+1",
    "X^4-2",
    "X^4+X+1",
    "X^4-X-1",
    "X^4-10*X^2+1",
];

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: String,
    pub cases: u64,
    pub excluded: u64,
    pub failures: u64,
    pub passed: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Transcript {
    pub seed: u64,
    pub height_bound: u64,
    pub precision: u32,
    pub criteria: Vec<CriterionReport>,
    pub passed: u64,
    pub failed: u64,
}

/// Failure notes kept per criterion.
const MAX_NOTES: usize = 5;

struct Tally {
    cases: u64,
    excluded: u64,
    failures: u64,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, excluded: 0, failures: 0, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.notes.len() < MAX_NOTES {
                self.notes.push(what());
            }
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn report(self, id: u32) -> CriterionReport {
        let name = CRITERIA.iter().find(|c| c.0 == id).map_or("", |c| c.1).to_string();
        CriterionReport {
            id,
            name,
            passed: self.failures == 0 && self.cases > 0,
            cases: self.cases,
            excluded: self.excluded,
            failures: self.failures,
            notes: self.notes,
        }
    }
}

fn rng_for(seed: u64, id: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ id as u64)
}

fn field(s: &str) -> NumberField {
    NumberField::parse(s).expect("corpus field")
}

fn rand_int_poly(rng: &mut ChaCha8Rng, k: &NumberField, deg: usize, c: i64) -> Vec<FieldElement> {
    let mut g: Vec<FieldElement> = (0..deg).map(|_| k.from_int(rng.gen_range(-c..=c))).collect();
    g.push(k.one_elem());
    g
}

fn rand_unit_int(rng: &mut ChaCha8Rng, p: u64, bound: i64) -> i64 {
    loop {
        let u = rng.gen_range(-bound..=bound);
        if u != 0 && u.rem_euclid(p as i64) != 0 {
            return u;
        }
    }
}

/// Runs the criteria with the given ids (all when `only` is empty).
pub fn run(config: &Config, only: &[u32]) -> Transcript {
    let criteria: Vec<CriterionReport> = CRITERIA
        .iter()
        .filter(|(id, _)| only.is_empty() || only.contains(id))
        .map(|&(id, _)| run_criterion(config, id))
        .collect();
    let passed = criteria.iter().filter(|c| c.passed).count() as u64;
    Transcript {
        seed: config.seed,
        height_bound: config.height_bound,
        precision: config.precision,
        failed: criteria.len() as u64 - passed,
        passed,
        criteria,
    }
}

pub fn run_criterion(config: &Config, id: u32) -> CriterionReport {
    let mut rng = rng_for(config.seed, id);
    let limits = Limits { precision: config.precision, ..Limits::default() };
    let t = match id {
        1 => splitting(),
        2 => denseness(&mut rng, limits),
        3 => phi_law(&mut rng),
        4 => zgroup_sentences(),
        5 => closure_oracle(),
        6 => ud_merge(&mut rng, limits),
        7 => kochen_integrality(&mut rng),
        8 => four_square_range(),
        9 => short_representations(config.height_bound),
        10 => chi_consistency(&mut rng),
        _ => {
            let mut t = Tally::new();
            t.note(format!("unknown criterion {id}"));
            t
        }
    };
    t.report(id)
}

fn splitting() -> Tally {
    let mut t = Tally::new();
    for s in SPLITTING_FIELDS {
        let k = field(s);
        for p in primes_up_to(50) {
            match primes_above(&k, p) {
                Ok(ps) => {
                    let total: u32 = ps.iter().map(|v| v.e * v.f).sum();
                    t.check(total as usize == k.degree, || format!("{s} at {p}: sum e f = {total}"));
                }
                Err(Error::IndexDivisible(_)) => t.excluded += 1,
                Err(e) => t.check(false, || format!("{s} at {p}: {e}")),
            }
        }
    }
    let gauss = field("X^2+1");
    for (p, want) in [(2, vec![(2, 1)]), (3, vec![(1, 2)]), (5, vec![(1, 1), (1, 1)]), (13, vec![(1, 1), (1, 1)])] {
        let got: Vec<(u32, u32)> = primes_above(&gauss, p).map(|ps| ps.iter().map(|v| (v.e, v.f)).collect()).unwrap_or_default();
        t.check(got == want, || format!("Q(i) at {p}: {got:?}"));
    }
    t
}

fn denseness(rng: &mut ChaCha8Rng, limits: Limits) -> Tally {
    let mut t = Tally::new();
    let fields = [field("X"), field("X^2+1")];
    let small_primes = primes_up_to(50);
    let mut padic = 0;
    while padic < 100 {
        let k = &fields[if rng.gen_bool(0.7) { 0 } else { 1 }];
        let p = small_primes[rng.gen_range(0..small_primes.len())];
        let Ok(ps) = primes_above(k, p) else { continue };
        let v = ps[rng.gen_range(0..ps.len())].clone();
        let deg = rng.gen_range(1..=4);
        let g = rand_int_poly(rng, k, deg, 9);
        let prime = Prime::PAdic(v.clone());
        if !has_root_in_closure(&prime, &g).is_ok_and(|r| r.has_root) {
            continue;
        }
        let e = rng.gen_range(-3..=12);
        let a = &v.uniformizer.powi(e).expect("nonzero") * &k.from_int(rand_unit_int(rng, p, 20));
        padic += 1;
        record_witness(&mut t, &prime, &g, &a, limits);
    }
    let real_fields = [field("X"), field("X^2-2"), field("X^3-2")];
    let mut ordering = 0;
    while ordering < 50 {
        let k = &real_fields[rng.gen_range(0..real_fields.len())];
        let os = real_embeddings(k);
        let o = os[rng.gen_range(0..os.len())].clone();
        let deg = rng.gen_range(1..=4);
        let g = rand_int_poly(rng, k, deg, 9);
        let prime = Prime::Ordering(o);
        if !has_root_in_closure(&prime, &g).is_ok_and(|r| r.has_root) {
            continue;
        }
        let m = rng.gen_range(1..=1000i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let a = k.from_rational(frac(m, 10i64.pow(rng.gen_range(0..=6))));
        ordering += 1;
        record_witness(&mut t, &prime, &g, &a, limits);
    }
    t
}

fn record_witness(t: &mut Tally, prime: &Prime, g: &[FieldElement], a: &FieldElement, limits: Limits) {
    let label = || format!("{} g={} a={a}", prime.label(), crate::field::fmt_kpoly(g));
    match d_witness(prime, g, a, limits) {
        Ok(r) => {
            let x = r.witness.expect("witness");
            let ok = d_condition(prime, g, &x, a).is_ok_and(|c| c.holds);
            t.check(ok, || format!("{}: x={x} fails", label()));
        }
        Err(e) => t.check(false, || format!("{}: {e}", label())),
    }
}

fn rand_element(rng: &mut ChaCha8Rng, k: &NumberField, p: u64) -> FieldElement {
    if rng.gen_ratio(1, 10) {
        return k.zero_elem();
    }
    let coords: Vec<BigRational> = (0..k.degree).map(|_| int(rng.gen_range(-30..=30))).collect();
    let shift = k.from_int(p as i64).powi(rng.gen_range(-2..=2)).expect("nonzero");
    &k.elem(coords) * &shift
}

fn phi_law(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::new();
    let fields = [field("X"), field("X^2+1")];
    let primes: Vec<Vec<Vec<PValuation>>> =
        fields.iter().map(|k| [2, 3, 5].iter().map(|&p| primes_above(k, p).expect("Dedekind applies")).collect()).collect();
    let mut cache = std::collections::HashMap::new();
    for i in 0..10_000 {
        let fi = i % 2;
        let k = &fields[fi];
        let pi = rng.gen_range(0..3);
        let v = &primes[fi][pi][rng.gen_range(0..primes[fi][pi].len())];
        let n = rng.gen_range(1..=4u32);
        let (g, phi) = cache.entry((v.p, v.f, n)).or_insert_with(|| build_phi_n(v.p, v.f, n).expect("valid")).clone();
        let xs: Vec<FieldElement> = (0..n).map(|_| rand_element(rng, k, v.p)).collect();
        if xs.iter().all(|x| x.is_zero()) {
            t.excluded += 1;
            continue;
        }
        let m = xs.iter().filter_map(|x| v.valuation(x)).min().expect("some nonzero");
        let vphi = v.valuation(&phi.eval(&xs));
        t.check((vphi == Some(0)) == (m == 0), || format!("{} n={n} xs={xs:?}: v(phi)={vphi:?}, min={m}", v.p));
        if n == 2 {
            let d = (g.len() - 1) as i64;
            t.check(vphi == Some(d * m), || format!("{} phi_2 at {xs:?}: v={vphi:?}, want {}", v.p, d * m));
        }
    }
    t
}

fn zgroup_sentences() -> Tally {
    let mut t = Tally::new();
    let q = NumberField::rationals();
    let tau = PrimeType::new(1, 1).expect("valid");
    for p in [2u64, 3, 5] {
        let interp = Interpretation::holomorphy(&q, Place::Finite(p), tau).expect("Q");
        let pq = int(p as i64);
        let ys = [int(1), int(-1), pq.clone(), int(1) / &pq, &pq * &pq * &pq * frac(2, 7), frac(12, 35), -frac(3, 1) / (&pq * &pq), &pq * int(11)];
        for n in 1..=4 {
            for y in &ys {
                let y = q.from_rational(y.clone());
                let ok = zgroup_witness(&q, p, tau, n, &y)
                    .and_then(|xs| nu_instance(Place::Finite(p), tau, &y, &xs))
                    .map(|f| eval_bounded(&interp, &f, 1).verdict == Verdict::Proven);
                t.check(ok.as_ref().is_ok_and(|b| *b), || format!("p={p} n={n} y={y}: {ok:?}"));
            }
        }
    }
    // the worked instance p = 5, n = 2, y = 5
    let y = q.from_int(5);
    let xs = zgroup_witness(&q, 5, tau, 2, &y).expect("witness");
    let (_, phi) = build_phi_n(5, 1, 2).expect("valid");
    let args = [&y * &xs[0].pow(2), &(&y * &q.from_int(5)) * &xs[1].pow(2)];
    let value = phi.eval(&args);
    let v5 = value.as_rational().and_then(|r| vp_rat(r, 5));
    t.check(value == q.from_int(31) && v5 == Some(0), || format!("worked instance gives {value}, v5 = {v5:?}"));
    t
}

/// Whether monic g in Z[X] has a zero mod p^k, by digit-wise lifting of
/// the zeros mod p^j. Plain machine arithmetic, independent of the closure
/// code.
pub fn has_root_mod_pk(g: &[i64], p: u64, k: u32) -> bool {
    let eval_mod = |x: i128, m: i128| g.iter().rev().fold(0i128, |acc, &c| (acc * x + c as i128).rem_euclid(m));
    let mut stack = vec![(0i128, 0u32)];
    while let Some((r, j)) = stack.pop() {
        if j == k {
            return true;
        }
        let pj = (p as i128).pow(j);
        let m = pj * p as i128;
        for d in (0..p as i128).rev() {
            let x = r + d * pj;
            if eval_mod(x, m) == 0 {
                stack.push((x, j + 1));
            }
        }
    }
    false
}

/// Every monic integer polynomial of degree 1..=3 with lower coefficients
/// in [-5, 5], low coefficient first.
pub fn small_monic_corpus() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for deg in 1..=3usize {
        let count = 11usize.pow(deg as u32);
        for code in 0..count {
            let mut c = code;
            let mut g = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                g.push((c % 11) as i64 - 5);
                c /= 11;
            }
            g.push(1);
            out.push(g);
        }
    }
    out
}

fn closure_oracle() -> Tally {
    let mut t = Tally::new();
    let q = NumberField::rationals();
    for p in [2u64, 3, 5, 7] {
        let prime = Prime::PAdic(primes_above(&q, p).expect("Q").remove(0));
        for g in small_monic_corpus() {
            let gk: Vec<FieldElement> = g.iter().map(|&c| q.from_int(c)).collect();
            let oracle = has_root_mod_pk(&g, p, 12);
            match has_root_in_closure(&prime, &gk) {
                Ok(r) => t.check(r.has_root == oracle, || format!("p={p} g={g:?}: closure {} oracle {oracle}", r.has_root)),
                Err(e) => t.check(false, || format!("p={p} g={g:?}: {e}")),
            }
        }
    }
    t
}

fn ud_merge(rng: &mut ChaCha8Rng, limits: Limits) -> Tally {
    let mut t = Tally::new();
    let gauss = field("X^2+1");
    let s: Vec<Prime> = primes_above(&gauss, 13).expect("Q(i)").into_iter().map(Prime::PAdic).collect();
    let g = gauss.parse_poly("X^2-3").expect("poly");
    let a = gauss.from_int(169);
    record_ud(&mut t, &gauss, &s, &g, &a, limits, |x| x.as_rational().is_some_and(|r| r.abs() <= int(108)));
    let choices: [(&str, &[u64]); 3] = [("X^2+1", &[5, 13, 17, 29, 37]), ("X^2-2", &[7, 17, 23, 31]), ("X^2+X+1", &[7, 13, 19, 31])];
    let mut done = 0;
    while done < 20 {
        let (fs, ps) = choices[rng.gen_range(0..choices.len())];
        let k = field(fs);
        let p = ps[rng.gen_range(0..ps.len())];
        let s: Vec<Prime> = primes_above(&k, p).expect("split prime").into_iter().map(Prime::PAdic).collect();
        let deg = rng.gen_range(2..=3);
        let mut g = rand_int_poly(rng, &k, deg, 9);
        if rng.gen_bool(0.3) {
            g[0] = &g[0] + &k.gen_elem();
        }
        let rooted = s.iter().filter(|pr| has_root_in_closure(pr, &g).is_ok_and(|r| r.has_root)).count();
        if rooted == 0 {
            continue;
        }
        let a = k.from_int(p as i64).pow(rng.gen_range(0..=6));
        done += 1;
        record_ud(&mut t, &k, &s, &g, &a, limits, |_| true);
    }
    t
}

fn record_ud(
    t: &mut Tally,
    k: &NumberField,
    s: &[Prime],
    g: &[FieldElement],
    a: &FieldElement,
    limits: Limits,
    extra: impl Fn(&FieldElement) -> bool,
) {
    let label = || format!("{} g={} a={a}", k.fmt_poly(), crate::field::fmt_kpoly(g));
    match ud_witness(k, s, g, a, limits) {
        Ok(r) => {
            let x = r.witness.expect("witness");
            let ok = s
                .iter()
                .filter(|pr| has_root_in_closure(pr, g).is_ok_and(|r| r.has_root))
                .all(|pr| d_condition(pr, g, &x, a).is_ok_and(|c| c.holds));
            t.check(ok && extra(&x), || format!("{}: x={x} fails", label()));
        }
        Err(e) => t.check(false, || format!("{}: {e}", label())),
    }
}

fn kochen_integrality(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::new();
    let q = NumberField::rationals();
    let mut defined = 0;
    while defined < 10_000 {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let base = frac(rng.gen_range(-10_000..=10_000), rng.gen_range(1..=10_000));
        let x = q.from_rational(base * int(p as i64).pow(rng.gen_range(-4..=4)));
        match kochen(p, &x) {
            None => t.excluded += 1,
            Some(gamma) => {
                defined += 1;
                let v = vp_rat(gamma.as_rational().expect("Q"), p);
                t.check(v.is_none_or(|v| v >= 0), || format!("p={p} x={x}: v(gamma)={v:?}"));
            }
        }
    }
    t
}

fn four_square_range() -> Tally {
    let mut t = Tally::new();
    for n in 0..=10_000i64 {
        let q = int(n);
        match four_squares(&q) {
            Ok(d) => {
                let sum: BigRational = d.parts.iter().map(|c| c * c).sum();
                t.check(d.parts.len() <= 4 && sum == q, || format!("{n}: {:?}", d.parts));
            }
            Err(e) => t.check(false, || format!("{n}: {e}")),
        }
    }
    t
}

fn short_representations(height_bound: u64) -> Tally {
    let mut t = Tally::new();
    let q = NumberField::rationals();
    let v3 = primes_above(&q, 3).expect("Q").remove(0);
    let g = q.parse_poly("X^2+1").expect("poly");
    match no_short_representation_check(&v3, &g, &q.from_int(3), 2, height_bound) {
        Ok(r) => t.check(r.outcome == ShortRepOutcome::Certified, || format!("{:?}", r.outcome)),
        Err(e) => t.check(false, || e.to_string()),
    }
    for p in primes_up_to(499).into_iter().filter(|&p| p > 2) {
        let level = level_finite_field(p, 1);
        t.check((level == 1) == (p % 4 == 1), || format!("level of F_{p} is {level}"));
    }
    t
}

fn chi_consistency(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::new();
    let fields = [field("X"), field("X^2+1")];
    let mut cases = 0;
    while cases < 200 {
        let k = &fields[rng.gen_range(0..2)];
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let ps = primes_above(k, p).expect("Dedekind applies");
        let v = ps[rng.gen_range(0..ps.len())].clone();
        let tau = PrimeType::new(v.e * rng.gen_range(1..=2), v.f * rng.gen_range(1..=2)).expect("positive");
        let tt = &v.uniformizer.powi(rng.gen_range(0..=2)).expect("nonzero") * &k.from_int(rand_unit_int(rng, p, 6));
        let s = if rng.gen_bool(0.5) {
            k.from_int(rng.gen_range(-6..=12))
        } else {
            k.elem((0..k.degree).map(|_| int(rng.gen_range(-6..=6))).collect())
        };
        let prime = Prime::PAdic(v);
        let f = emit_chi(Place::Finite(p), tau).substitute("t", &Term::elem(&tt)).substitute("s", &Term::elem(&s));
        match eval_qf(&Interpretation::at_prime(&prime), &f) {
            Err(Error::InverseOfZero) => t.excluded += 1,
            Ok(b) => {
                cases += 1;
                let direct = chi_member(&prime, tau, &tt, &s);
                t.check(b == direct, || format!("{} tau={tau} t={tt} s={s}: formula {b}, direct {direct}", prime.label()));
            }
            Err(e) => {
                cases += 1;
                t.check(false, || format!("{} t={tt} s={s}: {e}", prime.label()));
            }
        }
    }
    if t.excluded > 0 {
        t.note(format!("{} s-degenerate cases excluded: some s^n - 1 vanishes, so the formula inverts zero", t.excluded));
    }
    t
}
