use clap::{Args, Parser, Subcommand, ValueEnum};
use prime_scope::closure::{has_root_in_closure, padic_root};
use prime_scope::config::{Config, Output};
use prime_scope::dense::{d_witness, ud_witness, weak_approx_valuations, zgroup_check, zgroup_witness, Limits};
use prime_scope::field::{certify_irreducible, fmt_kpoly, real_embeddings, NumberField};
use prime_scope::formula::{
    build_phi_n, emit_chi, emit_nu, eval_bounded, eval_qf, parse_formula, Interpretation,
};
use prime_scope::primes::{
    chi_member, holomorphy_member, primes_above, primes_of_type, quadratic_step_search, select_prime, Behavior, Place,
    Prime, PrimeType,
};
use prime_scope::squares::{four_squares, kochen, level_finite_field, no_short_representation_check, r_infinity_member};
use prime_scope::{suite, Error, Result};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "prime-scope", version, about = "Primes, closures and denseness witnesses of number fields")]
struct Cli {
    /// Height bound for bounded searches.
    #[arg(long, global = true, default_value_t = 1000)]
    height: u64,
    /// Precision cap (powers of the uniformizer, bisection steps).
    #[arg(long, global = true, default_value_t = 1000)]
    precision: u32,
    /// Seed for generated corpora; PRIME_SCOPE_SEED overrides it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Json)]
    output: OutputArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Json,
    Text,
}

#[derive(Args)]
struct FieldArg {
    /// Defining polynomial of K in X, e.g. "X^2+1"; "X" is Q.
    #[arg(long, default_value = "X")]
    field: String,
}

#[derive(Args)]
struct PrimeArg {
    #[command(flatten)]
    field: FieldArg,
    /// Rational prime, or "inf" for the orderings.
    #[arg(long)]
    p: String,
    /// Canonical index among the primes above p.
    #[arg(long, default_value_t = 0)]
    index: usize,
}

#[derive(Args)]
struct TypeArg {
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long, default_value_t = 1)]
    f: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants and real embeddings of K.
    Field(FieldArg),
    /// The primes of K above p.
    Primes {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        p: String,
    },
    /// Valuation, residue and ring membership of x at one prime.
    Valuate {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long)]
        x: String,
    },
    /// Membership of a prime in the set cut out by chi(t, s).
    Chi {
        #[command(flatten)]
        prime: PrimeArg,
        #[command(flatten)]
        tau: TypeArg,
        #[arg(long)]
        t: String,
        #[arg(long)]
        s: String,
    },
    /// Membership of x in the holomorphy ring of the primes of type <= tau.
    Holomorphy {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        p: String,
        #[command(flatten)]
        tau: TypeArg,
        #[arg(long)]
        x: String,
    },
    /// Roots of g in the closure at a prime.
    #[command(subcommand)]
    Closure(ClosureCmd),
    /// Denseness witnesses and approximation.
    #[command(subcommand)]
    Dense(DenseCmd),
    /// Emit, parse and evaluate formulas.
    #[command(subcommand)]
    Formula(FormulaCmd),
    /// Sums of squares, levels and the Kochen operator.
    #[command(subcommand)]
    Squares(SquaresCmd),
    /// One step of the prescribed-splitting tower search.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Run the seeded property suite.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Subcommand)]
enum ClosureCmd {
    /// Whether g has a root in the real or p-adic closure.
    HasRoot {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long)]
        poly: String,
    },
    /// A root of g modulo P^k.
    Root {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Subcommand)]
enum DenseCmd {
    /// x with 1 - g(x)^2/a^2 in the ring of one prime.
    DWitness {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        a: String,
    },
    /// One x for every prime above p (or the listed indices) at once.
    UdWitness {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        p: String,
        /// Comma-separated prime indices; all primes above p by default.
        #[arg(long, value_delimiter = ',')]
        indices: Vec<usize>,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        a: String,
    },
    /// x with prescribed valuations at primes above p.
    WeakApprox {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        p: u64,
        /// index:valuation, repeatable.
        #[arg(long = "target", required = true)]
        targets: Vec<String>,
    },
    /// Witnesses x_0..x_{n-1} for the Z-group sentence at y.
    Zgroup {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        tau: TypeArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        y: String,
    },
}

#[derive(Subcommand)]
enum FormulaCmd {
    /// The polynomial phi_n and the g it is built from.
    EmitPhi {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
        #[arg(long)]
        n: u32,
    },
    /// chi(t, s) for p and tau.
    EmitChi {
        #[arg(long)]
        p: String,
        #[command(flatten)]
        tau: TypeArg,
    },
    /// The Z-group sentence nu for p, tau and n.
    EmitNu {
        #[arg(long)]
        p: String,
        #[command(flatten)]
        tau: TypeArg,
        #[arg(long)]
        n: u32,
    },
    /// Evaluates a sentence with R read as the holomorphy ring.
    Eval {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        p: String,
        #[command(flatten)]
        tau: TypeArg,
        #[arg(long)]
        formula: String,
    },
    /// Parses a formula and prints it in canonical form.
    Parse {
        #[arg(long)]
        formula: String,
    },
}

#[derive(Subcommand)]
enum SquaresCmd {
    /// A rational as a sum of at most four squares.
    Four {
        #[arg(long)]
        q: String,
    },
    /// Whether x is totally nonnegative.
    Member {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        x: String,
    },
    /// Level of F_{p^f}.
    Level {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
    },
    /// The Kochen operator at x.
    Kochen {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        x: String,
    },
    /// Bounded search for eps^2 - g(x)^2 as a sum of s - 1 squares over Q.
    CheckS6 {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 2)]
        s: u32,
    },
}

#[derive(Subcommand)]
enum TowerCmd {
    /// Least-height d with prescribed splitting of X^2 - d at primes above p.
    Step {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        p: u64,
        /// index:split|inert|ramified, repeatable.
        #[arg(long = "constraint", required = true)]
        constraints: Vec<String>,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Runs the acceptance corpus and prints the transcript.
    Run {
        /// Comma-separated criterion ids; all by default.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = Config {
        height_bound: cli.height,
        precision: cli.precision,
        seed: cli.seed,
        output: match cli.output {
            OutputArg::Json => Output::Json,
            OutputArg::Text => Output::Text,
        },
    };
    let outcome = config.validate().and_then(Config::with_env_seed).and_then(|c| run(&c, cli.command).map(|v| (c, v)));
    match outcome {
        Ok((c, v)) => {
            match c.output {
                Output::Json => println!("{}", serde_json::to_string_pretty(&v).expect("serializable")),
                Output::Text => print!("{}", text(&v)),
            }
            if v.get("suite_failed").is_some() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let body = json!({ "error": e.code(), "detail": e.to_string(), "clause": e.clause() });
            println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
            ExitCode::from(1)
        }
    }
}

fn text(v: &Value) -> String {
    let scalar = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match v {
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}: {}\n", scalar(v))).collect(),
        Value::Array(items) => items.iter().map(|v| format!("{}\n", scalar(v))).collect(),
        other => format!("{}\n", scalar(other)),
    }
}

fn nf(f: &FieldArg) -> Result<NumberField> {
    NumberField::parse(&f.field)
}

fn tau(t: &TypeArg) -> Result<PrimeType> {
    PrimeType::new(t.e, t.f)
}

fn prime(a: &PrimeArg) -> Result<(NumberField, Prime)> {
    let k = nf(&a.field)?;
    let pr = select_prime(&k, Place::parse(&a.p)?, a.index)?;
    Ok((k, pr))
}

fn padic(a: &PrimeArg) -> Result<(NumberField, prime_scope::primes::PValuation)> {
    let (k, pr) = prime(a)?;
    match pr {
        Prime::PAdic(v) => Ok((k, v)),
        Prime::Ordering(_) => Err(Error::Invalid("this operation needs a finite prime".into())),
    }
}

fn pair(s: &str) -> Result<(usize, &str)> {
    let (i, rest) = s.split_once(':').ok_or_else(|| Error::Invalid(format!("expected index:value, got {s:?}")))?;
    let i = i.trim().parse().map_err(|_| Error::Invalid(format!("bad index in {s:?}")))?;
    Ok((i, rest.trim()))
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn run(config: &Config, cmd: Command) -> Result<Value> {
    let limits = Limits { precision: config.precision, ..Limits::default() };
    Ok(match cmd {
        Command::Field(f) => {
            let k = nf(&f)?;
            certify_irreducible(&k.poly)?;
            json!({ "field": k, "orderings": real_embeddings(&k) })
        }
        Command::Primes { field, p } => {
            let k = nf(&field)?;
            let all = primes_of_type(&k, Place::parse(&p)?, PrimeType::new(u32::MAX, 1)?, false);
            match Place::parse(&p)? {
                Place::Infinite => to_json(&all?),
                Place::Finite(p) => to_json(&primes_above(&k, p)?),
            }
        }
        Command::Valuate { prime: a, x } => {
            let (k, v) = padic(&a)?;
            let x = k.parse_elem(&x)?;
            let val = v.valuation(&x);
            let residue = if val.is_some_and(|w| w < 0) { Value::Null } else { to_json(&v.residue(&x)?) };
            json!({
                "prime": v,
                "x": x,
                "valuation": val.map_or(Value::String("inf".into()), Value::from),
                "residue": residue,
                "in_ring": v.in_ring(&x),
                "unit": v.is_unit(&x),
            })
        }
        Command::Chi { prime: a, tau: t, t: tt, s } => {
            let (k, pr) = prime(&a)?;
            let (tt, s) = (k.parse_elem(&tt)?, k.parse_elem(&s)?);
            json!({ "prime": pr.label(), "member": chi_member(&pr, tau(&t)?, &tt, &s) })
        }
        Command::Holomorphy { field, p, tau: t, x } => {
            let k = nf(&field)?;
            let x = k.parse_elem(&x)?;
            json!({ "x": x, "member": holomorphy_member(&k, Place::parse(&p)?, tau(&t)?, &x)? })
        }
        Command::Closure(ClosureCmd::HasRoot { prime: a, poly }) => {
            let (k, pr) = prime(&a)?;
            to_json(&has_root_in_closure(&pr, &k.parse_poly(&poly)?)?)
        }
        Command::Closure(ClosureCmd::Root { prime: a, poly, k: level }) => {
            let (k, v) = padic(&a)?;
            let g = k.parse_poly(&poly)?;
            let x = padic_root(&v, &g, level, config.precision)?;
            json!({ "prime": Prime::PAdic(v).label(), "poly": fmt_kpoly(&g), "k": level, "root": x })
        }
        Command::Dense(DenseCmd::DWitness { prime: a, poly, a: av }) => {
            let (k, pr) = prime(&a)?;
            to_json(&d_witness(&pr, &k.parse_poly(&poly)?, &k.parse_elem(&av)?, limits)?)
        }
        Command::Dense(DenseCmd::UdWitness { field, p, indices, poly, a }) => {
            let k = nf(&field)?;
            let place = Place::parse(&p)?;
            let all: Vec<Prime> = match place {
                Place::Infinite => real_embeddings(&k).into_iter().map(Prime::Ordering).collect(),
                Place::Finite(p) => primes_above(&k, p)?.into_iter().map(Prime::PAdic).collect(),
            };
            let s: Vec<Prime> = if indices.is_empty() {
                all
            } else {
                indices
                    .iter()
                    .map(|&i| all.get(i).cloned().ok_or_else(|| Error::Invalid(format!("no prime with index {i}"))))
                    .collect::<Result<_>>()?
            };
            to_json(&ud_witness(&k, &s, &k.parse_poly(&poly)?, &k.parse_elem(&a)?, limits)?)
        }
        Command::Dense(DenseCmd::WeakApprox { field, p, targets }) => {
            let k = nf(&field)?;
            let ps = primes_above(&k, p)?;
            let targets = targets
                .iter()
                .map(|t| {
                    let (i, w) = pair(t)?;
                    let v = ps.get(i).cloned().ok_or_else(|| Error::Invalid(format!("no prime with index {i}")))?;
                    let w: i64 = w.parse().map_err(|_| Error::Invalid(format!("bad valuation in {t:?}")))?;
                    Ok((v, w))
                })
                .collect::<Result<Vec<_>>>()?;
            let x = weak_approx_valuations(&k, &targets)?;
            let achieved: Vec<Value> =
                targets.iter().map(|(v, w)| json!({ "index": v.index, "target": w, "valuation": v.valuation(&x) })).collect();
            json!({ "x": x, "valuations": achieved })
        }
        Command::Dense(DenseCmd::Zgroup { field, p, tau: t, n, y }) => {
            let k = nf(&field)?;
            let (tau, y) = (tau(&t)?, k.parse_elem(&y)?);
            let xs = zgroup_witness(&k, p, tau, n, &y)?;
            json!({ "y": y, "x": xs, "verified": zgroup_check(&k, p, tau, &y, &xs)? })
        }
        Command::Formula(FormulaCmd::EmitPhi { p, f, n }) => {
            let (g, phi) = build_phi_n(p, f, n)?;
            json!({
                "g": prime_scope::arith::text::fmt_zpoly(&g),
                "phi": phi.to_string(),
                "total_degree": phi.total_degree(),
            })
        }
        Command::Formula(FormulaCmd::EmitChi { p, tau: t }) => {
            json!({ "formula": emit_chi(Place::parse(&p)?, tau(&t)?).to_string() })
        }
        Command::Formula(FormulaCmd::EmitNu { p, tau: t, n }) => {
            json!({ "formula": emit_nu(Place::parse(&p)?, tau(&t)?, n)?.to_string() })
        }
        Command::Formula(FormulaCmd::Eval { field, p, tau: t, formula }) => {
            let k = nf(&field)?;
            let interp = Interpretation::holomorphy(&k, Place::parse(&p)?, tau(&t)?)?;
            let f = parse_formula(&formula)?;
            if f.is_quantifier_free() {
                json!({ "formula": f.to_string(), "value": eval_qf(&interp, &f)? })
            } else {
                let r = eval_bounded(&interp, &f, config.height_bound);
                json!({ "formula": f.to_string(), "result": r })
            }
        }
        Command::Formula(FormulaCmd::Parse { formula }) => {
            let f = parse_formula(&formula)?;
            json!({ "formula": f.to_string(), "free_vars": f.free_vars(), "quantifier_free": f.is_quantifier_free() })
        }
        Command::Squares(SquaresCmd::Four { q }) => {
            let q = prime_scope::arith::rational::parse_rational(&q)?;
            to_json(&four_squares(&q)?)
        }
        Command::Squares(SquaresCmd::Member { field, x }) => {
            let k = nf(&field)?;
            let x = k.parse_elem(&x)?;
            json!({ "x": x, "sum_of_squares": r_infinity_member(&k, &x) })
        }
        Command::Squares(SquaresCmd::Level { p, f }) => {
            if !prime_scope::arith::rational::is_prime_u64(p) || f == 0 {
                return Err(Error::Invalid("need a prime p and f >= 1".into()));
            }
            json!({ "p": p, "f": f, "level": level_finite_field(p, f) })
        }
        Command::Squares(SquaresCmd::Kochen { field, p, x }) => {
            let k = nf(&field)?;
            let x = k.parse_elem(&x)?;
            let gamma = kochen(p, &x);
            let vals: Vec<Value> = match &gamma {
                Some(g) => primes_above(&k, p)?
                    .iter()
                    .map(|v| json!({ "index": v.index, "valuation": v.valuation(g).map_or(Value::String("inf".into()), Value::from) }))
                    .collect(),
                None => Vec::new(),
            };
            json!({ "p": p, "x": x, "value": gamma.map_or(Value::String("undefined".into()), |g| to_json(&g)), "valuations": vals })
        }
        Command::Squares(SquaresCmd::CheckS6 { p, index, poly, eps, s }) => {
            let k = NumberField::rationals();
            let v = primes_above(&k, p)?.into_iter().nth(index).ok_or_else(|| Error::Invalid(format!("no prime with index {index}")))?;
            to_json(&no_short_representation_check(&v, &k.parse_poly(&poly)?, &k.parse_elem(&eps)?, s, config.height_bound)?)
        }
        Command::Tower(TowerCmd::Step { field, p, constraints }) => {
            let k = nf(&field)?;
            let cs = constraints
                .iter()
                .map(|c| {
                    let (i, b) = pair(c)?;
                    Ok((i, Behavior::parse(b)?))
                })
                .collect::<Result<Vec<_>>>()?;
            to_json(&quadratic_step_search(&k, p, &cs, config.height_bound)?)
        }
        Command::Suite(SuiteCmd::Run { criteria }) => {
            let t = suite::run(config, &criteria);
            let mut v = to_json(&t);
            if t.failed > 0 {
                v["suite_failed"] = Value::Bool(true);
            }
            v
        }
    })
}
