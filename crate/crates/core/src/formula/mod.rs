//! First-order formulas in the ring language with constants from K and a
//! unary predicate R, written as s-expressions.
//!
//! ```text
//! term    := rational | [c0, c1, ...] | ident | (+ term...) | (* term...)
//!          | (^ term n) | (inv term)
//! formula := (= term term) | (R term) | (not f) | (and f...) | (or f...)
//!          | (implies f f) | (forall ident f) | (exists ident f)
//!          | (opaque ident)
//! ```

mod emit;
mod eval;
mod phi;

pub use emit::{emit_chi, emit_nu, emit_psi_marker, nu_instance};
pub use eval::{eval_bounded, eval_qf, EvalResult, Interpretation, Verdict};
pub use phi::{build_phi_n, MPoly};

use crate::arith::rational::{fmt_rational, parse_rational};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    /// Coordinates in the power basis, trailing zeros trimmed.
    Const(Vec<BigRational>),
    Var(String),
    Add(Vec<Term>),
    Mul(Vec<Term>),
    Pow(Box<Term>, u32),
    Inv(Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Eq(Term, Term),
    R(Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    /// A subformula that is named but not constructed.
    Opaque(String),
}

impl Term {
    pub fn constant(coords: Vec<BigRational>) -> Term {
        let mut c = coords;
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Term::Const(c)
    }

    pub fn rational(q: BigRational) -> Term {
        Term::constant(vec![q])
    }

    pub fn int(n: i64) -> Term {
        Term::rational(BigRational::from_integer(n.into()))
    }

    pub fn elem(x: &FieldElement) -> Term {
        Term::constant(x.coords.clone())
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn pow(self, n: u32) -> Term {
        match n {
            1 => self,
            _ => Term::Pow(Box::new(self), n),
        }
    }

    pub fn inv(self) -> Term {
        Term::Inv(Box::new(self))
    }

    /// Product that drops unit constant factors and flattens.
    pub fn product(factors: Vec<Term>) -> Term {
        let one = Term::int(1);
        let mut fs: Vec<Term> = Vec::new();
        for f in factors {
            match f {
                Term::Mul(inner) => fs.extend(inner),
                f if f == one => {}
                f => fs.push(f),
            }
        }
        match fs.len() {
            0 => one,
            1 => fs.pop().unwrap(),
            _ => Term::Mul(fs),
        }
    }

    pub fn sum(terms: Vec<Term>) -> Term {
        let mut ts = terms;
        match ts.len() {
            0 => Term::int(0),
            1 => ts.pop().unwrap(),
            _ => Term::Add(ts),
        }
    }

    fn free_vars_into(&self, out: &mut Vec<String>) {
        match self {
            Term::Const(_) => {}
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Add(ts) | Term::Mul(ts) => ts.iter().for_each(|t| t.free_vars_into(out)),
            Term::Pow(t, _) | Term::Inv(t) => t.free_vars_into(out),
        }
    }

    fn substitute(&self, var: &str, value: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => value.clone(),
            Term::Const(_) | Term::Var(_) => self.clone(),
            Term::Add(ts) => Term::Add(ts.iter().map(|t| t.substitute(var, value)).collect()),
            Term::Mul(ts) => Term::Mul(ts.iter().map(|t| t.substitute(var, value)).collect()),
            Term::Pow(t, n) => Term::Pow(Box::new(t.substitute(var, value)), *n),
            Term::Inv(t) => Term::Inv(Box::new(t.substitute(var, value))),
        }
    }
}

impl Formula {
    /// R^x(t), short for R(t) and R(t^-1).
    pub fn unit(t: Term) -> Formula {
        Formula::And(vec![Formula::R(t.clone()), Formula::R(t.inv())])
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(f))
    }

    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(f))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::R(_) | Formula::Opaque(_) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(|f| f.is_quantifier_free()),
            Formula::Implies(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.free_vars_into(&mut out, &[]);
        out
    }

    fn free_vars_into(&self, out: &mut Vec<String>, bound: &[String]) {
        let add_term = |t: &Term, out: &mut Vec<String>| {
            let mut vs = Vec::new();
            t.free_vars_into(&mut vs);
            for v in vs {
                if !bound.contains(&v) && !out.contains(&v) {
                    out.push(v);
                }
            }
        };
        match self {
            Formula::Eq(a, b) => {
                add_term(a, out);
                add_term(b, out);
            }
            Formula::R(t) => add_term(t, out),
            Formula::Opaque(_) => {}
            Formula::Not(f) => f.free_vars_into(out, bound),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.free_vars_into(out, bound)),
            Formula::Implies(a, b) => {
                a.free_vars_into(out, bound);
                b.free_vars_into(out, bound);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                let mut inner = bound.to_vec();
                inner.push(v.clone());
                f.free_vars_into(out, &inner);
            }
        }
    }

    /// Replaces free occurrences of `var` by `value`.
    pub fn substitute(&self, var: &str, value: &Term) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.substitute(var, value), b.substitute(var, value)),
            Formula::R(t) => Formula::R(t.substitute(var, value)),
            Formula::Opaque(_) => self.clone(),
            Formula::Not(f) => Formula::not(f.substitute(var, value)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.substitute(var, value)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.substitute(var, value)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.substitute(var, value), b.substitute(var, value)),
            Formula::Forall(v, _) | Formula::Exists(v, _) if v == var => self.clone(),
            Formula::Forall(v, f) => Formula::forall(v, f.substitute(var, value)),
            Formula::Exists(v, f) => Formula::exists(v, f.substitute(var, value)),
        }
    }

    /// Drops the quantifiers binding the given variables and substitutes the
    /// supplied values.
    pub fn instantiate(&self, values: &[(&str, Term)]) -> Formula {
        match self {
            Formula::Forall(v, f) | Formula::Exists(v, f) => match values.iter().find(|(n, _)| n == v) {
                Some((_, t)) => f.substitute(v, t).instantiate(values),
                None => match self {
                    Formula::Forall(..) => Formula::forall(v, f.instantiate(values)),
                    _ => Formula::exists(v, f.instantiate(values)),
                },
            },
            Formula::Not(f) => Formula::not(f.instantiate(values)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.instantiate(values)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.instantiate(values)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.instantiate(values), b.instantiate(values)),
            _ => self.clone(),
        }
    }
}

fn fmt_const(c: &[BigRational]) -> String {
    match c {
        [] => "0".to_string(),
        [q] => fmt_rational(q),
        _ => format!("[{}]", c.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, ts: &[Term]| {
            write!(f, "({head}")?;
            for t in ts {
                write!(f, " {t}")?;
            }
            write!(f, ")")
        };
        match self {
            Term::Const(c) => f.write_str(&fmt_const(c)),
            Term::Var(v) => f.write_str(v),
            Term::Add(ts) => list(f, "+", ts),
            Term::Mul(ts) => list(f, "*", ts),
            Term::Pow(t, n) => write!(f, "(^ {t} {n})"),
            Term::Inv(t) => write!(f, "(inv {t})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, fs: &[Formula]| {
            write!(f, "({head}")?;
            for g in fs {
                write!(f, " {g}")?;
            }
            write!(f, ")")
        };
        match self {
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::R(t) => write!(f, "(R {t})"),
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(fs) => list(f, "and", fs),
            Formula::Or(fs) => list(f, "or", fs),
            Formula::Implies(a, b) => write!(f, "(implies {a} {b})"),
            Formula::Forall(v, g) => write!(f, "(forall {v} {g})"),
            Formula::Exists(v, g) => write!(f, "(exists {v} {g})"),
            Formula::Opaque(name) => write!(f, "(opaque {name})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Sx {
    Atom(usize, String),
    List(usize, Vec<Sx>),
}

impl Sx {
    fn pos(&self) -> usize {
        match self {
            Sx::Atom(p, _) | Sx::List(p, _) => *p,
        }
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::SyntaxError { pos, msg: msg.into() }
}

fn read_sx(s: &str) -> Result<Sx> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    let out = read_one(s, &chars, &mut i)?;
    skip_ws(&chars, &mut i);
    if i < chars.len() {
        return Err(syntax(chars[i].0, "trailing input"));
    }
    Ok(out)
}

fn skip_ws(chars: &[(usize, char)], i: &mut usize) {
    while *i < chars.len() && chars[*i].1.is_whitespace() {
        *i += 1;
    }
}

fn read_one(s: &str, chars: &[(usize, char)], i: &mut usize) -> Result<Sx> {
    skip_ws(chars, i);
    let Some(&(pos, c)) = chars.get(*i) else {
        return Err(syntax(s.len(), "unexpected end of input"));
    };
    match c {
        '(' => {
            *i += 1;
            let mut items = Vec::new();
            loop {
                skip_ws(chars, i);
                match chars.get(*i) {
                    None => return Err(syntax(s.len(), "unexpected end of input, expected ')'")),
                    Some(&(_, ')')) => {
                        *i += 1;
                        return Ok(Sx::List(pos, items));
                    }
                    Some(_) => items.push(read_one(s, chars, i)?),
                }
            }
        }
        ')' => Err(syntax(pos, "unexpected ')'")),
        '[' => {
            let start = *i;
            while *i < chars.len() && chars[*i].1 != ']' {
                *i += 1;
            }
            if *i == chars.len() {
                return Err(syntax(s.len(), "unterminated coordinate vector"));
            }
            *i += 1;
            let end = chars.get(*i).map_or(s.len(), |c| c.0);
            Ok(Sx::Atom(chars[start].0, s[chars[start].0..end].to_string()))
        }
        _ => {
            let start = *i;
            while *i < chars.len() && !chars[*i].1.is_whitespace() && !"()[]".contains(chars[*i].1) {
                *i += 1;
            }
            let end = chars.get(*i).map_or(s.len(), |c| c.0);
            Ok(Sx::Atom(pos, s[chars[start].0..end].to_string()))
        }
    }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

const KEYWORDS: &[&str] = &["R", "not", "and", "or", "implies", "forall", "exists", "inv", "opaque"];

fn term_of(sx: &Sx) -> Result<Term> {
    match sx {
        Sx::Atom(pos, a) => {
            if let Some(inner) = a.strip_prefix('[') {
                let inner = inner.strip_suffix(']').ok_or_else(|| syntax(*pos, "bad coordinate vector"))?;
                let coords = inner
                    .split(',')
                    .filter(|c| !c.trim().is_empty())
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()
                    .map_err(|_| syntax(*pos, format!("bad coordinate vector {a:?}")))?;
                Ok(Term::constant(coords))
            } else if a.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
                parse_rational(a).map(Term::rational).map_err(|_| syntax(*pos, format!("bad number {a:?}")))
            } else if is_ident(a) && !KEYWORDS.contains(&a.as_str()) {
                Ok(Term::Var(a.clone()))
            } else {
                Err(syntax(*pos, format!("unexpected {a:?} in a term")))
            }
        }
        Sx::List(pos, items) => {
            let (head, args) = split_head(*pos, items)?;
            match (head, args.len()) {
                ("+", n) if n >= 1 => Ok(Term::Add(args.iter().map(term_of).collect::<Result<_>>()?)),
                ("*", n) if n >= 1 => Ok(Term::Mul(args.iter().map(term_of).collect::<Result<_>>()?)),
                ("inv", 1) => Ok(Term::Inv(Box::new(term_of(&args[0])?))),
                ("^", 2) => {
                    let n = match &args[1] {
                        Sx::Atom(_, a) => a.parse::<u32>().ok(),
                        _ => None,
                    }
                    .ok_or_else(|| syntax(args[1].pos(), "exponent must be a natural number"))?;
                    Ok(Term::Pow(Box::new(term_of(&args[0])?), n))
                }
                _ => Err(syntax(*pos, format!("bad term form ({head} ...) with {} arguments", args.len()))),
            }
        }
    }
}

fn split_head(pos: usize, items: &[Sx]) -> Result<(&str, &[Sx])> {
    match items.split_first() {
        Some((Sx::Atom(_, h), rest)) => Ok((h.as_str(), rest)),
        _ => Err(syntax(pos, "expected an operator")),
    }
}

fn ident_of(sx: &Sx) -> Result<String> {
    match sx {
        Sx::Atom(_, a) if is_ident(a) && !KEYWORDS.contains(&a.as_str()) => Ok(a.clone()),
        _ => Err(syntax(sx.pos(), "expected a variable name")),
    }
}

fn formula_of(sx: &Sx) -> Result<Formula> {
    let Sx::List(pos, items) = sx else {
        return Err(syntax(sx.pos(), "expected a formula"));
    };
    let (head, args) = split_head(*pos, items)?;
    let bad = || syntax(*pos, format!("bad formula form ({head} ...) with {} arguments", args.len()));
    match (head, args.len()) {
        ("=", 2) => Ok(Formula::Eq(term_of(&args[0])?, term_of(&args[1])?)),
        ("R", 1) => Ok(Formula::R(term_of(&args[0])?)),
        ("not", 1) => Ok(Formula::not(formula_of(&args[0])?)),
        ("and", _) => Ok(Formula::And(args.iter().map(formula_of).collect::<Result<_>>()?)),
        ("or", _) => Ok(Formula::Or(args.iter().map(formula_of).collect::<Result<_>>()?)),
        ("implies", 2) => Ok(Formula::implies(formula_of(&args[0])?, formula_of(&args[1])?)),
        ("forall", 2) => Ok(Formula::forall(&ident_of(&args[0])?, formula_of(&args[1])?)),
        ("exists", 2) => Ok(Formula::exists(&ident_of(&args[0])?, formula_of(&args[1])?)),
        ("opaque", 1) => Ok(Formula::Opaque(ident_of(&args[0])?)),
        _ => Err(bad()),
    }
}

pub fn parse_formula(s: &str) -> Result<Formula> {
    formula_of(&read_sx(s)?)
}

pub fn parse_term(s: &str) -> Result<Term> {
    term_of(&read_sx(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in ["(R (inv 5))", "(forall y (not (= y 0)))", "(and (R [1, 2]) (R (^ (+ s -1) 3)))", "(and)"] {
            let f = parse_formula(s).unwrap();
            assert_eq!(f.to_string(), s);
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        assert!(matches!(parse_formula("(and"), Err(Error::SyntaxError { pos: 4, .. })));
        assert!(matches!(parse_formula("(R 1) x"), Err(Error::SyntaxError { pos: 6, .. })));
        assert!(matches!(parse_formula("(R forall)"), Err(Error::SyntaxError { pos: 3, .. })));
        assert!(matches!(parse_formula(")"), Err(Error::SyntaxError { pos: 0, .. })));
    }

    #[test]
    fn instantiate_strips_bound_quantifiers() {
        let f = parse_formula("(forall y (exists x (R (* y x))))").unwrap();
        let g = f.instantiate(&[("y", Term::int(5)), ("x", Term::int(2))]);
        assert_eq!(g.to_string(), "(R (* 5 2))");
        assert!(g.is_quantifier_free());
    }
}
