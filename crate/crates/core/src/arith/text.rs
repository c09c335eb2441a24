//! Text syntax for polynomials and field elements.
//!
//! The grammar is a small infix language: `+ - * / ^`, parentheses, rational
//! literals, the indeterminate `X`, the field generator `a` (or `alpha`) and
//! coordinate vectors `[c0, c1, ...]`. Division is only allowed by constants.

use super::poly;
use super::rational::fmt_rational;
use super::ring::{Field, Rationals};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Coefficient domains the parser can build constants in.
pub trait ParseCoeffs: Field {
    fn rational(&self, q: &BigRational) -> Self::Elem;
    /// The field generator, if the domain has one.
    fn generator(&self) -> Option<Self::Elem>;
    fn vector(&self, v: &[BigRational]) -> Result<Self::Elem>;
}

impl ParseCoeffs for Rationals {
    fn rational(&self, q: &BigRational) -> BigRational {
        q.clone()
    }
    fn generator(&self) -> Option<BigRational> {
        None
    }
    fn vector(&self, v: &[BigRational]) -> Result<BigRational> {
        match v {
            [c] => Ok(c.clone()),
            _ => Err(Error::Invalid("coordinate vector has wrong length".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Gen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some((i, c)) = it.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            '0'..='9' => {
                let mut end = i + 1;
                while let Some(&(j, d)) = it.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = j + 1;
                    it.next();
                }
                Tok::Num(s[i..end].parse().unwrap())
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = i + 1;
                while let Some(&(j, d)) = it.peek() {
                    if !d.is_ascii_alphanumeric() {
                        break;
                    }
                    end = j + 1;
                    it.next();
                }
                match &s[i..end] {
                    "X" | "x" => Tok::X,
                    "a" | "alpha" => Tok::Gen,
                    w => return Err(Error::SyntaxError { pos: i, msg: format!("unknown identifier {w:?}") }),
                }
            }
            _ => return Err(Error::SyntaxError { pos: i, msg: format!("unexpected character {c:?}") }),
        };
        out.push((i, tok));
    }
    Ok(out)
}

struct Parser<'a, R: ParseCoeffs> {
    r: &'a R,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a, R: ParseCoeffs> Parser<'a, R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::SyntaxError { pos: self.here(), msg: msg.into() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Vec<R::Elem>> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                let t = self.term()?;
                acc = poly::add(self.r, &acc, &t);
            } else if self.eat(&Tok::Minus) {
                let t = self.term()?;
                acc = poly::sub(self.r, &acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::X | Tok::Gen | Tok::LParen | Tok::LBrack))
    }

    fn term(&mut self) -> Result<Vec<R::Elem>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                let u = self.unary()?;
                acc = poly::mul(self.r, &acc, &u);
            } else if self.eat(&Tok::Slash) {
                let at = self.here();
                let u = self.unary()?;
                if u.len() > 1 {
                    return Err(Error::SyntaxError { pos: at, msg: "division by a non-constant".into() });
                }
                let inv = u
                    .first()
                    .and_then(|c| self.r.inv(c))
                    .ok_or(Error::DivisionByZero)?;
                acc = poly::scale(self.r, &acc, &inv);
            } else if self.starts_factor() {
                // implicit multiplication, as in `2X`
                let u = self.unary()?;
                acc = poly::mul(self.r, &acc, &u);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Vec<R::Elem>> {
        if self.eat(&Tok::Minus) {
            let u = self.unary()?;
            return Ok(poly::neg(self.r, &u));
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Vec<R::Elem>> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    Ok(poly::pow(self.r, &base, e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn rational_lit(&mut self) -> Result<BigRational> {
        let neg = self.eat(&Tok::Minus);
        let n = match self.peek().cloned() {
            Some(Tok::Num(n)) => n,
            _ => return self.err("expected a number"),
        };
        self.pos += 1;
        let mut q = BigRational::from_integer(n);
        if self.eat(&Tok::Slash) {
            match self.peek().cloned() {
                Some(Tok::Num(d)) if !d.is_zero() => {
                    self.pos += 1;
                    q /= BigRational::from_integer(d);
                }
                Some(Tok::Num(_)) => return Err(Error::DivisionByZero),
                _ => return self.err("expected a denominator"),
            }
        }
        Ok(if neg { -q } else { q })
    }

    fn atom(&mut self) -> Result<Vec<R::Elem>> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(poly::constant(self.r, self.r.rational(&BigRational::from_integer(n))))
            }
            Some(Tok::X) => {
                self.pos += 1;
                Ok(poly::monomial(self.r, 1))
            }
            Some(Tok::Gen) => {
                self.pos += 1;
                match self.r.generator() {
                    Some(g) => Ok(poly::constant(self.r, g)),
                    None => Err(Error::SyntaxError { pos: self.toks[self.pos - 1].0, msg: "no field generator here".into() }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::LBrack) => {
                self.pos += 1;
                let mut v = vec![self.rational_lit()?];
                while self.eat(&Tok::Comma) {
                    v.push(self.rational_lit()?);
                }
                if !self.eat(&Tok::RBrack) {
                    return self.err("expected ']'");
                }
                Ok(poly::constant(self.r, self.r.vector(&v)?))
            }
            _ => self.err("expected a term"),
        }
    }
}

/// Parses a polynomial in `X` with coefficients in `r`.
pub fn parse_poly<R: ParseCoeffs>(r: &R, s: &str) -> Result<Vec<R::Elem>> {
    let toks = lex(s)?;
    let mut p = Parser { r, toks, pos: 0, end: s.len() };
    if p.toks.is_empty() {
        return p.err("empty input");
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses a constant (an expression without `X`).
pub fn parse_const<R: ParseCoeffs>(r: &R, s: &str) -> Result<R::Elem> {
    let e = parse_poly(r, s)?;
    match e.len() {
        0 => Ok(r.zero()),
        1 => Ok(e.into_iter().next().unwrap()),
        _ => Err(Error::Invalid(format!("expected a constant, found a polynomial: {s:?}"))),
    }
}

/// Formats `sum c_k X^k` in ascending order. `coeff` renders a coefficient and
/// reports whether it is a plain negative number (so the sign can be folded).
pub fn fmt_poly_with<E>(a: &[E], is_zero: impl Fn(&E) -> bool, coeff: impl Fn(&E) -> String) -> String {
    let mut out = String::new();
    for (k, c) in a.iter().enumerate() {
        if is_zero(c) {
            continue;
        }
        let mut s = coeff(c);
        let neg = s.starts_with('-');
        if neg {
            s.remove(0);
        }
        let body = match (k, s.as_str()) {
            (0, _) => s.clone(),
            (1, "1") => "X".into(),
            (_, "1") => format!("X^{k}"),
            (1, _) => format!("{s}*X"),
            _ => format!("{s}*X^{k}"),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn fmt_qpoly(a: &[BigRational]) -> String {
    fmt_poly_with(a, |c| c.is_zero(), fmt_rational)
}

pub fn fmt_zpoly(a: &[BigInt]) -> String {
    fmt_poly_with(a, |c| c.is_zero(), |c| c.to_string())
}

/// Bracketed coordinate vector `[c0, c1, ...]`.
pub fn fmt_coords(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};

    #[test]
    fn parses_common_forms() {
        let q = Rationals;
        assert_eq!(parse_poly(&q, "X^2+1").unwrap(), vec![int(1), int(0), int(1)]);
        assert_eq!(parse_poly(&q, "1 + X^2").unwrap(), vec![int(1), int(0), int(1)]);
        assert_eq!(parse_poly(&q, "X^2 - 2").unwrap(), vec![int(-2), int(0), int(1)]);
        assert_eq!(parse_poly(&q, "1/2*X - 3/4").unwrap(), vec![frac(-3, 4), frac(1, 2)]);
        assert_eq!(parse_poly(&q, "(X-1)*(X+1)").unwrap(), vec![int(-1), int(0), int(1)]);
        assert_eq!(parse_poly(&q, "2X").unwrap(), vec![int(0), int(2)]);
        assert_eq!(parse_const(&q, "-1/2").unwrap(), frac(-1, 2));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let q = Rationals;
        assert!(matches!(parse_poly(&q, "X^"), Err(Error::SyntaxError { pos: 2, .. })));
        assert!(matches!(parse_poly(&q, "X + "), Err(Error::SyntaxError { .. })));
        assert!(matches!(parse_poly(&q, "X / X"), Err(Error::SyntaxError { pos: 4, .. })));
        assert!(matches!(parse_poly(&q, "a"), Err(Error::SyntaxError { pos: 0, .. })));
    }

    #[test]
    fn printing_round_trips() {
        let q = Rationals;
        for s in ["1 + X^2", "-2 + X^2", "1/2 - X + 3*X^3", "X", "0", "-X^4"] {
            let p = parse_poly(&q, s).unwrap();
            assert_eq!(fmt_qpoly(&p), s);
        }
    }
}
