//! The textual polynomial grammar shared by reports and the CLI.
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := atom ["^" integer]
//! atom   := integer ["/" integer] | ident | "(" expr ")"
//! ```
//!
//! Printing sorts terms by descending total degree, then by descending
//! exponent vector, writes every power with `^` and every product with `*`.
//! Identifiers: `x`, `y` and `w` (= ξ_m) for bivariate polynomials; `s1`,
//! `s2` for polynomials in the invariants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::fmt_rational;
use crate::error::ExactError;

pub(crate) fn render_terms<C>(
    terms: &[(Vec<(&str, u32)>, &C)],
    fmt_coeff: impl Fn(&C) -> String,
    as_rational: impl Fn(&C) -> Option<BigRational>,
) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut sorted: Vec<&(Vec<(&str, u32)>, &C)> = terms.iter().collect();
    sorted.sort_by(|a, b| {
        let da: u32 = a.0.iter().map(|v| v.1).sum();
        let db: u32 = b.0.iter().map(|v| v.1).sum();
        let ea: Vec<u32> = a.0.iter().map(|v| v.1).collect();
        let eb: Vec<u32> = b.0.iter().map(|v| v.1).collect();
        db.cmp(&da).then(eb.cmp(&ea))
    });
    let mut out = String::new();
    for (i, (vars, c)) in sorted.iter().enumerate() {
        let mono: Vec<String> = vars
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(n, e)| if *e == 1 { n.to_string() } else { format!("{}^{}", n, e) })
            .collect();
        let (neg, coeff) = match as_rational(c) {
            Some(r) => {
                let mag = r.abs();
                let s = if mag.is_one() && !mono.is_empty() { String::new() } else { fmt_rational(&mag) };
                (r.is_negative(), s)
            }
            None => (false, fmt_coeff(c)),
        };
        let mut body = coeff;
        for m in mono {
            if !body.is_empty() {
                body.push('*');
            }
            body.push_str(&m);
        }
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// Operations the parser needs from a target ring.
pub trait ParseRing: Sized + Clone {
    fn from_rational(&self, r: BigRational) -> Self;
    fn variable(&self, name: &str) -> Result<Self, ExactError>;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn pow(&self, e: u32) -> Self;
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, ExactError> {
    let mut out = vec![];
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().map_err(|_| ExactError::Parse(t.clone()))?));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(ExactError::Parse(format!("unexpected character '{}'", c)));
        }
    }
    Ok(out)
}

struct Parser<'a, R: ParseRing> {
    toks: Vec<Tok>,
    pos: usize,
    proto: &'a R,
}

impl<'a, R: ParseRing> Parser<'a, R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<R, ExactError> {
        let neg = self.eat('-');
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<R, ExactError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<R, ExactError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| ExactError::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(ExactError::Parse("expected exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<R, ExactError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut r = BigRational::from_integer(n);
                if self.eat('/') {
                    match self.toks.get(self.pos).cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            r /= BigRational::from_integer(d);
                        }
                        _ => return Err(ExactError::Parse("expected nonzero denominator".into())),
                    }
                }
                Ok(self.proto.from_rational(r))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                self.proto.variable(&s)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(ExactError::Parse("expected ')'".into()));
                }
                Ok(e)
            }
            other => Err(ExactError::Parse(format!("unexpected token {:?}", other))),
        }
    }
}

/// Parses `s` into the ring of `proto` (any element, used for context).
pub fn parse<R: ParseRing>(s: &str, proto: &R) -> Result<R, ExactError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, proto };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExactError::Parse(format!("trailing input in '{}'", s)));
    }
    Ok(r)
}
