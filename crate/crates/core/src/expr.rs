//! A small expression language for named elements.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" ( int | "(" int ")" ))?
//! atom   := int | "eps" | name int | "schur" "[" int ("," int)* "]" | "(" expr ")"
//! ```
//!
//! Names are `theta`, `gamma`, `mu`, `rho`, `phi`, `ptilde` and `eta`; the index
//! may be attached (`mu1`) or separated by spaces (`rho 2`). `theta0^(2)` is a
//! divided power, `x^2` an ordinary power, `eps^-3` a scalar, and `/` divides
//! by an integer.

use std::fmt;

use crate::generators::{Generators, Tag};
use crate::hallcore::{HallElem, HallError, QEps};
use crate::symfun::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Named(Tag),
    Int(i64),
    EpsPow(i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, i64),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| ParseError {
                pos: start,
                msg: format!("integer {text} out of range"),
            })?;
            out.push((start, Tok::Int(n)));
        } else if "+-*/^()[],".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                pos: i,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.i += 1;
                Ok(if neg { -n } else { n })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                let d = self.int()?;
                if d == 0 {
                    return self.err("division by zero");
                }
                e = Expr::Div(Box::new(e), d);
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let atom = self.atom()?;
        if !self.eat('^') {
            return Ok(atom);
        }
        if let Expr::EpsPow(1) = atom {
            return Ok(Expr::EpsPow(self.int()?));
        }
        if self.eat('(') {
            let k = self.int()?;
            self.expect(')')?;
            return match atom {
                Expr::Named(Tag::Theta(i)) if k >= 0 => Ok(Expr::Named(Tag::ThetaDiv(i, k as u32))),
                _ => self.err("divided powers apply to theta0 and theta1"),
            };
        }
        let k = self.int()?;
        if k < 0 {
            return self.err("negative power of an element");
        }
        Ok(Expr::Pow(Box::new(atom), k as u32))
    }

    fn index(&mut self, name: &str) -> Result<u32, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.i += 1;
                u32::try_from(n).or_else(|_| self.err("index out of range"))
            }
            _ => self.err(format!("{name} needs an index")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        self.i += 1;
        match tok {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => self.named(&name),
            Tok::Sym(c) => {
                self.i -= 1;
                self.err(format!("unexpected '{c}'"))
            }
        }
    }

    fn named(&mut self, name: &str) -> Result<Expr, ParseError> {
        let tag = match name {
            "eps" => return Ok(Expr::EpsPow(1)),
            "schur" => {
                self.expect('[')?;
                let mut parts = vec![self.index("schur")?];
                while self.eat(',') {
                    parts.push(self.index("schur")?);
                }
                self.expect(']')?;
                let p = Partition::new(parts).or_else(|e| self.err(e.to_string()))?;
                Tag::Schur(p)
            }
            "theta" => match self.index(name)? {
                i @ (0 | 1) => Tag::Theta(i as u8),
                _ => return self.err("theta is theta0 or theta1"),
            },
            "gamma" => Tag::Gamma(self.index(name)?),
            "mu" => Tag::Mu(self.index(name)?),
            "rho" => Tag::Rho(self.index(name)?),
            "phi" | "ptilde" | "eta" => {
                let k = self.index(name)?;
                match name {
                    "phi" if k >= 1 => Tag::Phi(k),
                    "ptilde" => Tag::Ptilde(k),
                    "eta" if k >= 1 => Tag::Eta(k),
                    _ => return self.err(format!("{name} is indexed from 1")),
                }
            }
            _ => {
                self.i -= 1;
                return self.err(format!("unknown name {name:?}"));
            }
        };
        Ok(Expr::Named(tag))
    }
}

/// Parses a whole expression.
pub fn parse(s: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(s)?,
        i: 0,
        len: s.len(),
    };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Evaluates in the algebra behind `gens`.
    pub fn eval(&self, gens: &Generators) -> Result<HallElem, HallError> {
        let q = gens.q();
        let alg = gens.algebra();
        Ok(match self {
            Expr::Named(tag) => gens.get(tag)?,
            Expr::Int(n) => HallElem::unit(q).scale(&QEps::from_int(q, *n)),
            Expr::EpsPow(k) => HallElem::unit(q).shift(*k),
            Expr::Add(a, b) => a.eval(gens)?.add(&b.eval(gens)?),
            Expr::Sub(a, b) => a.eval(gens)?.sub(&b.eval(gens)?),
            Expr::Mul(a, b) => alg.product(&a.eval(gens)?, &b.eval(gens)?)?,
            Expr::Div(a, d) => a.eval(gens)?.scale(&QEps::from_ratio(q, 1, *d)),
            Expr::Neg(a) => a.eval(gens)?.neg(),
            Expr::Pow(a, k) => {
                let base = a.eval(gens)?;
                let mut acc = HallElem::unit(q);
                for _ in 0..*k {
                    acc = alg.product(&acc, &base)?;
                }
                acc
            }
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Named(t) => write!(f, "{t}"),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::EpsPow(k) => write!(f, "eps^{k}"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, d) => write!(f, "{a}/{d}"),
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::Pow(a, k) => write!(f, "{a}^{k}"),
        }
    }
}
