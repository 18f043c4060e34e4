//! Parser for coefficient literals.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/')? factor)*
//! factor := atom ('^' uint)?
//! atom   := int | int '/' int | ident | 's' | '(' expr ')'
//! ```
//!
//! Values are computed while parsing, so the result is already canonical.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{FieldSpec, Result, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(bytes[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(ScalarError::Syntax { pos: col, msg: format!("unexpected character `{c}`") }),
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, bytes.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    spec: &'a FieldSpec,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(ScalarError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Scalar> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg_ref();
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.try_add(&t)?;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.try_sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.try_mul(&f)?;
                }
                Tok::Slash => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.try_div(&f)?;
                }
                _ if self.starts_factor() => {
                    let f = self.factor()?;
                    acc = acc.try_mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            match self.bump() {
                Tok::Int(n) => {
                    let Some(e) = n.to_u32() else {
                        return self.syntax("exponent too large");
                    };
                    return Ok(base.pow(e));
                }
                _ => return self.syntax("expected an unsigned integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                if *self.peek() == Tok::Slash {
                    if let Tok::Int(d) = self.peek2().clone() {
                        self.bump();
                        self.bump();
                        if d.is_zero() {
                            return Err(ScalarError::DivisionByZero);
                        }
                        return Ok(Scalar::Rat(BigRational::new(n, d)));
                    }
                }
                Ok(Scalar::Rat(BigRational::from_integer(n)))
            }
            Tok::Ident(name) => self.ident(&name, pos),
            Tok::LParen => {
                let v = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected `)`");
                }
                self.bump();
                Ok(v)
            }
            Tok::End => Err(ScalarError::Syntax { pos, msg: "unexpected end of input".into() }),
            t => Err(ScalarError::Syntax { pos, msg: format!("unexpected token {t:?}") }),
        }
    }

    fn ident(&self, name: &str, pos: usize) -> Result<Scalar> {
        match self.spec {
            FieldSpec::Quadratic(d) if name == "s" => Ok(Scalar::sqrt_d(*d)),
            FieldSpec::RationalFunctions(params) => match params.iter().position(|p| p == name) {
                Some(i) => Ok(Scalar::param(params.len(), i)),
                None => Err(ScalarError::UnknownIdent { name: name.into(), pos }),
            },
            _ => Err(ScalarError::UnknownIdent { name: name.into(), pos }),
        }
    }
}

/// Parse a coefficient literal into a canonical scalar of `spec`.
pub fn parse_scalar(text: &str, spec: &FieldSpec) -> Result<Scalar> {
    let mut p = Parser { toks: lex(text)?, at: 0, spec };
    if *p.peek() == Tok::End {
        return p.syntax("empty coefficient");
    }
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("trailing input");
    }
    Ok(v)
}
