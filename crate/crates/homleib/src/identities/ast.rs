//! Syntax tree of the identity language and its parser.
//!
//! ```text
//! ident   := name 'over' '(' var ':' sort (',' var ':' sort)* ')' ':' expr '=' '0'
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := [coeff '*'] primary
//! primary := var | '(' expr ')'
//!          | map '(' expr ')'                       unary maps: al, be, beV, T, K, id, ...
//!          | prod '(' expr ',' expr ')'             br, prec, succ
//!          | act '(' expr ')' '(' expr ')'          l, r, lprec, ..., ls, rs
//!          | 'Delta' '(' expr ')' | 'sigma' '(' expr ')'
//!          | 'kron' '(' op ',' op ')' '(' expr ')'  op := id | map | L(expr) | R(expr)
//!          | 'form' '(' expr ',' expr ')'
//! ```
//!
//! Sorts: `A` (algebra), `V` (module or second algebra), `T` (tensor square
//! of `A`) and `S` (scalars). Products and actions are resolved by the sorts
//! of their arguments: `br(a, b)` with two `V` arguments is the product of
//! the second algebra, and `l(a)(x)` with a `V` actor acts on `A`.

use std::fmt;

use thiserror::Error;

use crate::scalar::{parse_scalar, FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("line {line}, column {column}: sort error: {msg}")]
    Sort { line: usize, column: usize, msg: String },
    #[error("line {line}, column {column}: undeclared symbol `{name}`")]
    Undeclared { line: usize, column: usize, name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    A,
    V,
    T,
    S,
}

impl Sort {
    pub fn other(self) -> Sort {
        match self {
            Sort::A => Sort::V,
            Sort::V => Sort::A,
            s => s,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::A => "A",
            Sort::V => "V",
            Sort::T => "T",
            Sort::S => "S",
        })
    }
}

/// Unary maps and their (domain, codomain) sorts.
pub const MAPS: &[(&str, Sort, Sort)] = &[
    ("al", Sort::A, Sort::A),
    ("be", Sort::A, Sort::A),
    ("beV", Sort::V, Sort::V),
    ("beV2", Sort::V, Sort::V),
    ("al2", Sort::V, Sort::V),
    ("be2", Sort::V, Sort::V),
    ("T", Sort::V, Sort::A),
    ("K", Sort::A, Sort::A),
];

/// Binary products; each is defined on `A × A` and, in paired contexts, on `V × V`.
pub const PRODUCTS: &[&str] = &["br", "prec", "succ"];

/// Actions `act(actor)(target)`; the actor and target have opposite sorts.
pub const ACTIONS: &[&str] = &["l", "r", "lprec", "rprec", "lsucc", "rsucc", "ls", "rs"];

/// A linear operator on `A` used inside `kron`.
#[derive(Debug, Clone, PartialEq)]
pub enum OpExpr {
    Id,
    Map(String),
    /// Left bracket multiplication by an algebra element.
    L(Box<Expr>),
    /// Right bracket multiplication by an algebra element.
    R(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var(usize),
    /// Σ cᵢ·tᵢ
    Sum(Vec<(Scalar, Expr)>),
    Map { name: String, arg: Box<Expr> },
    /// The identity map applied to an argument.
    Id(Box<Expr>),
    Prod { name: String, sort: Sort, lhs: Box<Expr>, rhs: Box<Expr> },
    Act { name: String, actor_sort: Sort, actor: Box<Expr>, target: Box<Expr> },
    Delta(Box<Expr>),
    Sigma(Box<Expr>),
    Kron { f: OpExpr, g: OpExpr, arg: Box<Expr> },
    Form(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Every symbol the expression needs from a context, as (kind, name, sort) triples.
    pub fn symbols(&self, out: &mut Vec<Symbol>) {
        match self {
            Expr::Var(_) => {}
            Expr::Sum(ts) => ts.iter().for_each(|(_, t)| t.symbols(out)),
            Expr::Map { name, arg } => {
                out.push(Symbol::Map(name.clone()));
                arg.symbols(out);
            }
            Expr::Id(arg) => arg.symbols(out),
            Expr::Prod { name, sort, lhs, rhs } => {
                out.push(Symbol::Product(name.clone(), *sort));
                lhs.symbols(out);
                rhs.symbols(out);
            }
            Expr::Act { name, actor_sort, actor, target } => {
                out.push(Symbol::Action(name.clone(), *actor_sort));
                actor.symbols(out);
                target.symbols(out);
            }
            Expr::Delta(a) => {
                out.push(Symbol::Cobracket);
                a.symbols(out);
            }
            Expr::Sigma(a) => a.symbols(out),
            Expr::Kron { f, g, arg } => {
                for op in [f, g] {
                    match op {
                        OpExpr::Id => {}
                        OpExpr::Map(n) => out.push(Symbol::Map(n.clone())),
                        OpExpr::L(e) | OpExpr::R(e) => {
                            out.push(Symbol::Product("br".into(), Sort::A));
                            e.symbols(out);
                        }
                    }
                }
                arg.symbols(out);
            }
            Expr::Form(a, b) => {
                out.push(Symbol::Form);
                a.symbols(out);
                b.symbols(out);
            }
        }
    }
}

/// A symbol an identity requires from its evaluation context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Map(String),
    Product(String, Sort),
    Action(String, Sort),
    Cobracket,
    Form,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Map(n) => write!(f, "map {n}"),
            Symbol::Product(n, s) => write!(f, "product {n} on {s}"),
            Symbol::Action(n, s) => write!(f, "action {n} with {s} actor"),
            Symbol::Cobracket => write!(f, "cobracket"),
            Symbol::Form => write!(f, "bilinear form"),
        }
    }
}

/// A parsed, well-sorted identity `body = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Identity {
    pub name: String,
    pub vars: Vec<(String, Sort)>,
    pub body: Expr,
    pub sort: Sort,
    /// The source text the identity was parsed from.
    pub source: String,
}

impl Identity {
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.body.symbols(&mut out);
        out.sort();
        out.dedup();
        out
    }

    /// Number of top-level signed terms.
    pub fn term_count(&self) -> usize {
        match &self.body {
            Expr::Sum(ts) => ts.len(),
            _ => 1,
        }
    }
}

// ----------------------------------------------------------------------------
// Lexer
// ----------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        let start = (line, col, off);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                s.push(chars[i].1);
                i += 1;
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line: start.0, column: start.1, offset: start.2 });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '/') {
                s.push(chars[i].1);
                i += 1;
                col += 1;
            }
            out.push(Token { tok: Tok::Num(s), line: start.0, column: start.1, offset: start.2 });
            continue;
        }
        if "(),:+-*=".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line, column: col, offset: off });
            i += 1;
            col += 1;
            continue;
        }
        return Err(ParseError::Syntax { line, column: col, msg: format!("unexpected character `{c}`") });
    }
    out.push(Token { tok: Tok::End, line, column: col, offset: text.len() });
    Ok(out)
}

// ----------------------------------------------------------------------------
// Parser
// ----------------------------------------------------------------------------

struct Parser<'a> {
    toks: Vec<Token>,
    at: usize,
    text: &'a str,
    vars: Vec<(String, Sort)>,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.at];
        (t.line, t.column)
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (line, column) = self.here();
        Err(ParseError::Syntax { line, column, msg: msg.into() })
    }

    fn sort_err<T>(at: (usize, usize), msg: impl Into<String>) -> PResult<T> {
        Err(ParseError::Sort { line: at.0, column: at.1, msg: msg.into() })
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.syntax("expected an identifier"),
        }
    }

    fn identity(&mut self) -> PResult<Identity> {
        let start = self.toks[self.at].offset;
        let name = self.ident()?;
        match self.ident() {
            Ok(kw) if kw == "over" => {}
            _ => {
                self.at = self.at.saturating_sub(1);
                return self.syntax("expected `over`");
            }
        }
        self.expect('(')?;
        self.vars.clear();
        loop {
            let at = self.here();
            let v = self.ident()?;
            self.expect(':')?;
            let s = match self.ident()?.as_str() {
                "A" => Sort::A,
                "V" => Sort::V,
                other => return Self::sort_err(at, format!("variables have sort A or V, not `{other}`")),
            };
            if self.vars.iter().any(|(n, _)| *n == v) {
                return Self::sort_err(at, format!("variable `{v}` declared twice"));
            }
            self.vars.push((v, s));
            if *self.peek() == Tok::Sym(',') {
                self.bump();
                continue;
            }
            break;
        }
        self.expect(')')?;
        self.expect(':')?;
        let (body, sort) = self.expr()?;
        self.expect('=')?;
        match self.peek() {
            Tok::Num(n) if n == "0" => {
                self.bump();
            }
            _ => return self.syntax("expected `0`"),
        }
        let end = self.toks[self.at].offset.min(self.text.len());
        let source = self.text[start..end].trim().to_string();
        Ok(Identity { name, vars: self.vars.clone(), body, sort, source })
    }

    fn expr(&mut self) -> PResult<(Expr, Sort)> {
        let at = self.here();
        let mut terms = Vec::new();
        let mut sort = None;
        let mut sign = match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                -1
            }
            Tok::Sym('+') => {
                self.bump();
                1
            }
            _ => 1,
        };
        loop {
            let tat = self.here();
            let (c, e, s) = self.term()?;
            if let Some(prev) = sort {
                if prev != s {
                    return Self::sort_err(tat, format!("term of sort {s} added to terms of sort {prev}"));
                }
            }
            sort = Some(s);
            terms.push((if sign < 0 { -c } else { c }, e));
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    sign = 1;
                }
                Tok::Sym('-') => {
                    self.bump();
                    sign = -1;
                }
                _ => break,
            }
        }
        let _ = at;
        let sort = sort.expect("at least one term");
        if terms.len() == 1 && terms[0].0.is_one() {
            Ok((terms.pop().unwrap().1, sort))
        } else {
            Ok((Expr::Sum(terms), sort))
        }
    }

    fn term(&mut self) -> PResult<(Scalar, Expr, Sort)> {
        if let Tok::Num(n) = self.peek().clone() {
            let (line, column) = self.here();
            self.bump();
            let c = parse_scalar(&n, &FieldSpec::Rationals)
                .map_err(|e| ParseError::Syntax { line, column, msg: format!("bad coefficient: {e}") })?;
            self.expect('*')?;
            let (e, s) = self.primary()?;
            return Ok((c, e, s));
        }
        let (e, s) = self.primary()?;
        Ok((Scalar::one(), e, s))
    }

    fn vector_arg(&mut self, what: &str) -> PResult<(Expr, Sort, (usize, usize))> {
        let at = self.here();
        let (e, s) = self.expr()?;
        if !matches!(s, Sort::A | Sort::V) {
            return Self::sort_err(at, format!("{what} expects a vector argument, found sort {s}"));
        }
        Ok((e, s, at))
    }

    fn primary(&mut self) -> PResult<(Expr, Sort)> {
        let at = self.here();
        match self.peek().clone() {
            Tok::Sym('(') => {
                self.bump();
                let r = self.expr()?;
                self.expect(')')?;
                return Ok(r);
            }
            Tok::Ident(_) => {}
            _ => return self.syntax("expected a term"),
        }
        let name = self.ident()?;
        if let Some(i) = self.vars.iter().position(|(v, _)| *v == name) {
            if *self.peek() == Tok::Sym('(') {
                return Self::sort_err(at, format!("variable `{name}` is not a function"));
            }
            return Ok((Expr::Var(i), self.vars[i].1));
        }
        if *self.peek() != Tok::Sym('(') {
            if ACTIONS.contains(&name.as_str()) || PRODUCTS.contains(&name.as_str()) {
                return Self::sort_err(at, format!("`{name}` must be applied to arguments"));
            }
            return Err(ParseError::Undeclared { line: at.0, column: at.1, name });
        }
        self.expect('(')?;
        if name == "id" {
            let (e, s) = self.expr()?;
            self.expect(')')?;
            return Ok((Expr::Id(Box::new(e)), s));
        }
        if let Some(&(_, dom, cod)) = MAPS.iter().find(|(n, _, _)| *n == name) {
            let (e, s, aat) = self.vector_arg(&name)?;
            self.expect(')')?;
            if s != dom {
                return Self::sort_err(aat, format!("`{name}` maps {dom} to {cod} but was applied to sort {s}"));
            }
            return Ok((Expr::Map { name, arg: Box::new(e) }, cod));
        }
        if PRODUCTS.contains(&name.as_str()) {
            let (l, ls, _) = self.vector_arg(&name)?;
            self.expect(',')?;
            let (r, rs, rat) = self.vector_arg(&name)?;
            self.expect(')')?;
            if ls != rs {
                return Self::sort_err(rat, format!("`{name}` applied to sorts {ls} and {rs}; use an action for mixed sorts"));
            }
            return Ok((Expr::Prod { name, sort: ls, lhs: Box::new(l), rhs: Box::new(r) }, ls));
        }
        if ACTIONS.contains(&name.as_str()) {
            let (actor, asort, _) = self.vector_arg(&name)?;
            self.expect(')')?;
            if *self.peek() != Tok::Sym('(') {
                return Self::sort_err(at, format!("action `{name}` applied without a target argument"));
            }
            self.bump();
            let (target, tsort, tat) = self.vector_arg(&name)?;
            self.expect(')')?;
            if tsort != asort.other() {
                return Self::sort_err(tat, format!("action `{name}` with a {asort} actor needs a {} target, found {tsort}", asort.other()));
            }
            return Ok((Expr::Act { name, actor_sort: asort, actor: Box::new(actor), target: Box::new(target) }, tsort));
        }
        match name.as_str() {
            "Delta" => {
                let (e, s, aat) = self.vector_arg("Delta")?;
                self.expect(')')?;
                if s != Sort::A {
                    return Self::sort_err(aat, "Delta takes an algebra element");
                }
                Ok((Expr::Delta(Box::new(e)), Sort::T))
            }
            "sigma" => {
                let aat = self.here();
                let (e, s) = self.expr()?;
                self.expect(')')?;
                if s != Sort::T {
                    return Self::sort_err(aat, "sigma takes a tensor");
                }
                Ok((Expr::Sigma(Box::new(e)), Sort::T))
            }
            "kron" => {
                let f = self.op_expr()?;
                self.expect(',')?;
                let g = self.op_expr()?;
                self.expect(')')?;
                if *self.peek() != Tok::Sym('(') {
                    return Self::sort_err(at, "kron(f, g) must be applied to a tensor");
                }
                self.bump();
                let aat = self.here();
                let (e, s) = self.expr()?;
                self.expect(')')?;
                if s != Sort::T {
                    return Self::sort_err(aat, "kron(f, g) acts on tensors");
                }
                Ok((Expr::Kron { f, g, arg: Box::new(e) }, Sort::T))
            }
            "form" => {
                let (l, ls, lat) = self.vector_arg("form")?;
                self.expect(',')?;
                let (r, rs, rat) = self.vector_arg("form")?;
                self.expect(')')?;
                if ls != Sort::A {
                    return Self::sort_err(lat, "form takes algebra elements");
                }
                if rs != Sort::A {
                    return Self::sort_err(rat, "form takes algebra elements");
                }
                Ok((Expr::Form(Box::new(l), Box::new(r)), Sort::S))
            }
            _ => Err(ParseError::Undeclared { line: at.0, column: at.1, name }),
        }
    }

    fn op_expr(&mut self) -> PResult<OpExpr> {
        let at = self.here();
        let name = self.ident()?;
        match name.as_str() {
            "id" => Ok(OpExpr::Id),
            "L" | "R" => {
                self.expect('(')?;
                let (e, s, eat) = self.vector_arg(&name)?;
                self.expect(')')?;
                if s != Sort::A {
                    return Self::sort_err(eat, format!("{name} multiplies by an algebra element"));
                }
                Ok(if name == "L" { OpExpr::L(Box::new(e)) } else { OpExpr::R(Box::new(e)) })
            }
            _ => match MAPS.iter().find(|(n, _, _)| *n == name) {
                Some((_, Sort::A, Sort::A)) => Ok(OpExpr::Map(name)),
                Some(_) => Self::sort_err(at, format!("`{name}` is not an operator on A")),
                None => Err(ParseError::Undeclared { line: at.0, column: at.1, name }),
            },
        }
    }
}

/// Parse a single identity.
pub fn parse_identity(text: &str) -> Result<Identity, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0, text, vars: Vec::new() };
    let id = p.identity()?;
    if *p.peek() != Tok::End {
        return p.syntax("trailing input after identity");
    }
    Ok(id)
}

/// Parse a file holding any number of identities (with `#` comments).
pub fn parse_identities(text: &str) -> Result<Vec<Identity>, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0, text, vars: Vec::new() };
    let mut out = Vec::new();
    while *p.peek() != Tok::End {
        out.push(p.identity()?);
    }
    Ok(out)
}
