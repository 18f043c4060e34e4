//! Exact coefficient arithmetic over ℚ, a quadratic extension ℚ(√d), or a
//! field of rational functions ℚ(p₁, …, pₖ) in named parameters.

mod parse;
pub mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use parse::parse_scalar;
pub use poly::{render_rational, Monomial, Poly};

/// Identifiers that cannot be used as parameter names.
pub const RESERVED: &[&str] = &["s"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at column {pos}")]
    UnknownIdent { name: String, pos: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    MixedFields(String, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("specialization makes a denominator vanish")]
    SingularSpecialization,
}

pub type Result<T> = std::result::Result<T, ScalarError>;

/// The coefficient field of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// ℚ(√d) for a square-free integer d ∉ {0, 1}.
    Quadratic(i64),
    /// ℚ(p₁, …, pₖ) with the parameters in declaration order.
    RationalFunctions(Vec<String>),
}

fn is_square_free(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut k: u64 = 2;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FieldSpec {
    pub fn quadratic(d: i64) -> Result<Self> {
        let spec = FieldSpec::Quadratic(d);
        spec.validate()?;
        Ok(spec)
    }

    pub fn rational_functions<S: Into<String>>(params: impl IntoIterator<Item = S>) -> Result<Self> {
        let spec = FieldSpec::RationalFunctions(params.into_iter().map(Into::into).collect());
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Quadratic(d) => {
                let perfect = *d >= 0 && (*d as u64).sqrt().pow(2) == *d as u64;
                if *d == 0 || perfect || !is_square_free(*d) {
                    Err(ScalarError::InvalidField(format!("quadratic({d}) needs a square-free non-square d")))
                } else {
                    Ok(())
                }
            }
            FieldSpec::RationalFunctions(params) => {
                if params.is_empty() {
                    return Err(ScalarError::InvalidField("rational_functions needs at least one parameter".into()));
                }
                for (i, p) in params.iter().enumerate() {
                    if !valid_ident(p) || RESERVED.contains(&p.as_str()) {
                        return Err(ScalarError::InvalidField(format!("invalid parameter name `{p}`")));
                    }
                    if params[..i].contains(p) {
                        return Err(ScalarError::InvalidField(format!("duplicate parameter `{p}`")));
                    }
                }
                Ok(())
            }
        }
    }

    /// Parse `rationals`, `quadratic(d)` or `rational_functions(p,q,…)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = |prefix: &str| -> Option<&str> {
            t.strip_prefix(prefix)?.trim_start().strip_prefix('(')?.strip_suffix(')')
        };
        let spec = if t == "rationals" {
            FieldSpec::Rationals
        } else if let Some(arg) = inner("quadratic") {
            let d: i64 = arg
                .trim()
                .parse()
                .map_err(|_| ScalarError::InvalidField(format!("bad quadratic radicand `{arg}`")))?;
            FieldSpec::Quadratic(d)
        } else if let Some(arg) = inner("rational_functions") {
            FieldSpec::RationalFunctions(arg.split(',').map(|s| s.trim().to_string()).collect())
        } else {
            return Err(ScalarError::InvalidField(format!("unknown field `{t}`")));
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn params(&self) -> &[String] {
        match self {
            FieldSpec::RationalFunctions(p) => p,
            _ => &[],
        }
    }

    /// Whether a scalar can live in this field.
    pub fn admits(&self, s: &Scalar) -> bool {
        match (self, s) {
            (_, Scalar::Rat(_)) => true,
            (FieldSpec::Quadratic(d), Scalar::Quad { d: e, .. }) => d == e,
            (FieldSpec::RationalFunctions(p), Scalar::RatFn { num, .. }) => p.len() == num.nvars(),
            _ => false,
        }
    }

    pub fn is_parametric(&self) -> bool {
        matches!(self, FieldSpec::RationalFunctions(_))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "rationals"),
            FieldSpec::Quadratic(d) => write!(f, "quadratic({d})"),
            FieldSpec::RationalFunctions(p) => write!(f, "rational_functions({})", p.join(",")),
        }
    }
}

/// An exact field element in canonical form.
///
/// Every value that happens to be rational is stored as [`Scalar::Rat`], so
/// rationals mix freely with any field. Quadratic elements always have a
/// nonzero irrational part; rational functions are never constant, their
/// denominator is monic in the leading monomial, and numerator and
/// denominator share no common monomial factor.
#[derive(Debug, Clone)]
pub enum Scalar {
    Rat(BigRational),
    Quad { a: BigRational, b: BigRational, d: i64 },
    RatFn { num: Poly, den: Poly },
}

fn field_name(s: &Scalar) -> String {
    match s {
        Scalar::Rat(_) => "rational".into(),
        Scalar::Quad { d, .. } => format!("quadratic({d})"),
        Scalar::RatFn { num, .. } => format!("rational functions in {} parameters", num.nvars()),
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rat(r)
    }

    /// `a + b√d`, canonicalized.
    pub fn quad(a: BigRational, b: BigRational, d: i64) -> Self {
        if b.is_zero() {
            Scalar::Rat(a)
        } else {
            Scalar::Quad { a, b, d }
        }
    }

    /// √d itself.
    pub fn sqrt_d(d: i64) -> Self {
        Scalar::quad(BigRational::zero(), BigRational::one(), d)
    }

    /// The parameter with the given index among `nvars` parameters.
    pub fn param(nvars: usize, index: usize) -> Self {
        Scalar::ratfn(Poly::var(nvars, index), Poly::one(nvars)).expect("nonzero denominator")
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        Scalar::ratfn(p, Poly::one(n)).expect("nonzero denominator")
    }

    /// Build the canonical form of `num / den`.
    pub fn ratfn(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let nvars = num.nvars();
        // Strip the common monomial factor.
        let cn = num.monomial_content();
        let cd = den.monomial_content();
        let common = Monomial::from_exponents(
            cn.exponents().iter().zip(cd.exponents()).map(|(a, b)| *a.min(b)).collect(),
        );
        let (mut num, mut den) = if common.is_one() {
            (num, den)
        } else {
            (num.div_monomial(&common), den.div_monomial(&common))
        };
        if den.len() > 1 || !den.leading().unwrap().0.is_one() {
            if let Some(q) = num.exact_div(&den) {
                num = q;
                den = Poly::one(nvars);
            } else if num.len() > 1 {
                if let Some(q) = den.exact_div(&num) {
                    num = Poly::one(nvars);
                    den = q;
                }
            }
        }
        let lc = den.leading().unwrap().1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if den.as_constant().is_some() {
            if let Some(c) = num.as_constant() {
                return Ok(Scalar::Rat(c));
            }
        }
        Ok(Scalar::RatFn { num, den })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            // Canonical quadratic and rational-function values are never zero.
            Scalar::Quad { .. } => false,
            Scalar::RatFn { num, .. } => num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// Re-canonicalize (canonical values are returned unchanged).
    pub fn canonical(&self) -> Self {
        match self {
            Scalar::Rat(_) => self.clone(),
            Scalar::Quad { a, b, d } => Scalar::quad(a.clone(), b.clone(), *d),
            Scalar::RatFn { num, den } => Scalar::ratfn(num.clone(), den.clone()).expect("canonical denominator"),
        }
    }

    fn as_ratfn_parts(&self, nvars: usize) -> (Poly, Poly) {
        match self {
            Scalar::Rat(r) => (Poly::constant(nvars, r.clone()), Poly::one(nvars)),
            Scalar::RatFn { num, den } => (num.clone(), den.clone()),
            Scalar::Quad { .. } => unreachable!("checked by caller"),
        }
    }

    fn join(&self, other: &Scalar) -> Result<Join> {
        match (self, other) {
            (Scalar::Rat(_), Scalar::Rat(_)) => Ok(Join::Rat),
            (Scalar::Quad { d, .. }, Scalar::Rat(_)) | (Scalar::Rat(_), Scalar::Quad { d, .. }) => Ok(Join::Quad(*d)),
            (Scalar::Quad { d, .. }, Scalar::Quad { d: e, .. }) if d == e => Ok(Join::Quad(*d)),
            (Scalar::RatFn { num, .. }, Scalar::Rat(_)) | (Scalar::Rat(_), Scalar::RatFn { num, .. }) => {
                Ok(Join::RatFn(num.nvars()))
            }
            (Scalar::RatFn { num: a, .. }, Scalar::RatFn { num: b, .. }) if a.nvars() == b.nvars() => {
                Ok(Join::RatFn(a.nvars()))
            }
            _ => Err(ScalarError::MixedFields(field_name(self), field_name(other))),
        }
    }

    fn quad_parts(&self) -> (BigRational, BigRational) {
        match self {
            Scalar::Rat(r) => (r.clone(), BigRational::zero()),
            Scalar::Quad { a, b, .. } => (a.clone(), b.clone()),
            Scalar::RatFn { .. } => unreachable!("checked by caller"),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        match self.join(other)? {
            Join::Rat => Ok(Scalar::Rat(self.as_rational().unwrap() + other.as_rational().unwrap())),
            Join::Quad(d) => {
                let (a, b) = self.quad_parts();
                let (c, e) = other.quad_parts();
                Ok(Scalar::quad(a + c, b + e, d))
            }
            Join::RatFn(n) => {
                let (a, b) = self.as_ratfn_parts(n);
                let (c, d) = other.as_ratfn_parts(n);
                if b == d {
                    Scalar::ratfn(a.add(&c), b)
                } else {
                    Scalar::ratfn(a.mul(&d).add(&c.mul(&b)), b.mul(&d))
                }
            }
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        if self.is_zero() || other.is_zero() {
            // Still reject incompatible operands.
            self.join(other)?;
            return Ok(Scalar::zero());
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        match self.join(other)? {
            Join::Rat => Ok(Scalar::Rat(self.as_rational().unwrap() * other.as_rational().unwrap())),
            Join::Quad(d) => {
                let (a, b) = self.quad_parts();
                let (c, e) = other.quad_parts();
                let dd = BigRational::from_integer(d.into());
                Ok(Scalar::quad(&a * &c + &b * &e * dd, a * e + b * c, d))
            }
            Join::RatFn(n) => {
                let (a, b) = self.as_ratfn_parts(n);
                let (c, d) = other.as_ratfn_parts(n);
                Scalar::ratfn(a.mul(&c), b.mul(&d))
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Quad { a, b, d } => {
                let norm = a * a - b * b * BigRational::from_integer((*d).into());
                Ok(Scalar::quad(a / &norm, -(b / &norm), *d))
            }
            Scalar::RatFn { num, den } => Scalar::ratfn(den.clone(), num.clone()),
        }
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        self.join(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r.clone()),
            Scalar::Quad { a, b, d } => Scalar::Quad { a: -a.clone(), b: -b.clone(), d: *d },
            Scalar::RatFn { num, den } => Scalar::RatFn { num: num.neg(), den: den.clone() },
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute rational values for every parameter.
    pub fn specialize(&self, point: &[BigRational]) -> Result<Scalar> {
        match self {
            Scalar::RatFn { num, den } => {
                let d = den.eval(point);
                if d.is_zero() {
                    return Err(ScalarError::SingularSpecialization);
                }
                Ok(Scalar::Rat(num.eval(point) / d))
            }
            _ => Ok(self.clone()),
        }
    }

    /// Canonical text in the coefficient grammar; `names` supplies parameter names.
    pub fn render(&self, spec: &FieldSpec) -> String {
        match self {
            Scalar::Rat(r) => render_rational(r),
            Scalar::Quad { a, b, .. } => {
                let radical = if b.is_one() {
                    "s".to_string()
                } else if (-b.clone()).is_one() {
                    "-s".to_string()
                } else {
                    format!("{}*s", render_rational(b))
                };
                if a.is_zero() {
                    radical
                } else if b.is_negative() {
                    format!("{} - {}", render_rational(a), radical.trim_start_matches('-'))
                } else {
                    format!("{} + {}", render_rational(a), radical)
                }
            }
            Scalar::RatFn { num, den } => {
                let names = spec_names(spec, num.nvars());
                if den.as_constant().is_some() {
                    num.render(&names)
                } else {
                    let n = num.render(&names);
                    let n = if num.len() == 1 && !n.contains(' ') { n } else { format!("({n})") };
                    let d = den.render(&names);
                    let d = if den.len() == 1 && !d.contains('*') { d } else { format!("({d})") };
                    format!("{n}/{d}")
                }
            }
        }
    }

    /// A [`fmt::Display`] adapter bound to a field.
    pub fn display<'a>(&'a self, spec: &'a FieldSpec) -> ScalarDisplay<'a> {
        ScalarDisplay { s: self, spec }
    }
}

fn spec_names(spec: &FieldSpec, nvars: usize) -> Vec<String> {
    match spec {
        FieldSpec::RationalFunctions(p) if p.len() == nvars => p.clone(),
        _ => (1..=nvars).map(|i| format!("x{i}")).collect(),
    }
}

enum Join {
    Rat,
    Quad(i64),
    RatFn(usize),
}

pub struct ScalarDisplay<'a> {
    s: &'a Scalar,
    spec: &'a FieldSpec,
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.s.render(self.spec))
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Quad { a, b, d }, Scalar::Quad { a: c, b: e, d: f }) => d == f && a == c && b == e,
            (Scalar::RatFn { num: a, den: b }, Scalar::RatFn { num: c, den: d }) => {
                a.nvars() == c.nvars() && a.mul(d) == c.mul(b)
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::Rat(BigRational::from_integer(n))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("scalar {}: {e}", stringify!($method)))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq() -> FieldSpec {
        FieldSpec::rational_functions(["p", "q"]).unwrap()
    }

    #[test]
    fn field_spec_round_trip() {
        for t in ["rationals", "quadratic(2)", "quadratic(-1)", "rational_functions(p,q)"] {
            assert_eq!(FieldSpec::parse(t).unwrap().to_string(), t);
        }
        assert!(FieldSpec::parse("quadratic(4)").is_err());
        assert!(FieldSpec::parse("quadratic(12)").is_err());
        assert!(FieldSpec::parse("rational_functions(p,p)").is_err());
        assert!(FieldSpec::parse("rational_functions(s)").is_err());
    }

    #[test]
    fn sqrt_two_squares_to_two() {
        let s = Scalar::sqrt_d(2);
        assert_eq!(&s * &s, Scalar::from_int(2));
    }

    #[test]
    fn quadratic_inverse() {
        let spec = FieldSpec::Quadratic(2);
        let x = parse_scalar("1 + s", &spec).unwrap();
        assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
        assert_eq!(x.inv().unwrap().render(&spec), "-1 + s");
    }

    #[test]
    fn ratfn_canonical_forms() {
        let spec = pq();
        let p = Scalar::param(2, 0);
        let q = Scalar::param(2, 1);
        let x = &(&p * &p) / &p;
        assert_eq!(x.render(&spec), "p");
        let y = &(&p * &q) / &(&q * &q);
        assert_eq!(y.render(&spec), "p/q");
        let z = &(&p + &q) / &(&p + &q);
        assert!(z.is_one());
        let w = &Scalar::from_int(-2) / &p;
        assert_eq!(w.render(&spec), "-2/p");
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let r = Scalar::sqrt_d(2).try_add(&Scalar::sqrt_d(3));
        assert!(matches!(r, Err(ScalarError::MixedFields(..))));
        let r = Scalar::sqrt_d(2).try_mul(&Scalar::param(1, 0));
        assert!(matches!(r, Err(ScalarError::MixedFields(..))));
        assert!(Scalar::param(1, 0).try_add(&Scalar::param(2, 0)).is_err());
    }

    #[test]
    fn specialization() {
        let spec = pq();
        let x = parse_scalar("p^2/3*q", &spec).unwrap();
        let v = x.specialize(&[BigRational::from_integer(2.into()), BigRational::from_integer(3.into())]).unwrap();
        assert_eq!(v, Scalar::from_int(4));
        let y = parse_scalar("1/(p + 1)", &spec).unwrap();
        assert!(y.specialize(&[BigRational::from_integer((-1).into()), BigRational::one()]).is_err());
    }
}
