//! Small expression language shared by the algebra, witness and closed-set
//! file formats.
//!
//! Grammar (whitespace-insensitive, implicit multiplication by juxtaposition):
//!
//! ```text
//! sum     := ['+'|'-'] product (('+'|'-') product)*
//! product := power (('*'|'/')? power)*
//! power   := atom ('^' exponent)?
//! exponent:= integer | '-' integer | '(' sum ')'
//! atom    := number | identifier | identifier '(' sum ')' | '(' sum ')'
//! ```
//!
//! An expression evaluates to a [`LinForm`]: a scalar part plus a linear
//! combination of named symbols. The distinguished parameter identifier
//! (usually `t`) is resolved through a caller-supplied power function so
//! that fractional exponents such as `t^(7/12)` can be realized after a
//! substitution `t = s^N`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::{parse_rational, Field, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("expression is not linear in the basis symbols: {0}")]
    NonLinear(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent must be a rational constant")]
    BadExponent,
    #[error("value is not rational: {0}")]
    NonRational(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(String, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => write!(f, "{q}"),
            Expr::Ident(s) => write!(f, "{s}"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/({b})"),
            Expr::Pow(a, b) => write!(f, "{a}^({b})"),
            Expr::Call(g, a) => write!(f, "{g}({a})"),
        }
    }
}

/// A scalar plus a linear combination of named symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct LinForm<F> {
    pub scalar: F,
    pub terms: BTreeMap<String, F>,
}

impl<F: Field> LinForm<F> {
    fn scalar(v: F) -> Self {
        LinForm {
            scalar: v,
            terms: BTreeMap::new(),
        }
    }

    fn is_scalar(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(mut self, rhs: LinForm<F>, sign: bool) -> Self {
        let apply = |v: F| if sign { v } else { -v };
        self.scalar = self.scalar + apply(rhs.scalar);
        for (k, v) in rhs.terms {
            let cur = self.terms.remove(&k).unwrap_or_else(F::zero);
            let new = cur + apply(v);
            if !new.is_zero() {
                self.terms.insert(k, new);
            }
        }
        self
    }

    fn scale(mut self, c: &F) -> Self {
        self.scalar = self.scalar * c.clone();
        self.terms = self
            .terms
            .into_iter()
            .map(|(k, v)| (k, v * c.clone()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        self
    }

    /// Coefficients of the symbols only; errors if a nonzero scalar part remains.
    pub fn into_vector(self) -> Result<BTreeMap<String, F>, ExprError> {
        if !self.scalar.is_zero() {
            return Err(ExprError::NonLinear(format!(
                "constant term {} in a vector expression",
                self.scalar
            )));
        }
        Ok(self.terms)
    }

    /// The scalar value; errors if any symbol remains.
    pub fn into_scalar(self) -> Result<F, ExprError> {
        if !self.terms.is_empty() {
            return Err(ExprError::NonLinear(format!(
                "symbols {:?} in a scalar expression",
                self.terms.keys().collect::<Vec<_>>()
            )));
        }
        Ok(self.scalar)
    }
}

/// Evaluation environment.
pub struct Env<'a, F> {
    /// Name of the formal parameter, if any.
    pub param: Option<&'a str>,
    /// Returns `param^q`.
    pub param_pow: &'a dyn Fn(&Rational) -> Result<F, ExprError>,
    /// Scalar-valued named constants other than the parameter.
    pub constants: &'a dyn Fn(&str) -> Option<F>,
    /// Whether unknown identifiers become linear symbols (true) or errors.
    pub symbols: bool,
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ExprError> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.sum()?;
        if p.pos < p.tokens.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    /// Least common multiple of the denominators of every exponent applied
    /// directly to the identifier `param` (including `sqrt(param)`).
    pub fn param_ramification(&self, param: &str) -> Result<u64, ExprError> {
        let mut n = BigInt::one();
        self.walk_param_exponents(param, &mut |q| n = n.lcm(q.denom()))?;
        n.to_u64().ok_or(ExprError::BadExponent)
    }

    fn walk_param_exponents(
        &self,
        param: &str,
        f: &mut dyn FnMut(&Rational),
    ) -> Result<(), ExprError> {
        match self {
            Expr::Num(_) | Expr::Ident(_) => Ok(()),
            Expr::Neg(a) => a.walk_param_exponents(param, f),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.walk_param_exponents(param, f)?;
                b.walk_param_exponents(param, f)
            }
            Expr::Pow(base, exp) => {
                if matches!(&**base, Expr::Ident(s) if s == param) {
                    f(&exp.const_rational()?);
                }
                base.walk_param_exponents(param, f)
            }
            Expr::Call(name, arg) => {
                if name == "sqrt" && matches!(&**arg, Expr::Ident(s) if s == param) {
                    f(&Rational::new(1.into(), 2.into()));
                }
                arg.walk_param_exponents(param, f)
            }
        }
    }

    /// Evaluates an expression made only of numbers and arithmetic.
    pub fn const_rational(&self) -> Result<Rational, ExprError> {
        let env = Env::<Rational> {
            param: None,
            param_pow: &|_| Err(ExprError::BadExponent),
            constants: &|_| None,
            symbols: false,
        };
        self.eval(&env)?.into_scalar()
    }

    pub fn eval<F: Field>(&self, env: &Env<'_, F>) -> Result<LinForm<F>, ExprError> {
        match self {
            Expr::Num(q) => Ok(LinForm::scalar(F::from_rational(q))),
            Expr::Ident(s) => {
                if env.param == Some(s.as_str()) {
                    return Ok(LinForm::scalar((env.param_pow)(&Rational::one())?));
                }
                if let Some(v) = (env.constants)(s) {
                    return Ok(LinForm::scalar(v));
                }
                if !env.symbols {
                    return Err(ExprError::UnknownSymbol(s.clone()));
                }
                let mut terms = BTreeMap::new();
                terms.insert(s.clone(), F::one());
                Ok(LinForm {
                    scalar: F::zero(),
                    terms,
                })
            }
            Expr::Neg(a) => Ok(a.eval(env)?.scale(&-F::one())),
            Expr::Add(a, b) => Ok(a.eval(env)?.add(b.eval(env)?, true)),
            Expr::Sub(a, b) => Ok(a.eval(env)?.add(b.eval(env)?, false)),
            Expr::Mul(a, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                if x.is_scalar() {
                    Ok(y.scale(&x.scalar))
                } else if y.is_scalar() {
                    Ok(x.scale(&y.scalar))
                } else {
                    Err(ExprError::NonLinear(self.to_string()))
                }
            }
            Expr::Div(a, b) => {
                let d = b.eval(env)?.into_scalar()?;
                let inv = d.inv().ok_or(ExprError::DivisionByZero)?;
                Ok(a.eval(env)?.scale(&inv))
            }
            Expr::Pow(base, exp) => {
                let q = exp.const_rational()?;
                self.eval_pow(base, &q, env).map(LinForm::scalar)
            }
            Expr::Call(name, arg) => match name.as_str() {
                "sqrt" => self
                    .eval_pow(arg, &Rational::new(1.into(), 2.into()), env)
                    .map(LinForm::scalar),
                _ => Err(ExprError::UnknownFunction(name.clone())),
            },
        }
    }

    fn eval_pow<F: Field>(
        &self,
        base: &Expr,
        q: &Rational,
        env: &Env<'_, F>,
    ) -> Result<F, ExprError> {
        if let Expr::Ident(s) = base {
            if env.param == Some(s.as_str()) {
                return (env.param_pow)(q);
            }
        }
        if q.is_integer() {
            let k = q.to_integer().to_i64().ok_or(ExprError::BadExponent)?;
            let b = base.eval(env)?.into_scalar()?;
            let b = if k < 0 {
                b.inv().ok_or(ExprError::DivisionByZero)?
            } else {
                b
            };
            let mut out = F::one();
            for _ in 0..k.unsigned_abs() {
                out = out * b.clone();
            }
            return Ok(out);
        }
        let b = base
            .const_rational()
            .map_err(|_| ExprError::NonRational(self.to_string()))?;
        rational_root(&b, q)
            .map(|r| F::from_rational(&r))
            .ok_or_else(|| ExprError::NonRational(self.to_string()))
    }
}

/// `b^q` when it is rational.
fn rational_root(b: &Rational, q: &Rational) -> Option<Rational> {
    let den = q.denom().to_u32()?;
    let num = q.numer().to_i32()?;
    if b.is_negative() && den % 2 == 0 {
        return None;
    }
    let root = |x: &BigInt| -> Option<BigInt> {
        let r = x.abs().nth_root(den);
        (num_traits::pow(r.clone(), den as usize) == x.abs()).then(|| {
            if x.is_negative() {
                -r
            } else {
                r
            }
        })
    };
    let r = Rational::new(root(b.numer())?, root(b.denom())?);
    if num >= 0 {
        Some(num_traits::pow(r, num as usize))
    } else if r.is_zero() {
        None
    } else {
        Some(num_traits::pow(r.recip(), (-num) as usize))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(chars[start..i].iter().collect())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ExprError::Parse {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> ExprError {
        let pos = self.tokens.get(self.pos).map_or(usize::MAX, |t| t.0);
        ExprError::Parse {
            pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut e = if self.eat('-') {
            Expr::Neg(Box::new(self.product()?))
        } else {
            self.eat('+');
            self.product()?
        };
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.product()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.product()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.power()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.power()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.power()?));
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('('))
            ) {
                e = Expr::Mul(Box::new(e), Box::new(self.power()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp = if self.eat('-') {
            Expr::Neg(Box::new(self.exponent_atom()?))
        } else {
            self.exponent_atom()?
        };
        Ok(Expr::Pow(Box::new(base), Box::new(exp)))
    }

    fn exponent_atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                Ok(Expr::Num(
                    parse_rational(&s).ok_or_else(|| self.error("bad number"))?,
                ))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            _ => Err(self.error("expected exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                Ok(Expr::Num(
                    parse_rational(&s).ok_or_else(|| self.error("bad number"))?,
                ))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Op('(')) && name == "sqrt" {
                    self.pos += 1;
                    let arg = self.sum()?;
                    if !self.eat(')') {
                        return Err(self.error("expected `)`"));
                    }
                    return Ok(Expr::Call(name, Box::new(arg)));
                }
                Ok(Expr::Ident(name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            _ => Err(self.error("expected a number, identifier or `(`")),
        }
    }
}
