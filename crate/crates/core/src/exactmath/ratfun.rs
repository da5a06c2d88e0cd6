//! Rational functions in one formal parameter, with valuations at zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use super::{Field, Poly, Rational};

/// Order of vanishing at `s = 0`. The zero function has valuation `Infinite`.
///
/// Variants are ordered so that every finite value compares below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("limit at s = 0 is undefined (valuation {valuation})")]
pub struct UndefinedLimit {
    pub valuation: i64,
}

/// `numerator / denominator` in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g);
        let mut den = den.exact_div(&g);
        let lc = den.leading();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    /// The parameter itself.
    pub fn s() -> Self {
        RatFun::from_poly(Poly::monomial(Rational::one(), 1))
    }

    /// `s^k` for any integer `k`.
    pub fn s_pow(k: i64) -> Self {
        if k >= 0 {
            RatFun::from_poly(Poly::monomial(Rational::one(), k as usize))
        } else {
            RatFun {
                num: Poly::one(),
                den: Poly::monomial(Rational::one(), (-k) as usize),
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn valuation(&self) -> Valuation {
        match (self.num.order(), self.den.order()) {
            (None, _) => Valuation::Infinite,
            (Some(a), Some(b)) => Valuation::Finite(a as i64 - b as i64),
            (Some(_), None) => unreachable!("denominator is never zero"),
        }
    }

    /// Constant term of the expansion at `s = 0`, defined when the valuation
    /// is nonnegative.
    pub fn limit_at_zero(&self) -> Result<Rational, UndefinedLimit> {
        match self.valuation() {
            Valuation::Infinite => Ok(Rational::zero()),
            Valuation::Finite(v) => match v.cmp(&0) {
                Ordering::Less => Err(UndefinedLimit { valuation: v }),
                Ordering::Greater => Ok(Rational::zero()),
                Ordering::Equal => {
                    let k = self.den.order().unwrap();
                    Ok(self.num.coeff(k) / self.den.coeff(k))
                }
            },
        }
    }

    /// Value at `s = x`; `None` if the denominator vanishes there.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// Substitute `s -> s^k` for `k >= 1`.
    pub fn compose_power(&self, k: usize) -> RatFun {
        let stretch = |p: &Poly| {
            let mut coeffs = vec![Rational::zero(); p.coeffs().len().saturating_sub(1) * k + 1];
            for (i, c) in p.coeffs().iter().enumerate() {
                coeffs[i * k] = c.clone();
            }
            Poly::new(coeffs)
        };
        RatFun::new(stretch(&self.num), stretch(&self.den))
    }

    pub fn pow(&self, k: i64) -> RatFun {
        let base = if k < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut out = RatFun::one();
        for _ in 0..k.unsigned_abs() {
            out = out * base.clone();
        }
        out
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den);
        }
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        self + (-rhs)
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Field for RatFun {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFun::new(self.den.clone(), self.num.clone()))
    }

    fn from_rational(q: &Rational) -> Self {
        RatFun::constant(q.clone())
    }

    fn pivot_weight(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}
