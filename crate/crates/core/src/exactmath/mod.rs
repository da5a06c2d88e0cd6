//! Exact scalar and matrix arithmetic.
//!
//! Everything here is exact: rationals are arbitrary precision, polynomials
//! and rational functions are kept in canonical form so that `==` is
//! mathematical equality, and matrices are generic over [`Field`].

mod expr;
mod field;
mod matrix;
mod poly;
mod ratfun;

pub use expr::{Env, Expr, ExprError, LinForm};
pub use field::Field;
pub use matrix::Matrix;
pub use poly::Poly;
pub use ratfun::{RatFun, UndefinedLimit, Valuation};

/// Arbitrary-precision rational number in lowest terms.
pub type Rational = num_rational::BigRational;

/// Parses `p`, `-p` or `p/q` into a [`Rational`].
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: num_bigint::BigInt = p.trim().parse().ok()?;
            let q: num_bigint::BigInt = q.trim().parse().ok()?;
            if num_traits::Zero::is_zero(&q) {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}
