//! Reader for the line-oriented `.alg` format.
//!
//! ```text
//! [algebra]
//! name = J5
//! type = 1,3
//! even = e
//! odd = f1 f2 f3
//! basis_order = f1 f2 f3 e
//! product: e*f1 = f2
//! product: f2*f3 = e
//! ```
//!
//! A file may hold several `[algebra]` blocks. Keys other than the ones
//! above are kept verbatim in [`AlgRecord::meta`]. A `param = t` key marks
//! a one-parameter family whose products may mention `t`.

use std::collections::BTreeMap;

use super::{LoadError, Product, SuperAlgebra};
use crate::exactmath::{Env, Expr, ExprError, Field, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct AlgRecord {
    pub name: String,
    pub even: Vec<String>,
    pub odd: Vec<String>,
    pub basis_order: Option<Vec<String>>,
    pub param: Option<String>,
    pub products: Vec<(String, String, Expr)>,
    pub meta: BTreeMap<String, String>,
    /// Line of the `[algebra]` header, for diagnostics.
    pub line: usize,
}

impl AlgRecord {
    pub fn m(&self) -> usize {
        self.even.len()
    }

    pub fn n(&self) -> usize {
        self.odd.len()
    }

    pub fn is_family(&self) -> bool {
        self.param.is_some()
    }

    /// Loads the algebra, substituting `value` for the family parameter.
    pub fn instantiate<F: Field>(&self, value: Option<&F>) -> Result<SuperAlgebra<F>, LoadError> {
        match (&self.param, value) {
            (Some(_), None) => return Err(LoadError::MissingParameter(self.name.clone())),
            (None, Some(_)) => return Err(LoadError::UnexpectedParameter(self.name.clone())),
            _ => {}
        }
        let pow = |q: &Rational| -> Result<F, ExprError> {
            let v = value.ok_or(ExprError::BadExponent)?;
            if !q.is_integer() {
                return Err(ExprError::BadExponent);
            }
            let k: i64 = q
                .to_integer()
                .try_into()
                .map_err(|_| ExprError::BadExponent)?;
            let base = if k < 0 {
                v.inv().ok_or(ExprError::DivisionByZero)?
            } else {
                v.clone()
            };
            Ok((0..k.unsigned_abs()).fold(F::one(), |acc, _| acc * base.clone()))
        };
        let env = Env {
            param: self.param.as_deref(),
            param_pow: &pow,
            constants: &|_| None,
            symbols: true,
        };
        let mut products = Vec::with_capacity(self.products.len());
        for (l, r, e) in &self.products {
            let rhs = e.eval(&env)?.into_vector()?;
            products.push(Product {
                left: l.clone(),
                right: r.clone(),
                rhs: rhs.into_iter().collect(),
            });
        }
        SuperAlgebra::load(
            Some(self.name.clone()),
            self.even.clone(),
            self.odd.clone(),
            &products,
            self.basis_order.clone(),
        )
    }
}

fn fmt_err(line: usize, msg: impl Into<String>) -> LoadError {
    LoadError::Format {
        line,
        msg: msg.into(),
    }
}

fn words(v: &str) -> Vec<String> {
    v.split_whitespace().map(str::to_string).collect()
}

/// Parses every `[algebra]` block in `src`.
pub fn parse_alg_file(src: &str) -> Result<Vec<AlgRecord>, LoadError> {
    let mut out: Vec<AlgRecord> = Vec::new();
    let mut types: Vec<Option<(usize, usize)>> = Vec::new();
    for (no, raw) in src.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "[algebra]" {
            out.push(AlgRecord {
                name: String::new(),
                even: Vec::new(),
                odd: Vec::new(),
                basis_order: None,
                param: None,
                products: Vec::new(),
                meta: BTreeMap::new(),
                line: line_no,
            });
            types.push(None);
            continue;
        }
        let rec = out
            .last_mut()
            .ok_or_else(|| fmt_err(line_no, "content before the first [algebra] header"))?;
        if let Some(rest) = line.strip_prefix("product:") {
            let (lhs, rhs) = rest
                .split_once('=')
                .ok_or_else(|| fmt_err(line_no, "product line needs `=`"))?;
            let (l, r) = lhs
                .split_once('*')
                .ok_or_else(|| fmt_err(line_no, "product left side must be `a*b`"))?;
            let expr = Expr::parse(rhs).map_err(|e| fmt_err(line_no, e.to_string()))?;
            rec.products
                .push((l.trim().to_string(), r.trim().to_string(), expr));
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| fmt_err(line_no, format!("expected `key = value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "name" => rec.name = value.to_string(),
            "type" => {
                let (m, n) = value
                    .split_once(',')
                    .ok_or_else(|| fmt_err(line_no, "type must be `m,n`"))?;
                let m = m.trim().parse().map_err(|_| fmt_err(line_no, "bad m"))?;
                let n = n.trim().parse().map_err(|_| fmt_err(line_no, "bad n"))?;
                *types.last_mut().unwrap() = Some((m, n));
            }
            "even" => rec.even = words(value),
            "odd" => rec.odd = words(value),
            "basis_order" => rec.basis_order = Some(words(value)),
            "param" => rec.param = Some(value.to_string()),
            _ => {
                rec.meta.insert(key.to_string(), value.to_string());
            }
        }
    }
    for (rec, ty) in out.iter().zip(&types) {
        if rec.name.is_empty() {
            return Err(fmt_err(rec.line, "algebra without a name"));
        }
        if let Some((m, n)) = ty {
            if (*m, *n) != (rec.m(), rec.n()) {
                return Err(fmt_err(
                    rec.line,
                    format!(
                        "{}: declared type ({m},{n}) but basis has {} even and {} odd vectors",
                        rec.name,
                        rec.m(),
                        rec.n()
                    ),
                ));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = "
# two entries
[algebra]
name = J5
type = 1,3
even = e
odd = f1 f2 f3
orbit = 12
product: e*f1 = f2
product: f2*f3 = e

[algebra]
name = Jc16
type = 2,2
even = e1 e2
odd = f1 f2
param = t
product: e1*e1 = e1
product: e2*e2 = e2
product: f1*f2 = e1 + t e2
";

    #[test]
    fn parses_blocks_and_meta() {
        let recs = parse_alg_file(SRC).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].name, "J5");
        assert_eq!(recs[0].meta["orbit"], "12");
        assert!(recs[1].is_family());
    }

    #[test]
    fn instantiates_family_members() {
        let recs = parse_alg_file(SRC).unwrap();
        let a = recs[1].instantiate(Some(&Rational::from_int(3))).unwrap();
        assert_eq!(a.delta(0, 1, 1), &Rational::from_int(3));
        assert_eq!(a.delta(1, 0, 1), &Rational::from_int(-3));
        assert!(matches!(
            recs[1].instantiate::<Rational>(None),
            Err(LoadError::MissingParameter(_))
        ));
        assert!(matches!(
            recs[0].instantiate(Some(&Rational::from_int(1))),
            Err(LoadError::UnexpectedParameter(_))
        ));
    }

    #[test]
    fn type_mismatch_is_reported() {
        let bad = "[algebra]\nname = X\ntype = 2,2\neven = e\nodd = f\n";
        assert!(matches!(parse_alg_file(bad), Err(LoadError::Format { .. })));
    }
}
