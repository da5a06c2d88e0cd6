//! Parametric degeneration witnesses and their replay.
//!
//! File format:
//!
//! ```text
//! [degeneration]
//! source = Jc16^(1 + t)
//! target = Jc47
//! mode = auto
//! basis: e1 = e1 + e2 + t^2 f2
//! basis: e2 = t e2
//! basis: f1 = 1/t f1
//! basis: f2 = t f2
//! ```
//!
//! Optional `post: <name> = <combination>` lines give a constant change of
//! basis applied to the limit before it is compared with the target.

use std::fmt;
use std::path::Path;

use num_traits::Zero;

use crate::catalog::Catalog;
use crate::exactmath::{Env, Expr, ExprError, Field, Matrix, RatFun, Rational, Valuation};
use crate::superalg::{SuperAlgebra, Table};

use super::action::{preserves_parity, transform_table, ActionMode};
use super::{file_stem, read_file, DegenerationError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessMode {
    Graded,
    Ungraded,
    /// Graded when the basis respects parity, ungraded otherwise.
    Auto,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub id: String,
    pub source: String,
    /// Family parameter of the source, as an expression in `param`.
    pub source_param: Option<Expr>,
    pub target: String,
    pub mode: WitnessMode,
    /// Name of the degeneration parameter, `t` unless declared.
    pub param: String,
    pub basis: Vec<(String, Expr)>,
    pub post: Vec<(String, Expr)>,
}

/// Whether the first `(` of `s` is closed by its last character.
fn is_wrapped(s: &str) -> bool {
    if !s.starts_with('(') {
        return false;
    }
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 {
            return i + 1 == s.len();
        }
    }
    false
}

fn format_err(line: usize, msg: impl Into<String>) -> DegenerationError {
    DegenerationError::Format {
        line,
        msg: msg.into(),
    }
}

fn parse_assignment(rest: &str, line: usize) -> Result<(String, Expr), DegenerationError> {
    let (name, expr) = rest
        .split_once('=')
        .ok_or_else(|| format_err(line, "expected `<name> = <expression>`"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(format_err(line, "missing vector name"));
    }
    Ok((name.to_string(), Expr::parse(expr.trim())?))
}

impl Witness {
    pub fn parse(src: &str, id: &str) -> Result<Witness, DegenerationError> {
        let mut header = false;
        let (mut source, mut target, mut mode, mut param) = (None, None, WitnessMode::Auto, None);
        let mut basis = Vec::new();
        let mut post = Vec::new();
        for (no, raw) in src.lines().enumerate() {
            let line = no + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            if text == "[degeneration]" {
                if header {
                    return Err(format_err(line, "only one witness per file"));
                }
                header = true;
                continue;
            }
            if !header {
                return Err(format_err(line, "expected `[degeneration]`"));
            }
            if let Some(rest) = text.strip_prefix("basis:") {
                basis.push(parse_assignment(rest, line)?);
                continue;
            }
            if let Some(rest) = text.strip_prefix("post:") {
                post.push(parse_assignment(rest, line)?);
                continue;
            }
            let (key, value) = text
                .split_once('=')
                .ok_or_else(|| format_err(line, format!("unrecognized line `{text}`")))?;
            let value = value.trim().to_string();
            match key.trim() {
                "source" => source = Some(value),
                "target" => target = Some(value),
                "param" => param = Some(value),
                "mode" => {
                    mode = match value.as_str() {
                        "graded" => WitnessMode::Graded,
                        "ungraded" => WitnessMode::Ungraded,
                        "auto" => WitnessMode::Auto,
                        other => return Err(format_err(line, format!("unknown mode `{other}`"))),
                    }
                }
                other => return Err(format_err(line, format!("unknown key `{other}`"))),
            }
        }
        let source = source.ok_or_else(|| format_err(0, "missing `source`"))?;
        let target = target.ok_or_else(|| format_err(0, "missing `target`"))?;
        if basis.is_empty() {
            return Err(format_err(0, "no `basis:` lines"));
        }
        let (source, source_param) = match source.split_once('^') {
            Some((name, p)) => (name.trim().to_string(), Some(Expr::parse(p.trim())?)),
            None => (source, None),
        };
        Ok(Witness {
            id: id.to_string(),
            source,
            source_param,
            target,
            mode,
            param: param.unwrap_or_else(|| "t".to_string()),
            basis,
            post,
        })
    }

    pub fn load(path: &Path) -> Result<Witness, DegenerationError> {
        Witness::parse(&read_file(path)?, &file_stem(path))
    }

    /// Source as written, e.g. `Jc16^(1 + t)`.
    pub fn source_spec(&self) -> String {
        match &self.source_param {
            Some(p) => {
                let text = p.to_string();
                if is_wrapped(&text) {
                    format!("{}^{text}", self.source)
                } else {
                    format!("{}^({text})", self.source)
                }
            }
            None => self.source.clone(),
        }
    }

    /// Least `N` such that every power of the parameter becomes integral
    /// after `t = s^N`.
    pub fn ramification(&self) -> Result<u64, DegenerationError> {
        let mut n: u64 = 1;
        let exprs = self
            .basis
            .iter()
            .map(|(_, e)| e)
            .chain(self.source_param.as_ref());
        for e in exprs {
            let k = e.param_ramification(&self.param)?;
            n = num_integer::lcm(n, k);
        }
        Ok(n)
    }

    fn names(&self) -> Vec<String> {
        self.basis.iter().map(|(n, _)| n.clone()).collect()
    }
}

/// `t^q` as a rational function of `s` where `t = s^n`.
fn param_power(q: &Rational, n: u64) -> Result<RatFun, ExprError> {
    let k = q * Rational::from_integer(n.into());
    if !k.is_integer() {
        return Err(ExprError::BadExponent);
    }
    let k: i64 = k
        .to_integer()
        .try_into()
        .map_err(|_| ExprError::BadExponent)?;
    Ok(RatFun::s_pow(k))
}

fn eval_in_s(
    e: &Expr,
    param: &str,
    n: u64,
    symbols: bool,
) -> Result<crate::exactmath::LinForm<RatFun>, ExprError> {
    let pow = |q: &Rational| param_power(q, n);
    let env = Env {
        param: Some(param),
        param_pow: &pow,
        constants: &|_| None,
        symbols,
    };
    e.eval(&env)
}

/// Source of the witness over rational functions in `s`, with the family
/// parameter (if any) substituted.
pub fn source_algebra(
    w: &Witness,
    catalog: &Catalog,
) -> Result<SuperAlgebra<RatFun>, DegenerationError> {
    let n = w.ramification()?;
    let entry = catalog.entry(&w.source)?;
    match &w.source_param {
        None => Ok(catalog.lookup(&w.source, None)?.map(RatFun::from_rational)),
        Some(p) => {
            let v = eval_in_s(p, &w.param, n, false)?.into_scalar()?;
            let alg = entry.record.instantiate(Some(&v))?;
            if let Some(f) = alg.check_super_jordan().failure {
                return Err(crate::catalog::CatalogError::IdentityFailure {
                    name: w.source_spec(),
                    detail: f.to_string(),
                }
                .into());
            }
            Ok(alg)
        }
    }
}

/// Constants of the source in the witness basis, as rational functions of
/// `s` with `t = s^ramification`.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametric {
    pub table: Table<RatFun>,
    pub mode: ActionMode,
    pub ramification: u64,
}

pub fn parametric_constants(
    w: &Witness,
    source: &SuperAlgebra<RatFun>,
) -> Result<Parametric, DegenerationError> {
    let n = w.ramification()?;
    let flat = source.flatten();
    let d = flat.dim();
    if w.basis.len() != d {
        return Err(DegenerationError::BasisMismatch(format!(
            "{} basis vectors for a source of dimension {d}",
            w.basis.len()
        )));
    }
    let mut p: Matrix<RatFun> = Matrix::zeros(d, d);
    for (i, (name, e)) in w.basis.iter().enumerate() {
        let v = eval_in_s(e, &w.param, n, true)?.into_vector()?;
        for (sym, c) in v {
            let a = flat.index_of(&sym).ok_or_else(|| {
                DegenerationError::BasisMismatch(format!(
                    "`{sym}` in the expression for `{name}` is not a source vector"
                ))
            })?;
            p[(a, i)] = c;
        }
    }
    let names = w.names();
    let parity: Vec<u8> = (0..d)
        .map(|i| match flat.index_of(&names[i]) {
            Some(a) => flat.parity()[a],
            None => (0..d)
                .find(|&a| !p[(a, i)].is_zero())
                .map_or(0, |a| flat.parity()[a]),
        })
        .collect();
    let graded = preserves_parity(&p, flat.parity(), &parity);
    let mode = match (w.mode, graded) {
        (WitnessMode::Graded, false) => return Err(DegenerationError::NonGradedWitness),
        (WitnessMode::Graded, true) | (WitnessMode::Auto, true) => ActionMode::Graded,
        _ => ActionMode::Ungraded,
    };
    let table = transform_table(&flat, &p, names, parity)?;
    Ok(Parametric {
        table,
        mode,
        ramification: n,
    })
}

/// One entry where the limit differs from the target.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub left: String,
    pub right: String,
    pub out: String,
    pub got: Rational,
    pub expected: Rational,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}*{} -> {}: limit {} target {}",
            self.left, self.right, self.out, self.got, self.expected
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum VerdictStatus {
    Verified,
    LimitDiverges { entry: String, valuation: Valuation },
    LimitMismatch(Vec<Mismatch>),
    NonGradedWitness,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictStatus::Verified => f.write_str("Verified"),
            VerdictStatus::LimitDiverges { entry, valuation } => {
                write!(f, "LimitDiverges at {entry} (valuation {valuation})")
            }
            VerdictStatus::LimitMismatch(diff) => {
                write!(f, "LimitMismatch:")?;
                for m in diff {
                    write!(f, " [{m}]")?;
                }
                Ok(())
            }
            VerdictStatus::NonGradedWitness => f.write_str("NonGradedWitness"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub mode: ActionMode,
    pub ramification: u64,
    pub limit_table: Option<Table<Rational>>,
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        self.status == VerdictStatus::Verified
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.status, self.mode)
    }
}

fn post_matrix(w: &Witness) -> Result<Option<Matrix<Rational>>, DegenerationError> {
    if w.post.is_empty() {
        return Ok(None);
    }
    let names = w.names();
    let d = names.len();
    let mut p = Matrix::zeros(d, d);
    let env = Env::<Rational> {
        param: None,
        param_pow: &|_| Err(ExprError::BadExponent),
        constants: &|_| None,
        symbols: true,
    };
    for (name, e) in &w.post {
        let i = names.iter().position(|n| n == name).ok_or_else(|| {
            DegenerationError::BasisMismatch(format!(
                "post vector `{name}` is not a witness vector"
            ))
        })?;
        for (sym, c) in e.eval(&env)?.into_vector()? {
            let a = names.iter().position(|n| *n == sym).ok_or_else(|| {
                DegenerationError::BasisMismatch(format!("`{sym}` is not a witness vector"))
            })?;
            p[(a, i)] = c;
        }
    }
    Ok(Some(p))
}

/// Replays `w` against the catalog.
pub fn verify_degeneration(w: &Witness, catalog: &Catalog) -> Result<Verdict, DegenerationError> {
    let source = source_algebra(w, catalog)?;
    let target = catalog.lookup_spec(&w.target)?;
    if (source.m(), source.n()) != (target.m(), target.n()) {
        return Err(DegenerationError::TypeMismatch(
            source.m(),
            source.n(),
            target.m(),
            target.n(),
        ));
    }
    let para = match parametric_constants(w, &source) {
        Ok(p) => p,
        Err(DegenerationError::NonGradedWitness) => {
            return Ok(Verdict {
                status: VerdictStatus::NonGradedWitness,
                mode: ActionMode::Graded,
                ramification: w.ramification()?,
                limit_table: None,
            })
        }
        Err(e) => return Err(e),
    };
    let t = &para.table;
    let d = t.dim();
    let names = t.names().to_vec();
    let mut limit = Table::zero(names.clone(), t.parity().to_vec());
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                match t.get(i, j, k).limit_at_zero() {
                    Ok(v) => limit.set(i, j, k, v),
                    Err(e) => {
                        return Ok(Verdict {
                            status: VerdictStatus::LimitDiverges {
                                entry: format!("{}*{} -> {}", names[i], names[j], names[k]),
                                valuation: Valuation::Finite(e.valuation),
                            },
                            mode: para.mode,
                            ramification: para.ramification,
                            limit_table: None,
                        })
                    }
                }
            }
        }
    }
    if let Some(p) = post_matrix(w)? {
        limit = transform_table(&limit, &p, names.clone(), limit.parity().to_vec())?;
    }
    let expected = target.flatten().reorder(&names).ok_or_else(|| {
        DegenerationError::BasisMismatch(format!(
            "witness vectors {:?} do not match the target basis {:?}",
            names,
            target.basis_order()
        ))
    })?;
    let mut diff = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if limit.get(i, j, k) != expected.get(i, j, k) {
                    diff.push(Mismatch {
                        left: names[i].clone(),
                        right: names[j].clone(),
                        out: names[k].clone(),
                        got: limit.get(i, j, k).clone(),
                        expected: expected.get(i, j, k).clone(),
                    });
                }
            }
        }
    }
    let status = if diff.is_empty() {
        VerdictStatus::Verified
    } else {
        VerdictStatus::LimitMismatch(diff)
    };
    Ok(Verdict {
        status,
        mode: para.mode,
        ramification: para.ramification,
        limit_table: Some(limit),
    })
}

/// The source table and the witness table at `s = s0`, i.e. `t = s0^N`.
/// The second is the first in the basis `E(t0)`. `SingularMatrix` is
/// returned if that basis is degenerate or some entry has a pole at `s0`.
pub fn specialize(
    w: &Witness,
    catalog: &Catalog,
    s0: &Rational,
) -> Result<(Table<Rational>, Table<Rational>), DegenerationError> {
    let source = source_algebra(w, catalog)?;
    let mode_free = Witness {
        mode: WitnessMode::Ungraded,
        ..w.clone()
    };
    let para = parametric_constants(&mode_free, &source)?;
    let t = &para.table;
    let d = t.dim();
    let mut p: Matrix<Rational> = Matrix::zeros(d, d);
    let flat = source.flatten();
    let n = para.ramification;
    for (i, (_, e)) in w.basis.iter().enumerate() {
        for (sym, c) in eval_in_s(e, &w.param, n, true)?.into_vector()? {
            let a = flat
                .index_of(&sym)
                .expect("checked by parametric_constants");
            p[(a, i)] = c.eval(s0).ok_or(DegenerationError::SingularMatrix)?;
        }
    }
    if p.det().is_zero() {
        return Err(DegenerationError::SingularMatrix);
    }
    let at = |t: &Table<RatFun>| -> Result<Table<Rational>, DegenerationError> {
        let mut out = Table::zero(t.names().to_vec(), t.parity().to_vec());
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = t
                        .get(i, j, k)
                        .eval(s0)
                        .ok_or(DegenerationError::SingularMatrix)?;
                    out.set(i, j, k, v);
                }
            }
        }
        Ok(out)
    };
    Ok((at(&flat)?, at(t)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_family_sources_and_modes() {
        let w = Witness::parse(
            "[degeneration]\nsource = Jc16^(1 + t)\ntarget = Jc47\nmode = graded\nbasis: e1 = t^(1/2) e1\n",
            "w",
        )
        .unwrap();
        assert_eq!(w.source, "Jc16");
        assert_eq!(w.source_spec(), "Jc16^(1 + t)");
        assert_eq!(w.mode, WitnessMode::Graded);
        assert_eq!(w.ramification().unwrap(), 2);
        let w = Witness::parse(
            "[degeneration]\nsource = Jc16^(-1)\ntarget = Jc68\nbasis: e1 = e1\n",
            "w",
        )
        .unwrap();
        assert_eq!(
            w.source_param.unwrap().const_rational().unwrap(),
            Rational::from_int(-1)
        );
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(Witness::parse("[degeneration]\nsource = J5\nbasis: = t f1\n", "w").is_err());
        assert!(Witness::parse("[degeneration]\ntarget = J2\n", "w").is_err());
    }

    #[test]
    fn wrapped_detection() {
        assert!(is_wrapped("(1 + t)"));
        assert!(!is_wrapped("(1) + (t)"));
        assert!(!is_wrapped("t"));
    }
}
