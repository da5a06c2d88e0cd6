//! Closed-set certificates and their randomized stability and separation
//! tests.
//!
//! File format:
//!
//! ```text
//! [closedset]
//! source = J12
//! targets = J7 J8
//! basis = f1 f2 f3 e
//! group = graded
//! conditions:
//! JJ <= span(e, f2, f3)
//! c[4,4,4] = 2 c[2,4,2]
//! c[*,*,1] = 0
//! A1*A4 = 0
//! ```
//!
//! `c[i,j,k]` is the coefficient of `x_k` in `x_i x_j`, with indices into
//! the declared basis counted from 1. Each `*` ranges independently over
//! all indices. `A_i` is the span of `x_i, …, x_n` and `J` the whole space.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::Catalog;
use crate::exactmath::{Env, Expr, Field, Matrix, RatFun, Rational};
use crate::superalg::{unit, Subspace, SuperAlgebra, Table};

use super::action::transform_with_inverse;
use super::{file_stem, read_file, DegenerationError};

/// Group used for the stability and separation samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    /// Parity-preserving basis changes.
    Graded,
    /// All invertible basis changes.
    Full,
}

/// A subspace named in a condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Whole,
    /// `A_i`: span of the basis vectors from index `i` (from 0) on.
    Tail(usize),
    /// Span of the listed basis vectors.
    Span(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Condition {
    /// Polynomial equations, one per choice of wildcard indices.
    PolyEq {
        text: String,
        instances: Vec<(Expr, Expr)>,
    },
    /// `X*Y <= Z`.
    SpanContain {
        text: String,
        left: Space,
        right: Space,
        within: Space,
    },
    /// `X*Y = 0`.
    ProductZero {
        text: String,
        left: Space,
        right: Space,
    },
}

impl Condition {
    pub fn text(&self) -> &str {
        match self {
            Condition::PolyEq { text, .. }
            | Condition::SpanContain { text, .. }
            | Condition::ProductZero { text, .. } => text,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedSet {
    pub id: String,
    pub source: String,
    pub targets: Vec<String>,
    pub basis: Vec<String>,
    pub group: Group,
    pub conditions: Vec<Condition>,
}

fn format_err(line: usize, msg: impl Into<String>) -> DegenerationError {
    DegenerationError::Format {
        line,
        msg: msg.into(),
    }
}

fn constant_name(i: usize, j: usize, k: usize) -> String {
    format!("c_{i}_{j}_{k}")
}

fn parse_constant_name(s: &str) -> Option<(usize, usize, usize)> {
    let mut it = s
        .strip_prefix("c_")?
        .split('_')
        .map(|p| p.parse::<usize>().ok());
    let (i, j, k) = (it.next()??, it.next()??, it.next()??);
    it.next().is_none().then_some((i, j, k))
}

/// Replaces the `c[…]` atoms of `src` by identifiers, once for every
/// assignment of the wildcards.
fn expand_atoms(src: &str, d: usize, line: usize) -> Result<Vec<String>, DegenerationError> {
    let mut pieces: Vec<Result<String, [String; 3]>> = Vec::new();
    let mut rest = src;
    while let Some(pos) = rest.find("c[") {
        pieces.push(Ok(rest[..pos].to_string()));
        let close = rest[pos..]
            .find(']')
            .ok_or_else(|| format_err(line, "unclosed `c[`"))?;
        let inner = &rest[pos + 2..pos + close];
        let idx: Vec<String> = inner.split(',').map(|s| s.trim().to_string()).collect();
        if idx.len() != 3 {
            return Err(format_err(
                line,
                format!("`c[{inner}]` needs three indices"),
            ));
        }
        for i in &idx {
            if i != "*" {
                match i.parse::<usize>() {
                    Ok(v) if (1..=d).contains(&v) => {}
                    _ => return Err(format_err(line, format!("index `{i}` out of range 1..{d}"))),
                }
            }
        }
        pieces.push(Err([idx[0].clone(), idx[1].clone(), idx[2].clone()]));
        rest = &rest[pos + close + 1..];
    }
    pieces.push(Ok(rest.to_string()));
    let stars = pieces
        .iter()
        .filter_map(|p| p.as_ref().err())
        .flatten()
        .filter(|s| *s == "*")
        .count();
    let total = d.pow(stars as u32);
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut s = String::new();
        for p in &pieces {
            match p {
                Ok(text) => s.push_str(text),
                Err(idx) => {
                    let mut v = [0usize; 3];
                    for (slot, i) in v.iter_mut().zip(idx) {
                        *slot = if i == "*" {
                            let x = code % d + 1;
                            code /= d;
                            x
                        } else {
                            i.parse().expect("validated above")
                        };
                    }
                    s.push(' ');
                    s.push_str(&constant_name(v[0], v[1], v[2]));
                    s.push(' ');
                }
            }
        }
        out.push(s);
    }
    Ok(out)
}

fn parse_space(s: &str, basis: &[String], line: usize) -> Result<Space, DegenerationError> {
    let s = s.trim();
    if s == "J" {
        return Ok(Space::Whole);
    }
    if let Some(i) = s.strip_prefix('A') {
        return match i.parse::<usize>() {
            Ok(i) if (1..=basis.len()).contains(&i) => Ok(Space::Tail(i - 1)),
            _ => Err(format_err(line, format!("bad subspace `{s}`"))),
        };
    }
    if let Some(inner) = s.strip_prefix("span(").and_then(|r| r.strip_suffix(')')) {
        let mut idx = Vec::new();
        for item in inner.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let k = basis
                .iter()
                .position(|b| b == item)
                .or_else(|| {
                    item.strip_prefix('x')
                        .and_then(|n| n.parse::<usize>().ok())
                        .filter(|n| (1..=basis.len()).contains(n))
                        .map(|n| n - 1)
                })
                .ok_or_else(|| format_err(line, format!("`{item}` is not a basis vector")))?;
            idx.push(k);
        }
        return Ok(Space::Span(idx));
    }
    Err(format_err(line, format!("bad subspace `{s}`")))
}

fn parse_product(
    s: &str,
    basis: &[String],
    line: usize,
) -> Result<(Space, Space), DegenerationError> {
    let mut s = s.trim();
    if let Some(inner) = s.strip_prefix("span(").and_then(|r| r.strip_suffix(')')) {
        if !inner.contains(',') && parse_space(inner, basis, line).is_err() {
            s = inner.trim();
        }
    }
    if s == "JJ" {
        return Ok((Space::Whole, Space::Whole));
    }
    if let Some((a, b)) = s.split_once('*') {
        return Ok((parse_space(a, basis, line)?, parse_space(b, basis, line)?));
    }
    if let Some(rest) = s.strip_prefix('A') {
        if let Some(pos) = rest.find('A') {
            let a = format!("A{}", &rest[..pos]);
            return Ok((
                parse_space(&a, basis, line)?,
                parse_space(&rest[pos..], basis, line)?,
            ));
        }
    }
    Err(format_err(
        line,
        format!("expected a product of two subspaces, found `{s}`"),
    ))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Degree {
    Zero,
    Exact(u32),
}

/// Degree of `e` in the structure constants when it is homogeneous.
fn degree(e: &Expr) -> Option<Degree> {
    use Degree::*;
    Some(match e {
        Expr::Num(q) => {
            if q.is_zero() {
                Zero
            } else {
                Exact(0)
            }
        }
        Expr::Ident(_) => Exact(1),
        Expr::Neg(a) => degree(a)?,
        Expr::Add(a, b) | Expr::Sub(a, b) => match (degree(a)?, degree(b)?) {
            (Zero, x) | (x, Zero) => x,
            (Exact(x), Exact(y)) if x == y => Exact(x),
            _ => return None,
        },
        Expr::Mul(a, b) => match (degree(a)?, degree(b)?) {
            (Zero, _) | (_, Zero) => Zero,
            (Exact(x), Exact(y)) => Exact(x + y),
        },
        Expr::Div(a, b) => match (degree(a)?, degree(b)?) {
            (x, Exact(0)) => x,
            _ => return None,
        },
        Expr::Pow(a, k) => {
            let k = k.const_rational().ok()?;
            if !k.is_integer() || k < Rational::zero() {
                return None;
            }
            match degree(a)? {
                Zero => Zero,
                Exact(x) => Exact(x * k.to_integer().to_u32()?),
            }
        }
        Expr::Call(_, a) => match degree(a)? {
            Exact(0) => Exact(0),
            _ => return None,
        },
    })
}

impl ClosedSet {
    pub fn parse(src: &str, id: &str) -> Result<ClosedSet, DegenerationError> {
        let mut header = false;
        let mut in_conditions = false;
        let (mut source, mut targets, mut basis, mut group) =
            (None, Vec::new(), None, Group::Graded);
        let mut raw_conditions: Vec<(usize, String)> = Vec::new();
        for (no, raw) in src.lines().enumerate() {
            let line = no + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            if text == "[closedset]" {
                if header {
                    return Err(format_err(line, "only one closed set per file"));
                }
                header = true;
                continue;
            }
            if !header {
                return Err(format_err(line, "expected `[closedset]`"));
            }
            if in_conditions {
                raw_conditions.push((line, text.to_string()));
                continue;
            }
            if text == "conditions:" {
                in_conditions = true;
                continue;
            }
            let (key, value) = text
                .split_once('=')
                .ok_or_else(|| format_err(line, format!("unrecognized line `{text}`")))?;
            let value = value.trim();
            match key.trim() {
                "source" => source = Some(value.to_string()),
                "targets" => targets = value.split_whitespace().map(str::to_string).collect(),
                "basis" => {
                    basis = Some(
                        value
                            .split_whitespace()
                            .map(str::to_string)
                            .collect::<Vec<_>>(),
                    )
                }
                "group" => {
                    group = match value {
                        "graded" => Group::Graded,
                        "full" => Group::Full,
                        other => return Err(format_err(line, format!("unknown group `{other}`"))),
                    }
                }
                other => return Err(format_err(line, format!("unknown key `{other}`"))),
            }
        }
        let source = source.ok_or_else(|| format_err(0, "missing `source`"))?;
        let basis: Vec<String> = basis.ok_or_else(|| format_err(0, "missing `basis`"))?;
        let d = basis.len();
        let mut conditions = Vec::new();
        for (line, text) in raw_conditions {
            let src = text.clone();
            if let Some((lhs, rhs)) = src.split_once("<=") {
                let (left, right) = parse_product(lhs, &basis, line)?;
                conditions.push(Condition::SpanContain {
                    text,
                    left,
                    right,
                    within: parse_space(rhs, &basis, line)?,
                });
                continue;
            }
            let (lhs, rhs) = src
                .split_once('=')
                .ok_or_else(|| format_err(line, format!("expected `=` or `<=` in `{text}`")))?;
            if !lhs.contains("c[") && rhs.trim() == "0" {
                if let Ok((left, right)) = parse_product(lhs, &basis, line) {
                    conditions.push(Condition::ProductZero { text, left, right });
                    continue;
                }
            }
            let mut instances = Vec::new();
            for eq in expand_atoms(&text, d, line)? {
                let (l, r) = eq.split_once('=').expect("kept from the source line");
                instances.push((Expr::parse(l.trim())?, Expr::parse(r.trim())?));
            }
            conditions.push(Condition::PolyEq { text, instances });
        }
        Ok(ClosedSet {
            id: id.to_string(),
            source,
            targets,
            basis,
            group,
            conditions,
        })
    }

    pub fn load(path: &Path) -> Result<ClosedSet, DegenerationError> {
        ClosedSet::parse(&read_file(path)?, &file_stem(path))
    }

    /// An empty condition list, satisfied by every table.
    pub fn trivial(basis: Vec<String>) -> ClosedSet {
        ClosedSet {
            id: "trivial".into(),
            source: String::new(),
            targets: Vec::new(),
            basis,
            group: Group::Graded,
            conditions: Vec::new(),
        }
    }

    /// Whether every polynomial equation is homogeneous, so that the set is
    /// a cone and may be tested on any nonzero multiple of a table.
    pub fn is_cone(&self) -> bool {
        self.conditions.iter().all(|c| match c {
            Condition::PolyEq { instances, .. } => instances.iter().all(|(l, r)| {
                degree(&Expr::Sub(Box::new(l.clone()), Box::new(r.clone()))).is_some()
            }),
            _ => true,
        })
    }
}

fn space<F: Field>(s: &Space, d: usize) -> Subspace<F> {
    let rows = match s {
        Space::Whole => (0..d).map(|i| unit(d, i)).collect(),
        Space::Tail(i) => (*i..d).map(|k| unit(d, k)).collect(),
        Space::Span(idx) => idx.iter().map(|&k| unit(d, k)).collect(),
    };
    Subspace::span(d, rows)
}

fn holds<F: Field>(t: &Table<F>, c: &Condition) -> Result<bool, DegenerationError> {
    let d = t.dim();
    Ok(match c {
        Condition::PolyEq { instances, .. } => {
            let lookup = |name: &str| -> Option<F> {
                let (i, j, k) = parse_constant_name(name)?;
                Some(t.get(i - 1, j - 1, k - 1).clone())
            };
            let env = Env::<F> {
                param: None,
                param_pow: &|_| Err(crate::exactmath::ExprError::BadExponent),
                constants: &lookup,
                symbols: false,
            };
            for (l, r) in instances {
                if l.eval(&env)?.into_scalar()? != r.eval(&env)?.into_scalar()? {
                    return Ok(false);
                }
            }
            true
        }
        Condition::SpanContain {
            left,
            right,
            within,
            ..
        } => t
            .subspace_product(&space(left, d), &space(right, d))
            .is_subspace_of(&space(within, d)),
        Condition::ProductZero { left, right, .. } => {
            t.subspace_product(&space(left, d), &space(right, d)).dim() == 0
        }
    })
}

/// The first condition of `r` that fails on `t`, if any.
pub fn closed_set_failure<F: Field>(
    t: &Table<F>,
    r: &ClosedSet,
) -> Result<Option<String>, DegenerationError> {
    if t.names() != r.basis.as_slice() {
        return Err(DegenerationError::BasisMismatch(format!(
            "table basis {:?} differs from the declared {:?}",
            t.names(),
            r.basis
        )));
    }
    for c in &r.conditions {
        if !holds(t, c)? {
            return Ok(Some(c.text().to_string()));
        }
    }
    Ok(None)
}

/// Whether `t`, written in the declared basis of `r`, satisfies every
/// condition.
pub fn closed_set_eval<F: Field>(t: &Table<F>, r: &ClosedSet) -> Result<bool, DegenerationError> {
    Ok(closed_set_failure(t, r)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationConfig {
    pub trials: usize,
    pub seed: u64,
    /// Entries of the upper-triangular samples lie in `-bound..=bound`.
    pub stability_bound: i64,
    /// Entries of the random bases of the target lie in `-bound..=bound`.
    pub separation_bound: i64,
}

impl Default for SeparationConfig {
    fn default() -> Self {
        SeparationConfig {
            trials: 1000,
            seed: 0,
            stability_bound: 3,
            separation_bound: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub trials: usize,
    pub seed: u64,
    /// Samples `g` for which `g * J` still satisfies the conditions.
    pub stable: usize,
    /// Random bases of `J'` in which some condition fails.
    pub separated: usize,
    /// First failing condition seen in the stability samples.
    pub stability_failure: Option<String>,
}

impl SeparationReport {
    pub fn separation_rate(&self) -> f64 {
        self.separated as f64 / self.trials as f64
    }
}

impl fmt::Display for SeparationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "stability {}/{} separation {}/{} (seed {})",
            self.stable, self.trials, self.separated, self.trials, self.seed
        )
    }
}

fn trial_rng(seed: u64, trial: usize, salt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((trial as u64) << 1) | salt);
    rng
}

/// Column `i` holds new vector `i`. Upper-triangular in the sense
/// `x'_i = Σ_{j ≥ i} g_ij x_j`, so each `A_i` is preserved.
fn random_triangular(
    rng: &mut ChaCha8Rng,
    parity: &[u8],
    graded: bool,
    bound: i64,
) -> Vec<Vec<i64>> {
    let d = parity.len();
    let mut p = vec![vec![0i64; d]; d];
    for i in 0..d {
        for j in i..d {
            if graded && parity[i] != parity[j] {
                continue;
            }
            p[j][i] = if i == j {
                loop {
                    let v = rng.random_range(-bound..=bound);
                    if v != 0 {
                        break v;
                    }
                }
            } else {
                rng.random_range(-bound..=bound)
            };
        }
    }
    p
}

fn random_invertible(
    rng: &mut ChaCha8Rng,
    parity: &[u8],
    graded: bool,
    bound: i64,
) -> (Vec<Vec<i64>>, i128) {
    let d = parity.len();
    loop {
        let mut p = vec![vec![0i64; d]; d];
        for (a, row) in p.iter_mut().enumerate() {
            for (i, v) in row.iter_mut().enumerate() {
                if !graded || parity[a] == parity[i] {
                    *v = rng.random_range(-bound..=bound);
                }
            }
        }
        let m: Vec<Vec<i128>> = p
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect();
        let det = int_det(&m);
        if det != 0 {
            return (p, det);
        }
    }
}

fn int_det(m: &[Vec<i128>]) -> i128 {
    let d = m.len();
    match d {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..d)
            .map(|c| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != c)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * int_det(&minor)
            })
            .sum(),
    }
}

fn adjugate(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let d = m.len();
    let mut adj = vec![vec![0i128; d]; d];
    for (k, row) in adj.iter_mut().enumerate() {
        for (l, slot) in row.iter_mut().enumerate() {
            let minor: Vec<Vec<i128>> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != l)
                .map(|(_, r)| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != k)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let s = if (k + l) % 2 == 0 { 1 } else { -1 };
            *slot = s * int_det(&minor);
        }
    }
    adj
}

/// Integer form of a table: `scale * t` with integer entries.
struct IntTable {
    c: Vec<i128>,
    d: usize,
}

impl IntTable {
    fn new(t: &Table<Rational>) -> Option<IntTable> {
        let den = t
            .constants()
            .iter()
            .fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
        let c = t
            .constants()
            .iter()
            .map(|q| (q.numer() * (&den / q.denom())).to_i128())
            .collect::<Option<Vec<_>>>()?;
        Some(IntTable { c, d: t.dim() })
    }

    fn get(&self, i: usize, j: usize, k: usize) -> i128 {
        self.c[(i * self.d + j) * self.d + k]
    }

    /// `det(P) * scale * c'` with checked arithmetic.
    fn transform(&self, p: &[Vec<i64>], adj: &[Vec<i128>]) -> Option<Vec<i128>> {
        let d = self.d;
        let mut x = vec![0i128; d * d * d];
        for i in 0..d {
            for a in 0..d {
                let pa = p[a][i] as i128;
                if pa == 0 {
                    continue;
                }
                for b in 0..d {
                    for l in 0..d {
                        let c = self.get(a, b, l);
                        if c != 0 {
                            let slot = &mut x[(i * d + b) * d + l];
                            *slot = slot.checked_add(pa.checked_mul(c)?)?;
                        }
                    }
                }
            }
        }
        let mut y = vec![0i128; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for b in 0..d {
                    let pb = p[b][j] as i128;
                    if pb == 0 {
                        continue;
                    }
                    for l in 0..d {
                        let v = x[(i * d + b) * d + l];
                        if v != 0 {
                            let slot = &mut y[(i * d + j) * d + l];
                            *slot = slot.checked_add(pb.checked_mul(v)?)?;
                        }
                    }
                }
            }
        }
        let mut out = vec![0i128; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut acc = 0i128;
                    for l in 0..d {
                        let v = y[(i * d + j) * d + l];
                        if v != 0 {
                            acc = acc.checked_add(adj[k][l].checked_mul(v)?)?;
                        }
                    }
                    out[(i * d + j) * d + k] = acc;
                }
            }
        }
        Some(out)
    }
}

/// Constants of `t` in the basis `p`, or a nonzero multiple of them when
/// `cone` is set.
fn act(t: &Table<Rational>, int: Option<&IntTable>, p: &[Vec<i64>], cone: bool) -> Table<Rational> {
    let names = t.names().to_vec();
    let parity = t.parity().to_vec();
    if cone {
        if let Some(int) = int {
            let m: Vec<Vec<i128>> = p
                .iter()
                .map(|r| r.iter().map(|&v| v as i128).collect())
                .collect();
            if let Some(c) = int.transform(p, &adjugate(&m)) {
                let c = c
                    .into_iter()
                    .map(|v| Rational::from_integer(BigInt::from(v)))
                    .collect();
                return Table::from_constants(names, parity, c);
            }
        }
    }
    let pm: Matrix<Rational> =
        Matrix::from_fn(p.len(), p.len(), |a, i| Rational::from_int(p[a][i]));
    let inv = pm.inverse().expect("sampled matrices are invertible");
    transform_with_inverse(t, &pm, &inv, names, parity)
}

fn in_basis(
    a: &SuperAlgebra<Rational>,
    r: &ClosedSet,
) -> Result<Table<Rational>, DegenerationError> {
    a.flatten().reorder(&r.basis).ok_or_else(|| {
        DegenerationError::BasisMismatch(format!(
            "{:?} is not a reordering of {:?}",
            r.basis,
            a.basis_order()
        ))
    })
}

/// Number of random upper-triangular `g` with `g * j` in `R`, and the first
/// failing condition seen.
pub fn stability_count(
    j: &SuperAlgebra<Rational>,
    r: &ClosedSet,
    trials: std::ops::Range<usize>,
    cfg: &SeparationConfig,
) -> Result<(usize, Option<String>), DegenerationError> {
    let src = in_basis(j, r)?;
    let parity = src.parity().to_vec();
    let (graded, cone) = (r.group == Group::Graded, r.is_cone());
    let int = IntTable::new(&src);
    let failures: Vec<Option<String>> = trials
        .clone()
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(cfg.seed, trial, 0);
            let p = random_triangular(&mut rng, &parity, graded, cfg.stability_bound);
            closed_set_failure(&act(&src, int.as_ref(), &p, cone), r)
        })
        .collect::<Result<_, _>>()?;
    let stable = failures.iter().filter(|f| f.is_none()).count();
    Ok((stable, failures.into_iter().flatten().next()))
}

/// Number of random bases of `j2` in which `R` fails.
pub fn separation_count(
    j2: &SuperAlgebra<Rational>,
    r: &ClosedSet,
    trials: std::ops::Range<usize>,
    cfg: &SeparationConfig,
) -> Result<usize, DegenerationError> {
    let tgt = in_basis(j2, r)?;
    let parity = tgt.parity().to_vec();
    let (graded, cone) = (r.group == Group::Graded, r.is_cone());
    let int = IntTable::new(&tgt);
    let separated: Vec<bool> = trials
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(cfg.seed, trial, 1);
            let (p, _) = random_invertible(&mut rng, &parity, graded, cfg.separation_bound);
            closed_set_failure(&act(&tgt, int.as_ref(), &p, cone), r).map(|f| f.is_some())
        })
        .collect::<Result<_, _>>()?;
    Ok(separated.into_iter().filter(|&s| s).count())
}

/// Randomized test of a certificate: how often `R` survives random
/// upper-triangular changes of `j`, and how often it fails on random bases
/// of `j2`.
pub fn separation_test(
    j: &SuperAlgebra<Rational>,
    j2: &SuperAlgebra<Rational>,
    r: &ClosedSet,
    cfg: &SeparationConfig,
) -> Result<SeparationReport, DegenerationError> {
    let (stable, stability_failure) = stability_count(j, r, 0..cfg.trials, cfg)?;
    let separated = separation_count(j2, r, 0..cfg.trials, cfg)?;
    Ok(SeparationReport {
        trials: cfg.trials,
        seed: cfg.seed,
        stable,
        separated,
        stability_failure,
    })
}

/// Parameter values used when a family appears in a certificate.
pub const FAMILY_SAMPLES: [i64; 5] = [2, 3, 5, 7, -3];

/// Outcome of a certificate file checked against the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub id: String,
    pub trials: usize,
    pub seed: u64,
    /// First condition the source violates in the declared basis.
    pub source_failure: Option<String>,
    pub stable: usize,
    pub stability_failure: Option<String>,
    /// `(target, separated trials)`.
    pub separations: Vec<(String, usize)>,
}

impl CertificateReport {
    pub fn passed(&self, min_separation: f64) -> bool {
        self.source_failure.is_none()
            && self.stable == self.trials
            && self
                .separations
                .iter()
                .all(|(_, s)| *s as f64 >= min_separation * self.trials as f64)
    }
}

type Member = (SuperAlgebra<Rational>, std::ops::Range<usize>);

/// Members of `name` to sample, splitting `trials` among family values.
fn members(catalog: &Catalog, name: &str, trials: usize) -> Result<Vec<Member>, DegenerationError> {
    let entry = catalog.entry(name);
    if name.contains('^') || !entry?.is_family() {
        return Ok(vec![(catalog.lookup_spec(name)?, 0..trials)]);
    }
    let k = FAMILY_SAMPLES.len();
    FAMILY_SAMPLES
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let alg = catalog.lookup(name, Some(&Rational::from_int(v)))?;
            Ok((alg, i * trials / k..(i + 1) * trials / k))
        })
        .collect()
}

/// Checks a certificate: the source satisfies it exactly (symbolically in
/// the parameter for a family), it is stable under sampled upper-triangular
/// changes, and it separates each target.
pub fn check_certificate(
    r: &ClosedSet,
    catalog: &Catalog,
    cfg: &SeparationConfig,
) -> Result<CertificateReport, DegenerationError> {
    let entry = catalog.entry(r.source.split('^').next().unwrap_or_default())?;
    let source_failure = if entry.is_family() && !r.source.contains('^') {
        let alg = entry.record.instantiate(Some(&RatFun::s()))?;
        let t = alg.flatten().reorder(&r.basis).ok_or_else(|| {
            DegenerationError::BasisMismatch(format!("{:?} does not match the source", r.basis))
        })?;
        closed_set_failure(&t, r)?
    } else {
        closed_set_failure(&in_basis(&catalog.lookup_spec(&r.source)?, r)?, r)?
    };
    let mut stable = 0;
    let mut stability_failure = None;
    for (alg, range) in members(catalog, &r.source, cfg.trials)? {
        let (s, f) = stability_count(&alg, r, range, cfg)?;
        stable += s;
        stability_failure = stability_failure.or(f);
    }
    let mut separations = Vec::new();
    for target in &r.targets {
        let mut separated = 0;
        for (alg, range) in members(catalog, target, cfg.trials)? {
            separated += separation_count(&alg, r, range, cfg)?;
        }
        separations.push((target.clone(), separated));
    }
    Ok(CertificateReport {
        id: r.id.clone(),
        trials: cfg.trials,
        seed: cfg.seed,
        source_failure,
        stable,
        stability_failure,
        separations,
    })
}
