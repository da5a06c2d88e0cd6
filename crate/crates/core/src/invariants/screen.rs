//! Necessary conditions for a degeneration `J → J'`.
//!
//! A violation of any condition proves that `J` does not degenerate to
//! `J'`. An empty report proves nothing.

use std::fmt;

use thiserror::Error;

use crate::exactmath::Rational;
use crate::superalg::SuperAlgebra;

use super::{associated_algebra, burde_invariant, is_associative, orbit_dimension, BurdeStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScreenItem {
    PowerDims,
    EvenPart,
    AssociatedAlgebra,
    Burde,
    Associativity,
    OrbitDimension,
}

impl ScreenItem {
    pub fn tag(&self) -> &'static str {
        match self {
            ScreenItem::PowerDims => "power-dims",
            ScreenItem::EvenPart => "even-part",
            ScreenItem::AssociatedAlgebra => "associated-algebra",
            ScreenItem::Burde => "burde",
            ScreenItem::Associativity => "associativity",
            ScreenItem::OrbitDimension => "orbit-dimension",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenViolation {
    pub item: ScreenItem,
    pub detail: String,
}

impl fmt::Display for ScreenViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation: {}", self.item.tag(), self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScreenReport {
    pub violations: Vec<ScreenViolation>,
}

impl ScreenReport {
    pub fn obstructed(&self) -> bool {
        !self.violations.is_empty()
    }

    pub fn has(&self, item: ScreenItem) -> bool {
        self.violations.iter().any(|v| v.item == item)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("cannot compare type ({0},{1}) with type ({2},{3})")]
pub struct TypeMismatch(pub usize, pub usize, pub usize, pub usize);

#[derive(Clone, Debug)]
pub struct ScreenConfig {
    pub burde_pairs: Vec<(u32, u32)>,
    pub burde_trials: usize,
    pub seed: u64,
}

impl Default for ScreenConfig {
    fn default() -> Self {
        ScreenConfig {
            burde_pairs: vec![(1, 1), (1, 2), (2, 1), (2, 2)],
            burde_trials: 16,
            seed: 0,
        }
    }
}

/// An algebra together with the name of its even part, when known.
#[derive(Clone, Copy, Debug)]
pub struct ScreenSubject<'a> {
    pub alg: &'a SuperAlgebra<Rational>,
    pub even_label: Option<&'a str>,
}

fn basic_items(
    a: &SuperAlgebra<Rational>,
    b: &SuperAlgebra<Rational>,
    cfg: &ScreenConfig,
    out: &mut Vec<(ScreenItem, String)>,
) {
    let r_max = a.dim() + 1;
    let pa = a.power_filtration(r_max).dims;
    let pb = b.power_filtration(r_max).dims;
    for (r, (x, y)) in pa.iter().zip(&pb).enumerate() {
        if x.0 < y.0 || x.1 < y.1 {
            out.push((
                ScreenItem::PowerDims,
                format!("dim J^{} = {:?} < {:?}", r + 1, x, y),
            ));
            break;
        }
    }
    let (fa, fb) = (a.flatten(), b.flatten());
    for &(i, j) in &cfg.burde_pairs {
        let va = burde_invariant(&fa, i, j, cfg.burde_trials, cfg.seed);
        let vb = burde_invariant(&fb, i, j, cfg.burde_trials, cfg.seed);
        if let (BurdeStatus::Defined(x), BurdeStatus::Defined(y)) = (&va.status, &vb.status) {
            if x != y {
                out.push((ScreenItem::Burde, format!("c_{{{i},{j}}} = {x} vs {y}")));
            }
        }
    }
    if is_associative(a) && !is_associative(b) {
        out.push((
            ScreenItem::Associativity,
            "source associative, target not".to_string(),
        ));
    }
}

/// Runs all six conditions. `even_reachable(a, b)` answers whether the
/// even part named `a` degenerates to the one named `b`, or `None` when
/// unknown.
pub fn nondegeneration_screen(
    j: ScreenSubject<'_>,
    k: ScreenSubject<'_>,
    even_reachable: &dyn Fn(&str, &str) -> Option<bool>,
    cfg: &ScreenConfig,
) -> Result<ScreenReport, TypeMismatch> {
    let (a, b) = (j.alg, k.alg);
    if (a.m(), a.n()) != (b.m(), b.n()) {
        return Err(TypeMismatch(a.m(), a.n(), b.m(), b.n()));
    }
    let mut raw = Vec::new();
    basic_items(a, b, cfg, &mut raw);
    if let (Some(x), Some(y)) = (j.even_label, k.even_label) {
        if even_reachable(x, y) == Some(false) {
            raw.push((
                ScreenItem::EvenPart,
                format!("{x} does not degenerate to {y}"),
            ));
        }
    }
    let mut assoc = Vec::new();
    basic_items(
        &associated_algebra(a),
        &associated_algebra(b),
        cfg,
        &mut assoc,
    );
    for (item, detail) in assoc {
        raw.push((
            ScreenItem::AssociatedAlgebra,
            format!("{} on a(J): {}", item.tag(), detail),
        ));
    }
    let (oa, ob) = (orbit_dimension(a), orbit_dimension(b));
    if oa <= ob && a.flatten() != b.flatten() {
        raw.push((ScreenItem::OrbitDimension, format!("{oa} ≤ {ob}")));
    }
    raw.sort_by_key(|(item, _)| *item);
    Ok(ScreenReport {
        violations: raw
            .into_iter()
            .map(|(item, detail)| ScreenViolation { item, detail })
            .collect(),
    })
}
