//! Isomorphism-invariant fingerprints of small ungraded algebras.

use crate::exactmath::{Field, Matrix, Rational};
use crate::superalg::Table;

use super::burde::{burde_invariant, BurdeStatus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim: usize,
    pub power_dims: Vec<usize>,
    pub derivation_dim: usize,
    pub associative: bool,
    pub annihilator_dim: usize,
    pub trace_form_rank: usize,
    pub unital: bool,
    pub burde_11: BurdeStatus,
}

pub fn fingerprint(t: &Table<Rational>) -> Fingerprint {
    let d = t.dim();
    let power_dims = t.powers(d + 1).iter().map(|s| s.dim()).collect();
    let ann = Matrix::from_fn(d * d, d, |row, i| {
        let (k, l) = (row / d, row % d);
        t.get(i, k, l).clone()
    });
    let trace_form = Matrix::from_fn(d, d, |i, j| {
        let l = t.left_mult(t.basis_product(i, j));
        (0..d).fold(Rational::from_int(0), |acc, k| acc + l[(k, k)].clone())
    });
    Fingerprint {
        dim: d,
        power_dims,
        derivation_dim: t.derivation_dim(),
        associative: t.is_associative(),
        annihilator_dim: ann.nullspace_dim(),
        trace_form_rank: trace_form.rank(),
        unital: has_unit(t),
        burde_11: burde_invariant(t, 1, 1, 16, 0).status,
    }
}

/// Whether some `u` has `L(u)` equal to the identity.
fn has_unit(t: &Table<Rational>) -> bool {
    let d = t.dim();
    let system = |augmented: bool| {
        Matrix::from_fn(d * d, d + usize::from(augmented), |row, col| {
            let (a, b) = (row / d, row % d);
            if col == d {
                Rational::from_int(i64::from(a == b))
            } else {
                t.get(col, b, a).clone()
            }
        })
    };
    system(false).rank() == system(true).rank()
}

/// Name of the unique candidate whose fingerprint matches, if any.
pub fn identify(t: &Table<Rational>, candidates: &[(String, Table<Rational>)]) -> Option<String> {
    let fp = fingerprint(t);
    let mut hits = candidates
        .iter()
        .filter(|(_, c)| c.dim() == t.dim() && fingerprint(c) == fp);
    let first = hits.next()?;
    if hits.next().is_some() {
        return None;
    }
    Some(first.0.clone())
}
