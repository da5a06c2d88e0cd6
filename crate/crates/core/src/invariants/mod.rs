//! Degeneration invariants and the necessary-condition screen.

mod burde;
mod fingerprint;
mod screen;

use crate::exactmath::Field;
use crate::superalg::{leibniz_system, SuperAlgebra, Table};

pub use burde::{burde_invariant, BurdeStatus, BurdeValue};
pub use fingerprint::{fingerprint, identify, Fingerprint};
pub use screen::{
    nondegeneration_screen, ScreenConfig, ScreenItem, ScreenReport, ScreenSubject, ScreenViolation,
    TypeMismatch,
};

/// Dimensions of the even and odd superderivations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DerivationSpace {
    pub even_dim: usize,
    pub odd_dim: usize,
}

impl DerivationSpace {
    pub fn total(&self) -> usize {
        self.even_dim + self.odd_dim
    }
}

pub fn derivation_dims<F: Field>(alg: &SuperAlgebra<F>) -> DerivationSpace {
    let t = alg.graded_table();
    let par = t.parity();
    let d = t.dim();
    let pairs = |odd: bool| -> Vec<(usize, usize)> {
        (0..d)
            .flat_map(|a| (0..d).map(move |b| (a, b)))
            .filter(|&(a, b)| (par[a] != par[b]) == odd)
            .collect()
    };
    let even = leibniz_system(t, &pairs(false), |_| false).nullspace_dim();
    let odd = leibniz_system(t, &pairs(true), |i| par[i] == 1).nullspace_dim();
    DerivationSpace {
        even_dim: even,
        odd_dim: odd,
    }
}

/// `(m+n)^2` minus the total superderivation dimension.
pub fn orbit_dimension<F: Field>(alg: &SuperAlgebra<F>) -> usize {
    alg.dim() * alg.dim() - derivation_dims(alg).total()
}

/// Keeps only the odd-by-odd products.
pub fn associated_algebra<F: Field>(alg: &SuperAlgebra<F>) -> SuperAlgebra<F> {
    let t = alg.graded_table();
    let par = t.parity().to_vec();
    let d = t.dim();
    let mut out = Table::zero(t.names().to_vec(), par.clone());
    for i in 0..d {
        for j in 0..d {
            if par[i] == 1 && par[j] == 1 {
                for k in 0..d {
                    out.set(i, j, k, t.get(i, j, k).clone());
                }
            }
        }
    }
    let name = alg.name().map(|n| format!("a({n})"));
    SuperAlgebra::from_graded_table(name, alg.m(), alg.n(), out, alg.basis_order().to_vec())
}

pub fn is_associative<F: Field>(alg: &SuperAlgebra<F>) -> bool {
    alg.graded_table().is_associative()
}

/// The even subalgebra as an ungraded table.
pub fn even_part<F: Field>(alg: &SuperAlgebra<F>) -> Table<F> {
    let idx: Vec<usize> = (0..alg.m()).collect();
    alg.graded_table().restrict(&idx)
}

/// Power dimensions of an ungraded table, `dim J^r` for `r = 1..=r_max`.
pub fn ungraded_power_dims<F: Field>(t: &Table<F>, r_max: usize) -> Vec<usize> {
    t.powers(r_max).iter().map(|s| s.dim()).collect()
}
