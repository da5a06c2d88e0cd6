//! Sampled Burde invariants `c_{i,j}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_traits::Zero;

use crate::exactmath::{Field, Matrix, Rational};
use crate::superalg::Table;

/// Samples that must survive before a value is reported as defined.
const MIN_SURVIVORS: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BurdeStatus {
    Defined(Rational),
    NotDefined,
    NotConstant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurdeValue {
    pub i: u32,
    pub j: u32,
    pub status: BurdeStatus,
    pub samples_used: usize,
}

impl BurdeValue {
    pub fn defined(&self) -> Option<&Rational> {
        match &self.status {
            BurdeStatus::Defined(v) => Some(v),
            _ => None,
        }
    }
}

fn mat_pow(m: &Matrix<Rational>, k: u32) -> Matrix<Rational> {
    (0..k).fold(Matrix::identity(m.rows()), |acc, _| acc.mul(m))
}

fn trace(m: &Matrix<Rational>) -> Rational {
    (0..m.rows()).fold(Rational::from_int(0), |acc, i| acc + m[(i, i)].clone())
}

/// `tr(L(x)^i) tr(L(y)^j) / tr(L(x)^i L(y)^j)` sampled at random points with
/// coordinates in `{-3..3}`. Samples where any of the three traces vanishes
/// are skipped.
pub fn burde_invariant(
    t: &Table<Rational>,
    i: u32,
    j: u32,
    trials: usize,
    seed: u64,
) -> BurdeValue {
    assert!(i >= 1 && j >= 1 && trials >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = t.dim();
    let mut value: Option<Rational> = None;
    let mut used = 0;
    for _ in 0..trials {
        let x: Vec<Rational> = (0..d)
            .map(|_| Rational::from_int(rng.random_range(-3..=3)))
            .collect();
        let y: Vec<Rational> = (0..d)
            .map(|_| Rational::from_int(rng.random_range(-3..=3)))
            .collect();
        let lx = mat_pow(&t.left_mult(&x), i);
        let ly = mat_pow(&t.left_mult(&y), j);
        let (a, b, c) = (trace(&lx), trace(&ly), trace(&lx.mul(&ly)));
        if a.is_zero() || b.is_zero() || c.is_zero() {
            continue;
        }
        used += 1;
        let v = a * b / c;
        match &value {
            None => value = Some(v),
            Some(prev) if *prev != v => {
                return BurdeValue {
                    i,
                    j,
                    status: BurdeStatus::NotConstant,
                    samples_used: used,
                }
            }
            Some(_) => {}
        }
    }
    let status = match value {
        Some(v) if used >= MIN_SURVIVORS => BurdeStatus::Defined(v),
        _ => BurdeStatus::NotDefined,
    };
    BurdeValue {
        i,
        j,
        status,
        samples_used: used,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b1_has_c11_equal_two() {
        let mut t = Table::zero(vec!["e1".into(), "e2".into()], vec![0, 0]);
        let one = Rational::from_int(1);
        t.set(0, 0, 0, one.clone());
        t.set(0, 1, 1, one.clone());
        t.set(1, 0, 1, one);
        let v = burde_invariant(&t, 1, 1, 16, 0);
        assert_eq!(v.status, BurdeStatus::Defined(Rational::from_int(2)));
    }

    #[test]
    fn zero_algebra_is_not_defined() {
        let t: Table<Rational> = Table::zero(vec!["a".into(), "b".into()], vec![0, 1]);
        let v = burde_invariant(&t, 1, 1, 16, 0);
        assert_eq!(v.status, BurdeStatus::NotDefined);
        assert!(v.samples_used.is_zero());
    }
}
