//! Change of basis on structure constants.
//!
//! A basis change is a square matrix `P` whose column `i` holds the
//! coordinates of the new vector `x'_i` in the old basis. The new constants
//! are `c'[i][j][k] = Σ_l P⁻¹[k][l] Σ_{a,b} P[a][i] P[b][j] c[a][b][l]`.

use crate::exactmath::{Field, Matrix};
use crate::superalg::{SuperAlgebra, Table};

use super::DegenerationError;

/// Which group a basis change is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionMode {
    /// Parity-preserving changes only.
    Graded,
    /// Any invertible change.
    Ungraded,
}

impl std::fmt::Display for ActionMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ActionMode::Graded => "graded",
            ActionMode::Ungraded => "ungraded",
        })
    }
}

/// Whether every column of `p` only uses old vectors of its own parity.
pub fn preserves_parity<F: Field>(p: &Matrix<F>, old: &[u8], new: &[u8]) -> bool {
    (0..p.rows()).all(|a| (0..p.cols()).all(|i| old[a] == new[i] || p[(a, i)].is_zero()))
}

/// Constants of `t` in the basis given by the columns of `p`, with inverse
/// `p_inv` supplied by the caller.
pub fn transform_with_inverse<F: Field>(
    t: &Table<F>,
    p: &Matrix<F>,
    p_inv: &Matrix<F>,
    names: Vec<String>,
    parity: Vec<u8>,
) -> Table<F> {
    let d = t.dim();
    let zero = F::zero();
    // x[i][b][l] = Σ_a P[a][i] c[a][b][l]
    let mut x = vec![zero.clone(); d * d * d];
    for i in 0..d {
        for a in 0..d {
            let pa = &p[(a, i)];
            if pa.is_zero() {
                continue;
            }
            for b in 0..d {
                for l in 0..d {
                    let c = t.get(a, b, l);
                    if !c.is_zero() {
                        let slot = &mut x[(i * d + b) * d + l];
                        *slot = slot.clone() + pa.clone() * c.clone();
                    }
                }
            }
        }
    }
    // y[i][j][l] = Σ_b P[b][j] x[i][b][l]
    let mut y = vec![zero.clone(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            for b in 0..d {
                let pb = &p[(b, j)];
                if pb.is_zero() {
                    continue;
                }
                for l in 0..d {
                    let v = &x[(i * d + b) * d + l];
                    if !v.is_zero() {
                        let slot = &mut y[(i * d + j) * d + l];
                        *slot = slot.clone() + pb.clone() * v.clone();
                    }
                }
            }
        }
    }
    let mut out = Table::zero(names, parity);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut acc = zero.clone();
                for l in 0..d {
                    let v = &y[(i * d + j) * d + l];
                    let q = &p_inv[(k, l)];
                    if !v.is_zero() && !q.is_zero() {
                        acc = acc + q.clone() * v.clone();
                    }
                }
                out.set(i, j, k, acc);
            }
        }
    }
    out
}

/// Constants of `t` in the basis given by the columns of `p`. The new
/// vectors take the names and parities supplied.
pub fn transform_table<F: Field>(
    t: &Table<F>,
    p: &Matrix<F>,
    names: Vec<String>,
    parity: Vec<u8>,
) -> Result<Table<F>, DegenerationError> {
    let d = t.dim();
    if p.rows() != d || p.cols() != d || names.len() != d {
        return Err(DegenerationError::BasisMismatch(format!(
            "a {}x{} matrix cannot act on a table of dimension {d}",
            p.rows(),
            p.cols()
        )));
    }
    let p_inv = p.inverse().ok_or(DegenerationError::SingularMatrix)?;
    Ok(transform_with_inverse(t, p, &p_inv, names, parity))
}

/// Acts on the flattened table of `alg` (in its declared basis order) by the
/// basis change `p`, keeping the basis names.
///
/// In graded mode `p` must not mix parities; the result is then again a
/// superalgebra, available through [`graded_basis_change`].
pub fn apply_basis_change<F: Field>(
    alg: &SuperAlgebra<F>,
    p: &Matrix<F>,
    mode: ActionMode,
) -> Result<Table<F>, DegenerationError> {
    let flat = alg.flatten();
    let parity = flat.parity().to_vec();
    if mode == ActionMode::Graded && !preserves_parity(p, &parity, &parity) {
        return Err(DegenerationError::NonGradedWitness);
    }
    transform_table(&flat, p, flat.names().to_vec(), parity)
}

/// Graded basis change returning a superalgebra with the same names and
/// declared order.
pub fn graded_basis_change<F: Field>(
    alg: &SuperAlgebra<F>,
    p: &Matrix<F>,
) -> Result<SuperAlgebra<F>, DegenerationError> {
    let flat = apply_basis_change(alg, p, ActionMode::Graded)?;
    let graded_names = alg.graded_table().names().to_vec();
    let table = flat
        .reorder(&graded_names)
        .expect("same names in another order");
    Ok(SuperAlgebra::from_graded_table(
        alg.name().map(str::to_string),
        alg.m(),
        alg.n(),
        table,
        alg.basis_order().to_vec(),
    ))
}
