//! The graded Jordan identity.

use rayon::prelude::*;

use super::table::{unit, Table};
use super::{Element, LoadError, SuperAlgebra};
use crate::exactmath::Field;

fn sign<F: Field>(odd: bool, v: Vec<F>) -> Vec<F> {
    if odd {
        v.into_iter().map(|c| -c).collect()
    } else {
        v
    }
}

fn axpy<F: Field>(acc: &mut [F], v: &[F], negate: bool) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = if negate {
                a.clone() - b.clone()
            } else {
                a.clone() + b.clone()
            };
        }
    }
}

/// `J(x,y,z,t)` on homogeneous coordinate vectors with the given parities.
pub(crate) fn defect_coords<F: Field>(
    tab: &Table<F>,
    (x, px): (&[F], u8),
    (y, py): (&[F], u8),
    (z, pz): (&[F], u8),
    (t, pt): (&[F], u8),
) -> Vec<F> {
    let mul = |a: &[F], b: &[F]| tab.multiply(a, b);
    let odd = |e: u8| e % 2 == 1;
    let xy = mul(x, y);
    let xt = mul(x, t);
    let yt = mul(y, t);
    let mut out = vec![F::zero(); tab.dim()];
    // ((xy)z)t
    axpy(&mut out, &mul(&mul(&xy, z), t), false);
    // (-1)^{|y||z|+|y||t|+|z||t|} ((xt)z)y
    let s1 = odd(py * pz + py * pt + pz * pt);
    axpy(&mut out, &sign(s1, mul(&mul(&xt, z), y)), false);
    // (-1)^{|x||y|+|x||z|+|x||t|+|z||t|} ((yt)z)x
    let s2 = odd(px * py + px * pz + px * pt + pz * pt);
    axpy(&mut out, &sign(s2, mul(&mul(&yt, z), x)), false);
    // -(xy)(zt)
    axpy(&mut out, &mul(&xy, &mul(z, t)), true);
    // -(-1)^{|t|(|y|+|z|)} (xt)(yz)
    let s3 = odd(pt * (py + pz));
    axpy(&mut out, &sign(s3, mul(&xt, &mul(y, z))), true);
    // -(-1)^{|y||z|} (xz)(yt)
    let s4 = odd(py * pz);
    axpy(&mut out, &sign(s4, mul(&mul(x, z), &yt)), true);
    out
}

/// Evaluates `J(x,y,z,t)`; every argument must be homogeneous.
pub fn jordan_defect<F: Field>(
    alg: &SuperAlgebra<F>,
    x: &Element<F>,
    y: &Element<F>,
    z: &Element<F>,
    t: &Element<F>,
) -> Result<Element<F>, LoadError> {
    let args = [x, y, z, t];
    let mut parts = Vec::with_capacity(4);
    for a in args {
        let p = a.parity().ok_or(LoadError::NonHomogeneousArgument)?;
        parts.push((a.coords(), p));
    }
    let v = defect_coords(
        alg.graded_table(),
        (&parts[0].0, parts[0].1),
        (&parts[1].0, parts[1].1),
        (&parts[2].0, parts[2].1),
        (&parts[3].0, parts[3].1),
    );
    Ok(Element::from_coords(alg.m(), v))
}

#[derive(Clone, Debug, PartialEq)]
pub enum JordanFailure<F> {
    Grading { i: String, j: String, k: String },
    Supercommutativity { i: String, j: String },
    Defect { quad: [String; 4], value: Vec<F> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanReport<F> {
    pub quadruples_checked: usize,
    pub failure: Option<JordanFailure<F>>,
}

impl<F> JordanReport<F> {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl<F: Field> std::fmt::Display for JordanFailure<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JordanFailure::Grading { i, j, k } => {
                write!(f, "grading violated: {i}*{j} has a {k} component")
            }
            JordanFailure::Supercommutativity { i, j } => {
                write!(f, "supercommutativity violated for {i}, {j}")
            }
            JordanFailure::Defect { quad, value } => {
                let v: Vec<String> = value.iter().map(|c| c.to_string()).collect();
                write!(f, "J({}) = [{}]", quad.join(","), v.join(", "))
            }
        }
    }
}

/// Checks grading, supercommutativity and `J(x,y,z,t) = 0` on all basis
/// quadruples of a table, reporting the first failure in lexicographic order.
pub fn check_super_jordan<F: Field>(tab: &Table<F>) -> JordanReport<F> {
    let d = tab.dim();
    let names = tab.names();
    let par = tab.parity();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if !tab.get(i, j, k).is_zero() && par[k] != par[i] ^ par[j] {
                    return JordanReport {
                        quadruples_checked: 0,
                        failure: Some(JordanFailure::Grading {
                            i: names[i].clone(),
                            j: names[j].clone(),
                            k: names[k].clone(),
                        }),
                    };
                }
            }
        }
    }
    if !tab.is_supercommutative() {
        let (i, j) = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .find(|&(i, j)| {
                let odd = par[i] & par[j] == 1;
                (0..d).any(|k| {
                    let (a, b) = (tab.get(i, j, k), tab.get(j, i, k));
                    if odd {
                        *a != -b.clone()
                    } else {
                        a != b
                    }
                })
            })
            .expect("some pair violates supercommutativity");
        return JordanReport {
            quadruples_checked: 0,
            failure: Some(JordanFailure::Supercommutativity {
                i: names[i].clone(),
                j: names[j].clone(),
            }),
        };
    }
    let units: Vec<Vec<F>> = (0..d).map(|i| unit(d, i)).collect();
    let total = d.pow(4);
    let bad = (0..total).into_par_iter().find_map_first(|q| {
        let ix = [q / (d * d * d), (q / (d * d)) % d, (q / d) % d, q % d];
        let arg = |a: usize| (units[ix[a]].as_slice(), par[ix[a]]);
        let v = defect_coords(tab, arg(0), arg(1), arg(2), arg(3));
        v.iter().any(|c| !c.is_zero()).then_some((ix, v))
    });
    JordanReport {
        quadruples_checked: total,
        failure: bad.map(|(ix, value)| JordanFailure::Defect {
            quad: ix.map(|i| names[i].clone()),
            value,
        }),
    }
}

impl<F: Field> SuperAlgebra<F> {
    pub fn check_super_jordan(&self) -> JordanReport<F> {
        check_super_jordan(self.graded_table())
    }
}
