//! Cross-check of the graded identity through a truncated Grassmann envelope.
//!
//! The Grassmann algebra on `k` generators has a basis of monomials
//! `ξ_I`, encoded as bitmasks. The envelope `G(A) = G_0⊗A_0 + G_1⊗A_1` is
//! multiplied as an ordinary tensor product, `(ξ_I⊗a)(ξ_J⊗b) = ξ_Iξ_J⊗ab`.
//! Over a field of characteristic zero the Jordan identity for a commutative
//! algebra is equivalent to its full linearization
//!
//! ```text
//! ((ab)c)d + ((ad)c)b + ((bd)c)a = (ab)(cd) + (ad)(bc) + (ac)(bd),
//! ```
//!
//! which is multilinear, so it suffices to test it on the spanning set of
//! pure tensors `ξ_I⊗x` with `|I| ≡ |x| (mod 2)`. Products of monomials with
//! overlapping supports vanish, so only pairwise-disjoint supports matter.

use std::collections::BTreeSet;

use super::table::Table;
use crate::exactmath::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnvelopeConfig {
    pub k: usize,
}

impl Default for EnvelopeConfig {
    fn default() -> Self {
        EnvelopeConfig { k: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnvelopeFailure {
    /// `(ξ_I⊗x)(ξ_J⊗y) ≠ (ξ_J⊗y)(ξ_I⊗x)`.
    NotCommutative { args: [String; 2], masks: [u32; 2] },
    /// The linearized Jordan identity fails.
    Identity { args: [String; 4], masks: [u32; 4] },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeReport {
    pub k: usize,
    pub evaluations: usize,
    pub failure: Option<EnvelopeFailure>,
}

impl EnvelopeReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Product of Grassmann monomials: `None` if the supports overlap, otherwise
/// the sign `±1` as `true` for `-1`, and the merged support.
pub fn monomial_product(a: u32, b: u32) -> Option<(bool, u32)> {
    if a & b != 0 {
        return None;
    }
    // Moving each generator of `b` left past the larger generators of `a`.
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some((swaps % 2 == 1, a | b))
}

fn chain_sign(masks: &[u32]) -> bool {
    let mut acc = 0u32;
    let mut neg = false;
    for &m in masks {
        let (s, merged) = monomial_product(acc, m).expect("disjoint supports");
        neg ^= s;
        acc = merged;
    }
    neg
}

/// Every assignment of the `k` generators to one of `arity` arguments or to
/// none of them, as per-argument support masks.
fn assignments(k: usize, arity: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total = (arity + 1).pow(k as u32);
    for code in 0..total {
        let mut masks = vec![0u32; arity];
        let mut c = code;
        for g in 0..k {
            let slot = c % (arity + 1);
            c /= arity + 1;
            if slot > 0 {
                masks[slot - 1] |= 1 << g;
            }
        }
        out.push(masks);
    }
    out
}

pub fn envelope_jordan_check<F: Field>(tab: &Table<F>, cfg: EnvelopeConfig) -> EnvelopeReport {
    let d = tab.dim();
    let par = tab.parity();
    let names = tab.names();
    let mut evaluations = 0;
    let fits = |mask: u32, p: u8| (mask.count_ones() % 2) as u8 == p;

    for (i, j) in (0..d).flat_map(|i| (0..d).map(move |j| (i, j))) {
        let xy = tab.basis_product(i, j);
        let yx = tab.basis_product(j, i);
        let mut seen = BTreeSet::new();
        for m in assignments(cfg.k, 2) {
            if !(fits(m[0], par[i]) && fits(m[1], par[j])) {
                continue;
            }
            let (s_xy, s_yx) = (chain_sign(&[m[0], m[1]]), chain_sign(&[m[1], m[0]]));
            if !seen.insert((s_xy, s_yx)) {
                continue;
            }
            evaluations += 1;
            let ok = xy.iter().zip(yx).all(|(a, b)| {
                let a = if s_xy { -a.clone() } else { a.clone() };
                let b = if s_yx { -b.clone() } else { b.clone() };
                a == b
            });
            if !ok {
                return EnvelopeReport {
                    k: cfg.k,
                    evaluations,
                    failure: Some(EnvelopeFailure::NotCommutative {
                        args: [names[i].clone(), names[j].clone()],
                        masks: [m[0], m[1]],
                    }),
                };
            }
        }
    }

    let masks4 = assignments(cfg.k, 4);
    for q in 0..d.pow(4) {
        let ix = [q / (d * d * d), (q / (d * d)) % d, (q / d) % d, q % d];
        let usable: Vec<&Vec<u32>> = masks4
            .iter()
            .filter(|m| (0..4).all(|a| fits(m[a], par[ix[a]])))
            .collect();
        if usable.is_empty() {
            continue;
        }
        let [a, b, c, dd] = ix.map(|i| crate::superalg::unit::<F>(d, i));
        let mul = |x: &[F], y: &[F]| tab.multiply(x, y);
        let ab = mul(&a, &b);
        let ad = mul(&a, &dd);
        let bd = mul(&b, &dd);
        let terms = [
            mul(&mul(&ab, &c), &dd),
            mul(&mul(&ad, &c), &b),
            mul(&mul(&bd, &c), &a),
            mul(&ab, &mul(&c, &dd)),
            mul(&ad, &mul(&b, &c)),
            mul(&mul(&a, &c), &mul(&b, &dd)),
        ];
        if terms.iter().all(|t| t.iter().all(|v| v.is_zero())) {
            evaluations += usable.len();
            continue;
        }
        let mut seen = BTreeSet::new();
        for m in usable {
            let [ma, mb, mc, md] = [m[0], m[1], m[2], m[3]];
            let signs = [
                chain_sign(&[ma, mb, mc, md]),
                chain_sign(&[ma, md, mc, mb]),
                chain_sign(&[mb, md, mc, ma]),
                !chain_sign(&[ma, mb, mc, md]),
                !chain_sign(&[ma, md, mb, mc]),
                !chain_sign(&[ma, mc, mb, md]),
            ];
            evaluations += 1;
            if !seen.insert(signs) {
                continue;
            }
            let mut acc = vec![F::zero(); d];
            for (t, &neg) in terms.iter().zip(&signs) {
                for (x, v) in acc.iter_mut().zip(t) {
                    if !v.is_zero() {
                        *x = if neg {
                            x.clone() - v.clone()
                        } else {
                            x.clone() + v.clone()
                        };
                    }
                }
            }
            if acc.iter().any(|v| !v.is_zero()) {
                return EnvelopeReport {
                    k: cfg.k,
                    evaluations,
                    failure: Some(EnvelopeFailure::Identity {
                        args: ix.map(|i| names[i].clone()),
                        masks: [ma, mb, mc, md],
                    }),
                };
            }
        }
    }
    EnvelopeReport {
        k: cfg.k,
        evaluations,
        failure: None,
    }
}
