//! Consistency of declared direct-sum decompositions.
//!
//! A label such as `U1 + S2^2 + S1^1` is accepted when the basis splits
//! into blocks of the summands' graded dimensions, products between
//! different blocks vanish, each block is closed under multiplication,
//! and each block has the invariants of its summand.

use crate::exactmath::Rational;
use crate::invariants::{derivation_dims, fingerprint};
use crate::superalg::SuperAlgebra;

use super::lowdim::{summands, LowDim, LowDimEntry};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionCheck {
    Indecomposable,
    /// Blocks found, listed by basis names. `unresolved` is set when some
    /// summand is only known up to its dimensions.
    Consistent {
        blocks: Vec<Vec<String>>,
        unresolved: bool,
    },
    Inconsistent(String),
}

impl DecompositionCheck {
    pub fn is_consistent(&self) -> bool {
        !matches!(self, DecompositionCheck::Inconsistent(_))
    }
}

fn graded_signature(alg: &SuperAlgebra<Rational>) -> impl PartialEq + std::fmt::Debug {
    let r = alg.dim() + 1;
    (
        fingerprint(alg.graded_table()),
        alg.power_filtration(r).dims,
        derivation_dims(alg),
    )
}

fn block_algebra(alg: &SuperAlgebra<Rational>, idx: &[usize]) -> SuperAlgebra<Rational> {
    let t = alg.graded_table().restrict(idx);
    let m = idx.iter().filter(|&&i| i < alg.m()).count();
    let names = t.names().to_vec();
    SuperAlgebra::from_graded_table(None, m, idx.len() - m, t, names)
}

fn splits(alg: &SuperAlgebra<Rational>, blocks: &[Vec<usize>]) -> bool {
    let t = alg.graded_table();
    let d = alg.dim();
    let mut owner = vec![0; d];
    for (b, idx) in blocks.iter().enumerate() {
        for &i in idx {
            owner[i] = b;
        }
    }
    (0..d).all(|i| {
        (0..d).all(|j| {
            let prod = t.basis_product(i, j);
            if owner[i] != owner[j] {
                prod.iter().all(num_traits::Zero::is_zero)
            } else {
                (0..d).all(|k| owner[k] == owner[i] || num_traits::Zero::is_zero(&prod[k]))
            }
        })
    })
}

fn assign(
    i: usize,
    m: usize,
    caps: &mut [(usize, usize)],
    blocks: &mut Vec<Vec<usize>>,
    found: &mut dyn FnMut(&[Vec<usize>]) -> bool,
    d: usize,
) -> bool {
    if i == d {
        return found(blocks);
    }
    for b in 0..caps.len() {
        let slot = if i < m {
            &mut caps[b].0
        } else {
            &mut caps[b].1
        };
        if *slot == 0 {
            continue;
        }
        *slot -= 1;
        blocks[b].push(i);
        let done = assign(i + 1, m, caps, blocks, found, d);
        blocks[b].pop();
        let slot = if i < m {
            &mut caps[b].0
        } else {
            &mut caps[b].1
        };
        *slot += 1;
        if done {
            return true;
        }
    }
    false
}

pub fn check_decomposition(
    alg: &SuperAlgebra<Rational>,
    label: &str,
    lowdim: &LowDim,
) -> DecompositionCheck {
    if label.trim() == "Indecomposable" {
        return DecompositionCheck::Indecomposable;
    }
    let mut parts: Vec<(String, &LowDimEntry)> = Vec::new();
    for s in summands(label) {
        match lowdim.get(&s) {
            Some(e) => parts.push((s, e)),
            None => return DecompositionCheck::Inconsistent(format!("unknown summand {s}")),
        }
    }
    let (m, n) = parts
        .iter()
        .fold((0, 0), |(a, b), (_, e)| (a + e.alg.m(), b + e.alg.n()));
    if (m, n) != (alg.m(), alg.n()) {
        return DecompositionCheck::Inconsistent(format!(
            "summands have type ({m},{n}), algebra has type ({},{})",
            alg.m(),
            alg.n()
        ));
    }
    let signatures: Vec<_> = parts
        .iter()
        .map(|(_, e)| (!e.unresolved).then(|| graded_signature(&e.alg)))
        .collect();
    let mut caps: Vec<(usize, usize)> = parts.iter().map(|(_, e)| (e.alg.m(), e.alg.n())).collect();
    let mut blocks = vec![Vec::new(); parts.len()];
    let mut result = None;
    let mut found = |bs: &[Vec<usize>]| {
        if !splits(alg, bs) {
            return false;
        }
        let ok = bs.iter().zip(&signatures).all(|(idx, sig)| match sig {
            Some(sig) => graded_signature(&block_algebra(alg, idx)) == *sig,
            None => true,
        });
        if ok {
            result = Some(bs.to_vec());
        }
        ok
    };
    assign(0, alg.m(), &mut caps, &mut blocks, &mut found, alg.dim());
    match result {
        Some(bs) => {
            let names = alg.graded_table().names();
            DecompositionCheck::Consistent {
                blocks: bs
                    .iter()
                    .map(|idx| idx.iter().map(|&i| names[i].clone()).collect())
                    .collect(),
                unresolved: parts.iter().any(|(_, e)| e.unresolved),
            }
        }
        None => {
            DecompositionCheck::Inconsistent(format!("no splitting of the basis matches {label}"))
        }
    }
}
