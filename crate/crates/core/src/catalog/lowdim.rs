//! Algebras of dimension at most three and labels built from them.
//!
//! A label is a `+`-separated list of summand names, for instance
//! `B1+U2` or `S2^2 + S1^1`. `Ck` stands for the zero algebra of
//! dimension `k`, that is `k` copies of `U2`.

use std::collections::BTreeMap;

use crate::exactmath::Rational;
use crate::invariants::identify;
use crate::superalg::{SuperAlgebra, Table};

use super::graph::ReferenceGraph;

#[derive(Clone, Debug)]
pub struct LowDimEntry {
    pub alg: SuperAlgebra<Rational>,
    pub unresolved: bool,
}

#[derive(Clone, Debug, Default)]
pub struct LowDim {
    pub(crate) algebras: BTreeMap<String, LowDimEntry>,
    /// Graphs for dimensions 1, 2 and 3.
    pub(crate) graphs: Vec<ReferenceGraph>,
}

pub fn summands(label: &str) -> Vec<String> {
    label
        .split('+')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn zero_power(name: &str) -> Option<usize> {
    name.strip_prefix('C')?.parse().ok()
}

impl LowDim {
    pub fn get(&self, name: &str) -> Option<&LowDimEntry> {
        self.algebras.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.algebras.keys().map(String::as_str)
    }

    /// Graph of primary degenerations in dimension `d` (1, 2 or 3).
    pub fn graph(&self, d: usize) -> Option<&ReferenceGraph> {
        d.checked_sub(1).and_then(|i| self.graphs.get(i))
    }

    /// Expands `Ck` into `k` copies of `U2`.
    fn expand(&self, label: &str) -> Vec<String> {
        summands(label)
            .into_iter()
            .flat_map(|s| match zero_power(&s) {
                Some(k) => vec!["U2".to_string(); k],
                None => vec![s],
            })
            .collect()
    }

    /// Whether every summand of `label` names a known algebra.
    pub fn resolves(&self, label: &str) -> bool {
        let parts = self.expand(label);
        !parts.is_empty() && parts.iter().all(|s| self.algebras.contains_key(s))
    }

    /// Total dimension of a label, if it resolves.
    pub fn label_dim(&self, label: &str) -> Option<usize> {
        self.expand(label)
            .iter()
            .map(|s| self.algebras.get(s).map(|e| e.alg.dim()))
            .sum()
    }

    /// Ungraded direct sum of the summands of a purely even label.
    pub fn jordan_table(&self, label: &str) -> Option<Table<Rational>> {
        let parts = self.expand(label);
        let tables: Vec<Table<Rational>> = parts
            .iter()
            .map(|s| {
                let e = self.algebras.get(s)?;
                (e.alg.n() == 0).then(|| e.alg.graded_table().clone())
            })
            .collect::<Option<_>>()?;
        Some(direct_sum(&tables))
    }

    /// Whether the even algebra named `a` degenerates to the one named `b`,
    /// read off the reference graph of their dimension.
    pub fn even_reachable(&self, a: &str, b: &str) -> Option<bool> {
        let d = self.label_dim(a)?;
        if self.label_dim(b)? != d {
            return Some(false);
        }
        self.graph(d)?.reachable(a, b).ok()
    }

    /// Identifies an ungraded table among the nodes of the reference graph
    /// of its dimension, when the fingerprint match is unique.
    pub fn identify_jordan(&self, t: &Table<Rational>) -> Option<String> {
        let graph = self.graph(t.dim())?;
        let candidates: Vec<(String, Table<Rational>)> = graph
            .nodes()
            .filter_map(|v| Some((v.to_string(), self.jordan_table(v)?)))
            .collect();
        identify(t, &candidates)
    }
}

/// Block-diagonal sum with basis names `x1, x2, ...`.
pub fn direct_sum(tables: &[Table<Rational>]) -> Table<Rational> {
    let d: usize = tables.iter().map(Table::dim).sum();
    let names = (1..=d).map(|i| format!("x{i}")).collect();
    let parity = tables.iter().flat_map(|t| t.parity().to_vec()).collect();
    let mut out = Table::zero(names, parity);
    let mut off = 0;
    for t in tables {
        let k = t.dim();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    out.set(off + i, off + j, off + l, t.get(i, j, l).clone());
                }
            }
        }
        off += k;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summand_splitting() {
        assert_eq!(summands("S2^3 + S1^1"), vec!["S2^3", "S1^1"]);
        assert_eq!(summands("B1+U2"), vec!["B1", "U2"]);
        assert_eq!(zero_power("C3"), Some(3));
        assert_eq!(zero_power("U1"), None);
    }
}
