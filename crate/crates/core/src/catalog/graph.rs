//! Primary-degeneration graphs of small Jordan algebras.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::CatalogError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReferenceGraph {
    nodes: BTreeSet<String>,
    edges: BTreeMap<String, BTreeSet<String>>,
}

impl ReferenceGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, v: &str) {
        self.nodes.insert(v.to_string());
    }

    pub fn add_edge(&mut self, a: &str, b: &str) {
        self.add_node(a);
        self.add_node(b);
        self.edges
            .entry(a.to_string())
            .or_default()
            .insert(b.to_string());
    }

    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(String::as_str)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges
            .iter()
            .flat_map(|(a, bs)| bs.iter().map(move |b| (a.as_str(), b.as_str())))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.values().map(BTreeSet::len).sum()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.nodes.contains(v)
    }

    /// Reflexive-transitive closure membership.
    pub fn reachable(&self, a: &str, b: &str) -> Result<bool, CatalogError> {
        for v in [a, b] {
            if !self.contains(v) {
                return Err(CatalogError::UnknownNode(v.to_string()));
            }
        }
        let mut seen = BTreeSet::from([a]);
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v == b {
                return Ok(true);
            }
            for w in self.edges.get(v).into_iter().flatten() {
                if seen.insert(w.as_str()) {
                    queue.push_back(w.as_str());
                }
            }
        }
        Ok(false)
    }

    pub fn is_acyclic(&self) -> bool {
        self.nodes.iter().all(|v| {
            self.edges
                .get(v)
                .into_iter()
                .flatten()
                .all(|w| !self.reachable(w, v).unwrap_or(false))
        })
    }

    /// Parses lines of the form `A -> B`.
    pub fn parse_edges(src: &str) -> Result<Self, CatalogError> {
        let mut g = Self::new();
        for (no, line) in content_lines(src) {
            let (a, b) = line
                .split_once("->")
                .ok_or_else(|| CatalogError::Format(format!("line {no}: expected `A -> B`")))?;
            g.add_edge(a.trim(), b.trim());
        }
        Ok(g)
    }

    /// Parses adjacency lines of the form `A: B C D`.
    pub fn parse_adjacency(src: &str) -> Result<Self, CatalogError> {
        let mut g = Self::new();
        for (no, line) in content_lines(src) {
            let (a, rest) = line
                .split_once(':')
                .ok_or_else(|| CatalogError::Format(format!("line {no}: expected `A: B ...`")))?;
            g.add_node(a.trim());
            for b in rest.split_whitespace() {
                g.add_edge(a.trim(), b);
            }
        }
        Ok(g)
    }
}

fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}
