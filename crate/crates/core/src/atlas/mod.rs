//! Degeneration graphs per type and irreducible-component accounting.

mod dot;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError, Components};
use crate::degeneration::{
    files_with_extension, verify_degeneration, DegenerationError, Verdict, Witness, FAMILY_SAMPLES,
};
use crate::exactmath::{Field, Rational};
use crate::invariants::orbit_dimension;

pub use dot::export_dot;

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("witness `{0}` is not verified")]
    UnverifiedWitness(String),
    #[error("witness `{id}` joins types ({}, {}) and ({}, {})", .source_type.0, .source_type.1, .target_type.0, .target_type.1)]
    CrossType {
        id: String,
        source_type: (usize, usize),
        target_type: (usize, usize),
    },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Degeneration(#[from] DegenerationError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    /// Orbit dimension, of a generic member for a family.
    pub orbit: usize,
    pub rigid: bool,
    pub family: bool,
}

impl Node {
    /// Dimension of the closure of the orbit, or of the union of orbits of a
    /// family.
    pub fn closure_dim(&self) -> usize {
        self.orbit + usize::from(self.family)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: String,
    pub target: String,
    /// Witness ids realizing the edge, sorted.
    pub witnesses: Vec<String>,
}

/// Verified degenerations between the catalog entries of one type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenGraph {
    pub kind: (usize, usize),
    nodes: BTreeMap<String, Node>,
    edges: BTreeMap<(String, String), Vec<String>>,
}

/// Orbit dimension of a catalog entry; the largest value over the sample
/// parameters for a family.
pub fn generic_orbit(catalog: &Catalog, name: &str) -> Result<usize, CatalogError> {
    let e = catalog.entry(name)?;
    if !e.is_family() {
        return Ok(orbit_dimension(&e.instantiate(None)?));
    }
    let mut best = 0;
    for &p in FAMILY_SAMPLES.iter() {
        best = best.max(orbit_dimension(
            &e.instantiate(Some(&Rational::from_int(p)))?,
        ));
    }
    Ok(best)
}

fn base_name(spec: &str) -> &str {
    spec.split('^').next().unwrap_or(spec).trim()
}

impl DegenGraph {
    /// All catalog entries of `kind` as nodes, with no edges.
    pub fn empty(kind: (usize, usize), catalog: &Catalog) -> Result<Self, AtlasError> {
        let comps = catalog.components(kind.0, kind.1)?;
        let entries: Vec<_> = catalog.entries_of_type(kind.0, kind.1).collect();
        let nodes = entries
            .par_iter()
            .map(|e| {
                Ok(Node {
                    name: e.name().to_string(),
                    orbit: generic_orbit(catalog, e.name())?,
                    rigid: comps.rigid.iter().any(|r| r == e.name()),
                    family: e.is_family(),
                })
            })
            .collect::<Result<Vec<_>, CatalogError>>()?;
        Ok(DegenGraph {
            kind,
            nodes: nodes.into_iter().map(|n| (n.name.clone(), n)).collect(),
            edges: BTreeMap::new(),
        })
    }

    pub fn node(&self, name: &str) -> Option<&Node> {
        self.nodes.get(name)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.nodes.values()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|((a, b), w)| Edge {
            source: a.clone(),
            target: b.clone(),
            witnesses: w.clone(),
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        self.edges.contains_key(&(a.to_string(), b.to_string()))
    }

    fn successors<'a>(&'a self, a: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.edges
            .range((a.to_string(), String::new())..)
            .take_while(move |((x, _), _)| x == a)
            .map(|((_, y), _)| y.as_str())
    }

    /// Nodes reachable from `a` by a path of length at least one.
    pub fn reachable_from(&self, a: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<&str> = self.successors(a).collect();
        while let Some(v) = queue.pop_front() {
            if seen.insert(v.to_string()) {
                queue.extend(self.successors(v));
            }
        }
        seen
    }

    /// Whether `b` is reachable from `a` through at least one edge.
    pub fn reaches(&self, a: &str, b: &str) -> bool {
        self.reachable_from(a).contains(b)
    }

    /// Edges `a -> b` for which another path from `a` to `b` exists.
    pub fn implied_edges(&self) -> BTreeSet<(String, String)> {
        let mut out = BTreeSet::new();
        for (a, b) in self.edges.keys() {
            let via_other = self
                .successors(a)
                .filter(|m| *m != b && *m != a)
                .any(|m| self.reaches(m, b));
            if via_other {
                out.insert((a.clone(), b.clone()));
            }
        }
        out
    }

    /// Edges whose source closure is not strictly larger than the target's.
    pub fn orbit_violations(&self) -> Vec<(String, String)> {
        self.edges
            .keys()
            .filter(|(a, b)| a != b && self.nodes[a].closure_dim() <= self.nodes[b].closure_dim())
            .cloned()
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.edges
            .keys()
            .filter(|(a, b)| a != b)
            .all(|(a, b)| !self.reaches(b, a))
    }
}

/// Builds the graph of `kind` from replayed witnesses. Witnesses of other
/// types are ignored; every witness of this type must be verified.
pub fn build_graph(
    kind: (usize, usize),
    catalog: &Catalog,
    witnesses: &[(Witness, Verdict)],
) -> Result<DegenGraph, AtlasError> {
    let mut g = DegenGraph::empty(kind, catalog)?;
    for (w, v) in witnesses {
        let (a, b) = (base_name(&w.source), base_name(&w.target));
        let ka = catalog.entry(a)?.kind();
        let kb = catalog.entry(b)?.kind();
        if ka != kb {
            return Err(AtlasError::CrossType {
                id: w.id.clone(),
                source_type: ka,
                target_type: kb,
            });
        }
        if ka != kind {
            continue;
        }
        if !v.is_verified() {
            return Err(AtlasError::UnverifiedWitness(w.id.clone()));
        }
        let ids = g.edges.entry((a.to_string(), b.to_string())).or_default();
        if !ids.contains(&w.id) {
            ids.push(w.id.clone());
            ids.sort();
        }
    }
    Ok(g)
}

/// Outcome of replaying one witness file.
#[derive(Debug)]
pub struct Replay {
    pub witness: Witness,
    pub verdict: Result<Verdict, DegenerationError>,
}

impl Replay {
    pub fn is_verified(&self) -> bool {
        self.verdict.as_ref().is_ok_and(Verdict::is_verified)
    }
}

/// Replays every `.wit` file under `<data root>/witnesses`, in file order.
pub fn replay_all(catalog: &Catalog) -> Result<Vec<Replay>, AtlasError> {
    let files = files_with_extension(&catalog.root().join("witnesses"), "wit")?;
    let witnesses = files
        .iter()
        .map(|p| Witness::load(p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(witnesses
        .into_par_iter()
        .map(|w| {
            let verdict = verify_degeneration(&w, catalog);
            Replay {
                witness: w,
                verdict,
            }
        })
        .collect())
}

/// The graph of `kind` built from the verified replays, skipping the rest.
pub fn verified_graph(
    kind: (usize, usize),
    catalog: &Catalog,
    replays: &[Replay],
) -> Result<DegenGraph, AtlasError> {
    let verified: Vec<(Witness, Verdict)> = replays
        .iter()
        .filter_map(|r| match &r.verdict {
            Ok(v) if v.is_verified() => Some((r.witness.clone(), v.clone())),
            _ => None,
        })
        .collect();
    build_graph(kind, catalog, &verified)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub kind: (usize, usize),
    pub published: Components,
    pub rigid: usize,
    pub families: usize,
    /// Largest orbit dimension plus parameter count over the representatives.
    pub dimension: usize,
    /// Representative attaining `dimension`.
    pub dimension_witness: String,
    /// Pairs of representatives `(a, b)` with `b` reachable from `a`.
    pub rigidity_conflicts: Vec<(String, String)>,
    /// Non-representatives unreachable from every representative.
    pub reachability_gaps: Vec<String>,
}

impl ComponentReport {
    pub fn count(&self) -> usize {
        self.rigid + self.families
    }

    pub fn count_ok(&self) -> bool {
        self.count() == self.published.count
    }

    pub fn dimension_ok(&self) -> bool {
        self.dimension == self.published.dimension
    }

    pub fn rigidity_ok(&self) -> bool {
        self.rigidity_conflicts.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.count_ok() && self.dimension_ok() && self.rigidity_ok()
    }
}

impl fmt::Display for ComponentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "type ({},{}): {} components ({} rigid + {} family), dimension {} via {}",
            self.kind.0,
            self.kind.1,
            self.count(),
            self.rigid,
            self.families,
            self.dimension,
            self.dimension_witness
        )
    }
}

/// Checks the published component list of the graph's type against the
/// verified graph.
pub fn component_report(catalog: &Catalog, g: &DegenGraph) -> Result<ComponentReport, AtlasError> {
    let published = catalog.components(g.kind.0, g.kind.1)?.clone();
    let reps: Vec<&str> = published.representatives().collect();
    let mut dimension = 0;
    let mut dimension_witness = String::new();
    for r in &reps {
        let node = g
            .node(r)
            .ok_or_else(|| CatalogError::UnknownName(r.to_string()))?;
        let d = node.closure_dim();
        if d > dimension {
            dimension = d;
            dimension_witness = r.to_string();
        }
    }
    let mut rigidity_conflicts = Vec::new();
    let mut covered: BTreeSet<String> = reps.iter().map(|r| r.to_string()).collect();
    for a in &reps {
        let reach = g.reachable_from(a);
        for b in &reps {
            if a != b && reach.contains(*b) {
                rigidity_conflicts.push((a.to_string(), b.to_string()));
            }
        }
        covered.extend(reach);
    }
    let reachability_gaps = g
        .nodes()
        .filter(|n| !covered.contains(&n.name))
        .map(|n| n.name.clone())
        .collect();
    Ok(ComponentReport {
        kind: g.kind,
        rigid: published.rigid.len(),
        families: published.families.len(),
        published,
        dimension,
        dimension_witness,
        rigidity_conflicts,
        reachability_gaps,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn toy(nodes: &[(&str, usize)], edges: &[(&str, &str)]) -> DegenGraph {
        DegenGraph {
            kind: (1, 3),
            nodes: nodes
                .iter()
                .map(|&(n, orbit)| {
                    let node = Node {
                        name: n.to_string(),
                        orbit,
                        rigid: false,
                        family: false,
                    };
                    (n.to_string(), node)
                })
                .collect(),
            edges: edges
                .iter()
                .map(|&(a, b)| ((a.to_string(), b.to_string()), vec![format!("{a}_{b}")]))
                .collect(),
        }
    }

    #[test]
    fn reachability_follows_paths() {
        let g = toy(
            &[("A", 3), ("B", 2), ("C", 1), ("D", 0)],
            &[("A", "B"), ("B", "C")],
        );
        assert!(g.reaches("A", "C"));
        assert!(!g.reaches("C", "A"));
        assert!(!g.reaches("A", "D"));
        assert_eq!(g.reachable_from("A").len(), 2);
        assert!(g.is_acyclic());
    }

    #[test]
    fn shortcut_edges_are_flagged() {
        let g = toy(
            &[("A", 3), ("B", 2), ("C", 1)],
            &[("A", "B"), ("B", "C"), ("A", "C")],
        );
        let implied = g.implied_edges();
        assert_eq!(implied.len(), 1);
        assert!(implied.contains(&("A".to_string(), "C".to_string())));
    }

    #[test]
    fn orbit_monotonicity_and_cycles() {
        let g = toy(&[("A", 3), ("B", 3)], &[("A", "B"), ("B", "A")]);
        assert_eq!(g.orbit_violations().len(), 2);
        assert!(!g.is_acyclic());
    }

    #[test]
    fn family_nodes_count_their_parameter() {
        let mut g = toy(&[("F", 11), ("B", 11)], &[("F", "B")]);
        assert_eq!(g.orbit_violations().len(), 1);
        g.nodes.get_mut("F").unwrap().family = true;
        assert!(g.orbit_violations().is_empty());
    }
}
