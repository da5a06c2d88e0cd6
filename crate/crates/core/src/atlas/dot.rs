use std::collections::BTreeMap;
use std::fmt::Write;

use super::DegenGraph;

/// Graphviz text for `g`. Nodes are grouped in ranks of equal orbit
/// dimension, largest first; rigid nodes get a double border and family
/// nodes carry the parameter in their label. Edges implied by a longer path
/// are dashed.
pub fn export_dot(g: &DegenGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"type ({},{})\" {{", g.kind.0, g.kind.1);
    out.push_str("  rankdir=TB;\n  node [shape=box];\n");
    let mut ranks: BTreeMap<std::cmp::Reverse<usize>, Vec<&super::Node>> = BTreeMap::new();
    for n in g.nodes() {
        ranks.entry(std::cmp::Reverse(n.orbit)).or_default().push(n);
    }
    for (std::cmp::Reverse(orbit), nodes) in &ranks {
        let _ = writeln!(out, "  {{ rank=same; // orbit {orbit}");
        for n in nodes {
            let label = if n.family {
                format!("{}^t\\n{}", n.name, n.orbit)
            } else {
                format!("{}\\n{}", n.name, n.orbit)
            };
            let style = if n.rigid { ", peripheries=2" } else { "" };
            let _ = writeln!(out, "    \"{}\" [label=\"{}\"{}];", n.name, label, style);
        }
        out.push_str("  }\n");
    }
    let implied = g.implied_edges();
    for e in g.edges() {
        let dashed = implied.contains(&(e.source.clone(), e.target.clone()));
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\"{};",
            e.source,
            e.target,
            if dashed { " [style=dashed]" } else { "" }
        );
    }
    out.push_str("}\n");
    out
}
