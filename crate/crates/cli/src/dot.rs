use std::fmt::Write;

use raag_cc::cube::SubgroupCore;

/// Graphviz rendering of a core: one arrow per oriented edge, squares as
/// comments listing their four edge indices.
pub fn export_dot(core: &SubgroupCore) -> String {
    let g = &core.graph;
    let c = &core.complex;
    let mut out = String::new();
    writeln!(out, "digraph core {{").unwrap();
    writeln!(out, "  // status: {}", serde_json::to_value(core.status).unwrap().as_str().unwrap_or("?")).unwrap();
    for v in 0..c.vertex_count() {
        let shape = if v == c.basepoint() { "doublecircle" } else { "circle" };
        writeln!(out, "  {v} [shape={shape}];").unwrap();
    }
    for (i, e) in c.edges().iter().enumerate() {
        writeln!(out, "  {} -> {} [label=\"{}\", id=\"e{i}\"];", e.source, e.target, g.label(e.label)).unwrap();
    }
    for (i, s) in c.squares().iter().enumerate() {
        let (x, y) = c.square_labels(s);
        let [a, b, p, q] = s.edges;
        writeln!(out, "  // square {i}: edges {a} {b} {p} {q} labels {} {}", g.label(x), g.label(y)).unwrap();
    }
    out.push_str("}\n");
    out
}
