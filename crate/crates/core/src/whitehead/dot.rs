use std::fmt::Write;

use super::graph::{ComponentKind, WhiteheadGraph};

/// Graphviz text for one component, or `None` if the index is out of range.
pub fn component_dot(wh: &WhiteheadGraph, component: usize) -> Option<String> {
    let c = wh.components().get(component)?;
    let name = match c.kind {
        ComponentKind::Ball => "ball".to_string(),
        ComponentKind::Surface { factor } => format!("surface_{factor}"),
    };
    let mut out = String::new();
    writeln!(out, "graph {name} {{").unwrap();
    for v in &c.vertices {
        writeln!(out, "  \"{}\";", wh.vertex_name(*v)).unwrap();
    }
    for e in &c.edges {
        write!(out, "  \"{}\" -- \"{}\"", wh.vertex_name(e.from), wh.vertex_name(e.to)).unwrap();
        if e.label.is_empty() {
            writeln!(out, ";").unwrap();
        } else {
            writeln!(out, " [label=\"{}\"];", wh.group().format_word(&e.label)).unwrap();
        }
    }
    out.push_str("}\n");
    Some(out)
}

/// All components, one `graph` block each, in component order.
pub fn to_dot(wh: &WhiteheadGraph) -> String {
    if wh.components().is_empty() {
        return "graph whitehead {\n}\n".to_string();
    }
    (0..wh.components().len()).filter_map(|i| component_dot(wh, i)).collect()
}
