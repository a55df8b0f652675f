use std::fmt::Write;

use crate::graph::PatternGraph;

pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Canonical text of one pattern: meta sorted by key, nodes by id, edges by
/// `(from, to)`, two-space indentation, trailing newline.
pub fn print(g: &PatternGraph) -> String {
    let mut s = String::new();
    writeln!(s, "pattern {} {{", quote(g.name())).unwrap();
    for (k, v) in g.meta() {
        writeln!(s, "  meta {k} = {}", quote(v)).unwrap();
    }
    for n in g.nodes() {
        write!(s, "  node {}: {}", n.id, n.ty).unwrap();
        if let Some(label) = &n.label {
            write!(s, " {}", quote(label)).unwrap();
        }
        s.push('\n');
    }
    for e in g.edges() {
        writeln!(s, "  edge {} -> {}", e.from, e.to).unwrap();
    }
    s.push_str("}\n");
    s
}

/// Several patterns separated by blank lines.
pub fn print_all<'a>(graphs: impl IntoIterator<Item = &'a PatternGraph>) -> String {
    graphs.into_iter().map(print).collect::<Vec<_>>().join("\n")
}
