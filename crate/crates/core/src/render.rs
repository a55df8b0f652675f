//! Graphviz DOT output.
//!
//! Instances are boxes, models hexagons, processes ellipses and actors
//! triangles. Output is fully determined by the graph: nodes in id order,
//! edges in `(from, to)` order, no layout hints beyond `rankdir`.

use std::fmt::{self, Write};
use std::str::FromStr;

use crate::graph::PatternGraph;
use crate::taxonomy::Kind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Dot,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "dot" => Ok(Format::Dot),
            _ => Err(format!("unsupported format `{s}` (expected `dot`)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankDir {
    #[default]
    LR,
    TB,
}

impl FromStr for RankDir {
    type Err = String;

    fn from_str(s: &str) -> Result<RankDir, String> {
        match s {
            "LR" => Ok(RankDir::LR),
            "TB" => Ok(RankDir::TB),
            _ => Err(format!("unsupported rank direction `{s}` (expected LR or TB)")),
        }
    }
}

impl fmt::Display for RankDir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankDir::LR => "LR",
            RankDir::TB => "TB",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RenderOptions {
    pub format: Format,
    pub rankdir: RankDir,
    /// Emit the pattern's meta entries as the graph label.
    pub show_meta: bool,
}

pub fn shape(kind: Kind) -> &'static str {
    match kind {
        Kind::Instance => "box",
        Kind::Model => "hexagon",
        Kind::Process => "ellipse",
        Kind::Actor => "triangle",
    }
}

/// DOT string literal. Newlines become `\n` escapes.
pub fn dot_quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Node ids outside DOT's bare-identifier syntax (those with `-`) are quoted.
fn dot_id(id: &str) -> String {
    if id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        id.to_string()
    } else {
        dot_quote(id)
    }
}

pub fn to_dot(g: &PatternGraph, opts: &RenderOptions) -> String {
    let mut s = String::new();
    writeln!(s, "digraph {} {{", dot_quote(g.name())).unwrap();
    writeln!(s, "  rankdir={};", opts.rankdir).unwrap();
    if opts.show_meta && !g.meta().is_empty() {
        let lines: Vec<String> = g.meta().iter().map(|(k, v)| format!("{k}: {v}")).collect();
        writeln!(s, "  label={};", dot_quote(&lines.join("\n"))).unwrap();
        writeln!(s, "  labelloc=b;").unwrap();
    }
    for n in g.nodes() {
        let mut label = format!("{} : {}", n.id, n.ty);
        if let Some(l) = &n.label {
            label.push('\n');
            label.push_str(l);
        }
        writeln!(s, "  {} [shape={}, label={}];", dot_id(&n.id), shape(n.kind()), dot_quote(&label)).unwrap();
    }
    for e in g.edges() {
        writeln!(s, "  {} -> {};", dot_id(&e.from), dot_id(&e.to)).unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::taxonomy::TypePath;

    #[test]
    fn one_a() {
        let dot = to_dot(Catalog::builtin().get("1a").unwrap(), &RenderOptions::default());
        assert!(dot.starts_with("digraph \"1a\" {\n  rankdir=LR;\n"));
        assert!(dot.contains("  d [shape=box, label=\"d : instance:data\"];\n"));
        assert!(dot.contains("  tr [shape=ellipse, "));
        assert!(dot.contains("  m [shape=hexagon, "));
        assert!(dot.find("d -> tr").unwrap() < dot.find("tr -> m").unwrap());
    }

    #[test]
    fn actors_are_triangles() {
        let dot = to_dot(Catalog::builtin().get("1c").unwrap(), &RenderOptions::default());
        assert!(dot.contains("  a [shape=triangle, label=\"a : actor\"];\n"));
    }

    #[test]
    fn labels_and_meta_are_escaped() {
        let g = PatternGraph::builder("q\"x")
            .labeled_node("n", TypePath::root(Kind::Actor), "say \"hi\"\\")
            .meta("note", "two\nlines")
            .build()
            .unwrap();
        let opts = RenderOptions {
            show_meta: true,
            rankdir: RankDir::TB,
            ..Default::default()
        };
        assert_eq!(
            to_dot(&g, &opts),
            "digraph \"q\\\"x\" {\n  rankdir=TB;\n  label=\"note: two\\nlines\";\n  labelloc=b;\n  n [shape=triangle, label=\"n : actor\\nsay \\\"hi\\\"\\\\\"];\n}\n"
        );
    }

    #[test]
    fn dashed_ids_are_quoted() {
        let g = PatternGraph::builder("d")
            .node("a-b", TypePath::root(Kind::Actor))
            .node("_c", TypePath::root(Kind::Process))
            .edge("a-b", "_c")
            .build()
            .unwrap();
        let dot = to_dot(&g, &RenderOptions::default());
        assert!(dot.contains("  \"a-b\" [shape=triangle"));
        assert!(dot.contains("  \"a-b\" -> _c;\n"));
    }

    #[test]
    fn option_parsing() {
        assert_eq!("dot".parse::<Format>(), Ok(Format::Dot));
        assert!("svg".parse::<Format>().is_err());
        assert_eq!("TB".parse::<RankDir>(), Ok(RankDir::TB));
        assert!("BT".parse::<RankDir>().is_err());
    }
}
