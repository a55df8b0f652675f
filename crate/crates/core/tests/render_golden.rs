//! DOT output for every builtin entry, compared byte for byte with the files
//! in `tests/golden`. Run with `BOXOLOGY_BLESS=1` to rewrite them.

mod support;

use std::fs;

use boxology::render::{to_dot, RankDir, RenderOptions};
use boxology::{Catalog, Kind};
use support::golden_dir;

#[test]
fn goldens() {
    let bless = std::env::var_os("BOXOLOGY_BLESS").is_some();
    let dir = golden_dir();
    for g in Catalog::builtin().patterns() {
        let path = dir.join(format!("{}.dot", g.name()));
        let dot = to_dot(g, &RenderOptions::default());
        if bless {
            fs::write(&path, &dot).unwrap();
        } else {
            let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(dot, want, "{}", g.name());
        }
    }
}

#[test]
fn one_statement_per_node_and_edge() {
    for g in Catalog::builtin().patterns() {
        let dot = to_dot(g, &RenderOptions::default());
        for n in g.nodes() {
            let prefix = format!("  {} [shape=", n.id);
            assert_eq!(dot.matches(&prefix).count(), 1, "{} {}", g.name(), n.id);
            let shape = match n.kind() {
                Kind::Instance => "box",
                Kind::Model => "hexagon",
                Kind::Process => "ellipse",
                Kind::Actor => "triangle",
            };
            assert!(dot.contains(&format!("{prefix}{shape}, label=\"{} : {}\"];", n.id, n.ty)));
        }
        assert_eq!(dot.matches(" -> ").count(), g.edge_count());
        assert_eq!(dot.lines().count(), 3 + g.node_count() + g.edge_count());
    }
}

#[test]
fn distinct_graphs_render_differently() {
    let all: Vec<String> = Catalog::builtin()
        .patterns()
        .map(|g| to_dot(&g.clone().renamed("same"), &RenderOptions::default()))
        .collect();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            assert_ne!(a, b);
        }
    }
}

#[test]
fn rankdir_and_meta() {
    let g = Catalog::builtin().get("1b").unwrap();
    let opts = RenderOptions {
        rankdir: RankDir::TB,
        show_meta: true,
        ..Default::default()
    };
    let dot = to_dot(g, &opts);
    assert!(dot.contains("  rankdir=TB;\n"));
    assert!(dot.contains("  label=\"kind: elementary\\nnote: "));
}
