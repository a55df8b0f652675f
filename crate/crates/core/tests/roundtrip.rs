use boxology::dsl::{parse, print, print_all};
use boxology::{Catalog, PatternGraph, SourceFile, Taxonomy, TypePath};
use proptest::collection::{btree_map, btree_set, vec};
use proptest::prelude::*;

fn ident() -> impl Strategy<Value = String> {
    "[A-Za-z_][A-Za-z0-9_-]{0,6}"
}

fn text() -> impl Strategy<Value = String> {
    // anything printable plus quotes, backslashes, tabs and newlines; carriage
    // returns are dropped by the lexer and so cannot round-trip
    "[ -~\t\n\u{e9}\u{3bb}\u{1f600}]{0,12}"
}

fn graph() -> impl Strategy<Value = PatternGraph> {
    let paths = Taxonomy::default().all_paths();
    let node = (proptest::sample::select(paths), proptest::option::of(text()));
    (
        text(),
        btree_map(ident(), node, 0..7),
        vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..10),
        btree_map(ident(), text(), 0..3),
    )
        .prop_map(|(name, nodes, edge_picks, meta)| {
            let ids: Vec<String> = nodes.keys().cloned().collect();
            let mut b = PatternGraph::builder(name);
            for (id, (ty, label)) in nodes {
                b = match label {
                    Some(l) => b.labeled_node(id, ty, l),
                    None => b.node(id, ty),
                };
            }
            if !ids.is_empty() {
                let edges: std::collections::BTreeSet<(usize, usize)> = edge_picks
                    .iter()
                    .map(|(a, c)| (a.index(ids.len()), c.index(ids.len())))
                    .filter(|(a, c)| a != c)
                    .collect();
                for (a, c) in edges {
                    b = b.edge(ids[a].clone(), ids[c].clone());
                }
            }
            for (k, v) in meta {
                b = b.meta(k, v);
            }
            b.build().expect("generated graph is structurally valid")
        })
}

fn reparse(text: &str) -> Vec<PatternGraph> {
    parse(&SourceFile::memory(text), &Taxonomy::default()).unwrap_or_else(|d| panic!("{d:?}\n{text}"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn parse_inverts_print(g in graph()) {
        let text = print(&g);
        prop_assert_eq!(reparse(&text), vec![g]);
    }

    #[test]
    fn print_is_a_fixpoint(g in graph()) {
        let once = print(&g);
        let twice = print(&reparse(&once)[0]);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn files_of_several_patterns(names in btree_set("[a-z]{1,4}", 1..4), g in graph()) {
        let graphs: Vec<PatternGraph> = names.into_iter().map(|n| g.clone().renamed(n)).collect();
        prop_assert_eq!(reparse(&print_all(&graphs)), graphs);
    }
}

#[test]
fn builtin_entries_are_byte_stable() {
    for g in Catalog::builtin().patterns() {
        let text = print(g);
        assert_eq!(print(&reparse(&text)[0]), text, "{}", g.name());
    }
}

#[test]
fn whitespace_and_comments_are_irrelevant() {
    let dense = "pattern \"p\"{node a:actor node e:process:generate:engineer node m:model edge a->e edge e->m}";
    let loose = "# header\npattern   \"p\"\n{\n\tnode a : actor   # who\n  node e: process:generate:engineer\r\n  node m: model\n  edge a -> e\n  edge e -> m\n}\n";
    assert_eq!(reparse(dense), reparse(loose));
    let ty: TypePath = "process:generate:engineer".parse().unwrap();
    assert_eq!(reparse(dense)[0].node("e").unwrap().ty, ty);
}

#[test]
fn keywords_are_valid_ids() {
    let g = PatternGraph::builder("kw")
        .node("node", "actor".parse().unwrap())
        .node("edge", "process:generate:engineer".parse().unwrap())
        .node("meta", "model".parse().unwrap())
        .node("pattern", "instance".parse().unwrap())
        .edge("node", "edge")
        .edge("edge", "meta")
        .meta("node", "x")
        .build()
        .unwrap();
    assert_eq!(reparse(&print(&g)), vec![g]);
}
