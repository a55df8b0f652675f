mod support;

use boxology::classifier::classify_system;
use boxology::{check_well_formed, decompose, default_rules, dsl, find_matches, Catalog, Class, PatternGraph, SourceFile, Taxonomy};
use support::corpus;

fn load(name: &str) -> PatternGraph {
    let src = SourceFile::read(&corpus(name)).unwrap();
    let t = Taxonomy::default();
    let g = dsl::parse(&src, &t).unwrap().remove(0);
    let diags = check_well_formed(&g, &default_rules(), &t);
    assert!(diags.is_empty(), "{name}: {diags:?}");
    g
}

fn parts(g: &PatternGraph) -> Vec<String> {
    let d = decompose(g, Catalog::builtin()).unwrap();
    assert!(d.uncovered.is_empty(), "{:?}", d.uncovered);
    d.parts.into_iter().map(|m| m.pattern).collect()
}

fn count(g: &PatternGraph, pattern: &str) -> usize {
    find_matches(Catalog::builtin().get(pattern).unwrap(), g).len()
}

#[test]
fn skill_matching() {
    let g = load("usecase1.box");
    assert_eq!(parts(&g), ["1a", "1c", "1d", "1d", "2a", "2b", "2d"]);
    assert_eq!(count(&g, "2a"), 1);
    assert_eq!(classify_system(&g, Catalog::builtin()).unwrap().class, Class::Hybrid);
}

#[test]
fn robot_in_action() {
    let g = load("usecase2.box");
    assert_eq!(parts(&g), ["1a", "1a", "1c", "2a", "2a", "2b", "2c"]);
    assert_eq!(count(&g, "1a"), 2);
    assert_eq!(classify_system(&g, Catalog::builtin()).unwrap().class, Class::Hybrid);
}

#[test]
fn explanation_and_iteration_examples() {
    let g = load("model-level-explanation.box");
    assert_eq!(parts(&g), ["1a", "2a", "2c"]);
    let g = load("iterated-informed-learning.box");
    assert_eq!(parts(&g), ["1a", "2a", "2b", "2b"]);
    assert_eq!(count(&g, "7"), 1);
    assert_eq!(count(&g, "4"), 1);
}
