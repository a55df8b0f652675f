use boxology::taxonomy::{is_subtype, least_common_ancestor, meet};
use boxology::{Taxonomy, TypeError, TypePath};
use proptest::prelude::*;

fn paths() -> Vec<TypePath> {
    Taxonomy::default().all_paths()
}

fn lca(a: &TypePath, b: &TypePath) -> Option<TypePath> {
    least_common_ancestor(a, b).ok()
}

#[test]
fn default_taxonomy_size_and_roots() {
    let all = paths();
    assert_eq!(all.len(), 35);
    let roots: Vec<String> = all.iter().filter(|p| p.depth() == 1).map(ToString::to_string).collect();
    assert_eq!(roots, ["instance", "model", "process", "actor"]);
}

#[test]
fn subtyping_is_a_partial_order() {
    let all = paths();
    for a in &all {
        assert!(is_subtype(a, a));
        for b in &all {
            if is_subtype(a, b) && is_subtype(b, a) {
                assert_eq!(a, b);
            }
            for c in &all {
                if is_subtype(a, b) && is_subtype(b, c) {
                    assert!(is_subtype(a, c), "{a} {b} {c}");
                }
            }
        }
    }
}

#[test]
fn lca_laws() {
    let all = paths();
    for a in &all {
        assert_eq!(lca(a, a).as_ref(), Some(a));
        for b in &all {
            assert_eq!(lca(a, b), lca(b, a));
            if let Some(l) = lca(a, b) {
                assert!(is_subtype(a, &l) && is_subtype(b, &l));
                // least: no strictly lower common ancestor exists
                for c in &all {
                    if is_subtype(a, c) && is_subtype(b, c) {
                        assert!(is_subtype(&l, c));
                    }
                }
            } else {
                assert_ne!(a.kind(), b.kind());
            }
            for c in &all {
                let left = lca(a, b).and_then(|ab| lca(&ab, c));
                let right = lca(b, c).and_then(|bc| lca(a, &bc));
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn meet_is_the_lower_of_comparable_paths() {
    let all = paths();
    for a in &all {
        for b in &all {
            match meet(a, b) {
                Some(m) => {
                    assert!(is_subtype(&m, a) && is_subtype(&m, b));
                    assert!(m == *a || m == *b);
                }
                None => assert!(!is_subtype(a, b) && !is_subtype(b, a)),
            }
            assert_eq!(meet(a, b), meet(b, a));
        }
    }
}

#[test]
fn documented_examples() {
    let p = |s: &str| s.parse::<TypePath>().unwrap();
    assert_eq!(lca(&p("instance:data:text"), &p("instance:sym:label")), Some(p("instance")));
    assert!(is_subtype(&p("model:stat:NN"), &p("model")));
    assert!(!is_subtype(&p("model"), &p("model:stat")));
    assert!(matches!(
        least_common_ancestor(&p("model"), &p("actor")),
        Err(TypeError::NoCommonAncestor(..))
    ));
}

proptest! {
    /// Arbitrary segment lists obey the same laws as the shipped paths.
    #[test]
    fn laws_on_arbitrary_paths(
        a in proptest::collection::vec("[ab]", 0..4),
        b in proptest::collection::vec("[ab]", 0..4),
        c in proptest::collection::vec("[ab]", 0..4),
    ) {
        let mk = |tail: &Vec<String>| {
            TypePath::new(std::iter::once("model".to_string()).chain(tail.iter().cloned())).unwrap()
        };
        let (a, b, c) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(lca(&a, &b), lca(&b, &a));
        prop_assert_eq!(
            lca(&a, &b).and_then(|x| lca(&x, &c)),
            lca(&b, &c).and_then(|x| lca(&a, &x))
        );
        if is_subtype(&a, &b) && is_subtype(&b, &c) {
            prop_assert!(is_subtype(&a, &c));
        }
    }
}
