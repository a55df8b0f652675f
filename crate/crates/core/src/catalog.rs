//! Named pattern collections: the shipped catalog and user-supplied ones.

use std::sync::OnceLock;

use indexmap::IndexMap;

use crate::check::check_well_formed;
use crate::diag::{Diagnostic, SourceFile};
use crate::dsl;
use crate::graph::PatternGraph;
use crate::rules::{default_rules, TypingRuleTable};
use crate::taxonomy::Taxonomy;

/// Canonical text of the builtin catalog (also installed as
/// `catalog/builtin.box`).
pub const BUILTIN_SOURCE: &str = include_str!("../../../catalog/builtin.box");

/// Presentation order of the builtin entries.
pub const BUILTIN_NAMES: [&str; 21] = [
    "1a", "1b", "1c", "1d", "2a", "2b", "2c", "2d", "3a", "3b", "3-abstract", "4", "5a", "6a", "6b",
    "7", "7-noinfer", "8", "9", "10", "11",
];

/// An ordered set of uniquely named, well-formed patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    entries: IndexMap<String, PatternGraph>,
}

impl Catalog {
    /// The shipped catalog. Panics if the embedded source fails to parse or
    /// check, which the test suite rules out.
    pub fn builtin() -> &'static Catalog {
        static BUILTIN: OnceLock<Catalog> = OnceLock::new();
        BUILTIN.get_or_init(|| {
            let src = SourceFile::new("catalog/builtin.box", BUILTIN_SOURCE);
            match Catalog::load(&src, &Taxonomy::default(), &default_rules()) {
                Ok(c) => c,
                Err(diags) => {
                    let msgs: Vec<_> = diags.iter().map(|d| d.render(&src.path)).collect();
                    panic!("builtin catalog is invalid:\n{}", msgs.join("\n"))
                }
            }
        })
    }

    /// Parses and checks every pattern in `src`; any error rejects the file.
    pub fn load(src: &SourceFile, t: &Taxonomy, rules: &TypingRuleTable) -> Result<Catalog, Vec<Diagnostic>> {
        let located = dsl::parse_located(src, t)?;
        let mut diags = Vec::new();
        let mut entries = IndexMap::new();
        for l in located {
            let mut ds: Vec<Diagnostic> = check_well_formed(&l.graph, rules, t)
                .into_iter()
                .filter(Diagnostic::is_error)
                .collect();
            l.spans.locate_all(&mut ds);
            diags.extend(ds);
            entries.insert(l.graph.name().to_string(), l.graph);
        }
        if diags.is_empty() {
            Ok(Catalog { entries })
        } else {
            diags.sort_by_key(|d| d.position);
            Err(diags)
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&PatternGraph> {
        self.entries.get(name)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.entries.get_index_of(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.entries.keys().map(String::as_str)
    }

    pub fn patterns(&self) -> impl Iterator<Item = &PatternGraph> + '_ {
        self.entries.values()
    }

    /// Entries with exactly one process node, in catalog order.
    pub fn elementary(&self) -> impl Iterator<Item = &PatternGraph> + '_ {
        self.patterns().filter(|g| g.process_count() == 1)
    }

    /// Canonical text of every entry, in order.
    pub fn to_source(&self) -> String {
        dsl::print_all(self.patterns())
    }
}
