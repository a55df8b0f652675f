//! Typed dataflow diagrams for hybrid learning-and-reasoning systems.
//!
//! Graphs are built from instance, model, process and actor nodes whose types
//! come from a small colon-path taxonomy (`instance:data:text`,
//! `process:infer:deduce`, ...). On top of that the crate provides a text
//! format, a well-formedness checker, a catalog of named patterns, subgraph
//! matching with subtyping, pattern composition, system classification and
//! DOT rendering.
//!
//! ```
//! use boxology::{decompose, dsl, Catalog, SourceFile, Taxonomy};
//!
//! let src = SourceFile::memory(
//!     "pattern \"demo\" {\n  node d: instance:data\n  node m: model:stat\n  node tr: process:generate:train\n  edge d -> tr\n  edge tr -> m\n}\n",
//! );
//! let g = dsl::parse(&src, &Taxonomy::default()).unwrap().remove(0);
//! let d = decompose(&g, Catalog::builtin()).unwrap();
//! assert_eq!(d.part_names(), ["1a"]);
//! ```

pub mod catalog;
pub mod check;
pub mod classifier;
pub mod composer;
pub mod diag;
pub mod dsl;
pub mod exec;
pub mod graph;
pub mod matcher;
pub mod render;
pub mod rules;
pub mod taxonomy;

pub use catalog::Catalog;
pub use check::check_well_formed;
pub use classifier::{classify_system, kautz_types, Class, KautzReport, SystemClass};
pub use composer::{ComposeError, Composer, GlueMap};
pub use diag::{Diagnostic, Position, Severity, SourceFile, Subject};
pub use exec::Exec;
pub use graph::{Edge, GraphBuilder, GraphError, Node, PatternGraph};
pub use matcher::{
    decompose, decompose_with, find_matches, find_matches_with, is_isomorphic, is_specialization_of, verify_match,
    DecomposeOptions, Decomposition, Match, MatchError, MatchOptions, TypeMode,
};
pub use render::{to_dot, RenderOptions};
pub use rules::{default_rules, Constraint, Rule, TypingRuleTable};
pub use taxonomy::{Kind, Taxonomy, TypeError, TypePath};
