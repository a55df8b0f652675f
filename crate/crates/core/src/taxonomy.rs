//! The type tree behind every box and oval, and the path algebra on it.
//!
//! A [`TypePath`] is a colon-separated path such as `model:stat:NN`. Subtyping
//! is path-prefix: `a` is a subtype of `b` iff `b`'s segments are a prefix of
//! `a`'s. The [`Taxonomy`] decides which paths exist.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diag::{Diagnostic, Position, SourceFile};

/// The four root kinds of the vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Instance,
    Model,
    Process,
    Actor,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::Instance, Kind::Model, Kind::Process, Kind::Actor];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Instance => "instance",
            Kind::Model => "model",
            Kind::Process => "process",
            Kind::Actor => "actor",
        }
    }

    pub fn from_root(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.as_str() == s)
    }

    /// Every kind except `process` is drawn as a box.
    pub fn is_box(self) -> bool {
        self != Kind::Process
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("malformed type path `{0}`")]
    MalformedPath(String),
    #[error("unknown root `{0}` (expected one of instance, model, process, actor)")]
    UnknownRoot(String),
    /// 1-based index of the first segment whose prefix is not in the taxonomy.
    #[error("unknown segment `{segment}` at position {position} of `{path}`")]
    UnknownSegment {
        path: String,
        segment: String,
        position: usize,
    },
    #[error("no common ancestor between `{0}` and `{1}`")]
    NoCommonAncestor(TypePath, TypePath),
    #[error("cannot extend taxonomy with `{0}`: parent does not exist")]
    MissingParent(TypePath),
}

/// Returns true if `s` is an identifier in the sense of the surface grammar:
/// `[A-Za-z_][A-Za-z0-9_-]*`.
pub fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// A colon-separated path into the taxonomy.
///
/// Construction through [`FromStr`] or [`TypePath::new`] only checks syntax and
/// the root kind; membership in a particular taxonomy is checked by
/// [`Taxonomy::parse_type_path`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypePath {
    segments: Vec<String>,
}

impl TypePath {
    pub fn new<I, S>(segments: I) -> Result<TypePath, TypeError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let segments: Vec<String> = segments.into_iter().map(Into::into).collect();
        if segments.is_empty() || !segments.iter().all(|s| is_ident(s)) {
            return Err(TypeError::MalformedPath(segments.join(":")));
        }
        if Kind::from_root(&segments[0]).is_none() {
            return Err(TypeError::UnknownRoot(segments[0].clone()));
        }
        Ok(TypePath { segments })
    }

    pub fn root(kind: Kind) -> TypePath {
        TypePath {
            segments: vec![kind.as_str().to_string()],
        }
    }

    pub fn segments(&self) -> &[String] {
        &self.segments
    }

    pub fn depth(&self) -> usize {
        self.segments.len()
    }

    pub fn kind(&self) -> Kind {
        Kind::from_root(&self.segments[0]).expect("root validated at construction")
    }

    pub fn parent(&self) -> Option<TypePath> {
        (self.segments.len() > 1).then(|| TypePath {
            segments: self.segments[..self.segments.len() - 1].to_vec(),
        })
    }

    pub fn child(&self, name: &str) -> Result<TypePath, TypeError> {
        let mut segments = self.segments.clone();
        segments.push(name.to_string());
        TypePath::new(segments)
    }

    /// True iff `self` equals `ancestor` or descends from it.
    pub fn is_subtype_of(&self, ancestor: &TypePath) -> bool {
        self.segments.starts_with(&ancestor.segments)
    }

    /// Longest common prefix. Paths of different kinds have none.
    pub fn least_common_ancestor(&self, other: &TypePath) -> Result<TypePath, TypeError> {
        let common = self
            .segments
            .iter()
            .zip(&other.segments)
            .take_while(|(a, b)| a == b)
            .count();
        if common == 0 {
            return Err(TypeError::NoCommonAncestor(self.clone(), other.clone()));
        }
        Ok(TypePath {
            segments: self.segments[..common].to_vec(),
        })
    }

    /// The more specific of two comparable paths; `None` when incomparable.
    pub fn meet(&self, other: &TypePath) -> Option<TypePath> {
        if self.is_subtype_of(other) {
            Some(self.clone())
        } else if other.is_subtype_of(self) {
            Some(other.clone())
        } else {
            None
        }
    }
}

pub fn is_subtype(a: &TypePath, b: &TypePath) -> bool {
    a.is_subtype_of(b)
}

pub fn least_common_ancestor(a: &TypePath, b: &TypePath) -> Result<TypePath, TypeError> {
    a.least_common_ancestor(b)
}

pub fn meet(a: &TypePath, b: &TypePath) -> Option<TypePath> {
    a.meet(b)
}

impl fmt::Display for TypePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.segments.join(":"))
    }
}

impl FromStr for TypePath {
    type Err = TypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TypePath::new(s.split(':'))
    }
}

#[derive(Debug, Clone)]
struct TaxNode {
    name: String,
    children: Vec<usize>,
}

/// Four trees rooted at `instance`, `model`, `process` and `actor`.
#[derive(Debug, Clone)]
pub struct Taxonomy {
    nodes: Vec<TaxNode>,
    roots: [usize; 4],
}

const DEFAULT_TREE: &[&str] = &[
    "instance:data:number",
    "instance:data:text",
    "instance:data:tensor",
    "instance:data:stream",
    "instance:sym:label",
    "instance:sym:relation",
    "instance:sym:trace",
    "model:stat:NN",
    "model:stat:bayesian",
    "model:stat:markov",
    "model:sem:taxonomy",
    "model:sem:ontology",
    "model:sem:KG",
    "model:sem:rulebase",
    "model:sem:diffeq",
    "process:generate:train",
    "process:generate:engineer",
    "process:transform",
    "process:infer:induce",
    "process:infer:deduce:classify",
    "process:infer:deduce:predict",
    "actor:human",
    "actor:agent",
    "actor:robot",
];

impl Default for Taxonomy {
    /// The shipped vocabulary, including the example model leaves
    /// (`model:stat:NN`, `model:sem:ontology`, ...).
    fn default() -> Self {
        let mut t = Taxonomy::roots_only();
        for line in DEFAULT_TREE {
            let path: TypePath = line.parse().expect("default taxonomy is well formed");
            t.insert_all(&path);
        }
        t
    }
}

impl Taxonomy {
    /// Only the four roots, no children.
    pub fn roots_only() -> Taxonomy {
        let nodes = Kind::ALL
            .iter()
            .map(|k| TaxNode {
                name: k.as_str().to_string(),
                children: Vec::new(),
            })
            .collect();
        Taxonomy {
            nodes,
            roots: [0, 1, 2, 3],
        }
    }

    fn root_index(&self, kind: Kind) -> usize {
        self.roots[kind as usize]
    }

    fn child_named(&self, parent: usize, name: &str) -> Option<usize> {
        self.nodes[parent]
            .children
            .iter()
            .copied()
            .find(|&c| self.nodes[c].name == name)
    }

    fn insert_all(&mut self, path: &TypePath) {
        let mut cur = self.root_index(path.kind());
        for seg in &path.segments[1..] {
            cur = match self.child_named(cur, seg) {
                Some(c) => c,
                None => {
                    let idx = self.nodes.len();
                    self.nodes.push(TaxNode {
                        name: seg.clone(),
                        children: Vec::new(),
                    });
                    self.nodes[cur].children.push(idx);
                    idx
                }
            };
        }
    }

    /// Number of segments of `path` that resolve, starting from the root.
    fn resolved_prefix(&self, path: &TypePath) -> usize {
        let mut cur = self.root_index(path.kind());
        let mut n = 1;
        for seg in &path.segments[1..] {
            match self.child_named(cur, seg) {
                Some(c) => {
                    cur = c;
                    n += 1;
                }
                None => break,
            }
        }
        n
    }

    pub fn contains(&self, path: &TypePath) -> bool {
        self.resolved_prefix(path) == path.depth()
    }

    /// Validates `path` against this taxonomy.
    pub fn check(&self, path: &TypePath) -> Result<(), TypeError> {
        let n = self.resolved_prefix(path);
        if n == path.depth() {
            Ok(())
        } else {
            Err(TypeError::UnknownSegment {
                path: path.to_string(),
                segment: path.segments[n].clone(),
                position: n + 1,
            })
        }
    }

    pub fn parse_type_path(&self, text: &str) -> Result<TypePath, TypeError> {
        let path: TypePath = text.parse()?;
        self.check(&path)?;
        Ok(path)
    }

    /// Adds one leaf. The parent must already exist. Re-adding an existing
    /// path is a no-op and returns `false`.
    pub fn extend(&mut self, path: &TypePath) -> Result<bool, TypeError> {
        if self.contains(path) {
            return Ok(false);
        }
        match path.parent() {
            Some(parent) if self.contains(&parent) => {
                self.insert_all(path);
                Ok(true)
            }
            _ => Err(TypeError::MissingParent(path.clone())),
        }
    }

    /// Reads a line-oriented extension file: one type path per line, `#`
    /// starts a comment. Returns the number of leaves added.
    pub fn load_extensions(&mut self, src: &SourceFile) -> Result<usize, Vec<Diagnostic>> {
        let mut added = 0;
        let mut diags = Vec::new();
        for (i, raw) in src.text.split('\n').enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let col = raw.chars().take_while(|c| c.is_whitespace()).count() + 1;
            let pos = Position::new(i + 1, col);
            match line.parse::<TypePath>().and_then(|p| self.extend(&p)) {
                Ok(true) => added += 1,
                Ok(false) => {}
                Err(e) => diags.push(Diagnostic::error("taxonomy", e.to_string()).at(pos)),
            }
        }
        if diags.is_empty() {
            Ok(added)
        } else {
            Err(diags)
        }
    }

    /// Every path in the taxonomy, depth-first, roots in kind order.
    pub fn all_paths(&self) -> Vec<TypePath> {
        let mut out = Vec::new();
        for kind in Kind::ALL {
            let mut stack = vec![(self.root_index(kind), vec![kind.as_str().to_string()])];
            while let Some((idx, segs)) = stack.pop() {
                for &c in self.nodes[idx].children.iter().rev() {
                    let mut s = segs.clone();
                    s.push(self.nodes[c].name.clone());
                    stack.push((c, s));
                }
                out.push(TypePath { segments: segs });
            }
        }
        out
    }

    /// Direct children of `path`, in insertion order.
    pub fn children(&self, path: &TypePath) -> Vec<TypePath> {
        let mut cur = self.root_index(path.kind());
        for seg in &path.segments[1..] {
            match self.child_named(cur, seg) {
                Some(c) => cur = c,
                None => return Vec::new(),
            }
        }
        self.nodes[cur]
            .children
            .iter()
            .map(|&c| {
                let mut segments = path.segments.clone();
                segments.push(self.nodes[c].name.clone());
                TypePath { segments }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> TypePath {
        s.parse().unwrap()
    }

    #[test]
    fn parses_paths() {
        let t = Taxonomy::default();
        assert_eq!(
            t.parse_type_path("model:stat:NN").unwrap().segments(),
            ["model", "stat", "NN"]
        );
        assert_eq!(t.parse_type_path("instance").unwrap().segments(), ["instance"]);
        match t.parse_type_path("model:semantic") {
            Err(TypeError::UnknownSegment { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            t.parse_type_path("symbol:label"),
            Err(TypeError::UnknownRoot(_))
        ));
        assert!(matches!(t.parse_type_path("model::stat"), Err(TypeError::MalformedPath(_))));
        assert!(matches!(t.parse_type_path(""), Err(TypeError::MalformedPath(_))));
        assert!(matches!(t.parse_type_path("model:st at"), Err(TypeError::MalformedPath(_))));
    }

    #[test]
    fn subtype_examples() {
        assert!(is_subtype(&p("model:stat:NN"), &p("model:stat")));
        assert!(is_subtype(&p("instance:data"), &p("instance:data")));
        assert!(!is_subtype(&p("model:stat"), &p("model:sem")));
        // prefix is by segment, not by characters
        assert!(!is_subtype(&p("instance:datax"), &p("instance:data")));
    }

    #[test]
    fn lca_examples() {
        assert_eq!(
            least_common_ancestor(&p("instance:data:text"), &p("instance:sym:label")).unwrap(),
            p("instance")
        );
        assert_eq!(
            least_common_ancestor(&p("model:stat"), &p("model:stat")).unwrap(),
            p("model:stat")
        );
        assert!(matches!(
            least_common_ancestor(&p("process:infer"), &p("actor:human")),
            Err(TypeError::NoCommonAncestor(..))
        ));
    }

    #[test]
    fn meet_examples() {
        assert_eq!(meet(&p("model"), &p("model:sem")), Some(p("model:sem")));
        assert_eq!(
            meet(&p("instance:data:text"), &p("instance:data:text")),
            Some(p("instance:data:text"))
        );
        assert_eq!(meet(&p("instance:data:text"), &p("instance:sym")), None);
    }

    #[test]
    fn default_tree_shape() {
        let t = Taxonomy::default();
        let all = t.all_paths();
        assert_eq!(all.len(), 35);
        assert_eq!(all[0], p("instance"));
        let names = |s: &str| -> Vec<String> { t.children(&p(s)).iter().map(|c| c.to_string()).collect() };
        assert_eq!(names("model"), ["model:stat", "model:sem"]);
        assert_eq!(
            names("process"),
            ["process:generate", "process:transform", "process:infer"]
        );
        assert_eq!(
            names("process:infer:deduce"),
            ["process:infer:deduce:classify", "process:infer:deduce:predict"]
        );
        assert_eq!(names("actor"), ["actor:human", "actor:agent", "actor:robot"]);
    }

    #[test]
    fn extensions_only_add_leaves() {
        let mut t = Taxonomy::default();
        let src = SourceFile::memory(
            "# extra leaves\nmodel:stat:svm\n  model:sem:ontology  # already there\nmodel:foo:bar\n",
        );
        let err = t.load_extensions(&src).unwrap_err();
        assert_eq!(err.len(), 1);
        assert_eq!(err[0].position, Some(Position::new(4, 1)));
        // the good line was still applied
        assert!(t.contains(&p("model:stat:svm")));
        let mut t = Taxonomy::default();
        let ok = SourceFile::memory("model:stat:svm\nmodel:stat:svm:linear\n");
        assert_eq!(t.load_extensions(&ok).unwrap(), 2);
        assert_eq!(t.all_paths().len(), 37);
    }
}
