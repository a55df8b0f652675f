//! Building patterns from patterns: stitching on glue nodes, lifting types
//! up the taxonomy and pushing them down again.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::check::check_well_formed;
use crate::diag::Diagnostic;
use crate::graph::{Edge, Node, PatternGraph};
use crate::rules::TypingRuleTable;
use crate::taxonomy::{is_ident, Kind, Taxonomy, TypePath};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("cannot glue `{left}` ({left_ty}) to `{right}` ({right_ty}): the types have no meet")]
    IncompatibleGlue {
        left: String,
        right: String,
        left_ty: TypePath,
        right_ty: TypePath,
    },
    #[error("result fails checking with {} error(s)", .0.iter().filter(|d| d.is_error()).count())]
    ResultIllTyped(Vec<Diagnostic>),
    #[error("glue refers to `{id}`, which is not a node of `{graph}`")]
    UnknownGlueNode { graph: String, id: String },
    #[error("invalid glue: {0}")]
    InvalidGlue(String),
    #[error("`{id}`: {to} is not a strict supertype of {from}")]
    NotAnAncestor {
        id: String,
        from: TypePath,
        to: TypePath,
    },
    #[error("`{id}`: {to} is not a strict subtype of {from}")]
    NotADescendant {
        id: String,
        from: TypePath,
        to: TypePath,
    },
    #[error("`{0}` is not a node of the pattern")]
    UnknownNode(String),
}

/// Pairs of (left id, right id) to fuse. Written `a=b,c=d`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GlueMap {
    pairs: Vec<(String, String)>,
}

impl GlueMap {
    pub fn new<L, R>(pairs: impl IntoIterator<Item = (L, R)>) -> Result<GlueMap, ComposeError>
    where
        L: Into<String>,
        R: Into<String>,
    {
        let pairs: Vec<(String, String)> = pairs.into_iter().map(|(l, r)| (l.into(), r.into())).collect();
        let mut lefts = BTreeSet::new();
        let mut rights = BTreeSet::new();
        for (l, r) in &pairs {
            if !is_ident(l) || !is_ident(r) {
                return Err(ComposeError::InvalidGlue(format!("`{l}={r}` is not a pair of identifiers")));
            }
            if !lefts.insert(l) {
                return Err(ComposeError::InvalidGlue(format!("left node `{l}` glued twice")));
            }
            if !rights.insert(r) {
                return Err(ComposeError::InvalidGlue(format!("right node `{r}` glued twice")));
            }
        }
        Ok(GlueMap { pairs })
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl FromStr for GlueMap {
    type Err = ComposeError;

    fn from_str(s: &str) -> Result<GlueMap, ComposeError> {
        if s.trim().is_empty() {
            return Ok(GlueMap::default());
        }
        let pairs = s
            .split(',')
            .map(|p| {
                p.split_once('=')
                    .map(|(l, r)| (l.trim().to_string(), r.trim().to_string()))
                    .ok_or_else(|| ComposeError::InvalidGlue(format!("`{p}` is not of the form left=right")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GlueMap::new(pairs)
    }
}

impl fmt::Display for GlueMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(l, r)| format!("{l}={r}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Context for re-checking composed graphs.
#[derive(Debug, Clone, Copy)]
pub struct Composer<'a> {
    pub taxonomy: &'a Taxonomy,
    pub rules: &'a TypingRuleTable,
}

impl Composer<'_> {
    fn recheck(&self, g: PatternGraph) -> Result<PatternGraph, ComposeError> {
        let diags = check_well_formed(&g, self.rules, self.taxonomy);
        if diags.iter().any(Diagnostic::is_error) {
            Err(ComposeError::ResultIllTyped(diags))
        } else {
            Ok(g)
        }
    }

    /// Disjoint union of `left` and `right` with every glue pair fused into
    /// one node of the more specific type.
    ///
    /// Fused nodes keep the left id and label; a differing right label goes
    /// to meta key `right_label_<id>`. Right ids that clash with left ids get
    /// a `_r` suffix. The result carries meta `left`, `right` and `glue`.
    pub fn compose(&self, left: &PatternGraph, right: &PatternGraph, glue: &GlueMap, name: &str) -> Result<PatternGraph, ComposeError> {
        let mut fused: BTreeMap<&str, Node> = BTreeMap::new();
        let mut right_to_left: BTreeMap<&str, &str> = BTreeMap::new();
        let mut right_labels = Vec::new();
        for (l, r) in glue.pairs() {
            let ln = left.node(l).ok_or_else(|| ComposeError::UnknownGlueNode {
                graph: left.name().to_string(),
                id: l.clone(),
            })?;
            let rn = right.node(r).ok_or_else(|| ComposeError::UnknownGlueNode {
                graph: right.name().to_string(),
                id: r.clone(),
            })?;
            if ln.kind() == Kind::Process && rn.kind() == Kind::Process && ln.ty != rn.ty {
                return Err(ComposeError::InvalidGlue(format!(
                    "`{l}={r}` joins processes of different types ({} and {})",
                    ln.ty, rn.ty
                )));
            }
            let ty = ln.ty.meet(&rn.ty).ok_or_else(|| ComposeError::IncompatibleGlue {
                left: l.clone(),
                right: r.clone(),
                left_ty: ln.ty.clone(),
                right_ty: rn.ty.clone(),
            })?;
            if let Some(rl) = &rn.label {
                if ln.label.as_ref() != Some(rl) {
                    right_labels.push((format!("right_label_{l}"), rl.clone()));
                }
            }
            fused.insert(l, Node {
                id: l.clone(),
                ty,
                label: ln.label.clone().or_else(|| rn.label.clone()),
            });
            right_to_left.insert(r, l);
        }

        let mut taken: BTreeSet<String> = left.nodes().map(|n| n.id.clone()).collect();
        let mut rename: BTreeMap<&str, String> = BTreeMap::new();
        for n in right.nodes() {
            let id = match right_to_left.get(n.id.as_str()) {
                Some(l) => l.to_string(),
                None => {
                    let mut id = n.id.clone();
                    while taken.contains(&id) {
                        id.push_str("_r");
                    }
                    taken.insert(id.clone());
                    id
                }
            };
            rename.insert(&n.id, id);
        }

        let mut b = PatternGraph::builder(name);
        for n in left.nodes() {
            b.push_node(fused.remove(n.id.as_str()).unwrap_or_else(|| n.clone()));
        }
        for n in right.nodes().filter(|n| !right_to_left.contains_key(n.id.as_str())) {
            b.push_node(Node {
                id: rename[n.id.as_str()].clone(),
                ..n.clone()
            });
        }
        let mut edges: BTreeSet<Edge> = left.edges().cloned().collect();
        edges.extend(
            right
                .edges()
                .map(|e| Edge::new(rename[e.from.as_str()].clone(), rename[e.to.as_str()].clone())),
        );
        for e in edges {
            if e.from == e.to {
                return Err(ComposeError::InvalidGlue(format!("glue collapses an edge into a self-loop on `{}`", e.from)));
            }
            b.push_edge(e);
        }
        b.push_meta("left", left.name());
        b.push_meta("right", right.name());
        b.push_meta("glue", glue.to_string());
        for (k, v) in right_labels {
            b.push_meta(k, v);
        }
        let g = b.build().map_err(|e| ComposeError::InvalidGlue(e.to_string()))?;
        self.recheck(g)
    }

    /// Lifts the listed nodes to strict supertypes of their current types.
    pub fn abstract_types(&self, g: &PatternGraph, replacements: &BTreeMap<String, TypePath>) -> Result<PatternGraph, ComposeError> {
        self.retype(g, replacements, |id, from, to| {
            if from != to && from.is_subtype_of(to) {
                Ok(())
            } else {
                Err(ComposeError::NotAnAncestor {
                    id: id.to_string(),
                    from: from.clone(),
                    to: to.clone(),
                })
            }
        })
    }

    /// Lowers the listed nodes to strict subtypes of their current types.
    pub fn specialize_types(&self, g: &PatternGraph, replacements: &BTreeMap<String, TypePath>) -> Result<PatternGraph, ComposeError> {
        self.retype(g, replacements, |id, from, to| {
            if from != to && to.is_subtype_of(from) {
                Ok(())
            } else {
                Err(ComposeError::NotADescendant {
                    id: id.to_string(),
                    from: from.clone(),
                    to: to.clone(),
                })
            }
        })
    }

    fn retype(
        &self,
        g: &PatternGraph,
        replacements: &BTreeMap<String, TypePath>,
        allowed: impl Fn(&str, &TypePath, &TypePath) -> Result<(), ComposeError>,
    ) -> Result<PatternGraph, ComposeError> {
        for (id, to) in replacements {
            let n = g.node(id).ok_or_else(|| ComposeError::UnknownNode(id.clone()))?;
            allowed(id, &n.ty, to)?;
        }
        let mut b = PatternGraph::builder(g.name());
        for n in g.nodes() {
            let ty = replacements.get(&n.id).cloned().unwrap_or_else(|| n.ty.clone());
            b.push_node(Node { ty, ..n.clone() });
        }
        for e in g.edges() {
            b.push_edge(e.clone());
        }
        for (k, v) in g.meta() {
            b.push_meta(k, v);
        }
        let out = b.build().expect("structure unchanged");
        self.recheck(out)
    }
}
