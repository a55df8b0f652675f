//! Typed dataflow graphs: the shared representation of user architectures and
//! catalog patterns.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::taxonomy::{is_ident, Kind, TypePath};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node {
    pub id: String,
    pub ty: TypePath,
    pub label: Option<String>,
}

impl Node {
    pub fn kind(&self) -> Kind {
        self.ty.kind()
    }

    pub fn is_process(&self) -> bool {
        self.kind() == Kind::Process
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: String,
    pub to: String,
}

impl Edge {
    pub fn new(from: impl Into<String>, to: impl Into<String>) -> Edge {
        Edge {
            from: from.into(),
            to: to.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("`{0}` is not a valid identifier")]
    InvalidId(String),
    #[error("duplicate node id `{0}`")]
    DuplicateId(String),
    #[error("edge `{from} -> {to}` refers to undeclared node `{missing}`")]
    UnknownNode {
        from: String,
        to: String,
        missing: String,
    },
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0} -> {1}`")]
    DuplicateEdge(String, String),
    #[error("`{0}` is not a valid meta key")]
    InvalidMetaKey(String),
    #[error("duplicate meta key `{0}`")]
    DuplicateMeta(String),
}

/// A named directed graph of typed nodes.
///
/// Nodes are keyed by id and edges kept as an ordered set, so two graphs with
/// the same content compare equal regardless of declaration order. Cycles are
/// allowed; self-loops and parallel edges are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternGraph {
    name: String,
    nodes: BTreeMap<String, Node>,
    edges: BTreeSet<Edge>,
    meta: BTreeMap<String, String>,
}

impl PatternGraph {
    pub fn builder(name: impl Into<String>) -> GraphBuilder {
        GraphBuilder {
            name: name.into(),
            nodes: Vec::new(),
            edges: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn empty(name: impl Into<String>) -> PatternGraph {
        PatternGraph {
            name: name.into(),
            nodes: BTreeMap::new(),
            edges: BTreeSet::new(),
            meta: BTreeMap::new(),
        }
    }

    /// A builder pre-loaded with this graph's content.
    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            name: self.name.clone(),
            nodes: self.nodes.values().cloned().collect(),
            edges: self.edges.iter().cloned().collect(),
            meta: self.meta.clone().into_iter().collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> PatternGraph {
        self.name = name.into();
        self
    }

    /// Nodes in id order.
    pub fn nodes(&self) -> impl Iterator<Item = &Node> + '_ {
        self.nodes.values()
    }

    /// Edges in `(from, to)` order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn contains_edge(&self, from: &str, to: &str) -> bool {
        self.edges.contains(&Edge::new(from, to))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn process_ids(&self) -> impl Iterator<Item = &str> + '_ {
        self.nodes.values().filter(|n| n.is_process()).map(|n| n.id.as_str())
    }

    pub fn process_count(&self) -> usize {
        self.process_ids().count()
    }

    pub fn successors<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Node> + 'a {
        self.edges
            .iter()
            .filter(move |e| e.from == id)
            .filter_map(|e| self.nodes.get(&e.to))
    }

    pub fn predecessors<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Node> + 'a {
        self.edges
            .iter()
            .filter(move |e| e.to == id)
            .filter_map(|e| self.nodes.get(&e.from))
    }
}

/// Collects declarations and validates the structural invariants on
/// [`GraphBuilder::build`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    name: String,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    meta: Vec<(String, String)>,
}

impl GraphBuilder {
    pub fn node(mut self, id: impl Into<String>, ty: TypePath) -> Self {
        self.nodes.push(Node {
            id: id.into(),
            ty,
            label: None,
        });
        self
    }

    pub fn labeled_node(mut self, id: impl Into<String>, ty: TypePath, label: impl Into<String>) -> Self {
        self.nodes.push(Node {
            id: id.into(),
            ty,
            label: Some(label.into()),
        });
        self
    }

    pub fn push_node(&mut self, node: Node) {
        self.nodes.push(node);
    }

    pub fn edge(mut self, from: impl Into<String>, to: impl Into<String>) -> Self {
        self.edges.push(Edge::new(from, to));
        self
    }

    pub fn push_edge(&mut self, edge: Edge) {
        self.edges.push(edge);
    }

    pub fn meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.meta.push((key.into(), value.into()));
        self
    }

    pub fn push_meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.meta.push((key.into(), value.into()));
    }

    pub fn build(self) -> Result<PatternGraph, GraphError> {
        let mut nodes = BTreeMap::new();
        for n in self.nodes {
            if !is_ident(&n.id) {
                return Err(GraphError::InvalidId(n.id));
            }
            if nodes.contains_key(&n.id) {
                return Err(GraphError::DuplicateId(n.id));
            }
            nodes.insert(n.id.clone(), n);
        }
        let mut edges = BTreeSet::new();
        for e in self.edges {
            for end in [&e.from, &e.to] {
                if !nodes.contains_key(end) {
                    return Err(GraphError::UnknownNode {
                        missing: end.clone(),
                        from: e.from.clone(),
                        to: e.to.clone(),
                    });
                }
            }
            if e.from == e.to {
                return Err(GraphError::SelfLoop(e.from));
            }
            if edges.contains(&e) {
                return Err(GraphError::DuplicateEdge(e.from, e.to));
            }
            edges.insert(e);
        }
        let mut meta = BTreeMap::new();
        for (k, v) in self.meta {
            if !is_ident(&k) {
                return Err(GraphError::InvalidMetaKey(k));
            }
            if meta.insert(k.clone(), v).is_some() {
                return Err(GraphError::DuplicateMeta(k));
            }
        }
        Ok(PatternGraph {
            name: self.name,
            nodes,
            edges,
            meta,
        })
    }
}
