use std::collections::{BTreeMap, HashMap, HashSet};

use super::lexer::{lex, Tok, Token};
use crate::diag::{Diagnostic, Position, SourceFile, Subject};
use crate::graph::{Edge, Node, PatternGraph};
use crate::taxonomy::{Taxonomy, TypeError, TypePath};

/// Where each declaration of a parsed pattern came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Spans {
    pub pattern: Position,
    pub nodes: BTreeMap<String, Position>,
    pub edges: BTreeMap<(String, String), Position>,
}

impl Spans {
    /// Source position for a graph-level diagnostic subject.
    pub fn locate(&self, subject: Option<&Subject>) -> Position {
        let found = match subject {
            Some(Subject::Node(id)) => self.nodes.get(id),
            Some(Subject::Edge(a, b)) => self.edges.get(&(a.clone(), b.clone())),
            None => None,
        };
        found.copied().unwrap_or(self.pattern)
    }

    /// Attaches positions to diagnostics that only carry a subject.
    pub fn locate_all(&self, diags: &mut [Diagnostic]) {
        for d in diags {
            if d.position.is_none() {
                d.position = Some(self.locate(d.subject.as_ref()));
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub graph: PatternGraph,
    pub spans: Spans,
}

/// Parses every `pattern` block in `src`. Either all patterns parse cleanly or
/// the full list of positioned diagnostics is returned.
pub fn parse(src: &SourceFile, t: &Taxonomy) -> Result<Vec<PatternGraph>, Vec<Diagnostic>> {
    parse_located(src, t).map(|v| v.into_iter().map(|l| l.graph).collect())
}

pub fn parse_located(src: &SourceFile, t: &Taxonomy) -> Result<Vec<Located>, Vec<Diagnostic>> {
    let (toks, diags) = lex(&src.text);
    let mut p = Parser {
        toks,
        idx: 0,
        diags,
        taxonomy: t,
    };
    let out = p.file();
    if p.diags.is_empty() {
        Ok(out)
    } else {
        p.diags.sort_by_key(|d| d.position);
        Err(p.diags)
    }
}

struct Parser<'t> {
    toks: Vec<Token>,
    idx: usize,
    diags: Vec<Diagnostic>,
    taxonomy: &'t Taxonomy,
}

#[derive(Default)]
struct Pending {
    nodes: Vec<(Node, Position)>,
    edges: Vec<(Edge, Position)>,
    meta: Vec<(String, String, Position)>,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.idx.min(self.toks.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if self.idx < self.toks.len() - 1 {
            self.idx += 1;
        }
        t
    }

    fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    fn error_here(&mut self, msg: String) {
        let pos = self.peek().pos;
        self.diags.push(Diagnostic::error("syntax", msg).at(pos));
    }

    fn expected(&mut self, what: &str) {
        let found = self.peek().tok.describe();
        self.error_here(format!("expected {what}, found {found}"));
    }

    fn ident(&mut self, what: &str) -> Option<(String, Position)> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let pos = self.bump().pos;
                Some((s, pos))
            }
            _ => {
                self.expected(what);
                None
            }
        }
    }

    fn punct(&mut self, tok: Tok) -> Option<()> {
        if self.peek().tok == tok {
            self.bump();
            Some(())
        } else {
            self.expected(&tok.describe());
            None
        }
    }

    fn string(&mut self, what: &str) -> Option<String> {
        match &self.peek().tok {
            Tok::Str(s) => {
                let s = s.clone();
                self.bump();
                Some(s)
            }
            _ => {
                self.expected(what);
                None
            }
        }
    }

    fn skip_to_pattern(&mut self) {
        while !self.at_eof() && !self.peek().tok.is_keyword("pattern") {
            self.bump();
        }
    }

    fn skip_to_statement(&mut self) {
        while !self.at_eof() {
            let t = &self.peek().tok;
            if *t == Tok::RBrace || ["node", "edge", "meta", "pattern"].iter().any(|k| t.is_keyword(k)) {
                break;
            }
            self.bump();
        }
    }

    fn file(&mut self) -> Vec<Located> {
        let mut out = Vec::new();
        let mut names: HashSet<String> = HashSet::new();
        while !self.at_eof() {
            if !self.peek().tok.is_keyword("pattern") {
                self.expected("`pattern`");
                self.bump();
                self.skip_to_pattern();
                continue;
            }
            let errors_before = self.diags.len();
            if let Some((name, name_pos, spans, pending)) = self.pattern() {
                if !names.insert(name.clone()) {
                    self.diags.push(
                        Diagnostic::error("duplicate-pattern", format!("duplicate pattern name {name:?}"))
                            .at(name_pos),
                    );
                }
                if let Some(graph) = self.finish(name, pending, errors_before) {
                    out.push(Located { graph, spans });
                }
            }
        }
        out
    }

    fn pattern(&mut self) -> Option<(String, Position, Spans, Pending)> {
        let start = self.bump().pos;
        let name_pos = self.peek().pos;
        let Some(name) = self.string("pattern name string") else {
            self.skip_to_pattern();
            return None;
        };
        if self.punct(Tok::LBrace).is_none() {
            self.skip_to_pattern();
            return None;
        }
        let mut pending = Pending::default();
        loop {
            let tok = self.peek().tok.clone();
            match tok {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Eof => {
                    self.error_here(format!("unclosed pattern {name:?}: expected `}}`"));
                    break;
                }
                ref t if t.is_keyword("pattern") => {
                    self.error_here(format!("expected `}}` to close pattern {name:?}"));
                    break;
                }
                ref t if t.is_keyword("node") => self.node(&mut pending),
                ref t if t.is_keyword("edge") => self.edge(&mut pending),
                ref t if t.is_keyword("meta") => self.meta(&mut pending),
                _ => {
                    self.expected("`node`, `edge`, `meta` or `}`");
                    self.bump();
                    self.skip_to_statement();
                }
            }
        }
        let spans = Spans {
            pattern: start,
            nodes: pending
                .nodes
                .iter()
                .map(|(n, p)| (n.id.clone(), *p))
                .collect(),
            edges: pending
                .edges
                .iter()
                .map(|(e, p)| ((e.from.clone(), e.to.clone()), *p))
                .collect(),
        };
        Some((name, name_pos, spans, pending))
    }

    fn node(&mut self, pending: &mut Pending) {
        let kw = self.bump().pos;
        let parsed = (|| {
            let (id, _) = self.ident("node id")?;
            self.punct(Tok::Colon)?;
            let mut segs = vec![self.ident("type path")?];
            while self.peek().tok == Tok::Colon {
                self.bump();
                segs.push(self.ident("type path segment")?);
            }
            let label = match self.peek().tok {
                Tok::Str(_) => self.string("label"),
                _ => None,
            };
            Some((id, segs, label))
        })();
        let Some((id, segs, label)) = parsed else {
            self.skip_to_statement();
            return;
        };
        let ty = TypePath::new(segs.iter().map(|(s, _)| s.clone()))
            .and_then(|ty| self.taxonomy.check(&ty).map(|_| ty));
        match ty {
            Ok(ty) => pending.nodes.push((Node { id, ty, label }, kw)),
            Err(e) => {
                let pos = match &e {
                    TypeError::UnknownSegment { position, .. } => segs[position - 1].1,
                    _ => segs[0].1,
                };
                self.diags.push(Diagnostic::error("unknown-type", e.to_string()).at(pos));
            }
        }
    }

    fn edge(&mut self, pending: &mut Pending) {
        let kw = self.bump().pos;
        let parsed = (|| {
            let (from, _) = self.ident("edge source")?;
            self.punct(Tok::Arrow)?;
            let (to, _) = self.ident("edge target")?;
            Some(Edge { from, to })
        })();
        match parsed {
            Some(e) => pending.edges.push((e, kw)),
            None => self.skip_to_statement(),
        }
    }

    fn meta(&mut self, pending: &mut Pending) {
        let kw = self.bump().pos;
        let parsed = (|| {
            let (key, _) = self.ident("meta key")?;
            self.punct(Tok::Eq)?;
            let value = self.string("meta value string")?;
            Some((key, value))
        })();
        match parsed {
            Some((k, v)) => pending.meta.push((k, v, kw)),
            None => self.skip_to_statement(),
        }
    }

    /// Semantic checks on one pattern; builds the graph if nothing in this
    /// pattern (or the file so far) was reported.
    fn finish(&mut self, name: String, pending: Pending, errors_before: usize) -> Option<PatternGraph> {
        let mut ids: HashMap<&str, Position> = HashMap::new();
        for (n, pos) in &pending.nodes {
            if ids.insert(&n.id, *pos).is_some() {
                self.diags.push(
                    Diagnostic::error("duplicate-id", format!("node `{}` declared twice", n.id)).at(*pos),
                );
            }
        }
        let mut seen_edges = HashSet::new();
        for (e, pos) in &pending.edges {
            for end in [&e.from, &e.to] {
                if !ids.contains_key(end.as_str()) {
                    self.diags.push(
                        Diagnostic::error(
                            "unknown-node-ref",
                            format!("edge `{} -> {}` refers to undeclared node `{end}`", e.from, e.to),
                        )
                        .at(*pos),
                    );
                }
            }
            if e.from == e.to {
                self.diags
                    .push(Diagnostic::error("self-loop", format!("self-loop on `{}`", e.from)).at(*pos));
            } else if !seen_edges.insert(e) {
                self.diags.push(
                    Diagnostic::error("duplicate-edge", format!("duplicate edge `{} -> {}`", e.from, e.to))
                        .at(*pos),
                );
            }
        }
        let mut keys = HashSet::new();
        for (k, _, pos) in &pending.meta {
            if !keys.insert(k) {
                self.diags
                    .push(Diagnostic::error("duplicate-meta", format!("duplicate meta key `{k}`")).at(*pos));
            }
        }
        if self.diags.len() > errors_before {
            return None;
        }
        let mut b = PatternGraph::builder(name);
        for (n, _) in pending.nodes {
            b.push_node(n);
        }
        for (e, _) in pending.edges {
            b.push_edge(e);
        }
        for (k, v, _) in pending.meta {
            b.push_meta(k, v);
        }
        match b.build() {
            Ok(g) => Some(g),
            Err(e) => {
                // unreachable in practice: everything build() rejects was reported above
                self.diags.push(Diagnostic::error("syntax", e.to_string()).at(Position::new(1, 1)));
                None
            }
        }
    }
}
