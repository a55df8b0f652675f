//! Shared test helpers: an exhaustive matching oracle and a generator of
//! random well-formed graphs.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use boxology::{check_well_formed, default_rules, Kind, PatternGraph, Taxonomy, TypePath, TypingRuleTable};
use rand::seq::IndexedRandom;
use rand::Rng;

pub fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Every injective map from pattern nodes to target nodes that respects
/// subtyping (or type equality when `exact`) and carries every pattern edge
/// onto a target edge. Sorted by the images in pattern-id order.
pub fn brute_force(pattern: &PatternGraph, target: &PatternGraph, exact: bool) -> Vec<BTreeMap<String, String>> {
    let pids: Vec<&str> = pattern.nodes().map(|n| n.id.as_str()).collect();
    let tids: Vec<&str> = target.nodes().map(|n| n.id.as_str()).collect();
    let mut out = Vec::new();
    let mut assign: Vec<usize> = Vec::new();
    let mut used = vec![false; tids.len()];
    enumerate(&pids, &tids, &mut assign, &mut used, &mut |assign| {
        let map: BTreeMap<String, String> = pids
            .iter()
            .zip(assign)
            .map(|(p, &t)| (p.to_string(), tids[t].to_string()))
            .collect();
        let types_ok = map.iter().all(|(p, t)| {
            let (pt, tt) = (&pattern.node(p).unwrap().ty, &target.node(t).unwrap().ty);
            if exact {
                pt == tt
            } else {
                tt.segments().starts_with(pt.segments())
            }
        });
        let edges_ok = pattern.edges().all(|e| target.contains_edge(&map[&e.from], &map[&e.to]));
        if types_ok && edges_ok {
            out.push(map);
        }
    });
    out.sort_by(|a, b| a.values().cmp(b.values()));
    out
}

fn enumerate(pids: &[&str], tids: &[&str], assign: &mut Vec<usize>, used: &mut [bool], f: &mut impl FnMut(&[usize])) {
    if assign.len() == pids.len() {
        f(assign);
        return;
    }
    for t in 0..tids.len() {
        if !used[t] {
            used[t] = true;
            assign.push(t);
            enumerate(pids, tids, assign, used, f);
            assign.pop();
            used[t] = false;
        }
    }
}

/// Builds random graphs that satisfy the default typing rules.
pub struct GraphGen {
    pub taxonomy: Taxonomy,
    pub rules: TypingRuleTable,
    paths: Vec<TypePath>,
    pub max_nodes: usize,
}

impl GraphGen {
    pub fn new(max_nodes: usize) -> GraphGen {
        let taxonomy = Taxonomy::default();
        let paths = taxonomy.all_paths();
        GraphGen {
            taxonomy,
            rules: default_rules(),
            paths,
            max_nodes,
        }
    }

    fn random_below(&self, rng: &mut impl Rng, ancestor: &TypePath) -> TypePath {
        let choices: Vec<&TypePath> = self.paths.iter().filter(|p| p.is_subtype_of(ancestor)).collect();
        (*choices.choose(rng).unwrap()).clone()
    }

    fn attempt(&self, rng: &mut impl Rng, name: &str) -> Option<PatternGraph> {
        let processes: Vec<&TypePath> = self.paths.iter().filter(|p| p.kind() == Kind::Process).collect();
        let mut nodes: Vec<(String, TypePath)> = Vec::new();
        let mut edges: Vec<(String, String)> = Vec::new();
        let n_proc = rng.random_range(1..=3);
        for i in 0..n_proc {
            let pty = (*processes.choose(rng).unwrap()).clone();
            let pid = format!("p{i}");
            nodes.push((pid.clone(), pty.clone()));
            let (_, rule) = self.rules.lookup(&pty)?;
            for (constraints, incoming) in [(&rule.inputs, true), (&rule.outputs, false)] {
                for c in constraints {
                    let hi = c.max.unwrap_or(c.min + 2).min(c.min + 2);
                    let count = rng.random_range(c.min..=hi);
                    for _ in 0..count {
                        let alt = c.accepts.choose(rng).unwrap();
                        let reusable: Vec<String> = nodes
                            .iter()
                            .filter(|(id, ty)| {
                                ty.kind() != Kind::Process
                                    && ty.is_subtype_of(alt)
                                    && !edges.iter().any(|(a, b)| (a == id && *b == pid) || (*a == pid && b == id))
                            })
                            .map(|(id, _)| id.clone())
                            .collect();
                        let id = if !reusable.is_empty() && rng.random_bool(0.4) {
                            reusable.choose(rng).unwrap().clone()
                        } else {
                            let id = format!("b{}", nodes.len());
                            nodes.push((id.clone(), self.random_below(rng, alt)));
                            id
                        };
                        if incoming {
                            edges.push((id, pid.clone()));
                        } else {
                            edges.push((pid.clone(), id));
                        }
                    }
                }
            }
        }
        if nodes.len() > self.max_nodes {
            return None;
        }
        let mut b = PatternGraph::builder(name);
        for (id, ty) in nodes {
            b = b.node(id, ty);
        }
        for (a, c) in edges {
            b = b.edge(a, c);
        }
        let g = b.build().ok()?;
        let clean = !check_well_formed(&g, &self.rules, &self.taxonomy)
            .iter()
            .any(|d| d.is_error());
        clean.then_some(g)
    }

    /// A random well-formed graph with at most `max_nodes` nodes.
    pub fn generate(&self, rng: &mut impl Rng, name: &str) -> PatternGraph {
        loop {
            if let Some(g) = self.attempt(rng, name) {
                return g;
            }
        }
    }
}
