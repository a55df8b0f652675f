//! Subgraph matching with subtyping, and elementary-pattern decomposition.
//!
//! A match maps every pattern node injectively onto a target node whose type
//! is a subtype of the pattern node's type, such that every pattern edge lands
//! on a target edge. Extra target edges around the image are allowed.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use crate::catalog::Catalog;
use crate::exec::Exec;
use crate::graph::PatternGraph;
use crate::taxonomy::{Kind, TypePath};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Match {
    pub pattern: String,
    /// Pattern node id to target node id, ordered by pattern node id.
    pub mapping: BTreeMap<String, String>,
}

impl Match {
    /// Target ids in pattern-node-id order; the sort key for match lists.
    pub fn image(&self) -> Vec<&str> {
        self.mapping.values().map(String::as_str).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TypeMode {
    /// Target type must be a subtype of the pattern type.
    #[default]
    Subtype,
    /// Types must be equal.
    Exact,
}

impl TypeMode {
    fn admits(self, target: &TypePath, pattern: &TypePath) -> bool {
        match self {
            TypeMode::Subtype => target.is_subtype_of(pattern),
            TypeMode::Exact => target == pattern,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MatchOptions {
    pub mode: TypeMode,
    pub exec: Exec,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("graph `{graph}` has {processes} processes; decomposition is limited to {limit}")]
    TooLarge {
        graph: String,
        processes: usize,
        limit: usize,
    },
}

/// Adjacency-indexed view of a graph. Index order is id order.
struct Indexed<'g> {
    ids: Vec<&'g str>,
    types: Vec<&'g TypePath>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    edges: HashSet<(usize, usize)>,
}

impl<'g> Indexed<'g> {
    fn new(g: &'g PatternGraph) -> Indexed<'g> {
        let ids: Vec<&str> = g.nodes().map(|n| n.id.as_str()).collect();
        let types = g.nodes().map(|n| &n.ty).collect();
        let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
        let mut out = vec![Vec::new(); ids.len()];
        let mut inn = vec![Vec::new(); ids.len()];
        let mut edges = HashSet::new();
        for e in g.edges() {
            let (a, b) = (index[e.from.as_str()], index[e.to.as_str()]);
            out[a].push(b);
            inn[b].push(a);
            edges.insert((a, b));
        }
        Indexed {
            ids,
            types,
            out,
            inn,
            edges,
        }
    }

    fn len(&self) -> usize {
        self.ids.len()
    }
}

/// Search order over pattern nodes: processes first, then nodes adjacent to
/// already-placed ones, then the rest (all ties by id).
fn search_order(p: &Indexed) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.len()).filter(|&i| p.types[i].kind() == Kind::Process).collect();
    let mut placed = vec![false; p.len()];
    for &i in &order {
        placed[i] = true;
    }
    while order.len() < p.len() {
        let next = (0..p.len())
            .filter(|&i| !placed[i])
            .find(|&i| p.out[i].iter().chain(&p.inn[i]).any(|&j| placed[j]))
            .or_else(|| (0..p.len()).find(|&i| !placed[i]))
            .expect("unplaced node exists");
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Search<'a> {
    p: &'a Indexed<'a>,
    t: &'a Indexed<'a>,
    order: Vec<usize>,
    mode: TypeMode,
}

impl Search<'_> {
    fn compatible(&self, pn: usize, tn: usize, map: &[Option<usize>], used: &[bool]) -> bool {
        if used[tn]
            || !self.mode.admits(self.t.types[tn], self.p.types[pn])
            || self.t.out[tn].len() < self.p.out[pn].len()
            || self.t.inn[tn].len() < self.p.inn[pn].len()
        {
            return false;
        }
        self.p.out[pn]
            .iter()
            .all(|&q| map[q].is_none_or(|tq| self.t.edges.contains(&(tn, tq))))
            && self.p.inn[pn]
                .iter()
                .all(|&q| map[q].is_none_or(|tq| self.t.edges.contains(&(tq, tn))))
    }

    /// Target nodes worth trying for pattern node `pn` given the partial map.
    fn candidates(&self, pn: usize, map: &[Option<usize>]) -> Vec<usize> {
        if let Some(&q) = self.p.inn[pn].iter().find(|&&q| map[q].is_some()) {
            return self.t.out[map[q].unwrap()].clone();
        }
        if let Some(&q) = self.p.out[pn].iter().find(|&&q| map[q].is_some()) {
            return self.t.inn[map[q].unwrap()].clone();
        }
        (0..self.t.len()).collect()
    }

    fn extend(&self, depth: usize, map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, found: &mut Vec<Vec<usize>>) {
        if depth == self.order.len() {
            found.push(map.iter().map(|m| m.expect("total at full depth")).collect());
            return;
        }
        let pn = self.order[depth];
        for tn in self.candidates(pn, map) {
            if self.compatible(pn, tn, map, used) {
                map[pn] = Some(tn);
                used[tn] = true;
                self.extend(depth + 1, map, used, found);
                map[pn] = None;
                used[tn] = false;
            }
        }
    }

    fn root_candidates(&self) -> Vec<usize> {
        match self.order.first() {
            Some(&pn) => {
                let empty = vec![None; self.p.len()];
                let unused = vec![false; self.t.len()];
                (0..self.t.len())
                    .filter(|&tn| self.compatible(pn, tn, &empty, &unused))
                    .collect()
            }
            None => Vec::new(),
        }
    }

    fn search_root(&self, tn: usize) -> Vec<Vec<usize>> {
        let mut map = vec![None; self.p.len()];
        let mut used = vec![false; self.t.len()];
        let mut found = Vec::new();
        map[self.order[0]] = Some(tn);
        used[tn] = true;
        self.extend(1, &mut map, &mut used, &mut found);
        found
    }
}

/// All matches of `pattern` in `target`, sorted by image.
pub fn find_matches(pattern: &PatternGraph, target: &PatternGraph) -> Vec<Match> {
    find_matches_with(pattern, target, MatchOptions::default())
}

pub fn find_matches_with(pattern: &PatternGraph, target: &PatternGraph, opts: MatchOptions) -> Vec<Match> {
    let p = Indexed::new(pattern);
    let t = Indexed::new(target);
    if p.len() == 0 || p.len() > t.len() {
        return Vec::new();
    }
    let search = Search {
        order: search_order(&p),
        p: &p,
        t: &t,
        mode: opts.mode,
    };
    let roots = search.root_candidates();
    let raw = opts.exec.flat_map(&roots, |&tn| search.search_root(tn));
    let mut matches: Vec<Match> = raw
        .into_iter()
        .map(|assign| Match {
            pattern: pattern.name().to_string(),
            mapping: assign
                .iter()
                .enumerate()
                .map(|(pn, &tn)| (p.ids[pn].to_string(), t.ids[tn].to_string()))
                .collect(),
        })
        .collect();
    matches.sort_by(|a, b| a.image().cmp(&b.image()));
    matches.dedup();
    matches
}

/// Matches of several patterns, concatenated in the given order.
pub fn find_all_matches(patterns: &[&PatternGraph], target: &PatternGraph, opts: MatchOptions) -> Vec<Match> {
    let inner = MatchOptions {
        exec: Exec::Sequential,
        ..opts
    };
    opts.exec
        .flat_map(patterns, |p| find_matches_with(p, target, inner))
}

/// Re-checks the three match invariants independently of the search.
pub fn verify_match(m: &Match, pattern: &PatternGraph, target: &PatternGraph, mode: TypeMode) -> Result<(), String> {
    if m.mapping.len() != pattern.node_count() {
        return Err(format!("mapping covers {} of {} pattern nodes", m.mapping.len(), pattern.node_count()));
    }
    let mut seen = HashSet::new();
    for (pn, tn) in &m.mapping {
        let pnode = pattern.node(pn).ok_or_else(|| format!("`{pn}` is not a pattern node"))?;
        let tnode = target.node(tn).ok_or_else(|| format!("`{tn}` is not a target node"))?;
        if !seen.insert(tn) {
            return Err(format!("target node `{tn}` used twice"));
        }
        if !mode.admits(&tnode.ty, &pnode.ty) {
            return Err(format!("`{tn}`: {} does not refine {}", tnode.ty, pnode.ty));
        }
    }
    for e in pattern.edges() {
        let (a, b) = (&m.mapping[&e.from], &m.mapping[&e.to]);
        if !target.contains_edge(a, b) {
            return Err(format!("pattern edge {} -> {} has no image {a} -> {b}", e.from, e.to));
        }
    }
    Ok(())
}

/// Equal shape and exactly equal types, ignoring ids, names and meta.
pub fn is_isomorphic(a: &PatternGraph, b: &PatternGraph) -> bool {
    a.node_count() == b.node_count()
        && a.edge_count() == b.edge_count()
        && !find_matches_with(
            a,
            b,
            MatchOptions {
                mode: TypeMode::Exact,
                exec: Exec::Sequential,
            },
        )
        .is_empty()
}

/// True if `specific` has the same shape as `general` with every node type
/// equal to or below the corresponding type of `general`.
pub fn is_specialization_of(specific: &PatternGraph, general: &PatternGraph) -> bool {
    specific.node_count() == general.node_count()
        && specific.edge_count() == general.edge_count()
        && !find_matches(general, specific).is_empty()
}

/// A cover of the target's processes by elementary-pattern matches.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    pub parts: Vec<Match>,
    /// Process ids covered by no part, in id order.
    pub uncovered: Vec<String>,
}

impl Decomposition {
    pub fn part_names(&self) -> Vec<&str> {
        self.parts.iter().map(|m| m.pattern.as_str()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecomposeOptions {
    pub max_processes: usize,
    pub exec: Exec,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            max_processes: 64,
            exec: Exec::default(),
        }
    }
}

pub fn decompose(target: &PatternGraph, catalog: &Catalog) -> Result<Decomposition, MatchError> {
    decompose_with(target, catalog, DecomposeOptions::default())
}

/// Picks, for every process, the first elementary match covering it (catalog
/// order, then image order).
///
/// Elementary entries have exactly one process, so parts never share a
/// process and every process with at least one candidate can be covered at
/// once: the per-process choice is a maximum-coverage selection.
pub fn decompose_with(target: &PatternGraph, catalog: &Catalog, opts: DecomposeOptions) -> Result<Decomposition, MatchError> {
    let processes = target.process_count();
    if processes > opts.max_processes {
        return Err(MatchError::TooLarge {
            graph: target.name().to_string(),
            processes,
            limit: opts.max_processes,
        });
    }
    let elementary: Vec<&PatternGraph> = catalog.elementary().collect();
    let candidates = find_all_matches(
        &elementary,
        target,
        MatchOptions {
            mode: TypeMode::Subtype,
            exec: opts.exec,
        },
    );

    let mut chosen: BTreeMap<&str, &Match> = BTreeMap::new();
    for m in &candidates {
        let pattern = catalog.get(&m.pattern).expect("candidate from catalog");
        let proc_id = pattern.process_ids().next().expect("elementary has a process");
        chosen.entry(m.mapping[proc_id].as_str()).or_insert(m);
    }

    let mut parts: Vec<Match> = chosen.values().map(|m| (*m).clone()).collect();
    parts.sort_by(|a, b| {
        (catalog.position(&a.pattern), a.image()).cmp(&(catalog.position(&b.pattern), b.image()))
    });
    let mut claimed = BTreeSet::new();
    for m in &parts {
        for t in m.mapping.values().filter(|t| target.node(t).is_some_and(|n| n.is_process())) {
            assert!(claimed.insert(t.as_str()), "process `{t}` claimed by two parts");
        }
    }
    let uncovered = target
        .process_ids()
        .filter(|id| !chosen.contains_key(id))
        .map(str::to_string)
        .collect();
    Ok(Decomposition { parts, uncovered })
}
