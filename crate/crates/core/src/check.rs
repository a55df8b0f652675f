//! Well-formedness checking: the type checker of the graph language.

use crate::diag::{Diagnostic, Subject};
use crate::graph::{Node, PatternGraph};
use crate::rules::{Constraint, TypingRuleTable};
use crate::taxonomy::Taxonomy;

/// Checks `g` against the edge invariant, the typing rules and the
/// no-orphan rule. Returns every problem found, ordered by subject (nodes by
/// id, then edges by `(from, to)`); an empty list means well-formed.
pub fn check_well_formed(g: &PatternGraph, rules: &TypingRuleTable, t: &Taxonomy) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    for n in g.nodes() {
        if let Err(e) = t.check(&n.ty) {
            out.push(
                Diagnostic::error("unknown-type", format!("node `{}`: {e}", n.id))
                    .about(Subject::Node(n.id.clone())),
            );
        }
    }

    for e in g.edges() {
        let (a, b) = (g.node(&e.from), g.node(&e.to));
        if let (Some(a), Some(b)) = (a, b) {
            if a.is_process() == b.is_process() {
                out.push(
                    Diagnostic::error(
                        "edge-kind",
                        format!(
                            "edge `{} -> {}` must join a process to a box",
                            e.from, e.to
                        ),
                    )
                    .about(Subject::Edge(e.from.clone(), e.to.clone())),
                );
            }
        }
    }

    for n in g.nodes() {
        if n.is_process() {
            check_process(g, n, rules, &mut out);
        } else if !g.successors(&n.id).chain(g.predecessors(&n.id)).any(Node::is_process) {
            out.push(
                Diagnostic::error(
                    "orphan",
                    format!("{} box `{}` is not connected to any process", n.kind(), n.id),
                )
                .about(Subject::Node(n.id.clone())),
            );
        }
    }

    out.sort_by(|a, b| {
        (&a.subject, a.code, &a.message).cmp(&(&b.subject, b.code, &b.message))
    });
    out
}

fn check_process(g: &PatternGraph, n: &Node, rules: &TypingRuleTable, out: &mut Vec<Diagnostic>) {
    let subject = || Subject::Node(n.id.clone());
    let Some((_, rule)) = rules.lookup(&n.ty) else {
        out.push(
            Diagnostic::error("no-rule", format!("no typing rule covers `{}` ({})", n.id, n.ty))
                .about(subject()),
        );
        return;
    };
    let inputs: Vec<&Node> = g.predecessors(&n.id).filter(|m| !m.is_process()).collect();
    let outputs: Vec<&Node> = g.successors(&n.id).filter(|m| !m.is_process()).collect();
    check_side(n, "input", &inputs, &rule.inputs, out);
    check_side(n, "output", &outputs, &rule.outputs, out);

    if rule.warn_same_type {
        if let ([i], [o]) = (inputs.as_slice(), outputs.as_slice()) {
            if i.ty == o.ty {
                out.push(
                    Diagnostic::warning(
                        "same-type",
                        format!("`{}` transforms `{}` into the same type {}", n.id, i.id, i.ty),
                    )
                    .about(subject()),
                );
            }
        }
    }
}

fn check_side(n: &Node, side: &str, boxes: &[&Node], constraints: &[Constraint], out: &mut Vec<Diagnostic>) {
    let mut counts = vec![0u32; constraints.len()];
    for b in boxes {
        let best = constraints
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.specificity(&b.ty).map(|s| (s, i)))
            // most specific wins, earlier row breaks ties
            .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        match best {
            Some((_, i)) => counts[i] += 1,
            None => out.push(
                Diagnostic::error(
                    if side == "input" { "unexpected-input" } else { "unexpected-output" },
                    format!(
                        "{} `{}` does not accept {} `{}` of type {}",
                        n.ty, n.id, side, b.id, b.ty
                    ),
                )
                .about(Subject::Node(n.id.clone())),
            ),
        }
    }
    for (c, &count) in constraints.iter().zip(&counts) {
        if !c.admits(count) {
            out.push(
                Diagnostic::error(
                    if side == "input" { "input-arity" } else { "output-arity" },
                    format!(
                        "{} `{}` requires {} {} {side}{}, found {count}",
                        n.ty,
                        n.id,
                        c.describe_bounds(),
                        c.describe_types(),
                        if c.min == 1 && c.max == Some(1) { "" } else { "s" },
                    ),
                )
                .about(Subject::Node(n.id.clone())),
            );
        }
    }
}
