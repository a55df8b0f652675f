//! Per-process arity and typing constraints.

use std::collections::BTreeMap;
use std::fmt;

use crate::taxonomy::TypePath;

/// How many adjacent boxes of the accepted types a process may have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// Alternatives; a box is accepted if its type is a subtype of any of them.
    pub accepts: Vec<TypePath>,
    pub min: u32,
    /// `None` means unbounded.
    pub max: Option<u32>,
}

impl Constraint {
    pub fn new(accepts: &[&str], min: u32, max: Option<u32>) -> Constraint {
        Constraint {
            accepts: accepts
                .iter()
                .map(|s| s.parse().expect("constraint type path"))
                .collect(),
            min,
            max,
        }
    }

    pub fn exactly(accepts: &[&str], n: u32) -> Constraint {
        Constraint::new(accepts, n, Some(n))
    }

    pub fn at_least(accepts: &[&str], n: u32) -> Constraint {
        Constraint::new(accepts, n, None)
    }

    /// Depth of the most specific accepted type `ty` falls under.
    pub(crate) fn specificity(&self, ty: &TypePath) -> Option<usize> {
        self.accepts
            .iter()
            .filter(|a| ty.is_subtype_of(a))
            .map(TypePath::depth)
            .max()
    }

    pub fn admits(&self, count: u32) -> bool {
        count >= self.min && self.max.is_none_or(|m| count <= m)
    }

    pub fn describe_bounds(&self) -> String {
        match (self.min, self.max) {
            (n, Some(m)) if n == m => format!("exactly {n}"),
            (0, Some(m)) => format!("at most {m}"),
            (n, None) => format!("at least {n}"),
            (n, Some(m)) => format!("between {n} and {m}"),
        }
    }

    pub fn describe_types(&self) -> String {
        self.accepts
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.describe_bounds(), self.describe_types())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub inputs: Vec<Constraint>,
    pub outputs: Vec<Constraint>,
    /// Warn when the single input and output have the same type.
    pub warn_same_type: bool,
}

/// Rows keyed by process type. Lookup picks the most specific row whose key
/// is a supertype of the node type.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TypingRuleTable {
    rows: BTreeMap<TypePath, Rule>,
}

impl TypingRuleTable {
    pub fn new() -> TypingRuleTable {
        TypingRuleTable::default()
    }

    /// Panics if `key` is not a `process` path.
    pub fn insert(&mut self, key: TypePath, rule: Rule) {
        assert_eq!(
            key.kind(),
            crate::taxonomy::Kind::Process,
            "rule keys must be process types"
        );
        self.rows.insert(key, rule);
    }

    pub fn rows(&self) -> impl Iterator<Item = (&TypePath, &Rule)> {
        self.rows.iter()
    }

    pub fn lookup(&self, ty: &TypePath) -> Option<(&TypePath, &Rule)> {
        let mut cur = Some(ty.clone());
        while let Some(p) = cur {
            if let Some((k, r)) = self.rows.get_key_value(&p) {
                return Some((k, r));
            }
            cur = p.parent();
        }
        None
    }
}

fn row(table: &mut TypingRuleTable, key: &str, inputs: Vec<Constraint>, outputs: Vec<Constraint>) {
    table.insert(
        key.parse().expect("rule key"),
        Rule {
            inputs,
            outputs,
            warn_same_type: false,
        },
    );
}

/// The shipped rule table.
///
/// | process | inputs | outputs |
/// |---|---|---|
/// | `process` (fallback) | ≥1 instance\|model\|actor | ≥1 instance\|model |
/// | `generate:train` | ≥1 instance, any models | exactly 1 model |
/// | `generate:engineer` | ≥1 actor | exactly 1 model |
/// | `transform` | exactly 1 instance\|model | exactly 1 instance\|model |
/// | `infer:deduce` | ≥1 model, ≥1 instance | ≥1 instance |
/// | `infer:induce` | ≥1 instance, any models | exactly 1 model |
pub fn default_rules() -> TypingRuleTable {
    let mut t = TypingRuleTable::new();
    row(
        &mut t,
        "process",
        vec![Constraint::at_least(&["instance", "model", "actor"], 1)],
        vec![Constraint::at_least(&["instance", "model"], 1)],
    );
    row(
        &mut t,
        "process:generate:train",
        vec![
            Constraint::at_least(&["instance"], 1),
            Constraint::at_least(&["model"], 0),
        ],
        vec![Constraint::exactly(&["model"], 1)],
    );
    row(
        &mut t,
        "process:generate:engineer",
        vec![Constraint::at_least(&["actor"], 1)],
        vec![Constraint::exactly(&["model"], 1)],
    );
    t.insert(
        "process:transform".parse().unwrap(),
        Rule {
            inputs: vec![Constraint::exactly(&["instance", "model"], 1)],
            outputs: vec![Constraint::exactly(&["instance", "model"], 1)],
            warn_same_type: true,
        },
    );
    row(
        &mut t,
        "process:infer:deduce",
        vec![
            Constraint::at_least(&["model"], 1),
            Constraint::at_least(&["instance"], 1),
        ],
        vec![Constraint::at_least(&["instance"], 1)],
    );
    row(
        &mut t,
        "process:infer:induce",
        vec![
            Constraint::at_least(&["instance"], 1),
            Constraint::at_least(&["model"], 0),
        ],
        vec![Constraint::exactly(&["model"], 1)],
    );
    t
}
