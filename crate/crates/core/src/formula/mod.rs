//! Modal-propositional formulas: the syntax tree, concrete syntax, uniform
//! substitution and the catalog of named axioms and theories.

mod catalog;
mod corpus;
mod parse;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use catalog::{axiom, theory_axiom_names, theory_axioms, AxiomName, TheoryName, UnknownName};
pub use corpus::{CorpusNode, FormulaCorpus};
pub use parse::{parse, parse_with_axioms, ParseError};
pub use render::render;

/// A substitution map from atom names to formulas.
pub type Substitution = BTreeMap<String, Formula>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Diamond(Box<Formula>),
}

/// Returns true when `name` matches `[a-zA-Z][a-zA-Z0-9_]*` and is not a keyword.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && name != "true" && name != "false"
}

impl Formula {
    /// Builds an atom. Panics on names that are not identifiers; atoms are
    /// spliced into rendered text, so an invalid name would break round-trips.
    pub fn atom(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(is_identifier(&name), "invalid atom name {name:?}");
        Formula::Atom(name)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn boxed(f: Formula) -> Self {
        Formula::Box(Box::new(f))
    }

    pub fn diamond(f: Formula) -> Self {
        Formula::Diamond(Box::new(f))
    }

    /// Left-nested conjunction; the empty conjunction is `true`.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; the empty disjunction is `false`.
    pub fn disj(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bot)
    }

    /// Simultaneously replaces every mapped atom. Unmapped atoms are kept.
    pub fn substitute(&self, sigma: &Substitution) -> Formula {
        match self {
            Formula::Atom(name) => sigma.get(name).cloned().unwrap_or_else(|| self.clone()),
            Formula::Top | Formula::Bot => self.clone(),
            Formula::Not(f) => Formula::not(f.substitute(sigma)),
            Formula::And(a, b) => Formula::and(a.substitute(sigma), b.substitute(sigma)),
            Formula::Or(a, b) => Formula::or(a.substitute(sigma), b.substitute(sigma)),
            Formula::Implies(a, b) => Formula::implies(a.substitute(sigma), b.substitute(sigma)),
            Formula::Iff(a, b) => Formula::iff(a.substitute(sigma), b.substitute(sigma)),
            Formula::Box(f) => Formula::boxed(f.substitute(sigma)),
            Formula::Diamond(f) => Formula::diamond(f.substitute(sigma)),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Top | Formula::Bot => {}
            Formula::Not(f) | Formula::Box(f) | Formula::Diamond(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Maximum nesting of box and diamond.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::Box(f) | Formula::Diamond(f) => 1 + f.modal_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
        }
    }

    /// Number of syntax-tree nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 1,
            Formula::Not(f) | Formula::Box(f) | Formula::Diamond(f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }
}

/// Composes two substitutions: applying the result equals applying `first`
/// and then `second`.
pub fn compose(first: &Substitution, second: &Substitution) -> Substitution {
    let mut out: Substitution = first
        .iter()
        .map(|(k, v)| (k.clone(), v.substitute(second)))
        .collect();
    for (k, v) in second {
        out.entry(k.clone()).or_insert_with(|| v.clone());
    }
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
