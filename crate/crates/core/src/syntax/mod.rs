//! Formulas over `¬`, `∧`, `∨` and sequents between finite sets of them.

mod parser;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use parser::{parse_formula, parse_sequent};

use crate::error::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    /// Number of atom and connective occurrences.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(a) => 1 + a.node_count(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }

    /// Nesting depth of connectives; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name);
            }
            Formula::Not(a) => a.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Not(_) => 3,
            Formula::Atom(_) => 4,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Canonical ASCII form with the fewest parentheses that parse back to the
/// same tree: `~` binds tighter than `&`, which binds tighter than `|`, and
/// both binary connectives associate to the left.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Not(a) => {
                f.write_str("~")?;
                a.write_child(f, a.precedence() < 3)
            }
            Formula::And(a, b) => {
                a.write_child(f, a.precedence() < 2)?;
                f.write_str(" & ")?;
                b.write_child(f, b.precedence() <= 2)
            }
            Formula::Or(a, b) => {
                a.write_child(f, a.precedence() < 1)?;
                f.write_str(" | ")?;
                b.write_child(f, b.precedence() <= 1)
            }
        }
    }
}

impl FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

/// A pair of finite formula sets `Γ ⊢ Δ`. Either side may be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub premises: BTreeSet<Formula>,
    pub conclusions: BTreeSet<Formula>,
}

impl Sequent {
    pub fn new(
        premises: impl IntoIterator<Item = Formula>,
        conclusions: impl IntoIterator<Item = Formula>,
    ) -> Sequent {
        Sequent {
            premises: premises.into_iter().collect(),
            conclusions: conclusions.into_iter().collect(),
        }
    }

    /// Distinct atoms on both sides, sorted by name.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for f in self.premises.iter().chain(&self.conclusions) {
            f.collect_atoms(&mut out);
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.premises.iter().chain(&self.conclusions).map(Formula::node_count).sum()
    }
}

fn write_side(f: &mut fmt::Formatter<'_>, side: &BTreeSet<Formula>) -> fmt::Result {
    for (i, formula) in side.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{formula}")?;
    }
    Ok(())
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_side(f, &self.premises)?;
        if !self.premises.is_empty() {
            f.write_str(" ")?;
        }
        f.write_str("|-")?;
        if !self.conclusions.is_empty() {
            f.write_str(" ")?;
        }
        write_side(f, &self.conclusions)
    }
}

impl FromStr for Sequent {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}
