//! Boolean normality, monotonicity in the information order, and
//! collapsibility, per table and per scheme.

use serde::{Deserialize, Serialize};

use crate::error::PropertyError;
use crate::table::{BinaryTable, Connective, Operation, Scheme, UnaryTable};
use crate::value::{Collapser, TruthValue};

/// The four scheme-level property flags.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Classification {
    pub boolean_normal: bool,
    pub monotonic: bool,
    pub truth_collapsible: bool,
    pub falsity_collapsible: bool,
}

impl Classification {
    pub fn collapsible(&self) -> bool {
        self.truth_collapsible || self.falsity_collapsible
    }
}

/// Whether `t` agrees with the classical operation of `conn` on Boolean inputs.
pub fn is_boolean_normal_op<O: Operation>(t: &O, conn: Connective) -> bool {
    debug_assert_eq!(O::ARITY, conn.arity());
    O::inputs()
        .iter()
        .filter(|args| args.iter().all(|v| v.is_boolean()))
        .all(|args| t.output(args) == conn.classical(args))
}

pub fn is_boolean_normal(s: &Scheme) -> bool {
    is_boolean_normal_op(&s.neg, Connective::Neg)
        && is_boolean_normal_op(&s.and, Connective::And)
        && is_boolean_normal_op(&s.or, Connective::Or)
}

/// Definitional check: `u ≤_I w` componentwise implies `t(u) ≤_I t(w)`.
pub fn is_monotonic_op<O: Operation>(t: &O) -> bool {
    let inputs = O::inputs();
    inputs.iter().all(|u| {
        inputs.iter().all(|w| {
            let below = u.iter().zip(w).all(|(a, b)| a.info_le(*b));
            !below || t.output(u).info_le(t.output(w))
        })
    })
}

/// Checks whether the table sends every all-Boolean input to a Boolean output.
pub fn has_boolean_corners(t: &BinaryTable) -> bool {
    TruthValue::BOOLEAN
        .iter()
        .all(|x| TruthValue::BOOLEAN.iter().all(|y| t.apply(*x, *y).is_boolean()))
}

/// Adjacency mode for [`is_monotonic_adjacency`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjacencyMode {
    /// Only "no `1` next to a `0`". Necessary for monotonicity, not sufficient.
    Necessary,
    /// Adjacency plus "the centre cell is `≤_I` every cell". Exact for tables
    /// with Boolean corners; other tables are rejected.
    Full,
}

/// Monotonicity read off the 3x3 matrix in `T, N, F` layout.
pub fn is_monotonic_adjacency(t: &BinaryTable, mode: AdjacencyMode) -> Result<bool, PropertyError> {
    if mode == AdjacencyMode::Full && !has_boolean_corners(t) {
        return Err(PropertyError::NotBooleanCornered(t.to_string()));
    }
    let c = t.cells();
    let clash = |a: TruthValue, b: TruthValue| a.is_boolean() && b.is_boolean() && a != b;
    for r in 0..3 {
        for k in 0..3 {
            let here = c[3 * r + k];
            if (k < 2 && clash(here, c[3 * r + k + 1])) || (r < 2 && clash(here, c[3 * (r + 1) + k])) {
                return Ok(false);
            }
        }
    }
    Ok(match mode {
        AdjacencyMode::Necessary => true,
        AdjacencyMode::Full => c.iter().all(|v| c[4].info_le(*v)),
    })
}

/// Whether `τ_α ∘ t = conn^CL ∘ τ_α` on every input tuple.
pub fn is_collapsible_op<O: Operation>(t: &O, alpha: Collapser, conn: Connective) -> bool {
    debug_assert_eq!(O::ARITY, conn.arity());
    O::inputs().iter().all(|args| {
        let collapsed: Vec<TruthValue> = args.iter().map(|v| alpha.apply(*v)).collect();
        alpha.apply(t.output(args)) == conn.classical(&collapsed)
    })
}

pub fn is_monotonic(s: &Scheme) -> bool {
    is_monotonic_op(&s.neg) && is_monotonic_op(&s.and) && is_monotonic_op(&s.or)
}

/// All three tables collapsible with the same `α`.
pub fn is_collapsible(s: &Scheme, alpha: Collapser) -> bool {
    is_collapsible_op(&s.neg, alpha, Connective::Neg)
        && is_collapsible_op(&s.and, alpha, Connective::And)
        && is_collapsible_op(&s.or, alpha, Connective::Or)
}

pub fn classify(s: &Scheme) -> Classification {
    Classification {
        boolean_normal: is_boolean_normal(s),
        monotonic: is_monotonic(s),
        truth_collapsible: is_collapsible(s, Collapser::TRUTH),
        falsity_collapsible: is_collapsible(s, Collapser::FALSITY),
    }
}

/// Per-connective property test used by the census to enumerate families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    BooleanNormalMonotonic,
    TruthCollapsible,
    FalsityCollapsible,
    BooleanNormalTruthCollapsible,
    BooleanNormalFalsityCollapsible,
}

impl Family {
    pub fn unary_member(self, t: &UnaryTable) -> bool {
        self.member(t, Connective::Neg)
    }

    pub fn binary_member(self, t: &BinaryTable, conn: Connective) -> bool {
        self.member(t, conn)
    }

    fn member<O: Operation>(self, t: &O, conn: Connective) -> bool {
        match self {
            Family::BooleanNormalMonotonic => is_boolean_normal_op(t, conn) && is_monotonic_op(t),
            Family::TruthCollapsible => is_collapsible_op(t, Collapser::TRUTH, conn),
            Family::FalsityCollapsible => is_collapsible_op(t, Collapser::FALSITY, conn),
            Family::BooleanNormalTruthCollapsible => {
                is_boolean_normal_op(t, conn) && is_collapsible_op(t, Collapser::TRUTH, conn)
            }
            Family::BooleanNormalFalsityCollapsible => {
                is_boolean_normal_op(t, conn) && is_collapsible_op(t, Collapser::FALSITY, conn)
            }
        }
    }
}
