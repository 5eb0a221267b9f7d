//! Three-valued schemes for `¬`, `∧`, `∨` and the question of when a scheme
//! paired with a mixed consequence relation yields exactly classical logic.
//!
//! Truth values are `F < N < T`. Tables list inputs in the order `T, N, F`.

pub mod census;
pub mod classicality;
pub mod cli;
pub mod error;
pub mod gentzen;
pub mod properties;
pub mod schemes;
pub mod semantics;
pub mod syntax;
pub mod table;
pub mod value;

pub use classicality::{decide, Verdict, Witness};
pub use error::Error;
pub use properties::{classify, Classification};
pub use semantics::{ConsequenceRelation, MixedRelation, NamedRelation, Valuation};
pub use syntax::{Formula, Sequent};
pub use table::{BinaryTable, Connective, Scheme, UnaryTable};
pub use value::{Collapser, TruthValue, ValueSet};
