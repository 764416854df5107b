//! Fuzzy abductive inference for single if-then rules.
//!
//! Given "if u is A then v is B" and an observation "v is B'", the crate
//! computes hypotheses "u is A'" under two readings of the rule:
//!
//! * **certainty** rules (s-implications) are inverted by contraposition,
//!   see [`abduction::abduce_certainty`];
//! * **variation** rules (r-implications) are inverted by the inf-residuum
//!   bound, see [`abduction::abduce_variation`].
//!
//! Forward inference is generalized modus ponens ([`inference::gmp`]). The
//! [`oracle`] module enumerates exact solutions of the underlying relational
//! equation on small quantized instances so both schemes can be checked.

pub mod abduction;
pub mod error;
pub mod fuzzy;
pub mod inference;
pub mod operators;
pub mod oracle;
pub mod workbench;

pub use abduction::{
    abduce, abduce_certainty, abduce_variation, check_solvability, verify_hypothesis, AbductionResult, Scheme,
    Solvability, VerificationReport, Witness,
};
pub use error::{Error, Result};
pub use fuzzy::{FuzzySet, Shape, Universe};
pub use inference::{build_relation, contraposed_relation, gmp, infer, Relation, Rule, Semantics};
pub use operators::{Implication, TConorm, TNorm};
pub use oracle::{enumerate_solutions, greatest_enumerated, Enumeration, QuantizedSearch};

/// Comparison tolerance for identities between degrees.
pub const EPS: f64 = 1e-9;
