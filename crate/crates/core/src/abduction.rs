//! Abductive inversion of a single rule.
//!
//! Given "if u is A then v is B" and an observation "v is B'", both schemes
//! return a hypothesis A' on `U`:
//!
//! * certainty rules are read contrapositively ("if v is not B then u is not A")
//!   and A' is the sup-T image of B' under that reading;
//! * variation rules return the inf-residuum bound, the greatest candidate
//!   any solution of the sup-T equation must lie under.
//!
//! Neither result is trusted: every [`AbductionResult`] carries a forward
//! round-trip through the rule and a solvability verdict.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy::FuzzySet;
use crate::inference::{build_relation, expect_same, gmp, Relation, Rule, Semantics};
use crate::operators::TNorm;
use crate::EPS;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    /// Index of the violated column.
    pub index: usize,
    /// Grid point of `V` at that column.
    pub point: f64,
    /// Observed degree `B'(v)`.
    pub required: f64,
    /// Largest degree the relation can produce in that column.
    pub available: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Solvability {
    /// The necessary condition holds; a solution may or may not exist.
    SolvablePossibly,
    Unsolvable { witness: Witness },
}

impl Solvability {
    pub fn is_unsolvable(&self) -> bool {
        matches!(self, Solvability::Unsolvable { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Solvability::Unsolvable { witness } => Some(witness),
            Solvability::SolvablePossibly => None,
        }
    }
}

impl fmt::Display for Solvability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solvability::SolvablePossibly => f.write_str("solvable (necessary condition holds)"),
            Solvability::Unsolvable { witness: w } => write!(
                f,
                "unsolvable: at v = {} (index {}) the observation needs {:.6} but the rule yields at most {:.6}",
                w.point, w.index, w.required, w.available
            ),
        }
    }
}

/// Necessary condition for `sup_u T(A'(u), r(u, v)) = B'(v)` to have a
/// solution: no column of `relation` may top out below `B'(v)`.
///
/// The reported witness is the column with the largest shortfall (lowest index
/// on ties).
pub fn check_solvability(relation: &Relation, b_prime: &FuzzySet) -> Result<Solvability> {
    b_prime.expect_universe(relation.v_universe())?;
    let grid = relation.v_universe().grid();
    let mut worst: Option<Witness> = None;
    for (j, (&available, &required)) in relation.column_maxima().iter().zip(b_prime.degrees()).enumerate() {
        if available < required - EPS {
            let deficit = required - available;
            if worst.is_none_or(|w| deficit > w.required - w.available) {
                worst = Some(Witness {
                    index: j,
                    point: grid[j],
                    required,
                    available,
                });
            }
        }
    }
    Ok(match worst {
        Some(witness) => Solvability::Unsolvable { witness },
        None => Solvability::SolvablePossibly,
    })
}

/// Forward check of a hypothesis against the observation it should explain.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub reproduced: FuzzySet,
    pub max_abs_residual: f64,
    /// `reproduced >= B' - tol` everywhere.
    pub covers_observation: bool,
    /// `reproduced <= B' + tol` everywhere.
    pub within_observation: bool,
}

impl VerificationReport {
    pub fn new(reproduced: FuzzySet, observation: &FuzzySet) -> Result<Self> {
        let max_abs_residual = reproduced.max_abs_diff(observation)?;
        Ok(Self {
            covers_observation: observation.is_subset_of(&reproduced, EPS),
            within_observation: reproduced.is_subset_of(observation, EPS),
            max_abs_residual,
            reproduced,
        })
    }

    /// The hypothesis reproduces the observation exactly.
    pub fn is_exact(&self) -> bool {
        self.max_abs_residual <= EPS
    }

    pub fn outcome(&self) -> &'static str {
        match (self.covers_observation, self.within_observation) {
            (true, true) => "exact",
            (true, false) => "over-produces",
            (false, true) => "under-produces",
            (false, false) => "mismatch",
        }
    }
}

/// Forward round-trip of `hypothesis` through `rule` with `tnorm`.
pub fn verify_hypothesis(rule: &Rule, hypothesis: &FuzzySet, b_prime: &FuzzySet, tnorm: TNorm) -> Result<VerificationReport> {
    let reproduced = gmp(&build_relation(rule), hypothesis, tnorm)?;
    VerificationReport::new(reproduced, b_prime)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    CertaintyContraposition,
    VariationBound,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::CertaintyContraposition => "certainty-contraposition",
            Scheme::VariationBound => "variation-bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbductionResult {
    pub hypothesis: FuzzySet,
    pub scheme: Scheme,
    pub tnorm: TNorm,
    pub solvability: Solvability,
    pub roundtrip: VerificationReport,
}

/// Abduction for a certainty rule by contraposition:
/// `A'(u) = max_v T(B'(v), S(1 - B(v), 1 - A(u)))`.
///
/// Requires an s-implication with contrapositive symmetry; Zadeh's operator is
/// rejected.
pub fn abduce_certainty(rule: &Rule, b_prime: &FuzzySet, tnorm: TNorm) -> Result<AbductionResult> {
    if rule.semantics() != Semantics::Certainty {
        return Err(Error::SemanticsMismatch(format!(
            "contraposition applies to certainty rules, this rule has {} semantics",
            rule.semantics()
        )));
    }
    let s = rule.implication();
    if !s.has_contrapositive_symmetry() {
        return Err(Error::UnsupportedOperator(format!(
            "`{s}` lacks contrapositive symmetry (I(a,b) != I(1-b,1-a) in general), so \
             \"if v is not B then u is not A\" is not equivalent to the rule"
        )));
    }
    expect_same(rule.v_universe(), b_prime.universe())?;

    let not_a: Vec<f64> = rule.antecedent().degrees().iter().map(|x| 1.0 - x).collect();
    let not_b: Vec<f64> = rule.consequent().degrees().iter().map(|x| 1.0 - x).collect();
    let hypothesis: Vec<f64> = not_a
        .iter()
        .map(|&na| {
            not_b
                .iter()
                .zip(b_prime.degrees())
                .map(|(&nb, &obs)| tnorm.apply(obs, s.apply(nb, na)))
                .fold(0.0, f64::max)
        })
        .collect();
    let hypothesis = FuzzySet::new(std::sync::Arc::clone(rule.u_universe()), hypothesis)?;

    finish(rule, hypothesis, b_prime, tnorm, Scheme::CertaintyContraposition)
}

/// Abduction for a variation rule: the greatest candidate
/// `A'(u) = min_v I_T(I_T(A(u), B(v)), B'(v))`.
///
/// Every solution of the sup-T equation lies pointwise under this bound; the
/// round-trip report tells whether the bound itself is a solution.
pub fn abduce_variation(rule: &Rule, b_prime: &FuzzySet) -> Result<AbductionResult> {
    if rule.semantics() != Semantics::Variation {
        return Err(Error::SemanticsMismatch(format!(
            "the residual bound applies to variation rules, this rule has {} semantics",
            rule.semantics()
        )));
    }
    let residuum = rule.implication();
    if residuum.generating_tnorm() != Some(rule.tnorm()) {
        return Err(Error::SemanticsMismatch(format!(
            "`{residuum}` is not the residuum of `{}`",
            rule.tnorm()
        )));
    }
    expect_same(rule.v_universe(), b_prime.universe())?;

    let relation = build_relation(rule);
    let hypothesis = superdirect_image(&relation, b_prime, |a, b| residuum.apply(a, b));
    let hypothesis = FuzzySet::new(std::sync::Arc::clone(rule.u_universe()), hypothesis)?;
    finish(rule, hypothesis, b_prime, rule.tnorm(), Scheme::VariationBound)
}

/// Dispatches on the rule's semantics, using the rule's own t-norm.
pub fn abduce(rule: &Rule, b_prime: &FuzzySet) -> Result<AbductionResult> {
    match rule.semantics() {
        Semantics::Certainty => abduce_certainty(rule, b_prime, rule.tnorm()),
        Semantics::Variation => abduce_variation(rule, b_prime),
    }
}

/// `min_j residuum(r[i][j], B'(v_j))` for every row.
fn superdirect_image(relation: &Relation, b_prime: &FuzzySet, residuum: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    (0..relation.rows())
        .map(|i| {
            relation
                .row(i)
                .iter()
                .zip(b_prime.degrees())
                .map(|(&r, &b)| residuum(r, b))
                .fold(1.0, f64::min)
        })
        .collect()
}

fn finish(rule: &Rule, hypothesis: FuzzySet, b_prime: &FuzzySet, tnorm: TNorm, scheme: Scheme) -> Result<AbductionResult> {
    let relation = build_relation(rule);
    let solvability = check_solvability(&relation, b_prime)?;
    let roundtrip = VerificationReport::new(gmp(&relation, &hypothesis, tnorm)?, b_prime)?;
    Ok(AbductionResult {
        hypothesis,
        scheme,
        tnorm,
        solvability,
        roundtrip,
    })
}
