//! Diagnosis scenarios built from single-rule abduction.
//!
//! * Fault components: certainty rules "component nominal -> output nominal".
//!   A rule is a candidate fault site when the observation matches the
//!   complement of its consequent; the fault is then characterized by
//!   contraposition.
//! * Causal diagnosis: variation rules "cause -> effect". Each rule yields the
//!   residual bound on its cause. Rules sharing a cause universe are also
//!   combined by pointwise minimum; that combination is an extension of the
//!   single-rule method and is labeled as such in every report.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::problem::Problem;
use crate::abduction::{abduce_certainty, abduce_variation, verify_hypothesis, AbductionResult, Scheme, Solvability, VerificationReport};
use crate::error::{Error, Result};
use crate::fuzzy::FuzzySet;
use crate::inference::Semantics;
use crate::operators::TNorm;

pub const DEFAULT_MATCH_THRESHOLD: f64 = 0.7;

pub const AGGREGATION_LABEL: &str = "INVENTED AGGREGATION: pointwise minimum of per-rule bounds";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    FaultComponent,
    CausalDiagnosis,
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioKind::FaultComponent => "fault-component",
            ScenarioKind::CausalDiagnosis => "causal-diagnosis",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub kind: ScenarioKind,
    pub rules: Vec<String>,
    pub observation: String,
    /// Fault scenarios only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub match_threshold: Option<f64>,
}

impl ScenarioConfig {
    pub fn threshold(&self) -> f64 {
        self.match_threshold.unwrap_or(DEFAULT_MATCH_THRESHOLD)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundTrip {
    pub reproduced: Vec<f64>,
    pub max_abs_residual: f64,
    pub covers_observation: bool,
    pub within_observation: bool,
    pub outcome: &'static str,
}

impl From<&VerificationReport> for RoundTrip {
    fn from(v: &VerificationReport) -> Self {
        Self {
            reproduced: v.reproduced.degrees().to_vec(),
            max_abs_residual: v.max_abs_residual,
            covers_observation: v.covers_observation,
            within_observation: v.within_observation,
            outcome: v.outcome(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypothesis {
    pub universe: String,
    pub degrees: Vec<f64>,
    pub scheme: Scheme,
    pub tnorm: TNorm,
    pub solvability: Solvability,
    pub roundtrip: RoundTrip,
}

impl From<&AbductionResult> for Hypothesis {
    fn from(r: &AbductionResult) -> Self {
        Self {
            universe: r.hypothesis.universe().name().to_string(),
            degrees: r.hypothesis.degrees().to_vec(),
            scheme: r.scheme,
            tnorm: r.tnorm,
            solvability: r.solvability,
            roundtrip: RoundTrip::from(&r.roundtrip),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaultEntry {
    pub rule: String,
    /// `compatibility(B', not B)`.
    pub compatibility: f64,
    pub flagged: bool,
    /// 1-based rank among flagged rules.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<Hypothesis>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CausalEntry {
    pub rule: String,
    pub hypothesis: Hypothesis,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MemberCheck {
    pub rule: String,
    pub roundtrip: RoundTrip,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub label: &'static str,
    pub universe: String,
    pub rules: Vec<String>,
    pub degrees: Vec<f64>,
    pub checks: Vec<MemberCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub kind: ScenarioKind,
    pub observation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub match_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub faults: Vec<FaultEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub causes: Vec<CausalEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub aggregates: Vec<Aggregate>,
}

impl ScenarioReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Flagged fault entries in rank order.
    pub fn ranked_faults(&self) -> impl Iterator<Item = &FaultEntry> {
        self.faults.iter().filter(|f| f.flagged)
    }
}

pub fn run_scenario(problem: &Problem, config: &ScenarioConfig) -> Result<ScenarioReport> {
    match config.kind {
        ScenarioKind::FaultComponent => run_fault_scenario(problem, config),
        ScenarioKind::CausalDiagnosis => run_causal_scenario(problem, config),
    }
}

fn rules_in_declaration_order<'p>(
    problem: &'p Problem,
    config: &ScenarioConfig,
    wanted: Semantics,
) -> Result<Vec<(usize, &'p str, &'p crate::inference::Rule)>> {
    let mut out = Vec::with_capacity(config.rules.len());
    for name in &config.rules {
        let (idx, key, rule) = problem
            .rules
            .get_full(name)
            .ok_or_else(|| Error::Problem(format!("scenario `{}`: undefined rule `{name}`", config.name)))?;
        if rule.semantics() != wanted {
            return Err(Error::SemanticsMismatch(format!(
                "scenario `{}` ({}) needs {wanted} rules, `{name}` is a {} rule",
                config.name,
                config.kind,
                rule.semantics()
            )));
        }
        out.push((idx, key.as_str(), rule));
    }
    out.sort_by_key(|(idx, _, _)| *idx);
    out.dedup_by_key(|(idx, _, _)| *idx);
    Ok(out)
}

/// Flags rules whose consequent's complement matches the observation and
/// characterizes each flagged fault by contraposition.
pub fn run_fault_scenario(problem: &Problem, config: &ScenarioConfig) -> Result<ScenarioReport> {
    if config.kind != ScenarioKind::FaultComponent {
        return Err(Error::Problem(format!("scenario `{}` is not a fault-component scenario", config.name)));
    }
    let observation = problem.set(&config.observation)?;
    let threshold = config.threshold();

    let mut faults = Vec::new();
    for (_, name, rule) in rules_in_declaration_order(problem, config, Semantics::Certainty)? {
        let compatibility = observation.compatibility(&rule.consequent().complement())?;
        let flagged = compatibility >= threshold;
        let hypothesis = if flagged {
            Some(Hypothesis::from(&abduce_certainty(rule, observation, rule.tnorm())?))
        } else {
            None
        };
        faults.push(FaultEntry {
            rule: name.to_string(),
            compatibility,
            flagged,
            rank: None,
            hypothesis,
        });
    }
    // stable: ties keep declaration order
    faults.sort_by(|a, b| b.compatibility.total_cmp(&a.compatibility));
    for (rank, entry) in faults.iter_mut().filter(|f| f.flagged).enumerate() {
        entry.rank = Some(rank + 1);
    }

    Ok(ScenarioReport {
        name: config.name.clone(),
        kind: config.kind,
        observation: config.observation.clone(),
        match_threshold: Some(threshold),
        faults,
        causes: Vec::new(),
        aggregates: Vec::new(),
    })
}

/// Residual bound per variation rule, plus a labeled pointwise-minimum
/// combination for rules that share a cause universe.
pub fn run_causal_scenario(problem: &Problem, config: &ScenarioConfig) -> Result<ScenarioReport> {
    if config.kind != ScenarioKind::CausalDiagnosis {
        return Err(Error::Problem(format!("scenario `{}` is not a causal-diagnosis scenario", config.name)));
    }
    let observation = problem.set(&config.observation)?;
    let rules = rules_in_declaration_order(problem, config, Semantics::Variation)?;

    let mut causes = Vec::new();
    let mut groups: indexmap::IndexMap<String, Vec<(&str, &crate::inference::Rule, FuzzySet)>> = Default::default();
    for (_, name, rule) in &rules {
        let result = abduce_variation(rule, observation)?;
        causes.push(CausalEntry {
            rule: name.to_string(),
            hypothesis: Hypothesis::from(&result),
        });
        groups
            .entry(rule.u_universe().name().to_string())
            .or_default()
            .push((name, rule, result.hypothesis));
    }

    let mut aggregates = Vec::new();
    for (universe, members) in groups.into_iter().filter(|(_, m)| m.len() > 1) {
        let mut combined = members[0].2.clone();
        for (_, _, h) in &members[1..] {
            combined = combined.zip_with(h, f64::min)?;
        }
        let checks = members
            .iter()
            .map(|(name, rule, _)| {
                verify_hypothesis(rule, &combined, observation, rule.tnorm()).map(|v| MemberCheck {
                    rule: name.to_string(),
                    roundtrip: RoundTrip::from(&v),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        aggregates.push(Aggregate {
            label: AGGREGATION_LABEL,
            universe,
            rules: members.iter().map(|(n, _, _)| n.to_string()).collect(),
            degrees: combined.degrees().to_vec(),
            checks,
        });
    }

    Ok(ScenarioReport {
        name: config.name.clone(),
        kind: config.kind,
        observation: config.observation.clone(),
        match_threshold: None,
        faults: Vec::new(),
        causes,
        aggregates,
    })
}

fn degrees(xs: &[f64]) -> String {
    let mut s = String::from("[");
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x:.6}");
    }
    s.push(']');
    s
}

fn write_hypothesis(f: &mut fmt::Formatter<'_>, h: &Hypothesis, indent: &str) -> fmt::Result {
    writeln!(f, "{indent}hypothesis on `{}` ({}, t-norm {}):", h.universe, h.scheme, h.tnorm)?;
    writeln!(f, "{indent}  A' = {}", degrees(&h.degrees))?;
    writeln!(f, "{indent}  solvability: {}", h.solvability)?;
    write_roundtrip(f, &h.roundtrip, indent)
}

fn write_roundtrip(f: &mut fmt::Formatter<'_>, r: &RoundTrip, indent: &str) -> fmt::Result {
    writeln!(
        f,
        "{indent}  round trip: {} (max residual {:.6}) reproduced = {}",
        r.outcome,
        r.max_abs_residual,
        degrees(&r.reproduced)
    )
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario `{}` ({}), observation `{}`", self.name, self.kind, self.observation)?;
        if let Some(t) = self.match_threshold {
            writeln!(f, "match threshold: {t:.6}")?;
        }
        for e in &self.faults {
            match e.rank {
                Some(rank) => writeln!(
                    f,
                    "#{rank} rule `{}`: compatibility with contrary {:.6} -> candidate fault",
                    e.rule, e.compatibility
                )?,
                None => writeln!(
                    f,
                    "-- rule `{}`: compatibility with contrary {:.6} -> not flagged",
                    e.rule, e.compatibility
                )?,
            }
            if let Some(h) = &e.hypothesis {
                write_hypothesis(f, h, "   ")?;
            }
        }
        for e in &self.causes {
            writeln!(f, "rule `{}`:", e.rule)?;
            write_hypothesis(f, &e.hypothesis, "   ")?;
        }
        for a in &self.aggregates {
            writeln!(f, "{} over `{}` from rules {:?}:", a.label, a.universe, a.rules)?;
            writeln!(f, "   A' = {}", degrees(&a.degrees))?;
            for c in &a.checks {
                writeln!(f, "   check against rule `{}`:", c.rule)?;
                write_roundtrip(f, &c.roundtrip, "   ")?;
            }
        }
        Ok(())
    }
}
