//! JSON problem files: universes, named fuzzy sets, rules, observations and
//! scenario definitions.
//!
//! ```json
//! {
//!   "universes": [{ "name": "temperature", "lo": 0, "hi": 200, "points": 101 }],
//!   "sets": [{ "name": "high", "universe": "temperature",
//!              "shape": { "trapezoidal": { "a": 100, "b": 160, "c": 200, "d": 200 } } }],
//!   "rules": [{ "name": "r1", "if": "high", "then": "open", "semantics": "variation",
//!               "implication": "goedel", "tnorm": "minimum" }],
//!   "observations": ["reading"],
//!   "scenarios": [{ "name": "s", "kind": "causal-diagnosis", "rules": ["r1"], "observation": "reading" }]
//! }
//! ```

use std::path::Path;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::scenario::{ScenarioConfig, ScenarioKind};
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySet, Shape, Universe, DEFAULT_GRID_POINTS};
use crate::inference::{Rule, Semantics};
use crate::operators::{Implication, TNorm};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub universes: Vec<UniverseDef>,
    #[serde(default)]
    pub sets: Vec<SetDef>,
    #[serde(default)]
    pub rules: Vec<RuleDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scenarios: Vec<ScenarioConfig>,
}

/// Either a uniform range (`lo`, `hi`, optional `points`) or an explicit `grid`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniverseDef {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDef {
    pub name: String,
    pub universe: String,
    pub shape: Shape,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDef {
    pub name: String,
    #[serde(rename = "if")]
    pub antecedent: String,
    #[serde(rename = "then")]
    pub consequent: String,
    pub semantics: Semantics,
    pub implication: Implication,
    /// Defaults to the generating t-norm of an r-implication, else minimum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tnorm: Option<TNorm>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadOptions {
    /// Replaces `points` on every range-defined universe.
    pub grid_points: Option<usize>,
}

/// A fully resolved problem. All names resolve and every rule is valid.
#[derive(Debug, Clone)]
pub struct Problem {
    definition: ProblemFile,
    pub universes: IndexMap<String, Arc<Universe>>,
    pub sets: IndexMap<String, FuzzySet>,
    pub rules: IndexMap<String, Rule>,
    pub observations: Vec<String>,
    pub scenarios: IndexMap<String, ScenarioConfig>,
}

impl Problem {
    pub fn from_json(text: &str, options: LoadOptions) -> Result<Self> {
        let file: ProblemFile = serde_json::from_str(text).map_err(|e| {
            Error::Problem(format!("parse error at line {} column {}: {e}", e.line(), e.column()))
        })?;
        Self::resolve(file, options)
    }

    pub fn resolve(mut file: ProblemFile, options: LoadOptions) -> Result<Self> {
        if let Some(n) = options.grid_points {
            for u in file.universes.iter_mut().filter(|u| u.grid.is_none()) {
                u.points = Some(n);
            }
        }

        let mut universes = IndexMap::new();
        for (i, def) in file.universes.iter().enumerate() {
            let at = |msg: String| Error::Problem(format!("universes[{i}] `{}`: {msg}", def.name));
            let universe = match (&def.grid, def.lo, def.hi) {
                (Some(grid), None, None) if def.points.is_none() => Universe::from_grid(&def.name, grid.clone()),
                (None, Some(lo), Some(hi)) => {
                    Universe::uniform(&def.name, lo, hi, def.points.unwrap_or(DEFAULT_GRID_POINTS))
                }
                _ => return Err(at("give either `grid` or `lo` and `hi` (with optional `points`)".into())),
            }
            .map_err(|e| at(e.to_string()))?;
            if universes.insert(def.name.clone(), Arc::new(universe)).is_some() {
                return Err(at("duplicate universe name".into()));
            }
        }

        let mut sets = IndexMap::new();
        for (i, def) in file.sets.iter().enumerate() {
            let at = |msg: String| Error::Problem(format!("sets[{i}] `{}`: {msg}", def.name));
            let universe = universes
                .get(&def.universe)
                .ok_or_else(|| at(format!("undefined universe `{}`", def.universe)))?;
            let set = FuzzySet::sample(&def.shape, Arc::clone(universe)).map_err(|e| at(e.to_string()))?;
            if sets.insert(def.name.clone(), set).is_some() {
                return Err(at("duplicate set name".into()));
            }
        }

        let mut rules = IndexMap::new();
        for (i, def) in file.rules.iter().enumerate() {
            let at = |msg: String| Error::Problem(format!("rules[{i}] `{}`: {msg}", def.name));
            let lookup = |name: &str| {
                sets.get(name)
                    .cloned()
                    .ok_or_else(|| at(format!("undefined set `{name}`")))
            };
            let antecedent = lookup(&def.antecedent)?;
            let consequent = lookup(&def.consequent)?;
            let tnorm = def.tnorm.unwrap_or_else(|| default_tnorm(def.implication));
            let rule = Rule::new(antecedent, consequent, def.semantics, def.implication, tnorm)
                .map_err(|e| at(e.to_string()))?;
            if rules.insert(def.name.clone(), rule).is_some() {
                return Err(at("duplicate rule name".into()));
            }
        }

        for (i, name) in file.observations.iter().enumerate() {
            if !sets.contains_key(name) {
                return Err(Error::Problem(format!("observations[{i}]: undefined set `{name}`")));
            }
        }

        let mut scenarios = IndexMap::new();
        for (i, config) in file.scenarios.iter().enumerate() {
            let at = |msg: String| Error::Problem(format!("scenarios[{i}] `{}`: {msg}", config.name));
            if !sets.contains_key(&config.observation) {
                return Err(at(format!("undefined set `{}`", config.observation)));
            }
            let threshold = config.threshold();
            if !(0.0..=1.0).contains(&threshold) {
                return Err(at(format!("match_threshold {threshold} is outside [0, 1]")));
            }
            if config.rules.is_empty() {
                return Err(at("no rules listed".into()));
            }
            let wanted = match config.kind {
                ScenarioKind::FaultComponent => Semantics::Certainty,
                ScenarioKind::CausalDiagnosis => Semantics::Variation,
            };
            for name in &config.rules {
                let rule = rules.get(name).ok_or_else(|| at(format!("undefined rule `{name}`")))?;
                if rule.semantics() != wanted {
                    return Err(at(format!(
                        "rule `{name}` has {} semantics, {} scenarios need {wanted} rules",
                        rule.semantics(),
                        config.kind
                    )));
                }
            }
            if scenarios.insert(config.name.clone(), config.clone()).is_some() {
                return Err(at("duplicate scenario name".into()));
            }
        }

        Ok(Self {
            observations: file.observations.clone(),
            definition: file,
            universes,
            sets,
            rules,
            scenarios,
        })
    }

    pub fn definition(&self) -> &ProblemFile {
        &self.definition
    }

    pub fn set(&self, name: &str) -> Result<&FuzzySet> {
        self.sets
            .get(name)
            .ok_or_else(|| Error::Problem(format!("undefined set `{name}`")))
    }

    pub fn rule(&self, name: &str) -> Result<&Rule> {
        self.rules
            .get(name)
            .ok_or_else(|| Error::Problem(format!("undefined rule `{name}`")))
    }

    pub fn scenario(&self, name: &str) -> Result<&ScenarioConfig> {
        self.scenarios
            .get(name)
            .ok_or_else(|| Error::Problem(format!("undefined scenario `{name}`")))
    }

    /// Pretty JSON of the definition this problem was resolved from.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.definition).expect("problem definitions serialize");
        s.push('\n');
        s
    }
}

fn default_tnorm(implication: Implication) -> TNorm {
    implication.generating_tnorm().unwrap_or(TNorm::Minimum)
}

pub fn load_problem(path: impl AsRef<Path>) -> Result<Problem> {
    load_problem_with(path, LoadOptions::default())
}

pub fn load_problem_with(path: impl AsRef<Path>, options: LoadOptions) -> Result<Problem> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Problem::from_json(&text, options).map_err(|e| match e {
        Error::Problem(msg) => Error::Problem(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn save_problem(problem: &Problem, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, problem.to_json()).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
