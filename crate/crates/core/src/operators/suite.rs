//! Exhaustive law checks for implication operators on a quantized grid.
//!
//! For residual implications the seven residuation laws are checked against
//! the t-norm; for s- and QL-implications contrapositive symmetry is checked.
//! Failures are recorded with the worst counterexample, never raised.

use serde::Serialize;

use super::{Family, Implication, TNorm};
use crate::EPS;

pub const DEFAULT_SUITE_LEVELS: usize = 21;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub a: f64,
    pub b: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    /// How far the law is off, in degrees.
    pub violation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub law: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub violations: usize,
    pub worst: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub tnorm: Option<TNorm>,
    pub implication: Implication,
    pub levels: usize,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl std::fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let t = self.tnorm.map_or("-", TNorm::name);
        writeln!(f, "operator suite: tnorm={t} implication={} levels={}", self.implication, self.levels)?;
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "  [{status}] {:<24} {:<36} cases={}", c.name, c.law, c.cases)?;
            if let Some(w) = &c.worst {
                write!(f, " violations={} worst: a={:.4} b={:.4}", c.violations, w.a, w.b)?;
                if let Some(cv) = w.c {
                    write!(f, " c={cv:.4}")?;
                }
                write!(f, " off by {:.6}", w.violation)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct Tally {
    name: &'static str,
    law: &'static str,
    cases: usize,
    violations: usize,
    worst: Option<Counterexample>,
}

impl Tally {
    fn new(name: &'static str, law: &'static str) -> Self {
        Self {
            name,
            law,
            cases: 0,
            violations: 0,
            worst: None,
        }
    }

    /// Records one case; `excess > EPS` is a violation.
    fn record(&mut self, excess: f64, a: f64, b: f64, c: Option<f64>) {
        self.cases += 1;
        if excess > EPS {
            self.violations += 1;
            if self.worst.as_ref().is_none_or(|w| excess > w.violation) {
                self.worst = Some(Counterexample { a, b, c, violation: excess });
            }
        }
    }

    fn finish(self) -> PropertyCheck {
        PropertyCheck {
            name: self.name,
            law: self.law,
            passed: self.violations == 0,
            cases: self.cases,
            violations: self.violations,
            worst: self.worst,
        }
    }
}

/// Runs the law checks that apply to `implication`.
///
/// Residuation laws run when `implication` is an r-implication (against its
/// generating t-norm unless `tnorm` overrides it) or when a `tnorm` is given
/// explicitly. Contrapositive symmetry runs for s- and QL-implications.
pub fn property_suite(tnorm: Option<TNorm>, implication: Implication, levels: usize) -> PropertyReport {
    assert!(levels >= 2, "property suite needs at least 2 levels");
    let grid: Vec<f64> = (0..levels).map(|k| k as f64 / (levels - 1) as f64).collect();
    let tnorm = tnorm.or(implication.generating_tnorm());
    let imp = |a: f64, b: f64| implication.apply(a, b);

    let mut checks = Vec::new();
    if let Some(t) = tnorm {
        checks.extend(residuation_laws(t, &imp, &grid));
    }
    let families = implication.families();
    if families.contains(&Family::S) || families.contains(&Family::Ql) {
        let mut sym = Tally::new("contrapositive-symmetry", "I(a,b) = I(1-b,1-a)");
        for &a in &grid {
            for &b in &grid {
                sym.record((imp(a, b) - imp(1.0 - b, 1.0 - a)).abs(), a, b, None);
            }
        }
        checks.push(sym.finish());
    }

    PropertyReport {
        tnorm,
        implication,
        levels,
        checks,
    }
}

fn residuation_laws(t: TNorm, imp: &impl Fn(f64, f64) -> f64, grid: &[f64]) -> Vec<PropertyCheck> {
    let mut isotone = Tally::new("isotone-consequent", "b <= c => I(a,b) <= I(a,c)");
    let mut mp_bound = Tally::new("modus-ponens-bound", "T(a, I(a,b)) <= b");
    let mut recovery = Tally::new("recovery", "I(a, T(a,b)) >= b");
    let mut antitone = Tally::new("antitone-antecedent", "a <= b => I(a,c) >= I(b,c)");
    let mut order = Tally::new("order-identity", "a <= b => I(a,b) = 1");
    let mut neutral = Tally::new("left-neutrality", "I(1,b) = b");
    let mut dominance = Tally::new("consequent-bound", "b <= I(a,b)");

    // Orderings are taken on grid indices so they are exact.
    for (i, &a) in grid.iter().enumerate() {
        for (j, &b) in grid.iter().enumerate() {
            let iab = imp(a, b);
            mp_bound.record(t.apply(a, iab) - b, a, b, None);
            recovery.record(b - imp(a, t.apply(a, b)), a, b, None);
            dominance.record(b - iab, a, b, None);
            if i <= j {
                order.record((1.0 - iab).abs(), a, b, None);
            }
            for (k, &c) in grid.iter().enumerate() {
                if j <= k {
                    isotone.record(iab - imp(a, c), a, b, Some(c));
                }
                if i <= j {
                    antitone.record(imp(b, c) - imp(a, c), a, b, Some(c));
                }
            }
        }
    }
    for &b in grid {
        neutral.record((imp(1.0, b) - b).abs(), 1.0, b, None);
    }

    [isotone, mp_bound, recovery, antitone, order, neutral, dominance]
        .into_iter()
        .map(Tally::finish)
        .collect()
}
