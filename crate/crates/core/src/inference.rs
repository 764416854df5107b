//! Rules, the implication relation that models them, and forward inference by
//! generalized modus ponens (sup-T composition).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{same_universe, FuzzySet, Universe};
use crate::operators::{Implication, TNorm};

/// How the rule "if u is A then v is B" is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    /// "The more u is A, the more certain v is B"; s-implications.
    Certainty,
    /// "The more u is A, the more v is B"; r-implications.
    Variation,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Certainty => "certainty",
            Semantics::Variation => "variation",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    antecedent: FuzzySet,
    consequent: FuzzySet,
    semantics: Semantics,
    implication: Implication,
    tnorm: TNorm,
}

impl Rule {
    /// Certainty rules need an s-implication. Variation rules need the
    /// residuum of `tnorm`.
    pub fn new(
        antecedent: FuzzySet,
        consequent: FuzzySet,
        semantics: Semantics,
        implication: Implication,
        tnorm: TNorm,
    ) -> Result<Self> {
        match semantics {
            Semantics::Certainty if !implication.is_s_family() => {
                return Err(Error::SemanticsMismatch(format!(
                    "certainty rules need an s-implication, `{implication}` is not one"
                )));
            }
            Semantics::Variation if implication.generating_tnorm() != Some(tnorm) => {
                return Err(Error::SemanticsMismatch(match implication.generating_tnorm() {
                    Some(t) => format!("`{implication}` is the residuum of `{t}`, not of `{tnorm}`"),
                    None => format!("variation rules need an r-implication, `{implication}` is not one"),
                }));
            }
            _ => {}
        }
        Ok(Self {
            antecedent,
            consequent,
            semantics,
            implication,
            tnorm,
        })
    }

    pub fn antecedent(&self) -> &FuzzySet {
        &self.antecedent
    }

    pub fn consequent(&self) -> &FuzzySet {
        &self.consequent
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn implication(&self) -> Implication {
        self.implication
    }

    pub fn tnorm(&self) -> TNorm {
        self.tnorm
    }

    pub fn u_universe(&self) -> &Arc<Universe> {
        self.antecedent.universe()
    }

    pub fn v_universe(&self) -> &Arc<Universe> {
        self.consequent.universe()
    }
}

/// A fuzzy relation from `U` to `V`, stored row-major (`rows = |U|`).
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    u: Arc<Universe>,
    v: Arc<Universe>,
    r: Vec<f64>,
}

impl Relation {
    /// `r[i][j] = implication(a[i], b[j])`.
    pub fn from_implication(a: &FuzzySet, b: &FuzzySet, implication: Implication) -> Self {
        let r = a
            .degrees()
            .iter()
            .flat_map(|&ai| b.degrees().iter().map(move |&bj| implication.apply(ai, bj)))
            .collect();
        Self {
            u: Arc::clone(a.universe()),
            v: Arc::clone(b.universe()),
            r,
        }
    }

    /// Relation from explicit rows; entries are clamped into [0, 1].
    pub fn from_rows(u: Arc<Universe>, v: Arc<Universe>, rows: &[Vec<f64>]) -> Result<Self> {
        if rows.len() != u.len() {
            return Err(Error::LengthMismatch {
                universe: u.name().to_string(),
                expected: u.len(),
                got: rows.len(),
            });
        }
        let mut r = Vec::with_capacity(u.len() * v.len());
        for row in rows {
            if row.len() != v.len() {
                return Err(Error::LengthMismatch {
                    universe: v.name().to_string(),
                    expected: v.len(),
                    got: row.len(),
                });
            }
            if let Some(i) = row.iter().position(|x| x.is_nan()) {
                return Err(Error::NonFiniteDegree(i));
            }
            r.extend(row.iter().map(|x| x.clamp(0.0, 1.0)));
        }
        Ok(Self { u, v, r })
    }

    pub fn u_universe(&self) -> &Arc<Universe> {
        &self.u
    }

    pub fn v_universe(&self) -> &Arc<Universe> {
        &self.v
    }

    pub fn rows(&self) -> usize {
        self.u.len()
    }

    pub fn cols(&self) -> usize {
        self.v.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.r[i * self.cols() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.cols();
        &self.r[i * n..(i + 1) * n]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.r.iter().skip(j).step_by(self.cols()).copied()
    }

    /// Largest entry of each column.
    pub fn column_maxima(&self) -> Vec<f64> {
        let mut out = vec![0.0_f64; self.cols()];
        for i in 0..self.rows() {
            for (m, &x) in out.iter_mut().zip(self.row(i)) {
                *m = m.max(x);
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows()).map(|i| self.row(i).to_vec()).collect()
    }
}

/// The relation modeling `rule`: `r[i][j] = I(A(u_i), B(v_j))`.
pub fn build_relation(rule: &Rule) -> Relation {
    Relation::from_implication(&rule.antecedent, &rule.consequent, rule.implication)
}

/// The relation of the contraposed rule "if v is not B then u is not A", from
/// `V` to `U`: `r[j][i] = I(1 - B(v_j), 1 - A(u_i))`.
pub fn contraposed_relation(rule: &Rule) -> Relation {
    Relation::from_implication(&rule.consequent.complement(), &rule.antecedent.complement(), rule.implication)
}

/// Generalized modus ponens: `B'(v_j) = max_i T(A'(u_i), r[i][j])`.
pub fn gmp(relation: &Relation, a_prime: &FuzzySet, tnorm: TNorm) -> Result<FuzzySet> {
    a_prime.expect_universe(&relation.u)?;
    let mut out = vec![0.0_f64; relation.cols()];
    for (i, &ai) in a_prime.degrees().iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        for (o, &rij) in out.iter_mut().zip(relation.row(i)) {
            *o = o.max(tnorm.apply(ai, rij));
        }
    }
    FuzzySet::new(Arc::clone(&relation.v), out)
}

/// Forward inference with the rule's own relation and t-norm.
pub fn infer(rule: &Rule, a_prime: &FuzzySet) -> Result<FuzzySet> {
    gmp(&build_relation(rule), a_prime, rule.tnorm)
}

pub(crate) fn expect_same(a: &Universe, b: &Universe) -> Result<()> {
    if same_universe(a, b) {
        Ok(())
    } else {
        Err(Error::UniverseMismatch {
            expected: a.name().to_string(),
            got: b.name().to_string(),
        })
    }
}
