//! Scalar operator algebra: t-norms, t-conorms, standard negation and the
//! implication families used to model rules.
//!
//! Operators are addressed by stable text names (`"minimum"`, `"kleene-dienes"`,
//! `"ql-product"`, ...) so problem files and the CLI can refer to them.

mod suite;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use suite::{property_suite, Counterexample, PropertyCheck, PropertyReport, DEFAULT_SUITE_LEVELS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum TNorm {
    Minimum,
    Product,
    Lukasiewicz,
}

impl TNorm {
    pub const ALL: [TNorm; 3] = [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz];

    #[inline]
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            TNorm::Minimum => a.min(b),
            TNorm::Product => a * b,
            // the unit cases are exact; a + b - 1 rounds when one side is 1
            TNorm::Lukasiewicz if a == 1.0 => b,
            TNorm::Lukasiewicz if b == 1.0 => a,
            TNorm::Lukasiewicz => (a + b - 1.0).max(0.0),
        }
    }

    /// The t-conorm related by `C(a, b) = 1 - T(1 - a, 1 - b)`.
    pub fn dual(self) -> TConorm {
        match self {
            TNorm::Minimum => TConorm::Maximum,
            TNorm::Product => TConorm::ProbabilisticSum,
            TNorm::Lukasiewicz => TConorm::BoundedSum,
        }
    }

    /// The residual implication of this t-norm.
    pub fn residuum(self) -> Implication {
        match self {
            TNorm::Minimum => Implication::Goedel,
            TNorm::Product => Implication::Goguen,
            TNorm::Lukasiewicz => Implication::Lukasiewicz,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TNorm::Minimum => "minimum",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum TConorm {
    Maximum,
    ProbabilisticSum,
    BoundedSum,
}

impl TConorm {
    pub const ALL: [TConorm; 3] = [TConorm::Maximum, TConorm::ProbabilisticSum, TConorm::BoundedSum];

    #[inline]
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            TConorm::Maximum => a.max(b),
            TConorm::ProbabilisticSum => a + b - a * b,
            TConorm::BoundedSum => (a + b).min(1.0),
        }
    }

    pub fn dual(self) -> TNorm {
        match self {
            TConorm::Maximum => TNorm::Minimum,
            TConorm::ProbabilisticSum => TNorm::Product,
            TConorm::BoundedSum => TNorm::Lukasiewicz,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TConorm::Maximum => "maximum",
            TConorm::ProbabilisticSum => "probabilistic-sum",
            TConorm::BoundedSum => "bounded-sum",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `C(1 - a, b)` for a t-conorm `C`.
    S,
    /// Residuum `sup { z : T(a, z) <= b }` of a t-norm `T`.
    R,
    /// `C(1 - a, T(a, b))` for a dual pair `(T, C)`.
    Ql,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Implication {
    /// `1 - a + a b`
    Reichenbach,
    /// `max(1 - a, min(a, b))`
    Zadeh,
    /// `max(1 - a, b)`
    KleeneDienes,
    /// `min(1, 1 - a + b)`; both an s- and an r-implication.
    Lukasiewicz,
    /// `1` if `a <= b`, else `b`
    Goedel,
    /// `1` if `a <= b`, else `b / a`
    Goguen,
    /// QL-implication over the dual pair `(T, T.dual())`.
    Ql(TNorm),
}

impl Implication {
    pub const ALL: [Implication; 9] = [
        Implication::Reichenbach,
        Implication::Zadeh,
        Implication::KleeneDienes,
        Implication::Lukasiewicz,
        Implication::Goedel,
        Implication::Goguen,
        Implication::Ql(TNorm::Minimum),
        Implication::Ql(TNorm::Product),
        Implication::Ql(TNorm::Lukasiewicz),
    ];

    #[inline]
    pub fn apply(self, a: f64, b: f64) -> f64 {
        let v = match self {
            Implication::Reichenbach => 1.0 - a + a * b,
            Implication::Zadeh => (1.0 - a).max(a.min(b)),
            Implication::KleeneDienes => (1.0 - a).max(b),
            Implication::Lukasiewicz => (1.0 - a + b).min(1.0),
            Implication::Goedel => {
                if a <= b {
                    1.0
                } else {
                    b
                }
            }
            Implication::Goguen => {
                if a <= b {
                    1.0
                } else {
                    b / a
                }
            }
            Implication::Ql(t) => ql_implication(t, a, b),
        };
        v.clamp(0.0, 1.0)
    }

    /// Families this operator belongs to. Lukasiewicz belongs to both S and R.
    pub fn families(self) -> &'static [Family] {
        match self {
            Implication::Reichenbach | Implication::Zadeh | Implication::KleeneDienes => &[Family::S],
            Implication::Lukasiewicz => &[Family::S, Family::R],
            Implication::Goedel | Implication::Goguen => &[Family::R],
            Implication::Ql(_) => &[Family::Ql],
        }
    }

    pub fn is_s_family(self) -> bool {
        self.families().contains(&Family::S)
    }

    pub fn is_r_family(self) -> bool {
        self.families().contains(&Family::R)
    }

    /// The t-norm whose residuum this is, for r-implications.
    pub fn generating_tnorm(self) -> Option<TNorm> {
        match self {
            Implication::Goedel => Some(TNorm::Minimum),
            Implication::Goguen => Some(TNorm::Product),
            Implication::Lukasiewicz => Some(TNorm::Lukasiewicz),
            _ => None,
        }
    }

    /// The t-conorm `C` with `I(a, b) = C(1 - a, b)`, when one exists.
    pub fn s_conorm(self) -> Option<TConorm> {
        match self {
            Implication::Reichenbach => Some(TConorm::ProbabilisticSum),
            Implication::KleeneDienes => Some(TConorm::Maximum),
            Implication::Lukasiewicz => Some(TConorm::BoundedSum),
            _ => None,
        }
    }

    /// `I(a, b) = I(1 - b, 1 - a)` on all of [0,1]². Holds exactly for the
    /// `C(1 - a, b)` forms; Zadeh's operator is not one of them.
    pub fn has_contrapositive_symmetry(self) -> bool {
        self.s_conorm().is_some()
    }

    pub fn name(self) -> &'static str {
        match self {
            Implication::Reichenbach => "reichenbach",
            Implication::Zadeh => "zadeh",
            Implication::KleeneDienes => "kleene-dienes",
            Implication::Lukasiewicz => "lukasiewicz",
            Implication::Goedel => "goedel",
            Implication::Goguen => "goguen",
            Implication::Ql(TNorm::Minimum) => "ql-minimum",
            Implication::Ql(TNorm::Product) => "ql-product",
            Implication::Ql(TNorm::Lukasiewicz) => "ql-lukasiewicz",
        }
    }
}

/// `C(1 - a, b)`.
#[inline]
pub fn s_implication(conorm: TConorm, a: f64, b: f64) -> f64 {
    conorm.apply(1.0 - a, b).clamp(0.0, 1.0)
}

/// `C(1 - a, T(a, b))` with `C` the dual of `T`.
#[inline]
pub fn ql_implication(tnorm: TNorm, a: f64, b: f64) -> f64 {
    tnorm.dual().apply(1.0 - a, tnorm.apply(a, b)).clamp(0.0, 1.0)
}

/// Brute-force residuum: the largest `z` in `{0, 1/(levels-1), ..., 1}` with
/// `T(a, z) <= b`. Independent of the closed forms in [`Implication::apply`].
pub fn residuum_oracle(tnorm: TNorm, a: f64, b: f64, levels: usize) -> f64 {
    assert!(levels >= 2, "residuum oracle needs at least 2 levels");
    let steps = (levels - 1) as f64;
    (0..levels)
        .rev()
        .map(|k| k as f64 / steps)
        .find(|&z| tnorm.apply(a, z) <= b + 1e-12)
        .unwrap_or(0.0)
}

fn check_degree(arg: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange { arg, value })
    }
}

/// Range-checked t-norm evaluation.
pub fn tnorm(kind: TNorm, a: f64, b: f64) -> Result<f64> {
    check_degree("a", a)?;
    check_degree("b", b)?;
    Ok(kind.apply(a, b).clamp(0.0, 1.0))
}

/// Range-checked t-conorm evaluation.
pub fn tconorm(kind: TConorm, a: f64, b: f64) -> Result<f64> {
    check_degree("a", a)?;
    check_degree("b", b)?;
    Ok(kind.apply(a, b).clamp(0.0, 1.0))
}

/// Range-checked implication evaluation.
pub fn implication(kind: Implication, a: f64, b: f64) -> Result<f64> {
    check_degree("a", a)?;
    check_degree("b", b)?;
    Ok(kind.apply(a, b))
}

macro_rules! text_names {
    ($ty:ty, $all:expr) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                let wanted = s.trim().to_ascii_lowercase().replace('_', "-");
                $all.into_iter()
                    .find(|k| k.name() == wanted)
                    .ok_or_else(|| Error::UnknownOperator(s.to_string()))
            }
        }

        impl TryFrom<String> for $ty {
            type Error = Error;

            fn try_from(s: String) -> Result<Self> {
                s.parse()
            }
        }

        impl From<$ty> for String {
            fn from(k: $ty) -> String {
                k.name().to_string()
            }
        }
    };
}

text_names!(TNorm, TNorm::ALL);
text_names!(TConorm, TConorm::ALL);
text_names!(Implication, Implication::ALL);
