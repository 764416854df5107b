//! Universes of discourse, fuzzy sets sampled on them, and set-level operations.
//!
//! A [`Universe`] is a finite, strictly increasing grid of sample points that
//! stands in for a continuous domain. A [`FuzzySet`] is a membership vector
//! aligned with that grid. Every sup/inf over a universe elsewhere in the crate
//! becomes a max/min over the grid.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::EPS;

/// Default number of grid points for range-defined universes.
pub const DEFAULT_GRID_POINTS: usize = 101;

#[derive(Debug, Clone, PartialEq)]
pub struct Universe {
    name: String,
    grid: Vec<f64>,
}

impl Universe {
    /// Uniform grid of `n` points from `lo` to `hi` inclusive.
    pub fn uniform(name: impl Into<String>, lo: f64, hi: f64, n: usize) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidUniverse {
            name: name.clone(),
            reason,
        };
        if !lo.is_finite() || !hi.is_finite() {
            return Err(invalid(format!("bounds must be finite, got [{lo}, {hi}]")));
        }
        if lo >= hi {
            return Err(invalid(format!("lower bound {lo} must be below upper bound {hi}")));
        }
        if n < 2 {
            return Err(invalid(format!("need at least 2 grid points, got {n}")));
        }
        let step = (hi - lo) / (n - 1) as f64;
        let mut grid: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
        grid[n - 1] = hi;
        Ok(Self { name, grid })
    }

    /// Universe over an explicit grid. A single point is allowed.
    pub fn from_grid(name: impl Into<String>, grid: Vec<f64>) -> Result<Self> {
        let name = name.into();
        if grid.is_empty() {
            return Err(Error::InvalidUniverse {
                name,
                reason: "grid is empty".into(),
            });
        }
        if let Some(i) = grid.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidUniverse {
                name,
                reason: format!("grid point {i} is not finite"),
            });
        }
        if let Some(i) = grid.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidUniverse {
                name,
                reason: format!("grid is not strictly increasing at index {}", i + 1),
            });
        }
        Ok(Self { name, grid })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Index of the grid point nearest to `x`; ties go to the lower point.
    pub fn nearest_index(&self, x: f64) -> usize {
        let mut best = 0;
        let mut best_dist = f64::INFINITY;
        for (i, p) in self.grid.iter().enumerate() {
            let d = (p - x).abs();
            if d < best_dist {
                best = i;
                best_dist = d;
            }
        }
        best
    }
}

/// Parametric membership shapes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Triangular { a: f64, b: f64, c: f64 },
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
    Gaussian { center: f64, width: f64 },
    Singleton { point: f64 },
    Samples(Vec<f64>),
}

impl Shape {
    pub fn validate(&self) -> Result<()> {
        let finite = |xs: &[f64]| xs.iter().all(|x| x.is_finite());
        match *self {
            Shape::Triangular { a, b, c } => {
                if !finite(&[a, b, c]) {
                    return Err(Error::InvalidShape("triangular parameters must be finite".into()));
                }
                if !(a <= b && b <= c) {
                    return Err(Error::InvalidShape(format!(
                        "triangular requires a <= b <= c, got ({a}, {b}, {c})"
                    )));
                }
            }
            Shape::Trapezoidal { a, b, c, d } => {
                if !finite(&[a, b, c, d]) {
                    return Err(Error::InvalidShape("trapezoidal parameters must be finite".into()));
                }
                if !(a <= b && b <= c && c <= d) {
                    return Err(Error::InvalidShape(format!(
                        "trapezoidal requires a <= b <= c <= d, got ({a}, {b}, {c}, {d})"
                    )));
                }
            }
            Shape::Gaussian { center, width } => {
                if !finite(&[center, width]) {
                    return Err(Error::InvalidShape("gaussian parameters must be finite".into()));
                }
                if width <= 0.0 {
                    return Err(Error::InvalidShape(format!(
                        "gaussian width must be positive, got {width}"
                    )));
                }
            }
            Shape::Singleton { point } => {
                if !point.is_finite() {
                    return Err(Error::InvalidShape("singleton point must be finite".into()));
                }
            }
            Shape::Samples(ref mu) => {
                if let Some(i) = mu.iter().position(|x| !x.is_finite()) {
                    return Err(Error::InvalidShape(format!("sample {i} is not finite")));
                }
            }
        }
        Ok(())
    }

    fn is_parametric(&self) -> bool {
        matches!(
            self,
            Shape::Triangular { .. } | Shape::Trapezoidal { .. } | Shape::Gaussian { .. }
        )
    }

    /// Membership at `x` for the piecewise/analytic shapes.
    fn eval(&self, x: f64) -> f64 {
        match *self {
            Shape::Triangular { a, b, c } => {
                if x < a || x > c {
                    0.0
                } else if x < b {
                    (x - a) / (b - a)
                } else if x == b {
                    1.0
                } else {
                    (c - x) / (c - b)
                }
            }
            Shape::Trapezoidal { a, b, c, d } => {
                if x < a || x > d {
                    0.0
                } else if x < b {
                    (x - a) / (b - a)
                } else if x <= c {
                    1.0
                } else {
                    (d - x) / (d - c)
                }
            }
            Shape::Gaussian { center, width } => {
                let z = (x - center) / width;
                (-0.5 * z * z).exp()
            }
            Shape::Singleton { .. } | Shape::Samples(_) => unreachable!("not pointwise"),
        }
    }
}

/// Membership vector over a universe's grid. Degrees always lie in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet {
    universe: Arc<Universe>,
    mu: Vec<f64>,
}

impl FuzzySet {
    /// Builds a set from raw degrees, clamping each into [0, 1].
    pub fn new(universe: Arc<Universe>, mu: Vec<f64>) -> Result<Self> {
        if mu.len() != universe.len() {
            return Err(Error::LengthMismatch {
                universe: universe.name.clone(),
                expected: universe.len(),
                got: mu.len(),
            });
        }
        if let Some(i) = mu.iter().position(|x| x.is_nan()) {
            return Err(Error::NonFiniteDegree(i));
        }
        let mu = mu.into_iter().map(clamp_degree).collect();
        Ok(Self { universe, mu })
    }

    pub fn empty(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        Self::constant(universe, 0.0, n)
    }

    pub fn full(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        Self::constant(universe, 1.0, n)
    }

    fn constant(universe: Arc<Universe>, value: f64, n: usize) -> Self {
        Self {
            universe,
            mu: vec![value; n],
        }
    }

    /// Evaluates `shape` at every grid point of `universe`.
    pub fn sample(shape: &Shape, universe: Arc<Universe>) -> Result<Self> {
        shape.validate()?;
        if shape.is_parametric() && universe.len() < 2 {
            return Err(Error::InvalidShape(format!(
                "parametric shapes need at least 2 grid points, universe `{}` has {}",
                universe.name(),
                universe.len()
            )));
        }
        match shape {
            Shape::Samples(mu) => Self::new(universe, mu.clone()),
            Shape::Singleton { point } => {
                let mut mu = vec![0.0; universe.len()];
                mu[universe.nearest_index(*point)] = 1.0;
                Ok(Self { universe, mu })
            }
            _ => {
                let mu = universe.grid().iter().map(|&x| clamp_degree(shape.eval(x))).collect();
                Ok(Self { universe, mu })
            }
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn degrees(&self) -> &[f64] {
        &self.mu
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    pub fn complement(&self) -> Self {
        self.map(|x| 1.0 - x)
    }

    /// Pointwise map, clamped back into [0, 1].
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            universe: Arc::clone(&self.universe),
            mu: self.mu.iter().map(|&x| clamp_degree(f(x))).collect(),
        }
    }

    /// Pointwise combination of two sets on the same universe.
    pub fn zip_with(&self, other: &FuzzySet, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.expect_same_universe(other)?;
        Ok(Self {
            universe: Arc::clone(&self.universe),
            mu: self
                .mu
                .iter()
                .zip(&other.mu)
                .map(|(&x, &y)| clamp_degree(f(x, y)))
                .collect(),
        })
    }

    pub fn height(&self) -> f64 {
        self.mu.iter().copied().fold(0.0, f64::max)
    }

    pub fn is_normalized(&self) -> bool {
        (self.height() - 1.0).abs() <= EPS
    }

    /// Grid points where membership is 1.
    pub fn core_points(&self) -> Vec<f64> {
        self.universe
            .grid()
            .iter()
            .zip(&self.mu)
            .filter(|(_, &m)| (m - 1.0).abs() <= EPS)
            .map(|(&x, _)| x)
            .collect()
    }

    /// Possibility of matching: sup over the grid of min(self, other).
    pub fn compatibility(&self, other: &FuzzySet) -> Result<f64> {
        self.expect_same_universe(other)?;
        Ok(self
            .mu
            .iter()
            .zip(&other.mu)
            .map(|(&x, &y)| x.min(y))
            .fold(0.0, f64::max))
    }

    /// Pointwise `self <= other + tol`.
    pub fn is_subset_of(&self, other: &FuzzySet, tol: f64) -> bool {
        self.mu.len() == other.mu.len() && self.mu.iter().zip(&other.mu).all(|(x, y)| *x <= y + tol)
    }

    /// Largest pointwise absolute difference.
    pub fn max_abs_diff(&self, other: &FuzzySet) -> Result<f64> {
        self.expect_same_universe(other)?;
        Ok(self
            .mu
            .iter()
            .zip(&other.mu)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max))
    }

    pub fn expect_universe(&self, universe: &Universe) -> Result<()> {
        if same_universe(&self.universe, universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected: universe.name().to_string(),
                got: self.universe.name().to_string(),
            })
        }
    }

    fn expect_same_universe(&self, other: &FuzzySet) -> Result<()> {
        other.expect_universe(&self.universe)
    }
}

impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.mu.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m:.6}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn same_universe(a: &Universe, b: &Universe) -> bool {
    std::ptr::eq(a, b) || a == b
}

pub(crate) fn clamp_degree(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}
