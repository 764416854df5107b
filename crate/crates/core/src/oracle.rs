//! Exhaustive solver for the sup-T relational equation on small instances.
//!
//! Every candidate A' whose degrees lie on `{0, 1/(L-1), ..., 1}` is pushed
//! forward through the relation and kept when it reproduces the (snapped)
//! observation. Used to falsify the abduction schemes, not to replace them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fuzzy::FuzzySet;
use crate::inference::Relation;
use crate::operators::TNorm;
use crate::EPS;

/// Hard cap on `levels^|U|`.
pub const MAX_CANDIDATES: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantizedSearch {
    pub levels: usize,
    pub max_points: usize,
}

impl Default for QuantizedSearch {
    fn default() -> Self {
        Self {
            levels: 11,
            max_points: 5,
        }
    }
}

impl QuantizedSearch {
    pub fn new(levels: usize, max_points: usize) -> Self {
        Self { levels, max_points }
    }

    /// Number of candidates for a universe of `points` grid points.
    pub fn space_size(&self, points: usize) -> Result<u64> {
        if self.levels < 2 {
            return Err(Error::SearchSpaceOverflow(format!(
                "quantization needs at least 2 levels, got {}",
                self.levels
            )));
        }
        if points > self.max_points {
            return Err(Error::SearchSpaceOverflow(format!(
                "|U| = {points} exceeds the enumeration limit of {} points",
                self.max_points
            )));
        }
        let exp = u32::try_from(points).unwrap_or(u32::MAX);
        match (self.levels as u64).checked_pow(exp) {
            Some(n) if n <= MAX_CANDIDATES => Ok(n),
            _ => Err(Error::SearchSpaceOverflow(format!(
                "{}^{points} candidates exceeds the cap of {MAX_CANDIDATES}",
                self.levels
            ))),
        }
    }

    pub fn snap(&self, x: f64) -> f64 {
        let steps = (self.levels - 1) as f64;
        (x * steps).round() / steps
    }

    fn level(&self, k: usize) -> f64 {
        k as f64 / (self.levels - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Enumeration {
    /// The observation after snapping to the quantization grid.
    pub target: FuzzySet,
    /// Largest distance moved by snapping.
    pub snap_distance: f64,
    pub candidates: u64,
    /// Exact solutions in lexicographic order (first grid point most significant).
    pub solutions: Vec<FuzzySet>,
}

/// All quantized `A'` with `gmp(relation, A') = B'` within [`EPS`].
pub fn enumerate_solutions(
    relation: &Relation,
    b_prime: &FuzzySet,
    tnorm: TNorm,
    search: QuantizedSearch,
) -> Result<Enumeration> {
    b_prime.expect_universe(relation.v_universe())?;
    let n = relation.rows();
    let m = relation.cols();
    let candidates = search.space_size(n)?;
    let levels = search.levels;

    let target: Vec<f64> = b_prime.degrees().iter().map(|&x| search.snap(x)).collect();
    let snap_distance = target
        .iter()
        .zip(b_prime.degrees())
        .map(|(s, x)| (s - x).abs())
        .fold(0.0, f64::max);

    // image[(i * levels + k) * m + j] = T(level k, r[i][j])
    let mut image = Vec::with_capacity(n * levels * m);
    for i in 0..n {
        for k in 0..levels {
            let a = search.level(k);
            image.extend(relation.row(i).iter().map(|&r| tnorm.apply(a, r)));
        }
    }

    let mut solutions = Vec::new();
    let mut digits = vec![0usize; n];
    let mut out = vec![0.0_f64; m];
    for _ in 0..candidates {
        out.iter_mut().for_each(|x| *x = 0.0);
        for (i, &k) in digits.iter().enumerate() {
            let base = (i * levels + k) * m;
            for (o, &x) in out.iter_mut().zip(&image[base..base + m]) {
                *o = o.max(x);
            }
        }
        if out.iter().zip(&target).all(|(o, t)| (o - t).abs() <= EPS) {
            let mu = digits.iter().map(|&k| search.level(k)).collect();
            solutions.push(FuzzySet::new(Arc::clone(relation.u_universe()), mu)?);
        }
        // odometer, last point fastest
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < levels {
                break;
            }
            *d = 0;
        }
    }

    Ok(Enumeration {
        target: FuzzySet::new(Arc::clone(b_prime.universe()), target)?,
        snap_distance,
        candidates,
        solutions,
    })
}

/// Pointwise maximum of the enumerated solutions.
pub fn greatest_enumerated(solutions: &[FuzzySet]) -> Option<FuzzySet> {
    let (first, rest) = solutions.split_first()?;
    rest.iter().try_fold(first.clone(), |acc, s| acc.zip_with(s, f64::max)).ok()
}
