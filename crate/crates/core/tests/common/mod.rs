#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use fuzzy_abduction::{FuzzySet, Universe};

pub fn uni(name: &str, n: usize) -> Arc<Universe> {
    Arc::new(Universe::from_grid(name, (0..n).map(|i| i as f64).collect()).unwrap())
}

pub fn on(u: &Arc<Universe>, mu: &[f64]) -> FuzzySet {
    FuzzySet::new(Arc::clone(u), mu.to_vec()).unwrap()
}

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

/// Values `k / (levels - 1)`.
pub fn levels(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64 / (n - 1) as f64).collect()
}
