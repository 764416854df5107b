use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fuzzy::FuzzySet;

/// CSV table of named sets over their shared universe: header
/// `x,<name1>,<name2>,...`, then one row per grid point with six decimals.
pub fn plot_csv(sets: &[(&str, &FuzzySet)]) -> Result<String> {
    let (_, first) = sets
        .first()
        .ok_or_else(|| Error::Problem("nothing to plot".into()))?;
    for (_, s) in &sets[1..] {
        s.expect_universe(first.universe())?;
    }
    let mut out = String::from("x");
    for (name, _) in sets {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (i, x) in first.universe().grid().iter().enumerate() {
        let _ = write!(out, "{x:.6}");
        for (_, s) in sets {
            let _ = write!(out, ",{:.6}", s.degrees()[i]);
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn emit_plot_data(sets: &[(&str, &FuzzySet)], path: impl AsRef<Path>) -> Result<()> {
    let csv = plot_csv(sets)?;
    let path = path.as_ref();
    std::fs::write(path, csv).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fuzzy::{Shape, Universe};

    fn temp() -> Arc<Universe> {
        Arc::new(Universe::uniform("temperature", 0.0, 200.0, 5).unwrap())
    }

    #[test]
    fn three_curves_on_five_points() {
        let u = temp();
        let low = FuzzySet::sample(&Shape::Trapezoidal { a: 0.0, b: 0.0, c: 50.0, d: 100.0 }, Arc::clone(&u)).unwrap();
        let med = FuzzySet::sample(&Shape::Triangular { a: 50.0, b: 100.0, c: 150.0 }, Arc::clone(&u)).unwrap();
        let high = FuzzySet::sample(&Shape::Trapezoidal { a: 100.0, b: 150.0, c: 200.0, d: 200.0 }, u).unwrap();
        let csv = plot_csv(&[("low", &low), ("medium", &med), ("high", &high)]).unwrap();
        assert_eq!(
            csv,
            "x,low,medium,high\n\
             0.000000,1.000000,0.000000,0.000000\n\
             50.000000,1.000000,0.000000,0.000000\n\
             100.000000,0.000000,1.000000,0.000000\n\
             150.000000,0.000000,0.000000,1.000000\n\
             200.000000,0.000000,0.000000,1.000000\n"
        );
        assert_eq!(csv.lines().count(), 6);
    }

    #[test]
    fn all_zero_column() {
        let z = FuzzySet::empty(temp());
        let csv = plot_csv(&[("none", &z)]).unwrap();
        assert!(csv.lines().skip(1).all(|l| l.ends_with(",0.000000")));
    }

    #[test]
    fn mixed_universes_rejected() {
        let a = FuzzySet::empty(temp());
        let b = FuzzySet::empty(Arc::new(Universe::uniform("other", 0.0, 1.0, 5).unwrap()));
        assert!(matches!(plot_csv(&[("a", &a), ("b", &b)]), Err(Error::UniverseMismatch { .. })));
        assert!(plot_csv(&[]).is_err());
    }

    #[test]
    fn unwritable_path() {
        let a = FuzzySet::empty(temp());
        let err = emit_plot_data(&[("a", &a)], "/nonexistent-dir/x.csv").unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }
}
