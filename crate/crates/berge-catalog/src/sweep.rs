//! Parameter grids and parallel sweeps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::{verify, CatalogError, Family, FamilyParams, Result, VerificationReport};

/// Inclusive ranges per parameter name; `eps` ranges over `{-1, +1}` only.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grid {
    ranges: BTreeMap<&'static str, RangeInclusive<i64>>,
}

impl Default for Grid {
    /// `p, q, n, K` in `[-3, 3]`, `r, s` in `[-5, 5]`, `eps = +-1`.
    fn default() -> Self {
        let mut ranges = BTreeMap::new();
        for name in ["p", "q", "n", "K"] {
            ranges.insert(name, -3..=3);
        }
        ranges.insert("r", -5..=5);
        ranges.insert("s", -5..=5);
        ranges.insert("eps", -1..=1);
        Grid { ranges }
    }
}

impl Grid {
    pub fn set(&mut self, name: &str, range: RangeInclusive<i64>) -> Result<()> {
        let key = crate::PARAM_NAMES
            .into_iter()
            .find(|&n| n == name)
            .ok_or_else(|| CatalogError::BadRange(format!("{name}: unknown parameter")))?;
        self.ranges.insert(key, range);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<RangeInclusive<i64>> {
        self.ranges.get(name).cloned()
    }

    /// Parses `name=lo..hi` and applies it.
    pub fn set_spec(&mut self, spec: &str) -> Result<()> {
        let bad = || CatalogError::BadRange(spec.to_string());
        let (name, range) = spec.split_once('=').ok_or_else(bad)?;
        let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
        let lo: i64 = lo.trim().trim_start_matches('+').parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().trim_start_matches('+').parse().map_err(|_| bad())?;
        self.set(name.trim(), lo..=hi)
    }
}

/// The valid tuples of `family` in the grid, in lexicographic order of the
/// family's parameters.
pub fn grid_tuples(family: Family, grid: &Grid) -> Result<Vec<FamilyParams>> {
    let names = family.params();
    let mut axes: Vec<Vec<i64>> = Vec::new();
    for &name in names {
        let mut values: Vec<i64> = grid.get(name).into_iter().flatten().collect();
        if name == "eps" {
            values.retain(|e| e.abs() == 1);
        }
        if values.is_empty() {
            return Err(CatalogError::EmptyRange(name.to_string()));
        }
        axes.push(values);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; axes.len()];
    'outer: loop {
        let mut fp = FamilyParams::empty(family);
        for (k, &name) in names.iter().enumerate() {
            fp.set(name, axes[k][idx[k]])?;
        }
        if fp.validate().is_ok() {
            out.push(fp);
        }
        for k in (0..axes.len()).rev() {
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SweepSummary {
    pub family: Option<Family>,
    pub tuples: usize,
    pub consistent: usize,
    pub s3_ok: usize,
    pub lens_cyclic: usize,
    pub surgery_resolved: usize,
    pub tangle_order_ok: usize,
    pub tangle_resolved: usize,
    pub both_resolved: usize,
    pub unknot_ok: usize,
    pub degenerate: usize,
}

impl SweepSummary {
    pub fn from_reports(family: Option<Family>, reports: &[VerificationReport]) -> Self {
        let count = |f: &dyn Fn(&VerificationReport) -> bool| reports.iter().filter(|r| f(r)).count();
        SweepSummary {
            family,
            tuples: reports.len(),
            consistent: count(&|r| r.consistent),
            s3_ok: count(&|r| r.s3_ok()),
            lens_cyclic: count(&|r| r.lens_homology.is_finite_cyclic()),
            surgery_resolved: count(&|r| r.lens_certificate.is_some()),
            tangle_order_ok: count(&|r| r.tangle_order_ok()),
            tangle_resolved: count(&|r| r.tangle_lens.is_some()),
            both_resolved: count(&|r| r.both_resolved()),
            unknot_ok: count(&|r| r.unknot_ok()),
            degenerate: count(&|r| !r.degenerate_flags.is_empty()),
        }
    }

    pub const HEADER: &'static str =
        "family  tuples  consistent  s3_ok  cyclic  tangle_N  surgery  tangle  both  unknot  degenerate";
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.family.map_or("all", Family::name);
        write!(
            f,
            "{name:<6}  {:>6}  {:>10}  {:>5}  {:>6}  {:>8}  {:>7}  {:>6}  {:>4}  {:>6}  {:>10}",
            self.tuples,
            self.consistent,
            self.s3_ok,
            self.lens_cyclic,
            self.tangle_order_ok,
            self.surgery_resolved,
            self.tangle_resolved,
            self.both_resolved,
            self.unknot_ok,
            self.degenerate
        )
    }
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    /// In tuple order, whatever the number of workers.
    pub reports: Vec<VerificationReport>,
    pub summary: SweepSummary,
}

/// Verifies every grid tuple of `family`. `jobs` caps the worker count;
/// `None` uses rayon's default pool.
pub fn sweep(family: Family, grid: &Grid, budget: usize, jobs: Option<usize>) -> Result<SweepOutcome> {
    let tuples = grid_tuples(family, grid)?;
    let run = || tuples.par_iter().map(|fp| verify(fp, budget)).collect::<Result<Vec<_>>>();
    let reports = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| CatalogError::BadRange(format!("jobs: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let summary = SweepSummary::from_reports(Some(family), &reports);
    Ok(SweepOutcome { reports, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_sizes() {
        let g = Grid::default();
        let sizes: Vec<usize> = Family::ALL.iter().map(|&f| grid_tuples(f, &g).unwrap().len()).collect();
        assert_eq!(sizes, vec![392, 2744, 98, 98, 98, 2744, 7, 7, 7, 7]);
    }

    #[test]
    fn tuples_are_sorted_and_valid() {
        let t = grid_tuples(Family::II, &Grid::default()).unwrap();
        assert!(t.windows(2).all(|w| w[0] < w[1]));
        assert!(t.iter().all(|fp| fp.validate().is_ok()));
    }

    #[test]
    fn empty_range_is_an_error() {
        let mut g = Grid::default();
        g.set_spec("n=2..1").unwrap();
        assert_eq!(grid_tuples(Family::SpA, &g).unwrap_err(), CatalogError::EmptyRange("n".into()));
        // n is not a parameter of family I
        assert!(grid_tuples(Family::I, &g).is_ok());
        assert!(g.set_spec("z=1..2").is_err());
        assert!(g.set_spec("p=1").is_err());
    }

    #[test]
    fn summary_counts_every_tuple() {
        let mut g = Grid::default();
        g.set_spec("n=-1..1").unwrap();
        let out = sweep(Family::SpC, &g, 2_000, Some(2)).unwrap();
        assert_eq!(out.summary.tuples, 3);
        assert_eq!(out.reports.len(), 3);
        let again = sweep(Family::SpC, &g, 2_000, None).unwrap();
        assert_eq!(out.reports, again.reports);
    }
}
