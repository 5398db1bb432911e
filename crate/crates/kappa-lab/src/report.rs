//! Residual reports shared by every verification suite.

use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::semicat::Tol;

/// One named identity: the worst residual over all tested tuples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
    pub context: String,
}

/// Outcome of a suite. `overall` holds iff every check passes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub overall: bool,
    pub wall_time_ms: f64,
    pub version: String,
    pub seed: Option<Vec<u64>>,
}

impl Report {
    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.id.as_str())
            .collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    /// Concatenates the checks of several reports under one suite name.
    pub fn merge(suite: &str, parts: Vec<Report>) -> Report {
        let checks: Vec<Check> = parts.iter().flat_map(|r| r.checks.clone()).collect();
        let seed = parts.iter().find_map(|r| r.seed.clone());
        Report {
            suite: suite.to_string(),
            overall: checks.iter().all(|c| c.pass),
            checks,
            wall_time_ms: parts.iter().map(|r| r.wall_time_ms).sum(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
        }
    }

    /// Drops every check whose id is not listed; `overall` is recomputed.
    pub fn retain(&mut self, ids: &[String]) {
        self.checks.retain(|c| ids.iter().any(|i| i == &c.id));
        self.overall = self.checks.iter().all(|c| c.pass);
    }
}

/// Accumulates residuals into named checks, keeping first-seen order.
#[derive(Debug)]
pub struct Suite {
    name: String,
    tol: Tol,
    checks: Vec<Check>,
    seed: Option<Vec<u64>>,
    start: Instant,
}

impl Suite {
    pub fn new(name: &str, tol: Tol) -> Self {
        Suite {
            name: name.to_string(),
            tol,
            checks: Vec::new(),
            seed: None,
            start: Instant::now(),
        }
    }

    pub fn tol(&self) -> Tol {
        self.tol
    }

    pub fn with_seed(mut self, seed: Vec<u64>) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Ensures a check exists even when no tuple exercises it.
    pub fn declare(&mut self, id: &str) {
        if !self.checks.iter().any(|c| c.id == id) {
            self.checks.push(Check {
                id: id.to_string(),
                residual: 0.0,
                threshold: self.tol.threshold(0.0),
                pass: true,
                context: String::new(),
            });
        }
    }

    /// Records `residual` for `id` against operands of norm `scale`.
    /// A non-finite residual always fails.
    pub fn record(&mut self, id: &str, residual: f64, scale: f64, context: impl Into<String>) {
        self.declare(id);
        let threshold = self.tol.threshold(scale);
        let ok = residual.is_finite() && residual <= threshold;
        let c = self
            .checks
            .iter_mut()
            .find(|c| c.id == id)
            .expect("declared above");
        let worse = !residual.is_finite() || residual > c.residual || c.context.is_empty();
        c.pass &= ok;
        if worse {
            c.residual = if residual.is_finite() {
                residual
            } else {
                f64::INFINITY
            };
            c.threshold = threshold;
            c.context = context.into();
        }
    }

    /// Records a failure that carries no residual, such as a shape error.
    pub fn record_error(&mut self, id: &str, context: impl Into<String>) {
        self.record(id, f64::INFINITY, 0.0, context);
    }

    pub fn finish(self) -> Report {
        Report {
            suite: self.name,
            overall: self.checks.iter().all(|c| c.pass),
            checks: self.checks,
            wall_time_ms: self.start.elapsed().as_secs_f64() * 1e3,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: self.seed,
        }
    }
}

/// Evaluates `f` on every item in parallel, returning results in input order.
pub(crate) fn par_map<I, R, F>(items: &[I], f: F) -> Vec<R>
where
    I: Sync,
    R: Send,
    F: Fn(&I) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_residual_wins() {
        let mut s = Suite::new("t", Tol::default());
        s.record("a", 1e-12, 1.0, "x");
        s.record("a", 1e-3, 1.0, "y");
        s.record("a", 1e-14, 1.0, "z");
        s.declare("b");
        let r = s.finish();
        assert!(!r.overall);
        let a = r.check("a").unwrap();
        assert_eq!(a.context, "y");
        assert!(!a.pass);
        assert!(r.check("b").unwrap().pass);
        assert_eq!(r.failed(), vec!["a"]);
    }

    #[test]
    fn nan_fails() {
        let mut s = Suite::new("t", Tol::default());
        s.record("a", f64::NAN, 1.0, "x");
        assert!(!s.finish().overall);
    }
}
