use serde::Serialize;
use serde_json::Value;

use super::{RunConfig, Suite};

pub const SCHEMA: &str = "sovlab.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ExactPass,
    PassAtTolerance,
    Fail,
}

impl Status {
    pub fn passed(self) -> bool {
        self != Status::Fail
    }
}

/// One identity checked inside a suite.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub identity: String,
    /// The identity in symbols, as a stable anchor for tooling.
    pub anchor: String,
    pub status: Status,
    /// Worst residual as a decimal string; `"0"` for exact checks.
    pub residual: String,
    /// Tolerance the residual was held to; `"0"` for exact checks.
    pub tolerance: String,
    pub detail: String,
}

impl CheckRecord {
    pub fn exact(identity: &str, anchor: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            identity: identity.into(),
            anchor: anchor.into(),
            status: if ok { Status::ExactPass } else { Status::Fail },
            residual: if ok { "0".into() } else { "nonzero".into() },
            tolerance: "0".into(),
            detail: detail.into(),
        }
    }

    pub fn numeric(identity: &str, anchor: &str, residual: f64, tol: f64, detail: impl Into<String>) -> Self {
        Self {
            identity: identity.into(),
            anchor: anchor.into(),
            status: if residual < tol { Status::PassAtTolerance } else { Status::Fail },
            residual: decimal(residual),
            tolerance: decimal(tol),
            detail: detail.into(),
        }
    }

    pub fn failed(identity: &str, detail: impl Into<String>) -> Self {
        Self { identity: identity.into(), anchor: String::new(), status: Status::Fail, residual: "n/a".into(), tolerance: "n/a".into(), detail: detail.into() }
    }
}

pub(crate) fn decimal(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.3e}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub status: Status,
    /// Largest numeric residual in the suite (`"0"` if all checks are exact).
    pub worst_residual: String,
    pub wall_time_s: f64,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifacts: Option<Value>,
}

impl SuiteReport {
    pub fn new(suite: Suite, checks: Vec<CheckRecord>, artifacts: Option<Value>, wall_time_s: f64) -> Self {
        let status = checks.iter().map(|c| c.status).max().unwrap_or(Status::Fail);
        let worst = checks.iter().filter_map(|c| c.residual.parse::<f64>().ok()).fold(0.0, f64::max);
        let worst_residual = if checks.iter().any(|c| c.status == Status::Fail && c.residual.parse::<f64>().is_err()) { "n/a".into() } else { decimal(worst) };
        Self { suite, status, worst_residual, wall_time_s, checks, artifacts }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub schema: &'static str,
    pub config: RunConfig,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
    pub wall_time_s: f64,
}

impl SpectralReport {
    pub fn new(cfg: &RunConfig, suites: Vec<SuiteReport>, wall_time_s: f64) -> Self {
        let passed = suites.iter().all(|s| s.status.passed());
        Self { schema: SCHEMA, config: cfg.clone(), passed, suites, wall_time_s }
    }

    pub fn to_json(&self) -> crate::Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The report with every timing field zeroed; equal for equal `(config, seed)`.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        r.wall_time_s = 0.0;
        for s in &mut r.suites {
            s.wall_time_s = 0.0;
        }
        r
    }

    pub fn suite(&self, s: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|x| x.suite == s)
    }
}
