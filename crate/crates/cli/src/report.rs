//! Verification reports: one entry per check, deterministic given the seed.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub params: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Only recorded when `WITTLAB_TIMING=1`, so that reports stay byte-identical.
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridSpec {
    pub p_list: Vec<u32>,
    pub n_list: Vec<usize>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub grid: GridSpec,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl VerificationReport {
    pub fn new(suite: &str, grid: GridSpec, checks: Vec<Check>) -> Self {
        let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
        VerificationReport { suite: suite.to_string(), grid, passed: checks.len() - failed, failed, checks }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

pub fn timing_enabled() -> bool {
    std::env::var("WITTLAB_TIMING").is_ok_and(|v| v == "1")
}

/// Runs `f`, turning its `(pass, witness)` into a [`Check`].
pub fn check<F>(name: &str, params: Value, f: F) -> Check
where
    F: FnOnce() -> anyhow::Result<(bool, Option<Value>)>,
{
    let start = Instant::now();
    let (status, witness) = match f() {
        Ok((pass, w)) => (if pass { Status::Pass } else { Status::Fail }, w),
        Err(e) => (Status::Fail, Some(serde_json::json!({ "error": e.to_string() }))),
    };
    let elapsed_ms = timing_enabled().then(|| start.elapsed().as_millis() as u64);
    log::debug!("{name} {params}: {status:?}");
    Check { name: name.to_string(), params, status, witness, elapsed_ms }
}
