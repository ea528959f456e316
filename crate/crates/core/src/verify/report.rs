use std::fmt;

use serde::{Deserialize, Serialize};

/// One named check with its measured residual and tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Ordered list of checks; passes iff every check passes.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Records a residual check; NaN residuals fail.
    pub fn residual(&mut self, name: &str, residual: f64, tolerance: f64) -> &mut Self {
        self.checks.push(Check {
            name: name.to_string(),
            residual,
            tolerance,
            passed: residual <= tolerance,
            detail: None,
        });
        self
    }

    /// Records a count of violations, which must be zero.
    pub fn violations(&mut self, name: &str, count: usize, detail: Option<String>) -> &mut Self {
        self.checks.push(Check {
            name: name.to_string(),
            residual: count as f64,
            tolerance: 0.0,
            passed: count == 0,
            detail,
        });
        self
    }

    /// Records a check that could not be evaluated at all.
    pub fn failure(&mut self, name: &str, detail: String) -> &mut Self {
        self.checks.push(Check {
            name: name.to_string(),
            residual: f64::INFINITY,
            tolerance: 0.0,
            passed: false,
            detail: Some(detail),
        });
        self
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(
                f,
                "{:<32} residual={:.3e} tolerance={:.3e} {}",
                c.name,
                c.residual,
                c.tolerance,
                if c.passed { "PASS" } else { "FAIL" }
            )?;
            if let Some(d) = &c.detail {
                write!(f, " ({d})")?;
            }
            writeln!(f)?;
        }
        write!(f, "overall: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}
