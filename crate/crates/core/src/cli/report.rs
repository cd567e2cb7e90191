//! Named numeric checks and their text rendering.

use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub tol: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `|computed − expected| ≤ tol`.
    pub fn absolute(name: impl Into<String>, computed: f64, expected: f64, tol: f64) -> Self {
        let passed = (computed - expected).abs() <= tol;
        Self { name: name.into(), computed, expected, tol, passed }
    }

    /// Passes when `|computed − expected| ≤ tol·|expected|`.
    pub fn relative(name: impl Into<String>, computed: f64, expected: f64, tol: f64) -> Self {
        let passed = (computed - expected).abs() <= tol * expected.abs();
        Self { name: name.into(), computed, expected, tol, passed }
    }

    /// Passes when the error measure `err` is at most `tol`.
    pub fn at_most(name: impl Into<String>, err: f64, tol: f64) -> Self {
        Self { name: name.into(), computed: err, expected: 0.0, tol, passed: err <= tol }
    }

    pub fn line(&self) -> String {
        format!(
            "CHECK {} computed={:e} expected={:e} tol={:e} {}",
            self.name,
            self.computed,
            self.expected,
            self.tol,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.line());
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "SUMMARY checks={} failed={} {}",
            self.checks.len(),
            self.failures(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}
