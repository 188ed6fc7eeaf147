use std::fmt;

use crate::exactpoly::{IntPoly, RatFunc};

/// Outcome of one named check.
///
/// `asserted == false` marks an informational entry: it is reported but does
/// not count toward [`CheckReport::all_passed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub asserted: bool,
    pub witness: String,
}

impl Check {
    pub fn status(&self) -> &'static str {
        match (self.asserted, self.passed) {
            (true, true) => "pass",
            (true, false) => "FAIL",
            (false, true) => "info-pass",
            (false, false) => "info-fail",
        }
    }
}

/// Ordered collection of named checks; each name appears at most once.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, name: impl Into<String>, passed: bool, witness: impl Into<String>) {
        self.push(Check {
            name: name.into(),
            passed,
            asserted: true,
            witness: witness.into(),
        });
    }

    pub fn record_info(
        &mut self,
        name: impl Into<String>,
        passed: bool,
        witness: impl Into<String>,
    ) {
        self.push(Check {
            name: name.into(),
            passed,
            asserted: false,
            witness: witness.into(),
        });
    }

    /// Panics on a duplicate name.
    pub fn push(&mut self, check: Check) {
        assert!(
            self.get(&check.name).is_none(),
            "check {} recorded twice",
            check.name
        );
        self.checks.push(check);
    }

    /// Append every check of `other` with `prefix.` prepended to its name.
    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.push(c);
        }
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn into_checks(self) -> Vec<Check> {
        self.checks
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.asserted && !c.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "[{}] {}", c.status(), c.name)?;
            if !c.witness.is_empty() {
                write!(f, ": {}", c.witness)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// First index where two polynomials differ, formatted as a witness.
pub fn first_coefficient_mismatch(expected: &IntPoly, actual: &IntPoly) -> Option<String> {
    let n = expected.coeffs().len().max(actual.coeffs().len());
    (0..n).find_map(|i| {
        let (e, a) = (expected.coeff(i), actual.coeff(i));
        (e != a).then(|| format!("coefficient of t^{i}: expected {e}, got {a}"))
    })
}

/// Mismatch witness for rational functions; `None` iff they are equal.
///
/// When both sides are polynomials the witness names the first differing
/// coefficient, otherwise the lowest term of the cross-multiplied difference.
pub fn ratfunc_mismatch(expected: &RatFunc, actual: &RatFunc) -> Option<String> {
    if expected == actual {
        return None;
    }
    if let (Ok(e), Ok(a)) = (expected.to_poly(), actual.to_poly()) {
        return first_coefficient_mismatch(&e, &a);
    }
    let diff = expected.cross_difference(actual);
    let i = diff.valuation().unwrap_or(0);
    Some(format!(
        "cross-multiplied numerators differ first at t^{i} (by {}); got {actual}",
        diff.coeff(i)
    ))
}
