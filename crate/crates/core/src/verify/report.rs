use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// How a report's verdict should be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportKind {
    /// A pass/fail check against a known constant.
    Check,
    /// A measured constant whose boundedness is the point; always passes.
    EmpiricalConstant,
    /// Exploration with no ground truth; always passes.
    Exploration,
}

/// One verification outcome.
///
/// `pass` holds exactly when `lhs <= constant_used * rhs * (1 + tolerance)`;
/// `raw_pass` is the same predicate with zero tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub statement: String,
    pub kind: ReportKind,
    pub lhs: f64,
    pub rhs: f64,
    pub constant_used: f64,
    pub ratio: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub raw_pass: bool,
    pub degenerate: bool,
    pub metadata: BTreeMap<String, Value>,
}

impl InequalityReport {
    pub fn check(
        name: impl Into<String>,
        statement: impl Into<String>,
        lhs: f64,
        rhs: f64,
        constant_used: f64,
        tolerance: f64,
    ) -> Self {
        Self::build(
            ReportKind::Check,
            name.into(),
            statement.into(),
            lhs,
            rhs,
            constant_used,
            tolerance,
        )
    }

    /// Reports `lhs / rhs` as the constant itself.
    pub fn empirical(name: impl Into<String>, statement: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let c = if rhs > 0.0 { (lhs / rhs).max(0.0) } else { 0.0 };
        Self::build(
            ReportKind::EmpiricalConstant,
            name.into(),
            statement.into(),
            lhs,
            rhs,
            c,
            0.0,
        )
    }

    pub fn exploration(
        name: impl Into<String>,
        statement: impl Into<String>,
        lhs: f64,
        rhs: f64,
        running_max: f64,
    ) -> Self {
        Self::build(
            ReportKind::Exploration,
            name.into(),
            statement.into(),
            lhs,
            rhs,
            running_max,
            0.0,
        )
    }

    fn build(
        kind: ReportKind,
        name: String,
        statement: String,
        lhs: f64,
        rhs: f64,
        constant_used: f64,
        tolerance: f64,
    ) -> Self {
        let degenerate = !(rhs > 0.0);
        let ratio = (!degenerate).then(|| lhs / rhs);
        let raw_pass = lhs <= constant_used * rhs;
        let pass = lhs <= constant_used * rhs * (1.0 + tolerance);
        let (pass, raw_pass) = match kind {
            ReportKind::Check => (pass, raw_pass),
            _ => (true, true),
        };
        InequalityReport {
            name,
            statement,
            kind,
            lhs,
            rhs,
            constant_used,
            ratio,
            tolerance,
            pass,
            raw_pass,
            degenerate,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn set_meta(&mut self, key: &str, value: impl Into<Value>) {
        self.metadata.insert(key.to_string(), value.into());
    }

    /// The same report judged with another tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        if self.kind == ReportKind::Check {
            self.pass = self.lhs <= self.constant_used * self.rhs * (1.0 + tolerance);
        }
        self
    }

    /// Re-evaluates the pass predicate from the stored numbers.
    pub fn is_consistent(&self) -> bool {
        let expect = match self.kind {
            ReportKind::Check => self.lhs <= self.constant_used * self.rhs * (1.0 + self.tolerance),
            _ => true,
        };
        expect == self.pass
    }

    /// Whether this report counts towards a run's exit status.
    pub fn gates_exit(&self) -> bool {
        self.kind == ReportKind::Check
    }

    pub const CSV_HEADER: &'static str = "name,kind,lhs,rhs,constant_used,ratio,tolerance,pass";

    pub fn csv_row(&self) -> String {
        let kind = match self.kind {
            ReportKind::Check => "check",
            ReportKind::EmpiricalConstant => "empirical-constant",
            ReportKind::Exploration => "exploration",
        };
        let ratio = self.ratio.map(|r| format!("{r:e}")).unwrap_or_default();
        format!(
            "{},{kind},{:e},{:e},{:e},{ratio},{:e},{}",
            self.name, self.lhs, self.rhs, self.constant_used, self.tolerance, self.pass
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_predicate_uses_tolerance() {
        let r = InequalityReport::check("t", "", 1.05, 1.0, 1.0, 0.1);
        assert!(r.pass);
        assert!(!r.raw_pass);
        assert_eq!(r.ratio, Some(1.05));
        let r = InequalityReport::check("t", "", 1.2, 1.0, 1.0, 0.1);
        assert!(!r.pass);
    }

    #[test]
    fn zero_rhs_is_degenerate() {
        let r = InequalityReport::check("t", "", 0.0, 0.0, 1.0, 0.0);
        assert!(r.degenerate && r.pass && r.ratio.is_none());
        let r = InequalityReport::check("t", "", 1e-3, 0.0, 1.0, 0.0);
        assert!(!r.pass);
    }

    #[test]
    fn serde_round_trip_keeps_consistency() {
        let r = InequalityReport::empirical("e", "s", 3.0, 2.0).with_meta("seed", 7);
        let back: InequalityReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(back.is_consistent());
        assert_eq!(back.constant_used, 1.5);
    }
}
