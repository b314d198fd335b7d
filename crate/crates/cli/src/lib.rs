//! Batch front-end for the `fourier-rearrange` verification harness.
//!
//! [`run`] executes suites from a [`RunConfig`] and writes `report.json` and
//! `summary.csv`; [`tables`] produces plot-ready CSV.

pub mod config;
pub mod suites;
pub mod tables;

use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use fourier_rearrange::InequalityReport;
use serde::Serialize;

pub use config::{parse_config, ConfigError, PartialConfig, RunConfig, Suite};
pub use suites::{run_suite, SuiteOutcome};

/// Everything a run produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub pass: bool,
    pub suites: Vec<SuiteOutcome>,
}

impl RunReport {
    /// 0 when every gating check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    /// `report.json` text. The wall-clock stamp sits alone on the second
    /// line so that comparisons can drop it.
    pub fn to_json(&self, generated_at: u64) -> String {
        let body = serde_json::to_string_pretty(self).expect("reports serialize");
        format!("{{\n  \"generated_at\": {generated_at},\n{}", &body[2..])
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("suite,{}\n", InequalityReport::CSV_HEADER);
        for s in &self.suites {
            for r in &s.reports {
                out.push_str(&format!("{},{}\n", s.suite, r.csv_row()));
            }
        }
        out
    }
}

/// Runs every configured suite in canonical order.
pub fn run(cfg: &RunConfig) -> RunReport {
    let suites: Vec<SuiteOutcome> = cfg.suites.iter().map(|&s| run_suite(s, cfg)).collect();
    RunReport {
        tool: "verify",
        version: env!("CARGO_PKG_VERSION"),
        config: cfg.clone(),
        pass: suites.iter().all(|s| s.pass),
        suites,
    }
}

/// Writes `report.json` and `summary.csv` into `dir`.
pub fn write_reports(report: &RunReport, dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    fs::write(dir.join("report.json"), report.to_json(now))?;
    fs::write(dir.join("summary.csv"), report.to_csv())
}

/// `report.json` without its timestamp line.
pub fn strip_timestamp(json: &str) -> String {
    json.lines()
        .filter(|l| !l.trim_start().starts_with("\"generated_at\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> RunConfig {
        parse_config("suite = specfun\ndim = 1\nseed = 2")
            .unwrap()
            .finish()
            .unwrap()
    }

    #[test]
    fn json_parses_and_carries_the_stamp() {
        let report = run(&tiny());
        let text = report.to_json(123);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["generated_at"], 123);
        assert_eq!(v["suites"][0]["suite"], "specfun");
        assert_eq!(strip_timestamp(&text), strip_timestamp(&report.to_json(456)));
    }

    #[test]
    fn csv_has_one_row_per_report() {
        let report = run(&tiny());
        let csv = report.to_csv();
        let rows = csv.lines().count() - 1;
        assert_eq!(rows, report.suites[0].reports.len());
        assert!(csv.starts_with("suite,name,kind"));
    }

    #[test]
    fn specfun_suite_passes() {
        let report = run(&tiny());
        let failing: Vec<_> = report.suites[0]
            .reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| &r.name)
            .collect();
        assert!(report.pass, "{failing:?}");
        assert_eq!(report.exit_code(), 0);
    }
}
