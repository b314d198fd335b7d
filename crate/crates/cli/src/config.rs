//! Run configuration: flat `key = value` text or a JSON object, with command
//! line flags layered on top.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

/// The suites a run can execute, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Rearrange,
    Specfun,
    Inequalities,
    Montgomery,
    Schrodinger,
    Conjecture1,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Rearrange,
        Suite::Specfun,
        Suite::Inequalities,
        Suite::Montgomery,
        Suite::Schrodinger,
        Suite::Conjecture1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rearrange => "rearrange",
            Suite::Specfun => "specfun",
            Suite::Inequalities => "inequalities",
            Suite::Montgomery => "montgomery",
            Suite::Schrodinger => "schrodinger",
            Suite::Conjecture1 => "conjecture1",
        }
    }

    /// Trials per dimension when the configuration does not set `trials`.
    pub fn default_trials(self) -> usize {
        match self {
            Suite::Rearrange | Suite::Montgomery => 500,
            Suite::Inequalities => 100,
            Suite::Conjecture1 => 1000,
            Suite::Specfun | Suite::Schrodinger => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}; expected one of rearrange, specfun, inequalities, montgomery, schrodinger, conjecture1, all"))
    }
}

/// Where a configuration error was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    /// 1-based line and column in the config file.
    File { line: usize, column: usize },
    /// A command line flag.
    Flag(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{}{message}", location_prefix(.location))]
pub struct ConfigError {
    pub location: Option<Location>,
    pub message: String,
}

fn location_prefix(loc: &Option<Location>) -> String {
    match loc {
        Some(Location::File { line, column }) => format!("line {line}, column {column}: "),
        Some(Location::Flag(flag)) => format!("--{flag}: "),
        None => String::new(),
    }
}

impl ConfigError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ConfigError {
            location: Some(Location::File { line, column }),
            message: message.into(),
        }
    }

    fn bare(message: impl Into<String>) -> Self {
        ConfigError {
            location: None,
            message: message.into(),
        }
    }
}

pub const KEYS: [&str; 7] = ["suite", "dim", "n", "seed", "trials", "out", "tol"];

/// Settings before defaults are applied; every field is optional.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PartialConfig {
    pub suites: Option<Vec<Suite>>,
    pub dims: Option<Vec<usize>>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
}

impl PartialConfig {
    /// Parses and validates one `key`, `value` pair.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let value = value.trim();
        match key {
            "suite" => self.suites = Some(parse_suites(value)?),
            "dim" => self.dims = Some(parse_dims(value)?),
            "n" => {
                let n: usize = value
                    .parse()
                    .map_err(|_| format!("n must be an integer, got {value:?}"))?;
                if !n.is_power_of_two() || !(32..=4096).contains(&n) {
                    return Err(format!("n must be a power of two in [32, 4096], got {n}"));
                }
                self.n = Some(n);
            }
            "seed" => {
                self.seed = Some(
                    value
                        .parse()
                        .map_err(|_| format!("seed must be a 64-bit unsigned integer, got {value:?}"))?,
                )
            }
            "trials" => {
                let t: usize = value
                    .parse()
                    .map_err(|_| format!("trials must be an integer, got {value:?}"))?;
                if t == 0 {
                    return Err("trials must be positive".into());
                }
                self.trials = Some(t);
            }
            "out" => {
                if value.is_empty() {
                    return Err("out must name a directory".into());
                }
                self.out = Some(PathBuf::from(value));
            }
            "tol" => {
                let t: f64 = value
                    .parse()
                    .map_err(|_| format!("tol must be a number, got {value:?}"))?;
                if !(t.is_finite() && t >= 0.0) {
                    return Err(format!("tol must be finite and nonnegative, got {value}"));
                }
                self.tol = Some(t);
            }
            other => return Err(format!("unknown key {other:?}; expected one of {}", KEYS.join(", "))),
        }
        Ok(())
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overlay(mut self, other: PartialConfig) -> PartialConfig {
        self.suites = other.suites.or(self.suites);
        self.dims = other.dims.or(self.dims);
        self.n = other.n.or(self.n);
        self.seed = other.seed.or(self.seed);
        self.trials = other.trials.or(self.trials);
        self.out = other.out.or(self.out);
        self.tol = other.tol.or(self.tol);
        self
    }

    pub fn finish(self) -> Result<RunConfig, ConfigError> {
        let seed = self
            .seed
            .ok_or_else(|| ConfigError::bare("a seed is required (set `seed` or pass --seed)"))?;
        Ok(RunConfig {
            suites: self.suites.unwrap_or_else(|| Suite::ALL.to_vec()),
            dims: self.dims.unwrap_or_else(|| vec![1, 2]),
            n: self.n,
            seed,
            trials: self.trials,
            out: self.out.unwrap_or_else(|| PathBuf::from("verify-out")),
            tol: self.tol,
        })
    }
}

fn parse_suites(value: &str) -> Result<Vec<Suite>, String> {
    let mut out = Vec::new();
    for item in split_list(value) {
        if item == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(item.parse()?);
        }
    }
    if out.is_empty() {
        return Err("suite list is empty".into());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn parse_dims(value: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in split_list(value) {
        let d: usize = item
            .parse()
            .map_err(|_| format!("dimension must be an integer, got {item:?}"))?;
        if !(1..=3).contains(&d) {
            return Err(format!("dimension must be 1, 2 or 3, got {d}"));
        }
        out.push(d);
    }
    if out.is_empty() {
        return Err("dimension list is empty".into());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

/// A validated run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    pub dims: Vec<usize>,
    /// Cells per axis; `None` selects the standard grid for each dimension.
    pub n: Option<usize>,
    pub seed: u64,
    /// Overrides every suite's default trial count.
    pub trials: Option<usize>,
    pub out: PathBuf,
    /// Replaces the tolerance of every gating check.
    pub tol: Option<f64>,
}

impl RunConfig {
    pub fn trials_for(&self, suite: Suite) -> usize {
        self.trials.unwrap_or(suite.default_trials())
    }
}

/// Parses a config file. JSON is recognised by a leading `{`.
pub fn parse_config(text: &str) -> Result<PartialConfig, ConfigError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_flat(text)
    }
}

fn parse_flat(text: &str) -> Result<PartialConfig, ConfigError> {
    let mut cfg = PartialConfig::default();
    let mut seen: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let key_col = column_of(raw, content.len() - content.trim_start().len());
        let Some(eq) = content.find('=') else {
            return Err(ConfigError::at(line, key_col, "expected `key = value`"));
        };
        let key = content[..eq].trim();
        if key.is_empty() {
            return Err(ConfigError::at(line, key_col, "missing key before `=`"));
        }
        if seen.iter().any(|k| k == key) {
            return Err(ConfigError::at(line, key_col, format!("duplicate key {key:?}")));
        }
        let rest = &content[eq + 1..];
        let value_col = column_of(raw, eq + 1 + (rest.len() - rest.trim_start().len()));
        let value = unquote(rest.trim());
        cfg.set(key, value).map_err(|msg| {
            let col = if KEYS.contains(&key) { value_col } else { key_col };
            ConfigError::at(line, col, msg)
        })?;
        seen.push(key.to_string());
    }
    Ok(cfg)
}

fn unquote(s: &str) -> &str {
    if s.len() >= 2 && s.starts_with('"') && s.ends_with('"') {
        &s[1..s.len() - 1]
    } else {
        s
    }
}

/// 1-based character column of a byte offset.
fn column_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn parse_json(text: &str) -> Result<PartialConfig, ConfigError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ConfigError::at(e.line(), e.column(), e.to_string()))?;
    let Value::Object(map) = value else {
        return Err(ConfigError::at(1, 1, "expected a JSON object"));
    };
    let mut cfg = PartialConfig::default();
    for (key, v) in &map {
        let (line, column) = locate_key(text, key);
        let flat = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            Value::Array(items) => {
                let mut parts = Vec::with_capacity(items.len());
                for item in items {
                    match item {
                        Value::String(s) => parts.push(s.clone()),
                        Value::Number(n) => parts.push(n.to_string()),
                        _ => {
                            return Err(ConfigError::at(
                                line,
                                column,
                                format!("{key:?}: list items must be strings or numbers"),
                            ))
                        }
                    }
                }
                parts.join(",")
            }
            _ => {
                return Err(ConfigError::at(
                    line,
                    column,
                    format!("{key:?}: expected a string, number or list"),
                ))
            }
        };
        cfg.set(key, &flat).map_err(|msg| ConfigError::at(line, column, msg))?;
    }
    Ok(cfg)
}

/// Line and column of the first `"key"` in `text`.
fn locate_key(text: &str, key: &str) -> (usize, usize) {
    let needle = format!("\"{key}\"");
    let Some(pos) = text.find(&needle) else {
        return (1, 1);
    };
    let before = &text[..pos];
    let line = before.matches('\n').count() + 1;
    let start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, text[start..pos].chars().count() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_and_json_agree() {
        let flat = "suite = inequalities, montgomery\ndim = 1\nn = 256\nseed = 7 # comment\n";
        let json = r#"{"suite": ["inequalities", "montgomery"], "dim": 1, "n": 256, "seed": 7}"#;
        let a = parse_config(flat).unwrap();
        let b = parse_config(json).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.suites, Some(vec![Suite::Inequalities, Suite::Montgomery]));
    }

    #[test]
    fn all_expands_to_every_suite() {
        let cfg = parse_config("suite = all\nseed = 1").unwrap().finish().unwrap();
        assert_eq!(cfg.suites, Suite::ALL.to_vec());
        assert_eq!(cfg.dims, vec![1, 2]);
    }

    #[test]
    fn unknown_key_reports_position() {
        let err = parse_config("seed = 1\n  colour = red\n").unwrap_err();
        assert_eq!(err.location, Some(Location::File { line: 2, column: 3 }));
        assert!(err.message.contains("unknown key"));
    }

    #[test]
    fn bad_value_points_at_the_value() {
        let err = parse_config("n = 100\n").unwrap_err();
        assert_eq!(err.location, Some(Location::File { line: 1, column: 5 }));
        assert!(err.to_string().starts_with("line 1, column 5:"));
    }

    #[test]
    fn missing_equals_and_duplicates() {
        let err = parse_config("seed 1\n").unwrap_err();
        assert_eq!(err.location, Some(Location::File { line: 1, column: 1 }));
        let err = parse_config("seed = 1\nseed = 2\n").unwrap_err();
        assert_eq!(err.location, Some(Location::File { line: 2, column: 1 }));
    }

    #[test]
    fn json_syntax_and_unknown_keys() {
        let err = parse_config("{\n  \"seed\": 1,\n  \"seed2\" 3\n}").unwrap_err();
        assert!(matches!(err.location, Some(Location::File { line: 3, .. })));
        let err = parse_config("{\n  \"seed\": 1,\n  \"colour\": \"red\"\n}").unwrap_err();
        assert_eq!(err.location, Some(Location::File { line: 3, column: 3 }));
        let err = parse_config("{\"seed\": true}").unwrap_err();
        assert!(err.message.contains("expected a string"));
    }

    #[test]
    fn seed_is_required() {
        assert!(parse_config("dim = 1").unwrap().finish().is_err());
    }

    #[test]
    fn overlay_prefers_the_later_source() {
        let file = parse_config("seed = 1\nn = 64").unwrap();
        let mut flags = PartialConfig::default();
        flags.set("seed", "9").unwrap();
        let cfg = file.overlay(flags).finish().unwrap();
        assert_eq!((cfg.seed, cfg.n), (9, Some(64)));
    }

    #[test]
    fn validation() {
        let mut c = PartialConfig::default();
        assert!(c.set("dim", "4").is_err());
        assert!(c.set("tol", "-1").is_err());
        assert!(c.set("trials", "0").is_err());
        assert!(c.set("suite", "nope").is_err());
        assert!(c.set("n", "64").is_ok());
    }
}
