//! Line-oriented fibre configuration files.
//!
//! ```text
//! # one fibre per line
//! II  a=3
//! IV  a=3/2 b=0.5
//! VII a=1 b=1 c=1
//! ```
//!
//! A line is a type token (`I` .. `VII`) followed by `key=value` pairs with
//! keys `a`, `b`, `c`; values are positive integers, fractions `p/q` or
//! finite decimals. `#` starts a comment and blank lines are ignored.

use std::fmt;

use genus2_bogomolov::genus2_catalog::{FiberSpec, FiberType};
use genus2_bogomolov::Rational;
use num::{BigInt, Signed, Zero};

const KEYS: [&str; 3] = ["a", "b", "c"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigEntry {
    /// 1-based line number in the source text.
    pub line: usize,
    pub spec: FiberSpec,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigFile {
    pub entries: Vec<ConfigEntry>,
}

impl ConfigFile {
    pub fn specs(&self) -> Vec<FiberSpec> {
        self.entries.iter().map(|e| e.spec.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LineError {
    #[error("unknown fibre type `{0}` (expected one of I, II, III, IV, V, VI, VII)")]
    UnknownType(String),
    #[error("type {kind} requires parameter {key}")]
    MissingParameter { kind: FiberType, key: &'static str },
    #[error("type {kind} does not take parameter {key}")]
    ExtraParameter { kind: FiberType, key: String },
    #[error("parameter {0} given twice")]
    DuplicateParameter(String),
    #[error("expected key=value, found `{0}`")]
    NotAPair(String),
    #[error("parameter {key}: {reason}")]
    BadValue { key: String, reason: ValueError },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValueError {
    #[error("`{0}` is not an integer, fraction p/q or finite decimal")]
    Malformed(String),
    #[error("`{0}` has a zero denominator")]
    ZeroDenominator(String),
    #[error("value {0} is not positive")]
    Nonpositive(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub error: LineError,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.error)
    }
}

/// Every diagnostic of a rejected file.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ConfigError(pub Vec<Diagnostic>);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        f.write_str(&lines.join("\n"))
    }
}

pub fn parse_config(text: &str) -> Result<ConfigFile, ConfigError> {
    let mut entries = Vec::new();
    let mut diagnostics = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match parse_line(content) {
            Ok(spec) => entries.push(ConfigEntry { line, spec }),
            Err(error) => diagnostics.push(Diagnostic { line, error }),
        }
    }
    if diagnostics.is_empty() {
        Ok(ConfigFile { entries })
    } else {
        Err(ConfigError(diagnostics))
    }
}

fn parse_line(content: &str) -> Result<FiberSpec, LineError> {
    let mut tokens = content.split_whitespace();
    let head = tokens.next().expect("nonempty line");
    let kind: FiberType = head.parse().map_err(|_| LineError::UnknownType(head.to_string()))?;
    let mut pairs: Vec<(&str, &str)> = Vec::new();
    for token in tokens {
        let (key, value) = token.split_once('=').ok_or_else(|| LineError::NotAPair(token.to_string()))?;
        if pairs.iter().any(|(k, _)| *k == key) {
            return Err(LineError::DuplicateParameter(key.to_string()));
        }
        pairs.push((key, value));
    }
    let required = &KEYS[..kind.arity()];
    if let Some(key) = required.iter().find(|k| !pairs.iter().any(|(p, _)| p == *k)) {
        return Err(LineError::MissingParameter { kind, key });
    }
    if let Some((key, _)) = pairs.iter().find(|(p, _)| !required.contains(p)) {
        return Err(LineError::ExtraParameter { kind, key: key.to_string() });
    }
    let mut lengths = Vec::with_capacity(kind.arity());
    for key in required {
        let (_, value) = pairs.iter().find(|(p, _)| p == key).expect("checked present");
        let parsed = parse_positive(value).map_err(|reason| LineError::BadValue { key: key.to_string(), reason })?;
        lengths.push(parsed);
    }
    Ok(FiberSpec::new(kind, lengths).expect("arity and sign checked above"))
}

/// Parses an integer, `p/q` or finite decimal, optionally signed, exactly.
pub fn parse_rational(text: &str) -> Result<Rational, ValueError> {
    let malformed = || ValueError::Malformed(text.to_string());
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((p, q)) = body.split_once('/') {
        if !digits(p) || !digits(q) {
            return Err(malformed());
        }
        let den: BigInt = q.parse().map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(ValueError::ZeroDenominator(text.to_string()));
        }
        Rational::new(p.parse().map_err(|_| malformed())?, den)
    } else if let Some((whole, frac)) = body.split_once('.') {
        if !(digits(whole) || whole.is_empty()) || !digits(frac) {
            return Err(malformed());
        }
        let num: BigInt = format!("{whole}{frac}").parse().map_err(|_| malformed())?;
        Rational::new(num, BigInt::from(10).pow(frac.len() as u32))
    } else if digits(body) {
        Rational::from_integer(body.parse().map_err(|_| malformed())?)
    } else {
        return Err(malformed());
    };
    Ok(if negative { -value } else { value })
}

pub fn parse_positive(text: &str) -> Result<Rational, ValueError> {
    let value = parse_rational(text)?;
    if value.is_positive() {
        Ok(value)
    } else {
        Err(ValueError::Nonpositive(value))
    }
}
