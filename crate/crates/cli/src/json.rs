//! Machine-readable reports.
//!
//! Every exact value is an object `{"num": n, "den": d}` with `d > 0` in lowest
//! terms. Integers that fit in an `i64` are JSON numbers; larger ones are
//! decimal strings so no precision is lost.

use std::collections::BTreeMap;

use genus2_bogomolov::bogomolov::{format_decimal, GlobalReport, Infimum, ScanCertificate};
use genus2_bogomolov::genus2_catalog::{FiberSpec, FiberType};
use genus2_bogomolov::Rational;
use num::{BigInt, ToPrimitive};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(small) => JsonInt::Small(small),
            None => JsonInt::Big(n.to_string()),
        }
    }
}

impl JsonInt {
    fn to_bigint(&self) -> Option<BigInt> {
        match self {
            JsonInt::Small(n) => Some(BigInt::from(*n)),
            JsonInt::Big(s) => s.parse().ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRational {
    pub num: JsonInt,
    pub den: JsonInt,
}

impl From<&Rational> for JsonRational {
    fn from(x: &Rational) -> Self {
        JsonRational { num: x.numer().into(), den: x.denom().into() }
    }
}

impl JsonRational {
    pub fn to_rational(&self) -> Result<Rational, JsonError> {
        let num = self.num.to_bigint().ok_or(JsonError::BadNumber)?;
        let den = self.den.to_bigint().ok_or(JsonError::BadNumber)?;
        if den == BigInt::from(0) {
            return Err(JsonError::BadNumber);
        }
        Ok(Rational::new(num, den))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonFiber {
    #[serde(rename = "type")]
    pub kind: String,
    pub lengths: BTreeMap<String, JsonRational>,
    pub delta: JsonRational,
    pub d: JsonRational,
    pub e: JsonRational,
    pub contribution: JsonRational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonSummary {
    pub delta: JsonRational,
    pub omega2: JsonRational,
    pub sum_e: JsonRational,
    pub omega2_admissible: JsonRational,
    pub deg_det: JsonRational,
    pub bound_radicand: JsonRational,
    pub floor_radicand: JsonRational,
    pub bound_decimal: String,
    pub floor_decimal: String,
    pub equality: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonOracle {
    pub subdivisions: usize,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonScan {
    #[serde(rename = "type")]
    pub kind: String,
    pub resolution: usize,
    pub evaluations: usize,
    pub minimum: JsonRational,
    pub argmin: Vec<JsonRational>,
    pub attained: bool,
    pub infimum: JsonRational,
    pub infimum_at: Vec<JsonRational>,
    pub respects_floor: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub fibers: Vec<JsonFiber>,
    pub summary: JsonSummary,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified_green: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<JsonOracle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<JsonScan>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("invalid JSON report: {0}")]
    Syntax(String),
    #[error("invalid exact number in JSON report")]
    BadNumber,
    #[error("fibre {index}: {reason}")]
    BadFiber { index: usize, reason: String },
}

const KEYS: [&str; 3] = ["a", "b", "c"];

pub fn fiber_lengths(spec: &FiberSpec) -> BTreeMap<String, JsonRational> {
    KEYS.iter().zip(spec.lengths()).map(|(k, v)| (k.to_string(), v.into())).collect()
}

pub fn build(report: &GlobalReport, verified: Option<bool>, oracle: Option<JsonOracle>, scan: Option<&ScanCertificate>) -> JsonReport {
    JsonReport {
        fibers: report
            .fibers
            .iter()
            .map(|f| JsonFiber {
                kind: f.spec.kind().to_string(),
                lengths: fiber_lengths(&f.spec),
                delta: (&f.delta).into(),
                d: (&f.d).into(),
                e: (&f.e).into(),
                contribution: (&f.contribution).into(),
            })
            .collect(),
        summary: JsonSummary {
            delta: (&report.delta).into(),
            omega2: (&report.omega2).into(),
            sum_e: (&report.sum_e).into(),
            omega2_admissible: (&report.omega2_admissible).into(),
            deg_det: (&report.deg_det).into(),
            bound_radicand: (&report.bound_radicand).into(),
            floor_radicand: (&report.floor_radicand).into(),
            bound_decimal: format_decimal(report.bound()),
            floor_decimal: format_decimal(report.floor()),
            equality: report.is_equality(),
        },
        warnings: report.warnings.iter().map(|w| w.to_string()).collect(),
        verified_green: verified,
        oracle,
        scan: scan.map(scan_json),
    }
}

pub fn scan_json(scan: &ScanCertificate) -> JsonScan {
    let (attained, infimum_at) = match &scan.infimum {
        Infimum::Attained => (true, scan.argmin.iter().map(Into::into).collect()),
        Infimum::BoundaryLimit { at, .. } => (false, at.iter().map(Into::into).collect()),
    };
    JsonScan {
        kind: scan.kind.to_string(),
        resolution: scan.resolution,
        evaluations: scan.evaluations,
        minimum: (&scan.minimum).into(),
        argmin: scan.argmin.iter().map(Into::into).collect(),
        attained,
        infimum: scan.infimum_value().into(),
        infimum_at,
        respects_floor: scan.respects_floor(),
    }
}

pub fn to_string(report: &JsonReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialises");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<JsonReport, JsonError> {
    serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))
}

/// The fibre list a report was computed from.
pub fn specs(report: &JsonReport) -> Result<Vec<FiberSpec>, JsonError> {
    report
        .fibers
        .iter()
        .enumerate()
        .map(|(index, f)| {
            let bad = |reason: String| JsonError::BadFiber { index, reason };
            let kind: FiberType = f.kind.parse().map_err(|e: genus2_bogomolov::genus2_catalog::SpecError| bad(e.to_string()))?;
            if let Some(extra) = f.lengths.keys().find(|k| !KEYS[..kind.arity()].contains(&k.as_str())) {
                return Err(bad(format!("unexpected length `{extra}`")));
            }
            let lengths = KEYS[..kind.arity()]
                .iter()
                .map(|k| f.lengths.get(*k).ok_or_else(|| bad(format!("missing length `{k}`")))?.to_rational())
                .collect::<Result<Vec<_>, _>>()?;
            FiberSpec::new(kind, lengths).map_err(|e| bad(e.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use genus2_bogomolov::{int, rat};
    use num::One;

    #[test]
    fn big_integers_become_strings() {
        let huge = Rational::new(BigInt::from(10).pow(30), BigInt::one());
        let j = JsonRational::from(&huge);
        assert!(matches!(j.num, JsonInt::Big(_)));
        assert_eq!(j.to_rational().unwrap(), huge);
        assert_eq!(serde_json::to_string(&JsonRational::from(&rat(-2, 4))).unwrap(), r#"{"num":-1,"den":2}"#);
        let parsed: JsonRational = serde_json::from_str(r#"{"num":"3","den":6}"#).unwrap();
        assert_eq!(parsed.to_rational().unwrap(), rat(1, 2));
        let zero_den: JsonRational = serde_json::from_str(r#"{"num":1,"den":0}"#).unwrap();
        assert_eq!(zero_den.to_rational(), Err(JsonError::BadNumber));
        assert_eq!(JsonRational::from(&int(5)).den, JsonInt::Small(1));
    }
}
