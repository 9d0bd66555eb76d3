use std::fmt::Write;

use genus2_bogomolov::bogomolov::{
    decimal, fiber_contribution, format_decimal, minimize_contribution_ratio, sqrt_decimal, summarize, BoundError,
    GlobalReport, Infimum, ScanCertificate,
};
use genus2_bogomolov::genus2_catalog::{e_discrete, e_from_green, CatalogError, FiberSpec, FiberType};
use genus2_bogomolov::Rational;
use num::ToPrimitive;

use crate::config::ConfigFile;
use crate::json::{self, JsonOracle};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReportOptions {
    /// Recompute every `e_y` with the Green solver and require exact agreement.
    pub verify_green: bool,
    /// Also cross-check `e_y` against the discretisation at this many subdivisions.
    pub oracle: Option<usize>,
    pub json: bool,
    pub scan: Option<(FiberType, usize)>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReportError {
    #[error("e_y mismatch for {spec} (line {line})\n- closed form:  e_y = {closed}\n+ Green solver: e_y = {green}")]
    Mismatch { line: usize, spec: FiberSpec, closed: Rational, green: Rational },
    #[error("{0}")]
    Catalog(#[from] CatalogError),
    #[error("{0}")]
    Scan(#[from] BoundError),
}

/// A finished report: the exact data plus its rendering.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub report: GlobalReport,
    pub oracle_deviation: Option<f64>,
    pub scan: Option<ScanCertificate>,
    pub output: String,
}

pub fn run_report(config: &ConfigFile, options: &ReportOptions) -> Result<Rendered, ReportError> {
    let fibers: Vec<_> = config.entries.iter().map(|entry| fiber_contribution(&entry.spec)).collect();

    if options.verify_green {
        for (entry, fiber) in config.entries.iter().zip(&fibers) {
            let green = e_from_green(&entry.spec)?;
            if green != fiber.e {
                return Err(ReportError::Mismatch {
                    line: entry.line,
                    spec: entry.spec.clone(),
                    closed: fiber.e.clone(),
                    green,
                });
            }
        }
    }

    let oracle_deviation = match options.oracle {
        Some(n) => {
            let mut worst: f64 = 0.0;
            for fiber in &fibers {
                let discrete = e_discrete(&fiber.spec, n)?;
                worst = worst.max((discrete - fiber.e.to_f64().unwrap_or(f64::NAN)).abs());
            }
            Some(worst)
        }
        None => None,
    };

    let scan = options.scan.map(|(kind, resolution)| minimize_contribution_ratio(kind, resolution)).transpose()?;
    let report = summarize(fibers);

    let output = if options.json {
        let oracle = options.oracle.map(|n| JsonOracle { subdivisions: n, max_deviation: oracle_deviation.unwrap_or(0.0) });
        json::to_string(&json::build(&report, options.verify_green.then_some(true), oracle, scan.as_ref()))
    } else {
        let mut out = render_text(&report);
        if options.verify_green {
            out.push_str("verify-green: every e_y matches the Green solver exactly\n");
        }
        if let (Some(n), Some(dev)) = (options.oracle, oracle_deviation) {
            let _ = writeln!(out, "oracle: max |e_discrete - e_exact| = {} at n = {n}", format_decimal(dev));
        }
        if let Some(s) = &scan {
            out.push('\n');
            out.push_str(&render_scan(s));
        }
        out
    };
    Ok(Rendered { report, oracle_deviation, scan, output })
}

/// `p/q`, or just `p` for integers.
pub fn exact(x: &Rational) -> String {
    x.to_string()
}

fn with_decimal(x: &Rational) -> String {
    if x.is_integer() {
        exact(x)
    } else {
        format!("{} ({})", exact(x), decimal(x))
    }
}

fn lengths_text(spec: &FiberSpec) -> String {
    if spec.lengths().is_empty() {
        return "-".to_string();
    }
    ["a", "b", "c"]
        .iter()
        .zip(spec.lengths())
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_text(report: &GlobalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<6} {:<5} {:<24} {:>10} {:>10} {:>12} {:>14}",
        "fibre", "type", "lengths", "delta", "d", "e", "contribution"
    );
    for (i, f) in report.fibers.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:<6} {:<5} {:<24} {:>10} {:>10} {:>12} {:>14}  ({})",
            i + 1,
            f.spec.kind(),
            lengths_text(&f.spec),
            exact(&f.delta),
            exact(&f.d),
            exact(&f.e),
            exact(&f.contribution),
            decimal(&f.contribution),
        );
    }
    out.push_str("\nsummary\n");
    let rows = [
        ("delta = sum delta_y", with_decimal(&report.delta)),
        ("omega^2", with_decimal(&report.omega2)),
        ("sum e_y", with_decimal(&report.sum_e)),
        ("omega_a^2 (admissible)", with_decimal(&report.omega2_admissible)),
        ("deg det f_* omega", with_decimal(&report.deg_det)),
        (
            "bound sqrt((g-1) omega_a^2)",
            format!("sqrt({}) = {}", exact(&report.bound_radicand), sqrt_decimal(&report.bound_radicand)),
        ),
        (
            "floor sqrt((2/135) delta)",
            format!("sqrt({}) = {}", exact(&report.floor_radicand), sqrt_decimal(&report.floor_radicand)),
        ),
    ];
    for (label, value) in rows {
        let _ = writeln!(out, "  {label:<30} {value}");
    }
    if report.is_equality() && report.warnings.is_empty() {
        out.push_str("  equality: the bound meets the 2/135 floor exactly\n");
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

fn point(p: &[Rational]) -> String {
    format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

pub fn render_scan(scan: &ScanCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "scan {} at resolution {} ({} exact evaluations, lengths summing to 1)",
        scan.kind, scan.resolution, scan.evaluations
    );
    let _ = writeln!(
        out,
        "  min contribution/delta = {} ({}) at {}",
        exact(&scan.minimum),
        decimal(&scan.minimum),
        point(&scan.argmin)
    );
    match &scan.infimum {
        Infimum::Attained => out.push_str("  infimum attained at the interior minimum\n"),
        Infimum::BoundaryLimit { value, at } => {
            let _ = writeln!(
                out,
                "  infimum {} ({}) approached at boundary point {}, not attained",
                exact(value),
                decimal(value),
                point(at)
            );
        }
    }
    let verdict = if scan.respects_floor() { "no grid value below 2/135" } else { "VALUE BELOW 2/135" };
    let _ = writeln!(out, "  floor check: {verdict}");
    out
}
