use std::fmt::Write as _;
use std::path::Path;

use serde_json::json;

use crate::analysis::ThetaSweepRow;
use crate::engine::MetricsSeries;
use crate::error::Result;

use super::config::OutputFormat;
use super::report::Outcome;

pub const SERIES_HEADER: &str = "step,p_right,p_left,p_origin,margin";
pub const SWEEP_HEADER: &str = "theta,concurrence,margin_xy,margin_const";

/// `%.{digits}g`-style formatting, independent of locale. Zero of either
/// sign prints as `0`.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn g(x: f64) -> String {
    format_sig(x, 12)
}

/// One row per step, `step` counting from 1.
pub fn series_csv(series: &MetricsSeries) -> String {
    let mut out = String::with_capacity(64 * (series.len() + 1));
    out.push_str(SERIES_HEADER);
    out.push('\n');
    for (i, m) in series.rows.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            i + 1,
            g(m.p_right),
            g(m.p_left),
            g(m.p_origin),
            g(m.margin)
        );
    }
    out
}

pub fn sweep_csv(rows: &[ThetaSweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", g(r.theta), g(r.concurrence), g(r.margin_xy), g(r.margin_const));
    }
    out
}

fn render(outcome: &Outcome, format: OutputFormat) -> Result<String> {
    Ok(match (outcome, format) {
        (Outcome::Walk { series, .. }, OutputFormat::Csv) => series_csv(series),
        (Outcome::Sweep { rows, .. }, OutputFormat::Csv) => sweep_csv(rows),
        (Outcome::Walk { report, series }, OutputFormat::Json) => {
            let rows: Vec<_> = series
                .rows
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    json!({
                        "step": i + 1,
                        "p_right": m.p_right,
                        "p_left": m.p_left,
                        "p_origin": m.p_origin,
                        "margin": m.margin,
                    })
                })
                .collect();
            let doc = json!({ "report": report, "descriptor": series.descriptor, "series": rows });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        (Outcome::Sweep { spec, rows }, OutputFormat::Json) => {
            let doc = json!({
                "grid": spec.grid,
                "steps": spec.steps,
                "window": spec.window,
                "rows": rows,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    })
}

/// Renders the outcome and writes it to `out`, or returns it when `out` is
/// `None` so the caller can print it.
pub fn write_outcome(outcome: &Outcome, format: OutputFormat, out: Option<&Path>) -> Result<Option<String>> {
    let text = render(outcome, format)?;
    match out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, text)?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(-0.0, 12), "0");
        assert_eq!(format_sig(1.0, 12), "1");
        assert_eq!(format_sig(0.5, 12), "0.5");
        assert_eq!(format_sig(-0.227621, 12), "-0.227621");
        assert_eq!(format_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_sig(2.0 / 3.0, 12), "0.666666666667");
        assert_eq!(format_sig(123.456, 12), "123.456");
        assert_eq!(format_sig(1.5e-7, 12), "1.5e-07");
        assert_eq!(format_sig(-2.220446049250313e-16, 12), "-2.22044604925e-16");
        assert_eq!(format_sig(1e12, 12), "1e+12");
        assert_eq!(format_sig(0.0001, 12), "0.0001");
        assert_eq!(format_sig(0.99999999999999, 12), "1");
    }
}
