//! On-disk formats.
//!
//! Floats are written in fixed 17-significant-digit scientific notation with a
//! signed, at-least-two-digit exponent (`1.2500000000000000e+00`), so any two
//! implementations that agree bit-for-bit produce byte-identical files.
//! Lines end in LF.

use std::io::{BufRead, Write};

use photon_kick_core::{ComparisonRow, SweepResult};

use crate::error::CliError;

pub const ROW_HEADER: &str = "n,u_r,u_c,energy_interaction,energy_str,alpha,gamma,degenerate";
pub const SWEEP_HEADER: &str =
    "epsilon,max_abs_deviation,mean_abs_deviation,sample_count,degenerate_count,status";

pub fn format_float(value: f64) -> String {
    let raw = format!("{value:.16e}");
    let (mantissa, exponent) = raw
        .split_once('e')
        .expect("scientific formatting always has an exponent");
    let exponent: i32 = exponent.parse().expect("exponent is an integer");
    let sign = if exponent < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exponent.unsigned_abs())
}

fn finite(value: f64, what: &str) -> Result<String, CliError> {
    if value.is_finite() {
        Ok(format_float(value))
    } else {
        Err(CliError::io(
            "csv output",
            std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                format!("non-finite {what}: {value}"),
            ),
        ))
    }
}

pub fn format_row(row: &ComparisonRow) -> Result<String, CliError> {
    let alpha = match row.alpha {
        Some(a) => finite(a, "alpha")?,
        None => String::new(),
    };
    Ok(format!(
        "{},{},{},{},{},{},{},{}",
        row.n,
        finite(row.u_r, "u_r")?,
        finite(row.u_c, "u_c")?,
        finite(row.energy_interaction, "energy_interaction")?,
        finite(row.energy_str, "energy_str")?,
        alpha,
        finite(row.gamma, "gamma")?,
        u8::from(row.degenerate),
    ))
}

/// Writes the header and one line per row.
pub fn emit_csv<W: Write>(rows: &[ComparisonRow], out: &mut W) -> Result<(), CliError> {
    let io_err = |e| CliError::io("csv output", e);
    writeln!(out, "{ROW_HEADER}").map_err(io_err)?;
    for row in rows {
        writeln!(out, "{}", format_row(row)?).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

/// Reads a file produced by [`emit_csv`]. The header must match exactly.
pub fn parse_csv<R: BufRead>(input: R) -> Result<Vec<ComparisonRow>, CliError> {
    let mut lines = input.lines().enumerate();
    let header = match lines.next() {
        Some((_, line)) => line.map_err(|e| CliError::io("csv input", e))?,
        None => return Err(format_error(1, "missing header")),
    };
    if header != ROW_HEADER {
        return Err(format_error(1, format!("unexpected header `{header}`")));
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line = line.map_err(|e| CliError::io("csv input", e))?;
        rows.push(parse_row(&line).map_err(|reason| format_error(idx + 1, reason))?);
    }
    Ok(rows)
}

fn format_error(line: usize, reason: impl Into<String>) -> CliError {
    CliError::Format {
        line,
        reason: reason.into(),
    }
}

fn parse_row(line: &str) -> Result<ComparisonRow, String> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 8 {
        return Err(format!("expected 8 fields, found {}", fields.len()));
    }
    let float = |i: usize| -> Result<f64, String> {
        fields[i]
            .parse::<f64>()
            .map_err(|e| format!("field {}: {e}", i + 1))
    };
    let n = fields[0]
        .parse::<u64>()
        .map_err(|e| format!("field 1: {e}"))?;
    let alpha = if fields[5].is_empty() {
        None
    } else {
        Some(float(5)?)
    };
    let degenerate = match fields[7] {
        "0" => false,
        "1" => true,
        other => return Err(format!("degenerate flag must be 0 or 1, got `{other}`")),
    };
    Ok(ComparisonRow {
        n,
        u_r: float(1)?,
        u_c: float(2)?,
        energy_interaction: float(3)?,
        energy_str: float(4)?,
        alpha,
        gamma: float(6)?,
        degenerate,
    })
}

pub fn emit_sweep_csv<W: Write>(results: &[SweepResult], out: &mut W) -> Result<(), CliError> {
    let io_err = |e| CliError::io("csv output", e);
    let optional = |v: Option<f64>| v.map(format_float).unwrap_or_default();
    writeln!(out, "{SWEEP_HEADER}").map_err(io_err)?;
    for r in results {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_float(r.epsilon),
            optional(r.max_abs_deviation),
            optional(r.mean_abs_deviation),
            r.sample_count,
            r.degenerate_count,
            if r.is_failed() { "failed" } else { "ok" },
        )
        .map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_fixed_width_scientific() {
        assert_eq!(format_float(0.0), "0.0000000000000000e+00");
        assert_eq!(format_float(1.25), "1.2500000000000000e+00");
        // Matches C / Python `%.16e`.
        assert_eq!(format_float(4e-6), "3.9999999999999998e-06");
        assert_eq!(format_float(-123.0), "-1.2300000000000000e+02");
        assert_eq!(format_float(1e300), "1.0000000000000001e+300");
    }

    #[test]
    fn formatted_floats_round_trip() {
        for v in [
            0.1,
            1.0 / 3.0,
            7.088_812_050_083_354,
            f64::MIN_POSITIVE,
            5e-324,
        ] {
            assert_eq!(
                format_float(v).parse::<f64>().unwrap().to_bits(),
                v.to_bits()
            );
        }
    }

    #[test]
    fn empty_rows_write_header_only() {
        let mut buf = Vec::new();
        emit_csv(&[], &mut buf).unwrap();
        assert_eq!(buf, format!("{ROW_HEADER}\n").into_bytes());
    }

    #[test]
    fn rest_row_leaves_alpha_empty() {
        let line = format_row(&ComparisonRow::at_rest()).unwrap();
        let zero = format_float(0.0);
        let one = format_float(1.0);
        assert_eq!(line, format!("0,{zero},{zero},{one},{one},,{one},0"));
    }

    #[test]
    fn rejects_unknown_header_and_bad_fields() {
        let bad_header = format!("{ROW_HEADER},extra\n");
        assert!(parse_csv(bad_header.as_bytes()).is_err());
        let bad_flag = format!("{ROW_HEADER}\n0,0,0,1,1,,1,2\n");
        assert!(matches!(
            parse_csv(bad_flag.as_bytes()),
            Err(CliError::Format { line: 2, .. })
        ));
        assert!(parse_csv(&b""[..]).is_err());
    }

    #[test]
    fn non_finite_values_are_refused() {
        let mut row = ComparisonRow::at_rest();
        row.gamma = f64::INFINITY;
        assert!(emit_csv(&[row], &mut Vec::new()).is_err());
    }

    #[test]
    fn sweep_csv_marks_failures() {
        let ok = SweepResult {
            epsilon: 4e-6,
            max_abs_deviation: Some(1e-4),
            mean_abs_deviation: Some(2e-5),
            sample_count: 20,
            degenerate_count: 0,
            failure: None,
        };
        let failed = SweepResult {
            epsilon: 0.5,
            max_abs_deviation: None,
            mean_abs_deviation: None,
            sample_count: 0,
            degenerate_count: 0,
            failure: Some("no samples".into()),
        };
        let mut buf = Vec::new();
        emit_sweep_csv(&[ok, failed], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], SWEEP_HEADER);
        assert!(lines[1].ends_with(",20,0,ok"));
        assert_eq!(lines[2], "5.0000000000000000e-01,,,0,0,failed");
    }
}
