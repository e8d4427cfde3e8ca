use std::io::Write;

use photon_kick_core::{DeviationStats, RunSummary};

use crate::csv::format_float;
use crate::error::{CliError, EXIT_NOT_CONVERGED, EXIT_OK};

/// Writes `key=value` lines for a finished run and returns the exit code it
/// implies: 0 when converged, 1 otherwise.
pub fn emit_summary<W: Write>(summary: &RunSummary, out: &mut W) -> Result<u8, CliError> {
    let lines = [
        ("converged", summary.converged.to_string()),
        ("stop", summary.stop_reason.as_str().to_string()),
        ("steps", summary.steps_taken.to_string()),
        ("epsilon", format_float(summary.epsilon)),
        ("final_u", format_float(summary.final_u)),
        ("final_kinetic", format_float(summary.final_kinetic)),
        ("final_sum", format_float(summary.final_dilation_sum)),
        ("convention", summary.convention.to_string()),
    ];
    write_pairs(&lines, out)?;
    Ok(if summary.converged {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    })
}

pub fn emit_deviation<W: Write>(
    epsilon: f64,
    targets: usize,
    stats: Option<&DeviationStats>,
    out: &mut W,
) -> Result<(), CliError> {
    let optional = |v: Option<f64>| v.map(format_float).unwrap_or_default();
    let lines = [
        ("epsilon", format_float(epsilon)),
        ("targets", targets.to_string()),
        ("samples", stats.map_or(0, |s| s.samples).to_string()),
        ("degenerate", stats.map_or(0, |s| s.degenerate).to_string()),
        ("max_abs_deviation", optional(stats.map(|s| s.max_abs))),
        ("mean_abs_deviation", optional(stats.map(|s| s.mean_abs))),
    ];
    write_pairs(&lines, out)
}

fn write_pairs<W: Write>(pairs: &[(&str, String)], out: &mut W) -> Result<(), CliError> {
    let io_err = |e| CliError::io("summary output", e);
    for (key, value) in pairs {
        writeln!(out, "{key}={value}").map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}
