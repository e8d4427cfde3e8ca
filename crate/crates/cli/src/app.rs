//! Executes a parsed invocation.

use std::fs::File;
use std::io::{BufWriter, Write};

use photon_kick_core::{compare_models, run_to_convergence, sweep_epsilon, DeviationStats};

use crate::args::{CliInvocation, Subcommand};
use crate::csv::{emit_csv, emit_sweep_csv};
use crate::error::{CliError, EXIT_NOT_CONVERGED, EXIT_OK};
use crate::summary::{emit_deviation, emit_summary};

/// Runs `inv`, writing CSV to `--out` (or `stdout`) and the key=value summary
/// to `stdout` (or `stderr` when the CSV already occupies `stdout`).
pub fn execute(
    inv: &CliInvocation,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<u8, CliError> {
    let mut file = match &inv.out {
        Some(path) => Some(BufWriter::new(
            File::create(path).map_err(|e| CliError::io_at(path, e))?,
        )),
        None => None,
    };
    let (csv_out, report): (&mut dyn Write, &mut dyn Write) = match file.as_mut() {
        Some(f) => (f, stdout),
        None => (stdout, stderr),
    };

    match inv.subcommand {
        Subcommand::Run => {
            let (summary, rows) = run_to_convergence(&inv.config)?;
            emit_csv(&rows, &mut WriteRef(csv_out))?;
            emit_summary(&summary, &mut WriteRef(report))
        }
        Subcommand::Compare => {
            let rows = compare_models(&inv.config)?;
            emit_csv(&rows, &mut WriteRef(csv_out))?;
            let stats = DeviationStats::from_rows(&rows);
            let targets = inv.config.targets().len();
            emit_deviation(
                inv.config.epsilon,
                targets,
                stats.as_ref(),
                &mut WriteRef(report),
            )?;
            let reached_all = rows
                .last()
                .is_some_and(|r| inv.config.targets().last().is_some_and(|&t| r.u_r >= t));
            Ok(if reached_all && stats.is_some() {
                EXIT_OK
            } else {
                EXIT_NOT_CONVERGED
            })
        }
        Subcommand::Sweep => {
            let results = sweep_epsilon(&inv.epsilons, &inv.config);
            emit_sweep_csv(&results, &mut WriteRef(csv_out))?;
            for r in results.iter().filter(|r| r.is_failed()) {
                let reason = r.failure.as_deref().unwrap_or_default();
                writeln!(report, "failed epsilon={}: {reason}", r.epsilon)
                    .map_err(|e| CliError::io("summary output", e))?;
            }
            Ok(if results.iter().any(|r| r.is_failed()) {
                EXIT_NOT_CONVERGED
            } else {
                EXIT_OK
            })
        }
    }
}

/// Adapts `&mut dyn Write` to the sized `W: Write` the emitters take.
struct WriteRef<'a>(&'a mut dyn Write);

impl Write for WriteRef<'_> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        self.0.write(buf)
    }

    fn flush(&mut self) -> std::io::Result<()> {
        self.0.flush()
    }
}
