//! Full runs and parameter sweeps.

use rayon::prelude::*;
use thiserror::Error;

use crate::config::{ConfigError, Convention, SimulationConfig};
use crate::kinematics::{step, ComparisonRow, KinematicsError, ParticleState};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The next dilation increment fell below the step tolerance.
    Tolerance,
    /// The next absorption would have reached `u = 1`.
    FixedPoint,
    /// `max_steps` absorptions were taken first.
    StepCap,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Tolerance => "tolerance",
            StopReason::FixedPoint => "fixed-point",
            StopReason::StepCap => "step-cap",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub converged: bool,
    pub stop_reason: StopReason,
    pub steps_taken: u64,
    pub final_u: f64,
    pub final_kinetic: f64,
    pub final_dilation_sum: f64,
    pub convention: Convention,
    pub epsilon: f64,
}

impl RunSummary {
    fn from_state(
        state: &ParticleState,
        stop_reason: StopReason,
        config: &SimulationConfig,
    ) -> Self {
        Self {
            converged: stop_reason != StopReason::StepCap,
            stop_reason,
            steps_taken: state.n(),
            final_u: state.u(),
            final_kinetic: state.kinetic_energy(),
            final_dilation_sum: state.dilation_sum(),
            convention: config.convention,
            epsilon: config.epsilon,
        }
    }

    /// `|ε·S − 1|`, the distance of the final state from the fixed point.
    pub fn fixed_point_residual(&self) -> f64 {
        (self.epsilon * self.final_dilation_sum - 1.0).abs()
    }
}

/// What the driver hands the recorder after each accepted step.
struct StepEvent<'a> {
    state: &'a ParticleState,
    u_prev: f64,
    crossed_target: bool,
}

enum Flow {
    Continue,
    Stop,
}

/// Steps from rest until the stopping rule fires or `record` asks to stop.
/// Returns the last accepted state, the state before it, and the reason.
fn drive<F>(
    config: &SimulationConfig,
    mut record: F,
) -> Result<(ParticleState, f64, Option<StopReason>), RunError>
where
    F: FnMut(StepEvent<'_>) -> Result<Flow, KinematicsError>,
{
    config.validate()?;
    let targets = config.targets();
    let mut next_target = 0;
    let mut state = ParticleState::at_rest(config);
    let mut u_prev = 0.0;

    let reason = loop {
        if state.next_increment()? < config.step_tolerance {
            break Some(StopReason::Tolerance);
        }
        if state.n() >= config.max_steps {
            break Some(StopReason::StepCap);
        }
        let next = match step(&state, config) {
            Ok(next) => next,
            Err(KinematicsError::LimitCrossed { .. }) => break Some(StopReason::FixedPoint),
            Err(e) => return Err(e.into()),
        };
        let mut crossed_target = false;
        while next_target < targets.len() && next.u() >= targets[next_target] {
            crossed_target = true;
            next_target += 1;
        }
        u_prev = state.u();
        state = next;
        let flow = record(StepEvent {
            state: &state,
            u_prev,
            crossed_target,
        })?;
        if let Flow::Stop = flow {
            break None;
        }
    };
    Ok((state, u_prev, reason))
}

/// Runs from rest until the stopping rule fires.
///
/// Rows are kept for every `sample_stride`-th step, for the first step at or
/// above each velocity target, and for the final accepted step. Memory stays
/// proportional to the number of samples, not the number of steps.
pub fn run_to_convergence(
    config: &SimulationConfig,
) -> Result<(RunSummary, Vec<ComparisonRow>), RunError> {
    let mut rows = Vec::new();
    let stride = config.sample_stride;
    let eps = config.epsilon;
    let (state, u_prev, reason) = drive(config, |ev| {
        if ev.crossed_target || ev.state.n() % stride == 0 {
            rows.push(ComparisonRow::from_step(
                ev.state.n(),
                ev.state.u(),
                ev.u_prev,
                eps,
            )?);
        }
        Ok(Flow::Continue)
    })?;
    let reason = reason.expect("run recorder never stops early");
    if state.n() > 0 && rows.last().map(|r| r.n) != Some(state.n()) {
        rows.push(ComparisonRow::from_step(state.n(), state.u(), u_prev, eps)?);
    }
    Ok((RunSummary::from_state(&state, reason, config), rows))
}

/// Records only the first step at or above each velocity target, stopping as
/// soon as the last target has been reached.
///
/// One step may cross several targets at coarse `ε`; it is recorded once.
/// Degenerate rows stay in the output with `degenerate` set.
pub fn compare_models(config: &SimulationConfig) -> Result<Vec<ComparisonRow>, RunError> {
    let mut rows = Vec::new();
    let eps = config.epsilon;
    let last_target = config.targets().last().copied();
    let Some(last_target) = last_target else {
        return Ok(rows);
    };
    drive(config, |ev| {
        if !ev.crossed_target {
            return Ok(Flow::Continue);
        }
        rows.push(ComparisonRow::from_step(
            ev.state.n(),
            ev.state.u(),
            ev.u_prev,
            eps,
        )?);
        if ev.state.u() >= last_target {
            Ok(Flow::Stop)
        } else {
            Ok(Flow::Continue)
        }
    })?;
    Ok(rows)
}

/// `|α − γ|` over the non-degenerate rows that carry an α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationStats {
    pub max_abs: f64,
    pub mean_abs: f64,
    pub samples: usize,
    pub degenerate: usize,
}

impl DeviationStats {
    pub fn from_rows(rows: &[ComparisonRow]) -> Option<Self> {
        let degenerate = rows.iter().filter(|r| r.degenerate).count();
        let deviations: Vec<f64> = rows
            .iter()
            .filter_map(|r| r.alpha_gamma_deviation())
            .collect();
        if deviations.is_empty() {
            return None;
        }
        let max_abs = deviations.iter().copied().fold(0.0, f64::max);
        let mean_abs = deviations.iter().sum::<f64>() / deviations.len() as f64;
        Some(Self {
            max_abs,
            mean_abs,
            samples: deviations.len(),
            degenerate,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub epsilon: f64,
    /// `None` when the entry failed.
    pub max_abs_deviation: Option<f64>,
    pub mean_abs_deviation: Option<f64>,
    pub sample_count: usize,
    pub degenerate_count: usize,
    pub failure: Option<String>,
}

impl SweepResult {
    pub fn is_failed(&self) -> bool {
        self.failure.is_some()
    }

    fn failed(epsilon: f64, reason: String) -> Self {
        Self {
            epsilon,
            max_abs_deviation: None,
            mean_abs_deviation: None,
            sample_count: 0,
            degenerate_count: 0,
            failure: Some(reason),
        }
    }

    fn from_rows(epsilon: f64, rows: &[ComparisonRow]) -> Self {
        match DeviationStats::from_rows(rows) {
            Some(stats) => Self {
                epsilon,
                max_abs_deviation: Some(stats.max_abs),
                mean_abs_deviation: Some(stats.mean_abs),
                sample_count: stats.samples,
                degenerate_count: stats.degenerate,
                failure: None,
            },
            None => Self::failed(epsilon, "no non-degenerate samples".to_string()),
        }
    }
}

/// α–γ deviation for each photon energy, in input order.
///
/// Entries run in parallel. A failing entry is reported in place and does not
/// abort the others.
pub fn sweep_epsilon(epsilons: &[f64], base: &SimulationConfig) -> Vec<SweepResult> {
    epsilons
        .par_iter()
        .map(|&eps| {
            let config = base.clone().with_epsilon(eps);
            match compare_models(&config) {
                Ok(rows) => SweepResult::from_rows(eps, &rows),
                Err(e) => SweepResult::failed(eps, e.to_string()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_epsilon_converges_within_ten_steps() {
        for convention in [Convention::FirstKickUndilated, Convention::Literal] {
            let cfg = SimulationConfig::new(0.25)
                .with_convention(convention)
                .with_sample_stride(1);
            let (summary, rows) = run_to_convergence(&cfg).unwrap();
            assert!(summary.converged);
            assert_eq!(summary.stop_reason, StopReason::FixedPoint);
            assert!(summary.steps_taken <= 10, "{summary:?}");
            assert!(summary.final_kinetic <= 0.5);
            assert_eq!(rows.len() as u64, summary.steps_taken);
        }
    }

    #[test]
    fn single_step_cap_is_not_converged() {
        for eps in [0.25, 0.01, 4e-6] {
            let cfg = SimulationConfig::new(eps).with_max_steps(1);
            let (summary, rows) = run_to_convergence(&cfg).unwrap();
            assert!(!summary.converged);
            assert_eq!(summary.stop_reason, StopReason::StepCap);
            assert_eq!(summary.steps_taken, 1);
            assert_eq!(rows.len(), 1);
        }
    }

    #[test]
    fn literal_first_kick_past_light_speed_stops_at_rest() {
        // Under the literal reading the first kick already carries 2ε.
        let cfg = SimulationConfig::new(0.6).with_convention(Convention::Literal);
        let (summary, rows) = run_to_convergence(&cfg).unwrap();
        assert!(summary.converged);
        assert_eq!(summary.steps_taken, 0);
        assert!(rows.is_empty());
    }

    #[test]
    fn invalid_config_is_rejected_before_stepping() {
        let cfg = SimulationConfig::new(2.0);
        assert!(matches!(run_to_convergence(&cfg), Err(RunError::Config(_))));
        assert!(matches!(compare_models(&cfg), Err(RunError::Config(_))));
    }

    #[test]
    fn compare_without_targets_is_empty() {
        let cfg = SimulationConfig::new(0.01).with_velocity_targets(None);
        assert!(compare_models(&cfg).unwrap().is_empty());
    }

    #[test]
    fn coarse_compare_records_each_crossing_once() {
        let cfg = SimulationConfig::new(0.25);
        let rows = compare_models(&cfg).unwrap();
        let mut ns: Vec<u64> = rows.iter().map(|r| r.n).collect();
        ns.dedup();
        assert_eq!(ns.len(), rows.len());
        assert!(rows.len() < 20);
    }

    #[test]
    fn deviation_stats_skip_degenerate_rows() {
        let mut a = ComparisonRow::from_step(10, 0.5, 0.49, 0.01).unwrap();
        a.alpha = Some(a.gamma + 0.25);
        let b = ComparisonRow::from_step(11, 0.6, 0.6, 0.01).unwrap();
        let stats = DeviationStats::from_rows(&[a, b]).unwrap();
        assert_eq!(stats.samples, 1);
        assert_eq!(stats.degenerate, 1);
        assert!((stats.max_abs - 0.25).abs() < 1e-15);
        assert_eq!(DeviationStats::from_rows(&[b]), None);
    }

    #[test]
    fn sweep_marks_empty_and_invalid_entries_failed() {
        let base = SimulationConfig::new(4e-6).with_max_steps(1);
        let results = sweep_epsilon(&[4e-6], &base);
        assert!(results[0].is_failed());
        assert_eq!(results[0].max_abs_deviation, None);

        let base = SimulationConfig::new(0.01);
        let results = sweep_epsilon(&[0.01, 1.5, 0.02], &base);
        assert!(!results[0].is_failed());
        assert!(results[1].is_failed());
        assert!(!results[2].is_failed());
        assert_eq!(results[1].epsilon, 1.5);
    }
}
