//! Run parameters.
//!
//! All quantities are dimensionless: mass and the speed of light are both 1,
//! so the photon energy `epsilon = ħω₀ / (m c²)` is the only physical input.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Photon energy used for the reference figures, in units of `m c²`.
pub const REFERENCE_EPSILON: f64 = 4e-6;
pub const DEFAULT_STEP_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;
pub const DEFAULT_SAMPLE_STRIDE: u64 = 1_000;

/// `{0.05, 0.10, …, 0.95, 0.99}`
pub fn default_velocity_targets() -> Vec<f64> {
    let mut targets: Vec<f64> = (1..=19).map(|k| f64::from(k) * 0.05).collect();
    targets.push(0.99);
    targets
}

/// How the leading `1 +` of the dilation bracket is read.
///
/// Starting from rest, `Literal` evaluates the bracket exactly as written, so
/// the first absorption already counts twice (`E₁ = 2ħω₀`). `FirstKickUndilated`
/// drops that duplicate so the first absorption delivers exactly one quantum.
/// The two differ by a single quantum and share every limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    Literal,
    #[default]
    FirstKickUndilated,
}

impl Convention {
    /// Value of the dilation sum for a particle at rest before any absorption.
    pub fn initial_dilation_sum(self) -> f64 {
        match self {
            Convention::Literal => 1.0,
            Convention::FirstKickUndilated => 0.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Literal => "literal",
            Convention::FirstKickUndilated => "first-kick-undilated",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "literal" => Ok(Convention::Literal),
            "first-kick-undilated" => Ok(Convention::FirstKickUndilated),
            other => Err(ConfigError::UnknownConvention(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("epsilon must lie in (0, 1), got {0}")]
    Epsilon(f64),
    #[error("step tolerance must lie in (0, 1), got {0}")]
    StepTolerance(f64),
    #[error("max_steps must be at least 1")]
    MaxSteps,
    #[error("sample stride must be at least 1")]
    SampleStride,
    #[error("velocity target {0} is outside (0, 1)")]
    TargetOutOfRange(f64),
    #[error("velocity targets must be strictly increasing ({previous} then {next})")]
    TargetsNotIncreasing { previous: f64, next: f64 },
    #[error("unknown convention `{0}` (expected `literal` or `first-kick-undilated`)")]
    UnknownConvention(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub epsilon: f64,
    pub convention: Convention,
    /// A run has converged once the next dilation increment `√(1 − u²)` drops
    /// below this value.
    pub step_tolerance: f64,
    pub max_steps: u64,
    /// Every `sample_stride`-th step is recorded.
    pub sample_stride: u64,
    /// The first step whose velocity reaches each target is always recorded.
    pub velocity_targets: Option<Vec<f64>>,
}

impl SimulationConfig {
    /// Defaults for everything but the photon energy.
    pub fn new(epsilon: f64) -> Self {
        Self {
            epsilon,
            convention: Convention::default(),
            step_tolerance: DEFAULT_STEP_TOLERANCE,
            max_steps: DEFAULT_MAX_STEPS,
            sample_stride: DEFAULT_SAMPLE_STRIDE,
            velocity_targets: Some(default_velocity_targets()),
        }
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn with_step_tolerance(mut self, tolerance: f64) -> Self {
        self.step_tolerance = tolerance;
        self
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn with_sample_stride(mut self, stride: u64) -> Self {
        self.sample_stride = stride;
        self
    }

    pub fn with_velocity_targets(mut self, targets: Option<Vec<f64>>) -> Self {
        self.velocity_targets = targets;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn targets(&self) -> &[f64] {
        self.velocity_targets.as_deref().unwrap_or(&[])
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        // Written as negated range checks so NaN is rejected too.
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(ConfigError::Epsilon(self.epsilon));
        }
        if !(self.step_tolerance > 0.0 && self.step_tolerance < 1.0) {
            return Err(ConfigError::StepTolerance(self.step_tolerance));
        }
        if self.max_steps == 0 {
            return Err(ConfigError::MaxSteps);
        }
        if self.sample_stride == 0 {
            return Err(ConfigError::SampleStride);
        }
        validate_targets(self.targets())
    }
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self::new(REFERENCE_EPSILON)
    }
}

pub fn validate_targets(targets: &[f64]) -> Result<(), ConfigError> {
    for &t in targets {
        if !(t > 0.0 && t < 1.0) {
            return Err(ConfigError::TargetOutOfRange(t));
        }
    }
    for pair in targets.windows(2) {
        if pair[1] <= pair[0] {
            return Err(ConfigError::TargetsNotIncreasing {
                previous: pair[0],
                next: pair[1],
            });
        }
    }
    Ok(())
}
