//! Per-step physics of the photon-absorption model.
//!
//! A particle starts at rest and absorbs photons of energy `ε` one at a time.
//! Each absorption is diminished by the time-dilation factor `√(1 − u²)` of the
//! particle's own frame, and the interaction-model energy closes as `u² = ε·S`,
//! where `S` is the running dilation sum. Classical (undilated) counterparts
//! and the resulting virtual-inertia factor α are compared against the Lorentz
//! factor γ.

use thiserror::Error;

use crate::compensated::CompensatedSum;
use crate::config::SimulationConfig;

/// Radicands `1 − u²` down to this negative value are treated as zero.
pub const RADICAND_SLACK: f64 = 1e-12;

/// Velocity increments below this are indistinguishable from rounding noise
/// for `u` of order one, so α is not evaluated there.
pub const DEGENERATE_INCREMENT: f64 = 1e3 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum KinematicsError {
    #[error("1 - u² = {radicand:e} is negative beyond rounding slack")]
    NegativeRadicand { radicand: f64 },
    #[error("velocity {u} is outside [0, 1)")]
    VelocityOutOfRange { u: f64 },
    #[error("step cap of {max_steps} absorptions reached")]
    CapReached { max_steps: u64 },
    #[error("absorption {n} would carry the particle to or past the speed of light")]
    LimitCrossed { n: u64 },
    #[error("velocity decreased from {u_prev} to {u_n}")]
    NonMonotone { u_n: f64, u_prev: f64 },
    #[error("velocity increment {increment:e} is below the rounding floor")]
    DegenerateStep { increment: f64 },
    #[error("alpha is undefined before the first absorption")]
    UndefinedAtRest,
}

/// Particle after `n` absorptions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleState {
    n: u64,
    dilation_sum: CompensatedSum,
    u: f64,
    interaction_energy: f64,
}

impl ParticleState {
    /// Particle at rest, before the first absorption.
    pub fn at_rest(config: &SimulationConfig) -> Self {
        let sum = config.convention.initial_dilation_sum();
        Self {
            n: 0,
            dilation_sum: CompensatedSum::new(sum),
            u: 0.0,
            interaction_energy: config.epsilon * sum,
        }
    }

    /// Rebuilds a state from its step count and dilation sum, with the
    /// velocity recovered from the energy closure `u² = ε·S`.
    pub fn from_parts(n: u64, dilation_sum: f64, epsilon: f64) -> Self {
        Self::closed(n, CompensatedSum::new(dilation_sum), epsilon)
    }

    fn closed(n: u64, dilation_sum: CompensatedSum, epsilon: f64) -> Self {
        let energy = epsilon * dilation_sum.value();
        Self {
            n,
            dilation_sum,
            u: energy.sqrt(),
            interaction_energy: energy,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn dilation_sum(&self) -> f64 {
        self.dilation_sum.value()
    }

    /// `ε·S`, in units of `m c²`.
    pub fn interaction_energy(&self) -> f64 {
        self.interaction_energy
    }

    /// `u²/2`, in units of `m c²`.
    pub fn kinetic_energy(&self) -> f64 {
        0.5 * self.u * self.u
    }

    pub fn radicand(&self) -> f64 {
        1.0 - self.u * self.u
    }

    /// Dilation factor `√(1 − u²)` the next absorption is weighted by.
    /// Radicands inside the rounding slack are clamped to zero.
    pub fn next_increment(&self) -> Result<f64, KinematicsError> {
        let radicand = self.radicand();
        if radicand < -RADICAND_SLACK {
            return Err(KinematicsError::NegativeRadicand { radicand });
        }
        Ok(radicand.max(0.0).sqrt())
    }
}

/// Absorbs one photon.
///
/// Fails with [`KinematicsError::LimitCrossed`] when the kick would put the
/// particle at or beyond `u = 1`: the dilation sum is then within one
/// quantum of its fixed point `1/ε` and no further absorption is physical.
pub fn step(
    state: &ParticleState,
    config: &SimulationConfig,
) -> Result<ParticleState, KinematicsError> {
    if state.n >= config.max_steps {
        return Err(KinematicsError::CapReached {
            max_steps: config.max_steps,
        });
    }
    let increment = state.next_increment()?;
    let mut sum = state.dilation_sum;
    sum += increment;
    let next = ParticleState::closed(state.n + 1, sum, config.epsilon);
    if next.radicand() <= 0.0 {
        return Err(KinematicsError::LimitCrossed { n: next.n });
    }
    Ok(next)
}

/// Velocity after `n` undilated absorptions: `√(n ε)`.
pub fn classical_velocity(n: u64, epsilon: f64) -> f64 {
    (n as f64 * epsilon).sqrt()
}

/// Classical velocity gained on absorption `n`, `√ε (√n − √(n−1))`.
///
/// Evaluated in the rationalised form `√ε / (√n + √(n−1))` to avoid the
/// cancellation between neighbouring square roots at large `n`. Returns 0
/// for `n = 0`.
pub fn delta_u_classical(n: u64, epsilon: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let root = (n as f64).sqrt();
    let root_prev = ((n - 1) as f64).sqrt();
    epsilon.sqrt() / (root + root_prev)
}

/// Relativistic velocity gain between consecutive accepted steps.
pub fn delta_u_relativistic(u_n: f64, u_prev: f64) -> Result<f64, KinematicsError> {
    if u_n < u_prev {
        return Err(KinematicsError::NonMonotone { u_n, u_prev });
    }
    Ok(u_n - u_prev)
}

pub fn lorentz_gamma(u: f64) -> Result<f64, KinematicsError> {
    if !(0.0..1.0).contains(&u) {
        return Err(KinematicsError::VelocityOutOfRange { u });
    }
    Ok(1.0 / (1.0 - u * u).sqrt())
}

/// Special-relativistic total energy `γ m c²`, in units of `m c²`.
pub fn str_energy(u: f64) -> Result<f64, KinematicsError> {
    lorentz_gamma(u)
}

/// Interaction-model energy on the same footing as [`str_energy`]: rest energy
/// plus half of the interaction total `m u²`.
pub fn interaction_energy_plot(u: f64) -> f64 {
    1.0 + 0.5 * u * u
}

/// Virtual-inertia factor at absorption `n`:
/// `(Δuᶜ / Δuʳ) · (uᶜ / uʳ)`.
pub fn alpha(n: u64, u_n: f64, u_prev: f64, epsilon: f64) -> Result<f64, KinematicsError> {
    if n == 0 {
        return Err(KinematicsError::UndefinedAtRest);
    }
    let du_r = delta_u_relativistic(u_n, u_prev)?;
    if du_r < DEGENERATE_INCREMENT {
        return Err(KinematicsError::DegenerateStep { increment: du_r });
    }
    let du_c = delta_u_classical(n, epsilon);
    let u_c = classical_velocity(n, epsilon);
    Ok((du_c * u_c) / (du_r * u_n))
}

/// One recorded sample of the interaction model next to its classical and
/// special-relativistic counterparts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub n: u64,
    pub u_r: f64,
    pub u_c: f64,
    pub energy_interaction: f64,
    pub energy_str: f64,
    /// `None` at rest and on degenerate steps.
    pub alpha: Option<f64>,
    pub gamma: f64,
    pub degenerate: bool,
}

impl ComparisonRow {
    /// Builds the row for step `n` reached from velocity `u_prev`.
    pub fn from_step(n: u64, u_n: f64, u_prev: f64, epsilon: f64) -> Result<Self, KinematicsError> {
        let gamma = lorentz_gamma(u_n)?;
        let (alpha, degenerate) = match alpha(n, u_n, u_prev, epsilon) {
            Ok(a) => (Some(a), false),
            Err(KinematicsError::UndefinedAtRest) => (None, false),
            Err(KinematicsError::DegenerateStep { .. }) => (None, true),
            Err(e) => return Err(e),
        };
        Ok(Self {
            n,
            u_r: u_n,
            u_c: classical_velocity(n, epsilon),
            energy_interaction: interaction_energy_plot(u_n),
            energy_str: gamma,
            alpha,
            gamma,
            degenerate,
        })
    }

    pub fn at_rest() -> Self {
        Self {
            n: 0,
            u_r: 0.0,
            u_c: 0.0,
            energy_interaction: 1.0,
            energy_str: 1.0,
            alpha: None,
            gamma: 1.0,
            degenerate: false,
        }
    }

    pub fn alpha_gamma_deviation(&self) -> Option<f64> {
        self.alpha.map(|a| (a - self.gamma).abs())
    }
}
