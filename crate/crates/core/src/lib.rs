//! Deterministic photon-absorption acceleration of a single electron.
//!
//! A particle at rest absorbs photons of energy `ε` (in units of `m c²`), each
//! weighted by the time-dilation factor of its own frame. The kinetic energy
//! saturates at `m c²/2` instead of diverging, and the apparent inertia
//! increase inferred from the shrinking velocity increments tracks the
//! Lorentz factor.
//!
//! ```
//! use photon_kick_core::{run_to_convergence, SimulationConfig};
//!
//! let (summary, _rows) = run_to_convergence(&SimulationConfig::new(0.01)).unwrap();
//! assert!(summary.converged);
//! assert!((summary.final_kinetic - 0.5).abs() < 1e-3);
//! ```

pub mod compensated;
pub mod config;
pub mod experiment;
pub mod kinematics;

pub use compensated::CompensatedSum;
pub use config::{ConfigError, Convention, SimulationConfig};
pub use experiment::{
    compare_models, run_to_convergence, sweep_epsilon, DeviationStats, RunError, RunSummary,
    StopReason, SweepResult,
};
pub use kinematics::{
    alpha, classical_velocity, delta_u_classical, delta_u_relativistic, interaction_energy_plot,
    lorentz_gamma, step, str_energy, ComparisonRow, KinematicsError, ParticleState,
};
