//! Shared fixtures for the criterion benches.

use photon_kick_core::{Convention, SimulationConfig};

/// The reference run: ε = 4×10⁻⁶, first kick undilated, tolerance 10⁻⁶.
pub fn reference_config() -> SimulationConfig {
    SimulationConfig::new(4e-6).with_convention(Convention::FirstKickUndilated)
}

pub const SWEEP_EPSILONS: [f64; 3] = [8e-6, 4e-6, 2e-6];
