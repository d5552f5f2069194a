//! Physical constants (2019 SI exact values where defined).

/// Planck constant, J·s.
pub const PLANCK: f64 = 6.62607015e-34;

/// Reduced Planck constant ħ = h/2π, J·s.
pub const HBAR: f64 = PLANCK / (2.0 * std::f64::consts::PI);

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Magnetic flux quantum Φ₀ = h/2e, Wb.
pub const FLUX_QUANTUM: f64 = 2.067833848e-15;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
