//! Harmonic theory of Trojan wavepackets in a circularly polarized drive,
//! with the Unruh-Davies and spontaneous emission rates of the packet.
//!
//! Modules, bottom up:
//!
//! - [`constants`]: CODATA 2018 pins, the particle registry and
//!   particle-scaled atomic units.
//! - [`harmonic`]: shape functions of q, mode frequencies and the
//!   equilibrium radius.
//! - [`rates`]: emission rates, their ratio and resonance reports.
//! - [`kinematics`]: orbital acceleration, beta/gamma and the Unruh
//!   temperature.
//! - [`oracles`]: independent numerical re-derivations.
//! - [`verify`]: the oracle suite.

pub mod constants;
pub mod error;
pub mod harmonic;
pub mod kinematics;
pub mod oracles;
pub mod rates;
pub mod roots;
pub mod verify;

pub use constants::{
    kepler_frequency, particle_units, wavelength_of, Lifetime, ParticleSpec, PhysicalConstants,
    Quantity, UnitContext, CODATA_2018,
};
pub use error::{Error, Result};
pub use harmonic::{
    equilibrium_radius, f_of_q, field_from_q, mode_frequencies, q_of_scaled_field,
    scaled_field_of_q, shape_set, EquilibriumPoint, ShapeSet, StabilityWindow,
};
pub use kinematics::{
    kinematics_report, orbital_acceleration, orbital_beta_gamma, revolutions_per_lifetime,
    unruh_temperature, KinematicsReport, Revolutions,
};
pub use rates::{
    dipole_matrix_elements, gamma_sp, gamma_sp_shape, gamma_ud, gamma_ud_shape, ratio_ud_sp,
    resonance_report, Convention, DriveParameters, RateReport, BEST_CONFINED_Q,
};
