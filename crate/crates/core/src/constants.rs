//! Pinned physical constants, particle registry and particle-scaled atomic units.
//!
//! All constants are CODATA 2018. Every downstream tolerance assumes these
//! exact pins, so they live in one table.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};

/// CODATA 2018 values in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// C
    pub elementary_charge: f64,
    /// kg
    pub electron_mass: f64,
    /// J s
    pub reduced_planck: f64,
    /// F/m
    pub vacuum_permittivity: f64,
    /// m/s
    pub light_speed: f64,
    /// J/K
    pub boltzmann: f64,
    /// m/s^2
    pub standard_gravity: f64,
    pub fine_structure: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    elementary_charge: 1.602_176_634e-19,
    electron_mass: 9.109_383_701_5e-31,
    reduced_planck: 1.054_571_817e-34,
    vacuum_permittivity: 8.854_187_812_8e-12,
    light_speed: 299_792_458.0,
    boltzmann: 1.380_649e-23,
    standard_gravity: 9.806_65,
    fine_structure: 7.297_352_569_3e-3,
};

impl PhysicalConstants {
    /// e^2 / (4 pi eps0), J m.
    pub fn coulomb_coupling(&self) -> f64 {
        self.elementary_charge * self.elementary_charge / (4.0 * PI * self.vacuum_permittivity)
    }

    /// Fine-structure constant recomputed from e, eps0, hbar and c.
    pub fn derived_fine_structure(&self) -> f64 {
        self.coulomb_coupling() / (self.reduced_planck * self.light_speed)
    }

    /// Electron Bohr radius a0, m.
    pub fn bohr_radius(&self) -> f64 {
        self.reduced_planck * self.reduced_planck / (self.electron_mass * self.coulomb_coupling())
    }

    /// Electron Hartree energy, J.
    pub fn hartree(&self) -> f64 {
        self.coulomb_coupling() / self.bohr_radius()
    }

    /// Named key/value listing used by the constants dump.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("elementary_charge", self.elementary_charge),
            ("electron_mass", self.electron_mass),
            ("reduced_planck", self.reduced_planck),
            ("vacuum_permittivity", self.vacuum_permittivity),
            ("light_speed", self.light_speed),
            ("boltzmann", self.boltzmann),
            ("standard_gravity", self.standard_gravity),
            ("fine_structure", self.fine_structure),
        ]
    }
}

/// Mean lifetime of a particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lifetime {
    Stable,
    Seconds(f64),
}

impl Lifetime {
    pub fn seconds(&self) -> Option<f64> {
        match *self {
            Lifetime::Stable => None,
            Lifetime::Seconds(s) => Some(s),
        }
    }
}

impl std::fmt::Display for Lifetime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Lifetime::Stable => f.write_str("stable"),
            Lifetime::Seconds(s) => write!(f, "{s:e}"),
        }
    }
}

/// A charged particle bound to a unit-charge nucleus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticleSpec {
    pub name: String,
    /// m / m_e
    pub mass_ratio: f64,
    /// |charge| in units of e
    pub charge_magnitude: f64,
    pub mean_lifetime: Lifetime,
}

pub const MUON_MASS_RATIO: f64 = 206.7683;
pub const MUON_LIFETIME_S: f64 = 2.1970e-6;

impl ParticleSpec {
    pub fn new(
        name: impl Into<String>,
        mass_ratio: f64,
        charge_magnitude: f64,
        mean_lifetime: Lifetime,
    ) -> Result<Self> {
        let name = name.into();
        if !(mass_ratio.is_finite() && mass_ratio > 0.0) {
            return Err(Error::InvalidParticle(format!(
                "{name}: mass_ratio must be positive, got {mass_ratio}"
            )));
        }
        if !(charge_magnitude.is_finite() && charge_magnitude > 0.0) {
            return Err(Error::InvalidParticle(format!(
                "{name}: charge_magnitude must be positive, got {charge_magnitude}"
            )));
        }
        if let Lifetime::Seconds(s) = mean_lifetime {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::InvalidParticle(format!(
                    "{name}: mean_lifetime must be positive, got {s}"
                )));
            }
        }
        Ok(Self {
            name,
            mass_ratio,
            charge_magnitude,
            mean_lifetime,
        })
    }

    pub fn electron() -> Self {
        Self {
            name: "electron".into(),
            mass_ratio: 1.0,
            charge_magnitude: 1.0,
            mean_lifetime: Lifetime::Stable,
        }
    }

    pub fn muon() -> Self {
        Self {
            name: "muon".into(),
            mass_ratio: MUON_MASS_RATIO,
            charge_magnitude: 1.0,
            mean_lifetime: Lifetime::Seconds(MUON_LIFETIME_S),
        }
    }

    /// Built-in registry.
    pub fn registry() -> Vec<ParticleSpec> {
        vec![Self::electron(), Self::muon()]
    }

    /// Case-insensitive registry lookup.
    pub fn by_name(name: &str) -> Result<Self> {
        Self::registry()
            .into_iter()
            .find(|p| p.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::UnknownParticle(name.to_string()))
    }

    pub fn mass(&self, k: &PhysicalConstants) -> f64 {
        self.mass_ratio * k.electron_mass
    }

    pub fn charge(&self, k: &PhysicalConstants) -> f64 {
        self.charge_magnitude * k.elementary_charge
    }

    /// Coulomb coupling to a unit-charge nucleus, Z e^2/(4 pi eps0), J m.
    pub fn coulomb_coupling(&self, k: &PhysicalConstants) -> f64 {
        self.charge_magnitude * k.coulomb_coupling()
    }
}

/// Kind of dimensional quantity handled by [`UnitContext`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Length,
    Time,
    Frequency,
    Field,
    Energy,
}

/// Hartree-like units built from the orbiting particle's mass and charge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitContext {
    /// particle Bohr radius a_p, m
    pub length_unit: f64,
    /// s
    pub time_unit: f64,
    /// rad/s
    pub frequency_unit: f64,
    /// V/m
    pub field_unit: f64,
    /// J
    pub energy_unit: f64,
}

impl UnitContext {
    pub fn unit(&self, kind: Quantity) -> f64 {
        match kind {
            Quantity::Length => self.length_unit,
            Quantity::Time => self.time_unit,
            Quantity::Frequency => self.frequency_unit,
            Quantity::Field => self.field_unit,
            Quantity::Energy => self.energy_unit,
        }
    }

    pub fn to_si(&self, kind: Quantity, scaled: f64) -> f64 {
        scaled * self.unit(kind)
    }

    pub fn from_si(&self, kind: Quantity, si: f64) -> f64 {
        si / self.unit(kind)
    }
}

/// Scaled unit system for `particle`.
///
/// With Z the charge magnitude and m the mass ratio: a_p = a0/(m Z),
/// E_p = m Z^2 E_h, field unit = m^2 Z^2 times the electron atomic field unit.
pub fn particle_units(particle: &ParticleSpec) -> UnitContext {
    let k = &CODATA_2018;
    let m = particle.mass_ratio;
    let z = particle.charge_magnitude;
    let a0 = k.bohr_radius();
    let hartree = k.hartree();

    let length_unit = a0 / (m * z);
    let energy_unit = m * z * z * hartree;
    let time_unit = k.reduced_planck / energy_unit;
    let frequency_unit = energy_unit / k.reduced_planck;
    // force unit E_p/a_p acting on charge Z e
    let field_unit = energy_unit / (length_unit * particle.charge(k));

    UnitContext {
        length_unit,
        time_unit,
        frequency_unit,
        field_unit,
        energy_unit,
    }
}

/// Circular-orbit Kepler frequency 1/n^3 (particle atomic units), in rad/s.
pub fn kepler_frequency(n: u32, particle: &ParticleSpec) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidRydberg(n));
    }
    let n3 = f64::from(n).powi(3);
    Ok(particle_units(particle).frequency_unit / n3)
}

/// Vacuum wavelength 2 pi c / omega, in m.
pub fn wavelength_of(omega: f64) -> Result<f64> {
    let omega = ensure_positive("angular frequency", omega)?;
    Ok(2.0 * PI * CODATA_2018.light_speed / omega)
}
