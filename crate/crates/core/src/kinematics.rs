//! Orbital kinematics on the n-th circular Bohr orbit and the associated
//! Unruh-Davies temperature.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::{kepler_frequency, particle_units, Lifetime, ParticleSpec, CODATA_2018};
use crate::error::{Error, Result};

fn check_n(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidRydberg(n));
    }
    Ok(f64::from(n))
}

/// Centripetal acceleration on the first orbit, Z e^2/(4 pi eps0 m a_p^2), m/s^2.
fn ground_acceleration(particle: &ParticleSpec) -> f64 {
    let k = &CODATA_2018;
    let a_p = particle_units(particle).length_unit;
    particle.coulomb_coupling(k) / (particle.mass(k) * a_p * a_p)
}

/// Centripetal acceleration on the n-th orbit, m/s^2. Computed as a_1 / n^4.
pub fn orbital_acceleration(n: u32, particle: &ParticleSpec) -> Result<f64> {
    let nf = check_n(n)?;
    Ok(ground_acceleration(particle) / nf.powi(4))
}

/// Unruh temperature hbar a / (2 pi k c), K.
pub fn unruh_temperature(acceleration: f64) -> Result<f64> {
    if !acceleration.is_finite() || acceleration < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "acceleration must be finite and nonnegative, got {acceleration}"
        )));
    }
    let k = &CODATA_2018;
    Ok(k.reduced_planck * acceleration / (2.0 * PI * k.boltzmann * k.light_speed))
}

/// Orbital speed over c and the Lorentz factor. beta = Z alpha / n for every mass.
pub fn orbital_beta_gamma(n: u32, charge_magnitude: f64) -> Result<(f64, f64)> {
    let nf = check_n(n)?;
    let beta = charge_magnitude * CODATA_2018.fine_structure / nf;
    Ok((beta, 1.0 / (1.0 - beta * beta).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Revolutions {
    Finite(f64),
    Infinite,
}

impl std::fmt::Display for Revolutions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Revolutions::Finite(v) => write!(f, "{v:e}"),
            Revolutions::Infinite => f.write_str("infinite"),
        }
    }
}

/// Orbits completed within one mean lifetime at the Kepler frequency.
pub fn revolutions_per_lifetime(n: u32, particle: &ParticleSpec) -> Result<Revolutions> {
    let omega = kepler_frequency(n, particle)?;
    Ok(match particle.mean_lifetime {
        Lifetime::Stable => Revolutions::Infinite,
        Lifetime::Seconds(tau) => Revolutions::Finite(tau * omega / (2.0 * PI)),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KinematicsReport {
    pub n: u32,
    pub particle: ParticleSpec,
    /// m/s^2
    pub acceleration: f64,
    /// multiples of standard gravity
    pub acceleration_g: f64,
    pub beta: f64,
    pub gamma: f64,
    /// K
    pub davies_temperature: f64,
    pub revolutions_per_lifetime: Revolutions,
}

pub fn kinematics_report(n: u32, particle: &ParticleSpec) -> Result<KinematicsReport> {
    let acceleration = orbital_acceleration(n, particle)?;
    let (beta, gamma) = orbital_beta_gamma(n, particle.charge_magnitude)?;
    let nf = f64::from(n);
    Ok(KinematicsReport {
        n,
        particle: particle.clone(),
        acceleration,
        acceleration_g: acceleration / CODATA_2018.standard_gravity,
        beta,
        gamma,
        davies_temperature: unruh_temperature(ground_acceleration(particle))? / nf.powi(4),
        revolutions_per_lifetime: revolutions_per_lifetime(n, particle)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn muon_ground_acceleration() {
        let a = orbital_acceleration(1, &ParticleSpec::muon()).unwrap();
        assert_relative_eq!(a, 1.87e25, max_relative = 1e-2);
        assert_relative_eq!(a / 9.80665, 1.90e24, max_relative = 1e-2);
        let a2 = orbital_acceleration(2, &ParticleSpec::muon()).unwrap();
        assert_eq!(a2, a / 16.0);
    }

    #[test]
    fn electron_ground_acceleration() {
        let a = orbital_acceleration(1, &ParticleSpec::electron()).unwrap();
        assert_relative_eq!(a, 9.044_216_149e22, max_relative = 1e-9);
    }

    #[test]
    fn temperatures() {
        let muon = ParticleSpec::muon();
        let t1 = unruh_temperature(orbital_acceleration(1, &muon).unwrap()).unwrap();
        assert_relative_eq!(t1, 75830.0, max_relative = 1e-3);
        let t3 = unruh_temperature(orbital_acceleration(3, &muon).unwrap()).unwrap();
        assert_relative_eq!(t3, 936.0, max_relative = 1e-3);
        assert_eq!(unruh_temperature(0.0).unwrap(), 0.0);
        assert!(unruh_temperature(-1.0).is_err());
        assert_relative_eq!(
            unruh_temperature(2.0e20).unwrap(),
            2.0 * unruh_temperature(1.0e20).unwrap()
        );
    }

    #[test]
    fn beta_gamma() {
        let (b, g) = orbital_beta_gamma(1, 1.0).unwrap();
        assert_relative_eq!(b, 7.2974e-3, max_relative = 1e-5);
        assert_relative_eq!(g.powi(4), 1.000_107, max_relative = 1e-6);
        let (b, g) = orbital_beta_gamma(1_000_000, 1.0).unwrap();
        assert!(b < 1e-8 && (g - 1.0).abs() < 1e-15);
        assert!(orbital_beta_gamma(0, 1.0).is_err());
    }

    #[test]
    fn revolutions() {
        let muon = ParticleSpec::muon();
        match revolutions_per_lifetime(12, &muon).unwrap() {
            Revolutions::Finite(r) => assert_relative_eq!(r, 1.7297e9, max_relative = 1e-4),
            Revolutions::Infinite => panic!("muon is unstable"),
        }
        match revolutions_per_lifetime(1, &muon).unwrap() {
            Revolutions::Finite(r) => {
                assert_relative_eq!(r, 1.7297e9 * 1728.0, max_relative = 1e-4)
            }
            Revolutions::Infinite => panic!("muon is unstable"),
        }
        assert_eq!(
            revolutions_per_lifetime(5, &ParticleSpec::electron()).unwrap(),
            Revolutions::Infinite
        );
    }

    #[test]
    fn report_scaling_laws() {
        let muon = ParticleSpec::muon();
        let r1 = kinematics_report(1, &muon).unwrap();
        let r7 = kinematics_report(7, &muon).unwrap();
        assert_eq!(r7.acceleration, r1.acceleration / 2401.0);
        assert_eq!(r7.davies_temperature, r1.davies_temperature / 2401.0);
        let re = kinematics_report(7, &ParticleSpec::electron()).unwrap();
        assert_eq!(re.beta, r7.beta);
    }
}
