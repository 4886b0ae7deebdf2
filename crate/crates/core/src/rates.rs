//! Unruh-Davies and spontaneous emission rates of the Trojan wavepacket.
//!
//! Both rates share the prefactor (Z e)^2 omega^2 / (eps0 m c^3) and differ in
//! a dimensionless shape that depends on q only, so their ratio is universal
//! in n, omega and the particle. The relativistic factor gamma is set to 1.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constants::{kepler_frequency, wavelength_of, ParticleSpec, CODATA_2018};
use crate::error::{ensure_positive, Error, Result};
use crate::harmonic::{
    check_window, equilibrium_radius, field_from_q, scaled_field_of_q, shape_set, Q_MAX, Q_MIN,
};

/// q of the best-confined packet.
pub const BEST_CONFINED_Q: f64 = 0.9562;

/// Normalization of the Unruh-Davies rate.
///
/// `AsPrinted` evaluates the closed-form rate verbatim. `Calibrated`
/// divides it by pi, which matches the reference n = 12 muon rate
/// (1.118e6 1/s) and ratio (0.1907). The spontaneous rate is the same under both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    AsPrinted,
    #[default]
    Calibrated,
}

impl Convention {
    /// Factor applied to the as-printed Unruh-Davies rate.
    pub fn ud_factor(self) -> f64 {
        match self {
            Convention::AsPrinted => 1.0,
            Convention::Calibrated => 1.0 / PI,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::AsPrinted => "printed",
            Convention::Calibrated => "calibrated",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "printed" | "as_printed" | "as-printed" => Ok(Convention::AsPrinted),
            "calibrated" => Ok(Convention::Calibrated),
            other => Err(Error::InvalidArgument(format!(
                "unknown convention '{other}' (expected calibrated|printed)"
            ))),
        }
    }
}

/// Common rate prefactor (Z e)^2 omega^2 / (eps0 m c^3), 1/s.
pub fn rate_prefactor(omega: f64, particle: &ParticleSpec) -> Result<f64> {
    let omega = ensure_positive("angular frequency", omega)?;
    let k = &CODATA_2018;
    let charge = particle.charge(k);
    let c3 = k.light_speed.powi(3);
    Ok(charge * charge * omega * omega / (k.vacuum_permittivity * particle.mass(k) * c3))
}

/// (1/3) sqrt(pi/2) alpha~^2 (lambda^2/A^2 + 1/B^2) theta^3, as printed.
///
/// Vanishes at q = 1. Exactly at q = 8/9 the 1/B^2 term blows up.
pub fn gamma_ud_shape(q: f64) -> Result<f64> {
    if q == Q_MIN {
        return Err(Error::BorderSingularity { q, what: "1/B^2" });
    }
    let s = shape_set(q)?;
    if s.q == Q_MAX {
        return Ok(0.0);
    }
    // alpha~^2 (lambda^2/A^2 + 1/B^2) with B^2 cleared from both factors
    let lb_a = s.lambda * s.lambda * s.b / s.a;
    let coupling = (lb_a * s.b / s.a + 1.0) / (s.b * (lb_a + 1.0));
    Ok((PI / 2.0).sqrt() / 3.0 * coupling * s.theta.powi(3))
}

/// (1/(4 pi)) (1/3) (lambda/A - 1/B)^2 / (lambda^2/A + 1/B) (1 + theta)^3.
///
/// Diverges at q = 1 where B = 0.
pub fn gamma_sp_shape(q: f64) -> Result<f64> {
    let q = check_window(q)?;
    if q == Q_MAX {
        return Err(Error::BorderSingularity {
            q,
            what: "1/B (B = 0)",
        });
    }
    let s = shape_set(q)?;
    let mixed = s.lambda / s.a - 1.0 / s.b;
    let norm = s.lambda * s.lambda / s.a + 1.0 / s.b;
    Ok(mixed * mixed / norm * (1.0 + s.theta).powi(3) / (12.0 * PI))
}

/// Unruh-Davies emission rate, 1/s.
pub fn gamma_ud(
    q: f64,
    omega: f64,
    particle: &ParticleSpec,
    convention: Convention,
) -> Result<f64> {
    let shape = gamma_ud_shape(q)?;
    Ok(rate_prefactor(omega, particle)? * shape * convention.ud_factor())
}

/// Spontaneous emission rate, 1/s.
pub fn gamma_sp(q: f64, omega: f64, particle: &ParticleSpec) -> Result<f64> {
    let shape = gamma_sp_shape(q)?;
    Ok(rate_prefactor(omega, particle)? * shape)
}

/// Gamma_UD / Gamma_SP, a function of q alone.
pub fn ratio_ud_sp(q: f64, convention: Convention) -> Result<f64> {
    let ud = gamma_ud_shape(q)?;
    let sp = gamma_sp_shape(q)?;
    Ok(ud / sp * convention.ud_factor())
}

/// Transition dipoles between the Trojan state and the first deexcited state, m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipoleElements {
    pub x: f64,
    pub y: f64,
}

/// <1|x|0> = alpha lambda hbar/(2 A m omega), <1|y|0> = alpha hbar/(2 B m omega),
/// with alpha = alpha~ sqrt(2 m omega / hbar).
pub fn dipole_matrix_elements(
    q: f64,
    omega: f64,
    particle: &ParticleSpec,
) -> Result<DipoleElements> {
    if q == Q_MIN {
        return Err(Error::BorderSingularity {
            q,
            what: "dipole elements",
        });
    }
    let q = check_window(q)?;
    if q == Q_MAX {
        return Err(Error::BorderSingularity {
            q,
            what: "1/B (B = 0)",
        });
    }
    let omega = ensure_positive("angular frequency", omega)?;
    let s = shape_set(q)?;
    let k = &CODATA_2018;
    let m_omega = particle.mass(k) * omega;
    let alpha = s.alpha_tilde_sq.sqrt() * (2.0 * m_omega / k.reduced_planck).sqrt();
    let fluct = k.reduced_planck / (2.0 * m_omega);
    Ok(DipoleElements {
        x: alpha * s.lambda * fluct / s.a,
        y: alpha * fluct / s.b,
    })
}

/// Laser parameters at a resonance point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveParameters {
    /// rad/s
    pub omega: f64,
    /// V/m
    pub field_amplitude: f64,
    /// m
    pub x0: f64,
    pub q: f64,
    pub scaled_field: f64,
    /// m
    pub wavelength: f64,
    /// W/m^2, eps0 c E^2 for a rotating field of constant magnitude
    pub intensity: f64,
}

impl DriveParameters {
    pub fn at(q: f64, omega: f64, particle: &ParticleSpec) -> Result<Self> {
        let field_amplitude = field_from_q(q, omega, particle)?;
        let eq = equilibrium_radius(omega, field_amplitude, particle)?;
        let k = &CODATA_2018;
        Ok(Self {
            omega,
            field_amplitude,
            x0: eq.x0,
            q,
            scaled_field: scaled_field_of_q(q)?,
            wavelength: wavelength_of(omega)?,
            intensity: k.vacuum_permittivity * k.light_speed * field_amplitude * field_amplitude,
        })
    }

    pub fn intensity_w_per_cm2(&self) -> f64 {
        self.intensity * 1e-4
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub particle: ParticleSpec,
    pub n: u32,
    pub q: f64,
    /// rad/s
    pub omega: f64,
    /// 1/s
    pub gamma_ud: f64,
    /// 1/s; `None` where the rate diverges (q = 1)
    pub gamma_sp: Option<f64>,
    pub ratio: Option<f64>,
    /// hbar omega_-, J
    pub energy_gap: f64,
    pub convention: Convention,
    pub drive: DriveParameters,
}

/// Full report at the n-th Kepler resonance.
pub fn resonance_report(
    n: u32,
    q: f64,
    particle: &ParticleSpec,
    convention: Convention,
) -> Result<RateReport> {
    let omega = kepler_frequency(n, particle)?;
    let q = check_window(q)?;
    let shape = shape_set(q)?;
    let drive = DriveParameters::at(q, omega, particle)?;
    let gamma_ud = gamma_ud(q, omega, particle, convention)?;
    let gamma_sp = match gamma_sp(q, omega, particle) {
        Ok(v) => Some(v),
        Err(Error::BorderSingularity { .. }) => None,
        Err(e) => return Err(e),
    };
    let ratio = gamma_sp.filter(|sp| *sp > 0.0).map(|sp| gamma_ud / sp);
    Ok(RateReport {
        particle: particle.clone(),
        n,
        q,
        omega,
        gamma_ud,
        gamma_sp,
        ratio,
        energy_gap: CODATA_2018.reduced_planck * omega * shape.theta,
        convention,
        drive,
    })
}
