//! Harmonic theory of the Trojan wavepacket as a function of the confinement
//! parameter q = e^2/(4 pi eps0 m omega^2 x0^3).
//!
//! The stable Trojan branch lives in 8/9 < q <= 1. At q = 1 the drive field
//! vanishes and the packet sits on the field-free circular orbit; at q = 8/9
//! the two in-plane modes merge and the Gaussian widths A, B collapse.
//!
//! Orientation signs are dropped: the field amplitude is a magnitude and the
//! radial balance reads Z e E = (1 - q) m omega^2 x0.

use serde::{Deserialize, Serialize};

use crate::constants::{particle_units, ParticleSpec, Quantity, CODATA_2018};
use crate::error::{ensure_positive, Error, Result};
use crate::roots::find_root;

/// Lower (exclusive) border of the stability window.
pub const Q_MIN: f64 = 8.0 / 9.0;
/// Upper (inclusive) border of the stability window: zero field.
pub const Q_MAX: f64 = 1.0;

/// The q window of linear stability and its image in scaled field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityWindow {
    pub q_min: f64,
    pub q_max: f64,
    pub scaled_field_max: f64,
}

impl StabilityWindow {
    pub fn get() -> Self {
        Self {
            q_min: Q_MIN,
            q_max: Q_MAX,
            scaled_field_max: scaled_field_max(),
        }
    }

    pub fn contains(&self, q: f64) -> bool {
        q > self.q_min && q <= self.q_max
    }
}

/// Scaled field at the q = 8/9 border, (1/9)/(8/9)^(1/3).
pub fn scaled_field_max() -> f64 {
    (1.0 / 9.0) / Q_MIN.cbrt()
}

/// Validates that q lies in (8/9, 1].
pub fn check_window(q: f64) -> Result<f64> {
    if !q.is_finite() {
        return Err(Error::NonFinite {
            name: "q",
            value: q,
        });
    }
    if q <= Q_MIN {
        return Err(Error::BelowStabilityBorder { q });
    }
    if q > Q_MAX {
        return Err(Error::AboveUnity { q });
    }
    Ok(q)
}

/// f(q) = 2 + q - 2 sqrt((1 - q)(1 + 2q)), defined on [0, 1].
pub fn f_of_q(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::OutsideUnitInterval { q });
    }
    Ok(2.0 + q - 2.0 * ((1.0 - q) * (1.0 + 2.0 * q)).sqrt())
}

/// All dimensionless harmonic-theory quantities at one q.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeSet {
    pub q: f64,
    pub f: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// omega_- / omega
    pub theta: f64,
    pub omega_plus_ratio: f64,
    pub omega_z_ratio: f64,
    pub lambda: f64,
    pub alpha_tilde_sq: f64,
}

/// Evaluates the shape functions at `q` in (8/9, 1].
///
/// Mode ratios are sqrt(2 - q +/- sqrt(9q^2 - 8q)) / sqrt(2). The lower one is
/// taken from the product (omega_+ omega_-)^2 = (1 + 2q)(1 - q) / omega^4,
/// which avoids cancellation as q -> 1.
pub fn shape_set(q: f64) -> Result<ShapeSet> {
    let q = check_window(q)?;
    let f = f_of_q(q)?;
    let width_core = (4.0 * f - 9.0 * q * q).max(0.0);
    let three_q = 3.0 * q;

    let a = ((1.0 + 2.0 * q) * width_core).sqrt() / three_q;
    let b = ((1.0 - q) * width_core).sqrt() / three_q;
    let c = f / three_q;
    let d = q.sqrt();

    let disc = (9.0 * q * q - 8.0 * q).max(0.0).sqrt();
    let plus_sq = 0.5 * (2.0 - q + disc);
    let minus_sq = (1.0 + 2.0 * q) * (1.0 - q) / plus_sq;
    let omega_plus_ratio = plus_sq.sqrt();
    let theta = minus_sq.sqrt();

    let lambda = (1.0 + c) / (a + theta);
    // 1/(lambda^2/A + 1/B) written so B = 0 gives the limit 0
    let alpha_tilde_sq = b / (lambda * lambda * b / a + 1.0);

    Ok(ShapeSet {
        q,
        f,
        a,
        b,
        c,
        d,
        theta,
        omega_plus_ratio,
        omega_z_ratio: d,
        lambda,
        alpha_tilde_sq,
    })
}

/// Dimensional mode frequencies, rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeFrequencies {
    pub plus: f64,
    pub minus: f64,
    pub z: f64,
}

pub fn mode_frequencies(q: f64, omega: f64) -> Result<ModeFrequencies> {
    let omega = ensure_positive("angular frequency", omega)?;
    let s = shape_set(q)?;
    Ok(ModeFrequencies {
        plus: omega * s.omega_plus_ratio,
        minus: omega * s.theta,
        z: omega * s.omega_z_ratio,
    })
}

/// Scaled field E omega^(-4/3) = (1 - q)/q^(1/3), in particle atomic units.
pub fn scaled_field_of_q(q: f64) -> Result<f64> {
    if !q.is_finite() {
        return Err(Error::NonFinite {
            name: "q",
            value: q,
        });
    }
    if q <= 0.0 {
        return Err(Error::NonPositive {
            name: "q",
            value: q,
        });
    }
    if q > Q_MAX {
        return Err(Error::AboveUnity { q });
    }
    Ok((1.0 - q) / q.cbrt())
}

/// The same scaled field expressed with electron atomic units for both the
/// field and the frequency.
pub fn scaled_field_electron_units(q: f64, particle: &ParticleSpec) -> Result<f64> {
    let s = scaled_field_of_q(q)?;
    Ok(s * (particle.mass_ratio / particle.charge_magnitude).powf(2.0 / 3.0))
}

/// Inverse of [`scaled_field_of_q`] on the Trojan branch (8/9, 1].
pub fn q_of_scaled_field(scaled_field: f64) -> Result<f64> {
    let max = scaled_field_max();
    if !(scaled_field.is_finite() && (0.0..max).contains(&scaled_field)) {
        return Err(Error::ScaledFieldOutOfRange {
            value: scaled_field,
            max,
        });
    }
    if scaled_field == 0.0 {
        return Ok(1.0);
    }
    let g = |q: f64| (1.0 - q) / q.cbrt() - scaled_field;
    let q = find_root(g, Q_MIN, Q_MAX, 4.0 * f64::EPSILON)?;
    // the border itself is excluded even if rounding lands there
    if q <= Q_MIN {
        return Err(Error::ScaledFieldOutOfRange {
            value: scaled_field,
            max,
        });
    }
    Ok(q)
}

/// Classical centre of the packet in the rotating frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumPoint {
    /// m
    pub x0: f64,
    pub q: f64,
    /// rad/s
    pub omega: f64,
    /// V/m
    pub field_amplitude: f64,
}

/// Solves the radial balance Z e E = m omega^2 x0 - Z e^2/(4 pi eps0 x0^2)
/// for x0 on the Trojan branch.
///
/// In particle atomic units the balance reads w^2 x - 1/x^2 = F, which is
/// increasing in x, so the root continuously connected to the field-free
/// radius w^(-2/3) is unique. It is bracketed between that radius and the
/// q = 8/9 border radius.
pub fn equilibrium_radius(
    omega: f64,
    field_amplitude: f64,
    particle: &ParticleSpec,
) -> Result<EquilibriumPoint> {
    let omega = ensure_positive("angular frequency", omega)?;
    if !field_amplitude.is_finite() {
        return Err(Error::NonFinite {
            name: "field amplitude",
            value: field_amplitude,
        });
    }
    if field_amplitude < 0.0 {
        return Err(Error::NonPositive {
            name: "field amplitude",
            value: field_amplitude,
        });
    }

    let units = particle_units(particle);
    let w = units.from_si(Quantity::Frequency, omega);
    let field = units.from_si(Quantity::Field, field_amplitude);
    let w2 = w * w;

    let x_free = w2.powf(-1.0 / 3.0);
    let x_border = x_free / Q_MIN.cbrt();
    let balance = |x: f64| w2 * x - 1.0 / (x * x) - field;

    let border_field = w2 * x_border - 1.0 / (x_border * x_border);
    if field >= border_field {
        return Err(Error::FieldOutsideWindow {
            field: field_amplitude,
            border: units.to_si(Quantity::Field, border_field),
        });
    }

    let (x, q) = if field == 0.0 {
        (x_free, 1.0)
    } else {
        let x = find_root(balance, x_free, x_border, 4.0 * f64::EPSILON)?;
        (x, (1.0 / (w2 * x * x * x)).min(1.0))
    };
    if q <= Q_MIN {
        return Err(Error::FieldOutsideWindow {
            field: field_amplitude,
            border: units.to_si(Quantity::Field, border_field),
        });
    }

    Ok(EquilibriumPoint {
        x0: units.to_si(Quantity::Length, x),
        q,
        omega,
        field_amplitude,
    })
}

/// Equilibrium radius x0 = (Z e^2/(4 pi eps0 m omega^2 q))^(1/3), m.
pub fn radius_from_q(q: f64, omega: f64, particle: &ParticleSpec) -> Result<f64> {
    let q = check_window(q)?;
    let omega = ensure_positive("angular frequency", omega)?;
    let k = &CODATA_2018;
    let mass = particle.mass(k);
    Ok((particle.coulomb_coupling(k) / (mass * omega * omega * q)).cbrt())
}

/// Drive amplitude E = (1 - q) m omega^2 x0 / (Z e) that places the packet at q, V/m.
pub fn field_from_q(q: f64, omega: f64, particle: &ParticleSpec) -> Result<f64> {
    let x0 = radius_from_q(q, omega, particle)?;
    let k = &CODATA_2018;
    Ok((1.0 - q) * particle.mass(k) * omega * omega * x0 / particle.charge(k))
}
