//! Independent numerical re-derivations of the closed forms.
//!
//! Nothing here calls into the closed-form shape functions: the mode
//! frequencies come from eigenvalues of the linearized rotating-frame
//! dynamics, the wavepacket widths from quadrature of |psi|^2, and the
//! equilibrium check from the SI force balance.

pub mod eigen;
pub mod quadrature;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{ParticleSpec, CODATA_2018};
use crate::error::{ensure_positive, Error, Result};
use crate::harmonic::{EquilibriumPoint, ShapeSet};
use quadrature::{integrate, integrate_pieces};

/// Real parts above this mark an eigenvalue as growing.
pub const INSTABILITY_THRESHOLD: f64 = 1e-6;

/// Linearized motion about the Trojan equilibrium in units omega = 1, over
/// the state (dx, dy, dvx, dvy).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearizedSystem {
    pub q: f64,
    /// diagonal of the Coulomb Hessian in (x, y, z)
    pub coulomb_hessian: [f64; 3],
    pub dynamics_matrix: [[f64; 4]; 4],
}

impl LinearizedSystem {
    /// Coulomb Hessian at (x0, 0, 0) is q diag(-2, 1, 1) since 1/x0^3 = q.
    /// In the rotating frame the in-plane force adds the centrifugal term +1
    /// and the Coriolis coupling 2 (v x z).
    pub fn new(q: f64) -> Result<Self> {
        let q = ensure_positive("q", q)?;
        let hessian = [-2.0 * q, q, q];
        let centrifugal = 1.0;
        let coriolis = 2.0;
        let dynamics = [
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [centrifugal - hessian[0], 0.0, 0.0, coriolis],
            [0.0, centrifugal - hessian[1], -coriolis, 0.0],
        ];
        Ok(Self {
            q,
            coulomb_hessian: hessian,
            dynamics_matrix: dynamics,
        })
    }

    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        eigen::eigenvalues(&self.dynamics_matrix)
    }
}

/// Mode frequencies (in units of omega) read off the linearization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearizedModes {
    pub q: f64,
    pub plus: f64,
    pub minus: f64,
    pub z: f64,
    pub max_real_part: f64,
    pub stable: bool,
}

/// Absolute imaginary parts of the in-plane eigenvalues, sorted descending,
/// plus sqrt of the Hessian's z entry. Outside the window this reports an
/// unstable system instead of failing.
pub fn linearized_mode_frequencies(q: f64) -> Result<LinearizedModes> {
    let sys = LinearizedSystem::new(q)?;
    let eig = sys.eigenvalues()?;
    let max_real_part = eig.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
    let mut imag: Vec<f64> = eig.iter().map(|z| z.im.abs()).collect();
    imag.sort_by(|a, b| b.total_cmp(a));
    let hzz = sys.coulomb_hessian[2];
    Ok(LinearizedModes {
        q,
        plus: imag[0],
        minus: imag[2],
        z: hzz.max(0.0).sqrt(),
        max_real_part,
        stable: max_real_part <= INSTABILITY_THRESHOLD,
    })
}

/// Bisects on q for the lower stability border of the linearization, given
/// `unstable_q < stable_q`. Returns the final bracket.
pub fn locate_stability_border(
    mut unstable_q: f64,
    mut stable_q: f64,
    width: f64,
) -> Result<(f64, f64)> {
    if linearized_mode_frequencies(unstable_q)?.stable
        || !linearized_mode_frequencies(stable_q)?.stable
    {
        return Err(Error::InvalidArgument(format!(
            "[{unstable_q}, {stable_q}] does not bracket the stability border"
        )));
    }
    while stable_q - unstable_q > width {
        let mid = 0.5 * (unstable_q + stable_q);
        if linearized_mode_frequencies(mid)?.stable {
            stable_q = mid;
        } else {
            unstable_q = mid;
        }
    }
    Ok((unstable_q, stable_q))
}

/// Trojan ground-state Gaussian
/// psi0 = N exp(i m w x0 y/hbar) exp(-m w [A u^2 + B y^2 + 2iC u + D z^2] / 2 hbar), u = x - x0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavepacketGaussian {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// m
    pub x0: f64,
    /// m^(-3/2)
    pub normalization: f64,
    /// kg
    pub mass: f64,
    /// rad/s
    pub omega: f64,
}

impl WavepacketGaussian {
    pub fn new(a: f64, b: f64, c: f64, d: f64, x0: f64, mass: f64, omega: f64) -> Result<Self> {
        ensure_positive("A", a)?;
        ensure_positive("B", b)?;
        ensure_positive("D", d)?;
        ensure_positive("mass", mass)?;
        ensure_positive("angular frequency", omega)?;
        let hbar = CODATA_2018.reduced_planck;
        let normalization = (mass * omega / (PI * hbar)).powf(0.75) * (a * b * d).powf(0.25);
        Ok(Self {
            a,
            b,
            c,
            d,
            x0,
            normalization,
            mass,
            omega,
        })
    }

    pub fn from_shape(
        shape: &ShapeSet,
        x0: f64,
        particle: &ParticleSpec,
        omega: f64,
    ) -> Result<Self> {
        Self::new(
            shape.a,
            shape.b,
            shape.c,
            shape.d,
            x0,
            particle.mass(&CODATA_2018),
            omega,
        )
    }

    fn scale(&self) -> f64 {
        self.mass * self.omega / (2.0 * CODATA_2018.reduced_planck)
    }

    /// x-factor of psi0 at displacement u = x - x0.
    pub fn amplitude_x(&self, u: f64) -> Complex64 {
        let s = self.scale();
        Complex64::new(-s * self.a * u * u, -2.0 * s * self.c * u).exp()
    }

    pub fn amplitude_y(&self, y: f64) -> Complex64 {
        let s = self.scale();
        Complex64::new(-s * self.b * y * y, 2.0 * s * self.x0 * y).exp()
    }

    pub fn amplitude_z(&self, z: f64) -> Complex64 {
        Complex64::new(-self.scale() * self.d * z * z, 0.0).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianMoments {
    /// <(x - x0)^2>, m^2
    pub x_sq: f64,
    /// <y^2>, m^2
    pub y_sq: f64,
    /// <z^2>, m^2
    pub z_sq: f64,
    /// integral of |psi0|^2
    pub norm: f64,
}

const MOMENT_SPAN_SIGMAS: f64 = 8.0;
const MOMENT_REL_TOL: f64 = 1e-12;

/// Quadrature of the second moments of |psi0|^2, axis by axis.
pub fn gaussian_moments(pkt: &WavepacketGaussian) -> Result<GaussianMoments> {
    ensure_positive("A", pkt.a)?;
    ensure_positive("B", pkt.b)?;
    ensure_positive("D", pkt.d)?;
    let s = pkt.scale();

    let axis = |width: f64, amp: &dyn Fn(f64) -> Complex64| -> (f64, f64) {
        // |psi|^2 ~ exp(-2 s W u^2), sigma^2 = 1/(4 s W)
        let sigma = (1.0 / (4.0 * s * width)).sqrt();
        let lim = MOMENT_SPAN_SIGMAS * sigma;
        let mass = integrate(|u| amp(u).norm_sqr(), -lim, lim, 0.0, MOMENT_REL_TOL, 4000);
        let second = integrate(
            |u| u * u * amp(u).norm_sqr(),
            -lim,
            lim,
            0.0,
            MOMENT_REL_TOL,
            4000,
        );
        (mass.value, second.value)
    };

    let (ix, mx) = axis(pkt.a, &|u| pkt.amplitude_x(u));
    let (iy, my) = axis(pkt.b, &|y| pkt.amplitude_y(y));
    let (iz, mz) = axis(pkt.d, &|z| pkt.amplitude_z(z));
    let n2 = pkt.normalization * pkt.normalization;

    Ok(GaussianMoments {
        x_sq: n2 * mx * iy * iz,
        y_sq: n2 * ix * my * iz,
        z_sq: n2 * ix * iy * mz,
        norm: n2 * ix * iy * iz,
    })
}

/// Relative imbalance |Z e^2/(4 pi eps0 x0^2) + Z e E - m w^2 x0| / (m w^2 x0)
/// of the radial forces at an equilibrium point.
pub fn equilibrium_residual(pt: &EquilibriumPoint, particle: &ParticleSpec) -> f64 {
    let k = &CODATA_2018;
    let centrifugal = particle.mass(k) * pt.omega * pt.omega * pt.x0;
    let coulomb = particle.coulomb_coupling(k) / (pt.x0 * pt.x0);
    let drive = particle.charge(k) * pt.field_amplitude;
    (coulomb + drive - centrifugal).abs() / centrifugal
}

/// Regularized scalar correlation prefactor / (tau - i eps)^4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumProbe {
    /// s
    pub epsilon: f64,
    pub prefactor: f64,
}

impl SpectrumProbe {
    pub fn new(epsilon: f64, prefactor: f64) -> Result<Self> {
        ensure_positive("epsilon", epsilon)?;
        if !prefactor.is_finite() {
            return Err(Error::NonFinite {
                name: "prefactor",
                value: prefactor,
            });
        }
        Ok(Self { epsilon, prefactor })
    }
}

/// Which sign of the transform variable carries the response.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResponseSide {
    NegativeFrequency,
    PositiveFrequency,
}

/// Numeric transform  prefactor * integral of exp(-i W t) / (t - i eps)^4 dt.
///
/// Substituting t = eps s gives eps^-3 times the integral of
/// exp(-i k s)/(s - i)^4 with k = W eps. The integrand at -s is the
/// conjugate of the one at s, so the result is real and twice the
/// half-line integral of the real part. The half line is cut after 200
/// oscillation periods (or s = 1e3 for slow oscillation); the remaining tail
/// is bounded by 1/(3 L^3).
pub fn spectrum_probe(probe: &SpectrumProbe, omega: f64) -> Result<f64> {
    ensure_positive("epsilon", probe.epsilon)?;
    if !omega.is_finite() || omega == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "transform frequency must be finite and nonzero, got {omega}"
        )));
    }
    let k = omega * probe.epsilon;
    let period = 2.0 * PI / k.abs();
    let cutoff = (200.0 * period).max(1e3);

    let integrand = |s: f64| {
        let denom = Complex64::new(s, -1.0).powi(4);
        (Complex64::new(0.0, -k * s).exp() / denom).re
    };

    let mut breaks = vec![0.0];
    let mut x = 0.0;
    // resolve the core and then one break per period
    for edge in [0.5, 1.0, 2.0, 4.0, 8.0] {
        if edge < cutoff {
            breaks.push(edge);
            x = edge;
        }
    }
    while x + period < cutoff {
        x += period;
        breaks.push(x);
    }
    breaks.push(cutoff);

    let half = integrate_pieces(integrand, &breaks, 1e-14, 1e-12, 20_000);
    Ok(probe.prefactor * 2.0 * half.value / probe.epsilon.powi(3))
}

/// Evaluates the probe at +|W| and -|W| and reports which side responds.
pub fn response_side(probe: &SpectrumProbe, omega_abs: f64) -> Result<ResponseSide> {
    let pos = spectrum_probe(probe, omega_abs.abs())?.abs();
    let neg = spectrum_probe(probe, -omega_abs.abs())?.abs();
    Ok(if neg > pos {
        ResponseSide::NegativeFrequency
    } else {
        ResponseSide::PositiveFrequency
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::kepler_frequency;
    use crate::harmonic::{equilibrium_radius, field_from_q, radius_from_q, shape_set, Q_MIN};
    use approx::assert_relative_eq;

    #[test]
    fn field_free_modes() {
        let m = linearized_mode_frequencies(1.0).unwrap();
        assert!((m.plus - 1.0).abs() < 1e-12);
        assert!(m.minus.abs() < 1e-6);
        assert_eq!(m.z, 1.0);
        assert!(m.stable);
    }

    #[test]
    fn modes_at_best_confined() {
        let m = linearized_mode_frequencies(0.9562).unwrap();
        assert_relative_eq!(m.plus, 0.949_972_430_426_758, max_relative = 1e-10);
        assert_relative_eq!(m.minus, 0.375_968_591_014_034, max_relative = 1e-10);
        assert_relative_eq!(m.z, 0.9562f64.sqrt());
        assert!(m.stable);
    }

    #[test]
    fn instability_below_border() {
        let m = linearized_mode_frequencies(0.8).unwrap();
        assert!(!m.stable);
        assert!(m.max_real_part > 1e-2);
        let (lo, hi) = locate_stability_border(0.8, 0.95, 1e-7).unwrap();
        assert!(lo < Q_MIN + 1e-5 && hi > Q_MIN - 1e-5, "[{lo}, {hi}]");
    }

    #[test]
    fn isotropic_moments() {
        let mass = CODATA_2018.electron_mass;
        let omega = 1e16;
        let pkt = WavepacketGaussian::new(1.0, 1.0, 0.0, 1.0, 5e-11, mass, omega).unwrap();
        let m = gaussian_moments(&pkt).unwrap();
        let expected = CODATA_2018.reduced_planck / (2.0 * mass * omega);
        for v in [m.x_sq, m.y_sq, m.z_sq] {
            assert_relative_eq!(v, expected, max_relative = 1e-10);
        }
        assert_relative_eq!(m.norm, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn moments_at_n12_muon() {
        let muon = ParticleSpec::muon();
        let w = kepler_frequency(12, &muon).unwrap();
        let s = shape_set(0.9562).unwrap();
        let x0 = radius_from_q(0.9562, w, &muon).unwrap();
        let pkt = WavepacketGaussian::from_shape(&s, x0, &muon, w).unwrap();
        let m = gaussian_moments(&pkt).unwrap();
        assert_relative_eq!(m.x_sq, 1.106_806_135_38e-22, max_relative = 1e-9);
    }

    #[test]
    fn moments_ignore_phase_parameter() {
        let mass = CODATA_2018.electron_mass;
        let base = WavepacketGaussian::new(0.5, 0.06, 0.0, 0.97, 1e-10, mass, 1e16).unwrap();
        let m0 = gaussian_moments(&base).unwrap();
        for c in [0.3, 0.78, 5.0] {
            let m = gaussian_moments(&WavepacketGaussian { c, ..base }).unwrap();
            assert_relative_eq!(m.x_sq, m0.x_sq, max_relative = 1e-12);
            assert_relative_eq!(m.norm, m0.norm, max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_bad_widths() {
        assert!(WavepacketGaussian::new(0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 1.0).is_err());
        assert!(WavepacketGaussian::new(1.0, -1.0, 0.0, 1.0, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn residuals() {
        let muon = ParticleSpec::muon();
        let w = kepler_frequency(12, &muon).unwrap();
        let free = equilibrium_radius(w, 0.0, &muon).unwrap();
        assert!(equilibrium_residual(&free, &muon) < 1e-12);
        let e = field_from_q(0.9562, w, &muon).unwrap();
        let pt = equilibrium_radius(w, e, &muon).unwrap();
        assert!(equilibrium_residual(&pt, &muon) < 1e-10);
        let bumped = EquilibriumPoint {
            x0: pt.x0 * 1.01,
            ..pt
        };
        let r = equilibrium_residual(&bumped, &muon);
        // first order: (1 + 2q) * 0.01
        assert!((r - 0.029).abs() < 2e-3, "{r}");
    }

    #[test]
    fn spectrum_cubic_law() {
        let probe = SpectrumProbe::new(1.0, 1.0).unwrap();
        let exact = |w: f64| PI / 3.0 * w.abs().powi(3) * (-w.abs()).exp();
        for w in [-0.02, -0.05, -0.2] {
            let v = spectrum_probe(&probe, w).unwrap();
            assert_relative_eq!(v, exact(w), max_relative = 1e-6);
        }
        assert!(spectrum_probe(&probe, 0.05).unwrap().abs() < 1e-10);
        assert_eq!(
            response_side(&probe, 0.1).unwrap(),
            ResponseSide::NegativeFrequency
        );
        assert!(SpectrumProbe::new(0.0, 1.0).is_err());
        assert!(spectrum_probe(&probe, 0.0).is_err());
    }
}
