//! The oracle suite: every closed form checked against its independent
//! re-derivation, plus the structural invariants of each module.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::{
    kepler_frequency, particle_units, wavelength_of, ParticleSpec, Quantity, CODATA_2018,
};
use crate::harmonic::{
    equilibrium_radius, field_from_q, q_of_scaled_field, radius_from_q, scaled_field_of_q,
    shape_set, Q_MIN,
};
use crate::oracles::{
    equilibrium_residual, gaussian_moments, linearized_mode_frequencies, locate_stability_border,
    spectrum_probe, SpectrumProbe, WavepacketGaussian,
};
use crate::rates::{gamma_sp, gamma_ud, ratio_ud_sp, Convention, BEST_CONFINED_Q};
use crate::Result;

/// Deliberate defects used to show that the suite catches them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Mode ratios without the inner radical: sqrt(2 - q +/- (9q^2 - 8q))/sqrt(2).
    DroppedRadical,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct VerifyOptions {
    /// Replaces every threshold when set.
    pub tolerance: Option<f64>,
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Uniform grid of `count` points on `[lo, hi]`.
pub fn grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2);
    let step = (hi - lo) / (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else {
                lo + step * i as f64
            }
        })
        .collect()
}

fn rel_err(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        value.abs()
    } else {
        ((value - reference) / reference).abs()
    }
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values
        .into_iter()
        .fold(0.0, |acc, v| if v.is_nan() { f64::NAN } else { acc.max(v) })
}

/// Mode ratios (plus, minus) as the shape functions report them, or the
/// faulty variant when a fault is injected.
fn closed_form_modes(q: f64, fault: Option<Fault>) -> Result<(f64, f64)> {
    match fault {
        Some(Fault::DroppedRadical) => {
            let inner = 9.0 * q * q - 8.0 * q;
            let plus = ((2.0 - q + inner) / 2.0).sqrt();
            let minus = ((2.0 - q - inner) / 2.0).max(0.0).sqrt();
            Ok((plus, minus))
        }
        None => {
            let s = shape_set(q)?;
            Ok((s.omega_plus_ratio, s.theta))
        }
    }
}

struct Suite {
    opts: VerifyOptions,
    checks: Vec<CheckResult>,
}

impl Suite {
    fn record(&mut self, name: &str, measured: f64, threshold: f64) {
        let threshold = self.opts.tolerance.unwrap_or(threshold);
        self.checks.push(CheckResult {
            name: name.to_string(),
            measured,
            threshold,
            passed: measured.is_finite() && measured <= threshold,
        });
    }
}

/// Number of q points for the eigenvalue comparison.
pub const EIGEN_GRID_POINTS: usize = 1000;
/// Number of q points for the moment comparison.
pub const MOMENT_GRID_POINTS: usize = 50;

/// Runs the full suite.
pub fn run_verification(opts: VerifyOptions) -> Result<VerificationReport> {
    let mut suite = Suite {
        opts,
        checks: Vec::new(),
    };
    let k = CODATA_2018;
    let muon = ParticleSpec::muon();
    let electron = ParticleSpec::electron();
    let q_grid = grid(Q_MIN + 1e-6, 1.0, EIGEN_GRID_POINTS);

    suite.record(
        "constants: fine_structure vs e^2/(4 pi eps0 hbar c)",
        rel_err(k.derived_fine_structure(), k.fine_structure),
        1e-9,
    );

    let kinds = [
        Quantity::Length,
        Quantity::Time,
        Quantity::Frequency,
        Quantity::Field,
        Quantity::Energy,
    ];
    let mut worst = 0.0f64;
    for p in [&electron, &muon] {
        let u = particle_units(p);
        for kind in kinds {
            for x in [1e-20, 0.37, 6.1e14, 2.2e33] {
                worst = worst.max(rel_err(u.to_si(kind, u.from_si(kind, x)), x));
            }
        }
    }
    suite.record("units: round trip to_si(from_si(x))", worst, 1e-14);

    let l1 = wavelength_of(kepler_frequency(1, &muon)?)?;
    let mut worst = 0.0f64;
    for n in [2u32, 5, 12, 30] {
        let ln = wavelength_of(kepler_frequency(n, &muon)?)?;
        worst = worst.max(rel_err(ln / l1, f64::from(n).powi(3)));
    }
    suite.record("units: wavelength scales as n^3", worst, 1e-13);

    // eigenvalue oracle
    let mut eig_err = 0.0f64;
    let mut z_err = 0.0f64;
    let mut unstable_inside = 0usize;
    for &q in &q_grid {
        let lin = linearized_mode_frequencies(q)?;
        let (plus, minus) = closed_form_modes(q, suite.opts.fault)?;
        eig_err = max_of([eig_err, rel_err(lin.plus, plus), rel_err(lin.minus, minus)]);
        z_err = z_err.max(rel_err(lin.z, q.sqrt()));
        if !lin.stable {
            unstable_inside += 1;
        }
    }
    suite.record(
        "oracle: mode ratios vs linearization eigenvalues (1000 q)",
        eig_err,
        1e-10,
    );
    suite.record("oracle: z-mode sqrt(q) vs Hessian", z_err, 1e-15);
    suite.record(
        "oracle: marginal stability inside window (violations)",
        unstable_inside as f64,
        0.0,
    );

    let below = grid(0.5, Q_MIN - 1e-6, 200);
    let mut missed = 0usize;
    for &q in &below {
        if linearized_mode_frequencies(q)?.stable {
            missed += 1;
        }
    }
    suite.record(
        "oracle: instability flagged below 8/9 (misses)",
        missed as f64,
        0.0,
    );
    let (lo, hi) = locate_stability_border(0.8, 0.95, 1e-7)?;
    suite.record(
        "oracle: bisected stability border distance from 8/9",
        (0.5 * (lo + hi) - Q_MIN).abs(),
        1e-5,
    );

    // structural identities
    let mut sum_err = 0.0f64;
    let mut prod_err = 0.0f64;
    let mut theta_violations = 0usize;
    let mut prev_theta = f64::INFINITY;
    let mut nonneg_violations = 0usize;
    for &q in &q_grid {
        let s = shape_set(q)?;
        let (p2, m2) = (s.omega_plus_ratio.powi(2), s.theta.powi(2));
        sum_err = sum_err.max(rel_err(p2 + m2, 2.0 - q));
        prod_err = prod_err.max(rel_err(p2 * m2, (1.0 + 2.0 * q) * (1.0 - q)));
        if s.theta >= prev_theta {
            theta_violations += 1;
        }
        prev_theta = s.theta;
        if !(s.a >= 0.0 && s.b >= 0.0 && s.c > 0.0 && 4.0 * s.f - 9.0 * q * q >= 0.0) {
            nonneg_violations += 1;
        }
    }
    suite.record("harmonic: (w+^2 + w-^2)/w^2 = 2 - q", sum_err, 1e-12);
    suite.record("harmonic: w+^2 w-^2/w^4 = (1+2q)(1-q)", prod_err, 1e-12);
    suite.record(
        "harmonic: theta strictly decreasing (violations)",
        theta_violations as f64,
        0.0,
    );
    suite.record(
        "harmonic: A, B, 4f - 9q^2 nonnegative (violations)",
        nonneg_violations as f64,
        0.0,
    );

    let mut round_trip = 0.0f64;
    for &q in &q_grid {
        let sf = scaled_field_of_q(q)?;
        if sf < crate::harmonic::scaled_field_max() {
            round_trip = round_trip.max((scaled_field_of_q(q_of_scaled_field(sf)?)? - sf).abs());
        }
    }
    suite.record(
        "harmonic: scaled field inverse round trip",
        round_trip,
        1e-12,
    );

    // equilibrium solver vs SI force balance
    let mut resid = 0.0f64;
    let mut q_back = 0.0f64;
    for n in [1u32, 12] {
        let w = kepler_frequency(n, &muon)?;
        for &q in q_grid.iter().step_by(20) {
            let e = field_from_q(q, w, &muon)?;
            let pt = equilibrium_radius(w, e, &muon)?;
            resid = resid.max(equilibrium_residual(&pt, &muon));
            q_back = q_back.max((pt.q - q).abs());
        }
    }
    suite.record(
        "oracle: equilibrium residual of solver output",
        resid,
        1e-10,
    );
    suite.record(
        "harmonic: field_from_q -> equilibrium_radius recovers q",
        q_back,
        1e-10,
    );

    // Gaussian moments
    let w12 = kepler_frequency(12, &muon)?;
    let hbar = k.reduced_planck;
    let m_omega = muon.mass(&k) * w12;
    let mut moment_err = 0.0f64;
    let mut norm_err = 0.0f64;
    let mut phase_drift = 0.0f64;
    for q in grid(Q_MIN + 1e-3, 1.0 - 1e-4, MOMENT_GRID_POINTS) {
        let s = shape_set(q)?;
        let x0 = radius_from_q(q, w12, &muon)?;
        let pkt = WavepacketGaussian::from_shape(&s, x0, &muon, w12)?;
        let m = gaussian_moments(&pkt)?;
        moment_err = max_of([
            moment_err,
            rel_err(m.x_sq, hbar / (2.0 * s.a * m_omega)),
            rel_err(m.y_sq, hbar / (2.0 * s.b * m_omega)),
            rel_err(m.z_sq, hbar / (2.0 * s.d * m_omega)),
        ]);
        norm_err = norm_err.max((m.norm - 1.0).abs());
        let dephased = gaussian_moments(&WavepacketGaussian { c: 0.0, ..pkt })?;
        phase_drift = max_of([
            phase_drift,
            rel_err(dephased.x_sq, m.x_sq),
            rel_err(dephased.y_sq, m.y_sq),
            rel_err(dephased.norm, m.norm),
        ]);
    }
    suite.record(
        "oracle: quadrature moments vs hbar/(2 W m w) (50 q)",
        moment_err,
        1e-8,
    );
    suite.record("oracle: |psi0|^2 normalization", norm_err, 1e-8);
    suite.record(
        "oracle: moments independent of phase parameter C",
        phase_drift,
        1e-10,
    );

    // rates
    let near_one = grid(0.999, 1.0, 101);
    let mut monotone = 0usize;
    let mut prev = f64::INFINITY;
    for &q in &near_one {
        let g = gamma_ud(q, w12, &muon, Convention::Calibrated)?;
        if g > prev {
            monotone += 1;
        }
        prev = g;
    }
    suite.record(
        "rates: gamma_ud decreasing to 0 on [0.999, 1] (violations)",
        monotone as f64,
        0.0,
    );
    suite.record(
        "rates: gamma_ud(q = 1)",
        gamma_ud(1.0, w12, &muon, Convention::Calibrated)?,
        0.0,
    );

    let mut conv_err = 0.0f64;
    let mut universality = 0.0f64;
    let mut omega_sq = 0.0f64;
    let w1 = kepler_frequency(1, &muon)?;
    let we = kepler_frequency(3, &electron)?;
    for &q in q_grid.iter().step_by(10).filter(|&&q| q < 1.0) {
        let printed = gamma_ud(q, w12, &muon, Convention::AsPrinted)?;
        let calibrated = gamma_ud(q, w12, &muon, Convention::Calibrated)?;
        conv_err = conv_err.max(rel_err(printed / calibrated, PI));
        let r12 = gamma_ud(q, w12, &muon, Convention::Calibrated)? / gamma_sp(q, w12, &muon)?;
        let r1 = gamma_ud(q, w1, &muon, Convention::Calibrated)? / gamma_sp(q, w1, &muon)?;
        let re = gamma_ud(q, we, &electron, Convention::Calibrated)? / gamma_sp(q, we, &electron)?;
        let direct = ratio_ud_sp(q, Convention::Calibrated)?;
        universality = max_of([
            universality,
            rel_err(r12, direct),
            rel_err(r1, direct),
            rel_err(re, direct),
        ]);
        let sp_scaling = gamma_sp(q, 2.0 * w12, &muon)? / gamma_sp(q, w12, &muon)?;
        omega_sq = omega_sq.max(rel_err(sp_scaling, 4.0));
    }
    suite.record("rates: printed / calibrated gamma_ud = pi", conv_err, 1e-12);
    suite.record(
        "rates: ratio independent of n, omega, particle",
        universality,
        1e-14,
    );
    suite.record("rates: gamma_sp scales as omega^2", omega_sq, 1e-14);
    suite.record(
        "rates: calibrated ratio at best-confined q vs 0.190686",
        rel_err(
            ratio_ud_sp(BEST_CONFINED_Q, Convention::Calibrated)?,
            0.190_686,
        ),
        5e-3,
    );

    // spectrum probe: cubic law and regularization factor
    let probe = SpectrumProbe::new(1e-2, 1.0)?;
    let base = 1.0;
    let v1 = spectrum_probe(&probe, -base)?;
    let v2 = spectrum_probe(&probe, -2.0 * base)?;
    let cubic = rel_err(v2 / v1, 8.0 * (-probe.epsilon * base).exp());
    let absorption = (spectrum_probe(&probe, base)? / v1).abs();
    let wider = SpectrumProbe::new(2.0 * probe.epsilon, 1.0)?;
    let eps_factor = rel_err(
        spectrum_probe(&wider, -base)? / v1,
        (-probe.epsilon * base).exp(),
    );
    suite.record(
        "oracle: spectrum value(2W)/value(W) = 8 exp(-eps W)",
        cubic,
        1e-2,
    );
    suite.record(
        "oracle: spectrum absorption side vanishes (relative)",
        absorption,
        1e-6,
    );
    suite.record(
        "oracle: spectrum doubling eps multiplies by exp(-eps W)",
        eps_factor,
        1e-2,
    );

    Ok(VerificationReport {
        checks: suite.checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = grid(0.0, 1.0, 5);
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn default_suite_passes() {
        let report = run_verification(VerifyOptions::default()).unwrap();
        let failed: Vec<_> = report.failures().collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn dropped_radical_is_caught() {
        let report = run_verification(VerifyOptions {
            fault: Some(Fault::DroppedRadical),
            ..Default::default()
        })
        .unwrap();
        let eig = report
            .checks
            .iter()
            .find(|c| c.name.contains("linearization eigenvalues"))
            .unwrap();
        assert!(!eig.passed && eig.measured > 1e-3, "{eig:?}");
    }

    #[test]
    fn impossible_tolerance_fails() {
        let report = run_verification(VerifyOptions {
            tolerance: Some(1e-30),
            ..Default::default()
        })
        .unwrap();
        assert!(!report.all_passed());
    }
}
