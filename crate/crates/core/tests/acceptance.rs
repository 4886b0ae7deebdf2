//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use trojan_core::harmonic::{radius_from_q, Q_MIN};
use trojan_core::oracles::{gaussian_moments, linearized_mode_frequencies, WavepacketGaussian};
use trojan_core::verify::grid;
use trojan_core::{
    gamma_sp, gamma_ud, kepler_frequency, orbital_acceleration, ratio_ud_sp, shape_set,
    unruh_temperature, wavelength_of, Convention, DriveParameters, ParticleSpec, Result,
    BEST_CONFINED_Q, CODATA_2018,
};

fn rel(value: f64, reference: f64) -> f64 {
    ((value - reference) / reference).abs()
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { passed, detail })
}

fn within(measured: f64, target: f64, tol: f64, unit: &str) -> Result<Outcome> {
    let e = rel(measured, target);
    outcome(
        e <= tol,
        format!("{measured:.6e} {unit} vs {target:e}, rel err {e:.2e} (tol {tol:e})"),
    )
}

fn ratio_reproduction() -> Result<Outcome> {
    within(
        ratio_ud_sp(BEST_CONFINED_Q, Convention::Calibrated)?,
        0.190_686,
        5e-3,
        "",
    )
}

fn absolute_rate() -> Result<Outcome> {
    let muon = ParticleSpec::muon();
    let w = kepler_frequency(12, &muon)?;
    within(
        gamma_ud(BEST_CONFINED_Q, w, &muon, Convention::Calibrated)?,
        1.117_84e6,
        5e-3,
        "1/s",
    )
}

fn laser_wavelength() -> Result<Outcome> {
    let w = kepler_frequency(12, &ParticleSpec::muon())?;
    within(wavelength_of(w)? * 1e9, 380.782, 1e-4, "nm")
}

fn laser_intensity() -> Result<Outcome> {
    let muon = ParticleSpec::muon();
    let w = kepler_frequency(12, &muon)?;
    let drive = DriveParameters::at(BEST_CONFINED_Q, w, &muon)?;
    within(drive.intensity_w_per_cm2(), 5.89e14, 1e-2, "W/cm^2")
}

fn acceleration() -> Result<Outcome> {
    let a = orbital_acceleration(1, &ParticleSpec::muon())?;
    within(a / CODATA_2018.standard_gravity, 1.90e24, 1e-2, "g")
}

fn temperature() -> Result<Outcome> {
    let muon = ParticleSpec::muon();
    let t1 = unruh_temperature(orbital_acceleration(1, &muon)?)?;
    let t3 = unruh_temperature(orbital_acceleration(3, &muon)?)?;
    let e1 = rel(t1, 75_830.0);
    let e81 = rel(t3, t1 / 81.0);
    let e936 = rel(t3, 936.0);
    outcome(
        e1 <= 1e-3 && e81 <= 1e-12 && e936 <= 1e-3,
        format!(
            "T(1) = {t1:.2} K (rel err {e1:.2e}), T(3) = {t3:.2} K, T(3)*81/T(1) - 1 = {e81:.1e}"
        ),
    )
}

fn oracle_equivalence() -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut unstable_inside = 0;
    for q in grid(Q_MIN + 1e-6, 1.0, 1000) {
        let lin = linearized_mode_frequencies(q)?;
        let s = shape_set(q)?;
        worst = worst.max(rel(lin.plus, s.omega_plus_ratio));
        worst = worst.max(if s.theta == 0.0 {
            lin.minus
        } else {
            rel(lin.minus, s.theta)
        });
        unstable_inside += usize::from(!lin.stable);
    }
    let mut missed = 0;
    for q in grid(0.3, Q_MIN - 1e-6, 200) {
        missed += usize::from(linearized_mode_frequencies(q)?.stable);
    }
    outcome(
        worst < 1e-10 && unstable_inside == 0 && missed == 0,
        format!("max rel err {worst:.2e} over 1000 q, unstable inside window {unstable_inside}, unflagged below 8/9 {missed}"),
    )
}

fn moment_oracle() -> Result<Outcome> {
    let muon = ParticleSpec::muon();
    let w = kepler_frequency(12, &muon)?;
    let m_omega = muon.mass(&CODATA_2018) * w;
    let hbar = CODATA_2018.reduced_planck;
    let mut worst = 0.0f64;
    let mut norm = 0.0f64;
    for q in grid(Q_MIN + 1e-3, 1.0 - 1e-4, 50) {
        let s = shape_set(q)?;
        let pkt = WavepacketGaussian::from_shape(&s, radius_from_q(q, w, &muon)?, &muon, w)?;
        let m = gaussian_moments(&pkt)?;
        for (got, width) in [(m.x_sq, s.a), (m.y_sq, s.b), (m.z_sq, s.d)] {
            worst = worst.max(rel(got, hbar / (2.0 * width * m_omega)));
        }
        norm = norm.max((m.norm - 1.0).abs());
    }
    outcome(
        worst < 1e-8 && norm < 1e-8,
        format!("max rel err {worst:.2e} over 50 q, normalization off by {norm:.2e}"),
    )
}

fn structural_invariants() -> Result<Outcome> {
    let mut sum = 0.0f64;
    let mut prod = 0.0f64;
    let mut theta_ok = true;
    let mut prev = f64::INFINITY;
    for q in grid(Q_MIN + 1e-6, 1.0, 1000) {
        let s = shape_set(q)?;
        let (p2, m2) = (s.omega_plus_ratio.powi(2), s.theta.powi(2));
        sum = sum.max(rel(p2 + m2, 2.0 - q));
        prod = prod.max(((p2 * m2) - (1.0 + 2.0 * q) * (1.0 - q)).abs());
        theta_ok &= s.theta < prev;
        prev = s.theta;
    }

    let muon = ParticleSpec::muon();
    let electron = ParticleSpec::electron();
    let w12 = kepler_frequency(12, &muon)?;
    let g_one = gamma_ud(1.0, w12, &muon, Convention::Calibrated)?;
    let g_near: Vec<f64> = [0.999, 0.9999, 0.99999]
        .iter()
        .map(|&q| gamma_ud(q, w12, &muon, Convention::Calibrated))
        .collect::<Result<_>>()?;
    let vanishing = g_one == 0.0 && g_near.windows(2).all(|w| w[1] < w[0]);

    let mut universality = 0.0f64;
    for q in [0.9, 0.93, BEST_CONFINED_Q, 0.99] {
        let direct = ratio_ud_sp(q, Convention::Calibrated)?;
        for (n, p) in [
            (1u32, &muon),
            (12, &muon),
            (40, &muon),
            (3, &electron),
            (12, &electron),
        ] {
            let w = kepler_frequency(n, p)?;
            let r = gamma_ud(q, w, p, Convention::Calibrated)? / gamma_sp(q, w, p)?;
            universality = universality.max(rel(r, direct));
        }
    }

    outcome(
        sum <= 1e-12 && prod <= 1e-12 && theta_ok && vanishing && universality <= 1e-14,
        format!(
            "sum {sum:.1e}, product {prod:.1e}, theta decreasing {theta_ok}, gamma_ud -> 0 {vanishing}, ratio spread {universality:.1e}"
        ),
    )
}

fn convention_ledger() -> Result<Outcome> {
    let muon = ParticleSpec::muon();
    let w = kepler_frequency(12, &muon)?;
    let mut worst = 0.0f64;
    for q in grid(Q_MIN + 1e-4, 0.9999, 97) {
        let printed = gamma_ud(q, w, &muon, Convention::AsPrinted)?;
        let calibrated = gamma_ud(q, w, &muon, Convention::Calibrated)?;
        worst = worst.max(rel(printed / calibrated, PI));
    }
    let printed_ratio = ratio_ud_sp(BEST_CONFINED_Q, Convention::AsPrinted)?;
    let e = rel(printed_ratio, 0.5998);
    outcome(
        worst <= 1e-12 && e <= 5e-3,
        format!("printed/calibrated vs pi {worst:.1e}, printed ratio {printed_ratio:.6} (rel err {e:.2e})"),
    )
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("ratio reproduction", ratio_reproduction),
        ("absolute rate", absolute_rate),
        ("laser wavelength", laser_wavelength),
        ("laser intensity", laser_intensity),
        ("acceleration", acceleration),
        ("temperature", temperature),
        ("eigenvalue oracle", oracle_equivalence),
        ("gaussian moment oracle", moment_oracle),
        ("structural invariants", structural_invariants),
        ("convention ledger", convention_ledger),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (tag, detail) = match check() {
            Ok(o) if o.passed => ("PASS", o.detail),
            Ok(o) => ("FAIL", o.detail),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("[{tag}] {:>2}. {name}: {detail}", i + 1);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
