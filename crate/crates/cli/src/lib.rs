//! Rendering and sweep assembly behind the `trojan` binary.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use trojan_core::harmonic::{scaled_field_max, Q_MAX, Q_MIN};
use trojan_core::kinematics::KinematicsReport;
use trojan_core::verify::{grid, VerificationReport};
use trojan_core::{
    gamma_sp, gamma_ud, kepler_frequency, q_of_scaled_field, ratio_ud_sp, scaled_field_of_q,
    shape_set, Convention, Error, ParticleSpec, RateReport, CODATA_2018,
};

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Text,
}

/// Sweep axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridAxis {
    Q,
    ScaledField,
}

/// Fixed-width scientific rendering used in every table: 10 significant
/// digits, '.' decimal point, no grouping.
pub fn sci(v: f64) -> String {
    format!("{v:.9e}")
}

fn opt_sci(v: Option<f64>) -> String {
    v.map(sci).unwrap_or_default()
}

pub const SWEEP_HEADER: [&str; 11] = [
    "q",
    "scaled_field",
    "theta",
    "A",
    "B",
    "C",
    "lambda",
    "alpha_tilde_sq",
    "gamma_ud_per_s",
    "gamma_sp_per_s",
    "ratio",
];

/// One grid point of a sweep. Border divergences are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub q: f64,
    pub scaled_field: f64,
    pub theta: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub lambda: f64,
    pub alpha_tilde_sq: f64,
    pub gamma_ud_per_s: Option<f64>,
    pub gamma_sp_per_s: Option<f64>,
    pub ratio: Option<f64>,
}

impl SweepRow {
    fn cells(&self) -> [String; 11] {
        [
            sci(self.q),
            sci(self.scaled_field),
            sci(self.theta),
            sci(self.a),
            sci(self.b),
            sci(self.c),
            sci(self.lambda),
            sci(self.alpha_tilde_sq),
            opt_sci(self.gamma_ud_per_s),
            opt_sci(self.gamma_sp_per_s),
            opt_sci(self.ratio),
        ]
    }
}

fn border_as_none(r: trojan_core::Result<f64>) -> trojan_core::Result<Option<f64>> {
    match r {
        Ok(v) if v.is_finite() => Ok(Some(v)),
        Ok(_) | Err(Error::BorderSingularity { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Evaluates one sweep row at the n-th Kepler resonance of `particle`.
pub fn sweep_row(
    q: f64,
    n: u32,
    particle: &ParticleSpec,
    convention: Convention,
) -> trojan_core::Result<SweepRow> {
    let s = shape_set(q)?;
    let omega = kepler_frequency(n, particle)?;
    Ok(SweepRow {
        q,
        scaled_field: scaled_field_of_q(q)?,
        theta: s.theta,
        a: s.a,
        b: s.b,
        c: s.c,
        lambda: s.lambda,
        alpha_tilde_sq: s.alpha_tilde_sq,
        gamma_ud_per_s: border_as_none(gamma_ud(q, omega, particle, convention))?,
        gamma_sp_per_s: border_as_none(gamma_sp(q, omega, particle))?,
        ratio: border_as_none(ratio_ud_sp(q, convention))?,
    })
}

/// Sweep request after argument parsing.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub particle: ParticleSpec,
    pub n: u32,
    pub axis: GridAxis,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub convention: Convention,
}

impl SweepConfig {
    pub fn validate(&self) -> trojan_core::Result<()> {
        if self.points < 2 {
            return Err(Error::InvalidArgument(format!(
                "--points must be >= 2, got {}",
                self.points
            )));
        }
        if self.from.partial_cmp(&self.to) != Some(std::cmp::Ordering::Less) {
            return Err(Error::InvalidArgument(format!(
                "sweep range must be increasing, got [{}, {}]",
                self.from, self.to
            )));
        }
        match self.axis {
            GridAxis::Q => {
                for q in [self.from, self.to] {
                    if !(q > Q_MIN && q <= Q_MAX) {
                        return Err(if q <= Q_MIN {
                            Error::BelowStabilityBorder { q }
                        } else {
                            Error::AboveUnity { q }
                        });
                    }
                }
            }
            GridAxis::ScaledField => {
                let max = scaled_field_max();
                for v in [self.from, self.to] {
                    if !(0.0..max).contains(&v) {
                        return Err(Error::ScaledFieldOutOfRange { value: v, max });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Rows on a uniform grid in q (ascending q) or in scaled field (ascending
/// field, hence descending q).
pub fn sweep(cfg: &SweepConfig) -> trojan_core::Result<Vec<SweepRow>> {
    cfg.validate()?;
    grid(cfg.from, cfg.to, cfg.points)
        .into_iter()
        .map(|x| {
            let q = match cfg.axis {
                GridAxis::Q => x,
                GridAxis::ScaledField => q_of_scaled_field(x)?,
            };
            sweep_row(q, cfg.n, &cfg.particle, cfg.convention)
        })
        .collect()
}

pub fn render_sweep(rows: &[SweepRow], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = SWEEP_HEADER.join(",");
            out.push('\n');
            for r in rows {
                out.push_str(&r.cells().join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => json(&rows),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{}",
                SWEEP_HEADER.map(|h| format!("{h:>17}")).join(" ")
            );
            for r in rows {
                let _ = writeln!(out, "{}", r.cells().map(|c| format!("{c:>17}")).join(" "));
            }
            out
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn key_values(pairs: &[(String, String)], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("key,value\n");
            for (k, v) in pairs {
                let _ = writeln!(out, "{k},{v}");
            }
        }
        _ => {
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in pairs {
                let _ = writeln!(out, "{k:<width$} = {v}");
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
struct FullReport<'a> {
    rates: &'a RateReport,
    kinematics: &'a KinematicsReport,
}

fn rate_pairs(r: &RateReport) -> Vec<(String, String)> {
    vec![
        ("particle".into(), r.particle.name.clone()),
        ("n".into(), r.n.to_string()),
        ("q".into(), sci(r.q)),
        ("convention".into(), r.convention.to_string()),
        ("omega_rad_per_s".into(), sci(r.omega)),
        ("gamma_ud_per_s".into(), sci(r.gamma_ud)),
        ("gamma_sp_per_s".into(), opt_sci(r.gamma_sp)),
        ("ratio".into(), opt_sci(r.ratio)),
        ("energy_gap_j".into(), sci(r.energy_gap)),
        (
            "field_amplitude_v_per_m".into(),
            sci(r.drive.field_amplitude),
        ),
        ("x0_m".into(), sci(r.drive.x0)),
        ("scaled_field".into(), sci(r.drive.scaled_field)),
        ("wavelength_m".into(), sci(r.drive.wavelength)),
        ("intensity_w_per_m2".into(), sci(r.drive.intensity)),
        (
            "intensity_w_per_cm2".into(),
            sci(r.drive.intensity_w_per_cm2()),
        ),
    ]
}

fn kinematics_pairs(k: &KinematicsReport) -> Vec<(String, String)> {
    vec![
        ("acceleration_m_per_s2".into(), sci(k.acceleration)),
        ("acceleration_g".into(), sci(k.acceleration_g)),
        ("beta".into(), sci(k.beta)),
        ("gamma".into(), sci(k.gamma)),
        ("davies_temperature_k".into(), sci(k.davies_temperature)),
        (
            "revolutions_per_lifetime".into(),
            match k.revolutions_per_lifetime {
                trojan_core::Revolutions::Finite(v) => sci(v),
                trojan_core::Revolutions::Infinite => "infinite".into(),
            },
        ),
    ]
}

pub fn render_report(rates: &RateReport, kin: &KinematicsReport, format: Format) -> String {
    match format {
        Format::Json => json(&FullReport {
            rates,
            kinematics: kin,
        }),
        _ => {
            let mut pairs = rate_pairs(rates);
            pairs.extend(kinematics_pairs(kin));
            key_values(&pairs, format)
        }
    }
}

pub fn render_kinematics(kin: &KinematicsReport, format: Format) -> String {
    match format {
        Format::Json => json(kin),
        _ => {
            let mut pairs = vec![
                ("particle".to_string(), kin.particle.name.clone()),
                ("n".to_string(), kin.n.to_string()),
            ];
            pairs.extend(kinematics_pairs(kin));
            key_values(&pairs, format)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct ConstantsDump {
    constants: trojan_core::PhysicalConstants,
    particles: Vec<ParticleSpec>,
}

pub fn render_constants(format: Format) -> String {
    let particles = ParticleSpec::registry();
    match format {
        Format::Json => json(&ConstantsDump {
            constants: CODATA_2018,
            particles,
        }),
        _ => {
            let mut pairs: Vec<(String, String)> = CODATA_2018
                .entries()
                .into_iter()
                .map(|(k, v)| (k.to_string(), format!("{v:e}")))
                .collect();
            for p in &particles {
                pairs.push((
                    format!("particle.{}.mass_ratio", p.name),
                    format!("{}", p.mass_ratio),
                ));
                pairs.push((
                    format!("particle.{}.charge_magnitude", p.name),
                    format!("{}", p.charge_magnitude),
                ));
                pairs.push((
                    format!("particle.{}.mean_lifetime_s", p.name),
                    p.mean_lifetime.to_string(),
                ));
            }
            key_values(&pairs, format)
        }
    }
}

pub fn render_verification(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let mut out = String::from("check,measured,threshold,passed\n");
            for c in &report.checks {
                let _ = writeln!(
                    out,
                    "\"{}\",{},{},{}",
                    c.name,
                    sci(c.measured),
                    sci(c.threshold),
                    c.passed
                );
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "[{tag}] {:<62} measured {:>16}  threshold {:>16}",
                    c.name,
                    sci(c.measured),
                    sci(c.threshold)
                );
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            let _ = writeln!(out, "{} checks, {} failed", report.checks.len(), failed);
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn muon_sweep(axis: GridAxis, from: f64, to: f64, points: usize) -> SweepConfig {
        SweepConfig {
            particle: ParticleSpec::muon(),
            n: 1,
            axis,
            from,
            to,
            points,
            convention: Convention::Calibrated,
        }
    }

    #[test]
    fn sci_is_fixed_width_scientific() {
        assert_eq!(sci(0.9562), "9.562000000e-1");
        assert_eq!(sci(1.0), "1.000000000e0");
        assert_eq!(sci(-2.5e-13), "-2.500000000e-13");
    }

    #[test]
    fn q_one_row_has_empty_border_cells() {
        let row = sweep_row(1.0, 1, &ParticleSpec::muon(), Convention::Calibrated).unwrap();
        assert_eq!(row.gamma_ud_per_s, Some(0.0));
        assert_eq!(row.gamma_sp_per_s, None);
        assert_eq!(row.ratio, None);
        let csv = render_sweep(&[row], Format::Csv);
        assert!(csv.lines().nth(1).unwrap().ends_with(",,"));
    }

    #[test]
    fn figure_sweep_shape() {
        let rows = sweep(&muon_sweep(GridAxis::Q, 0.89, 0.9999, 400)).unwrap();
        assert_eq!(rows.len(), 400);
        assert!(rows.windows(2).all(|w| w[1].q > w[0].q));
        let ratios: Vec<f64> = rows.iter().map(|r| r.ratio.unwrap()).collect();
        assert!(ratios.iter().all(|r| r.is_finite() && *r > 0.0));
        let peak = ratios.iter().cloned().fold(0.0, f64::max);
        assert!(*ratios.last().unwrap() < 1e-2 * peak);
        let fields: Vec<f64> = rows.iter().map(|r| r.scaled_field).collect();
        assert!(fields[0] <= 0.11556 && *fields.last().unwrap() < 2e-4);
    }

    #[test]
    fn scaled_field_axis_is_monotone_in_q() {
        let rows = sweep(&muon_sweep(GridAxis::ScaledField, 0.0, 0.1, 11)).unwrap();
        assert_eq!(rows[0].q, 1.0);
        assert!(rows.windows(2).all(|w| w[1].q < w[0].q));
        assert!((rows[10].scaled_field - 0.1).abs() < 1e-12);
    }

    #[test]
    fn invalid_ranges() {
        assert!(sweep(&muon_sweep(GridAxis::Q, 0.5, 0.99, 10)).is_err());
        assert!(sweep(&muon_sweep(GridAxis::Q, 0.95, 1.01, 10)).is_err());
        assert!(sweep(&muon_sweep(GridAxis::Q, 0.95, 0.99, 1)).is_err());
        assert!(sweep(&muon_sweep(GridAxis::Q, 0.99, 0.95, 10)).is_err());
        assert!(sweep(&muon_sweep(GridAxis::ScaledField, 0.0, 0.2, 10)).is_err());
    }

    #[test]
    fn json_round_trip_is_value_identical() {
        let rows = sweep(&muon_sweep(GridAxis::Q, 0.9, 1.0, 7)).unwrap();
        let text = render_sweep(&rows, Format::Json);
        let back: Vec<SweepRow> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rows);
        assert_eq!(render_sweep(&back, Format::Json), text);
    }
}
