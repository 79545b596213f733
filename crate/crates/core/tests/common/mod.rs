//! Independent reference values and property checks shared by the
//! integration suites.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use yagi::analysis::{bandwidth, pattern_stats, range_ratio, PatternSample, PatternUnit, RadiationPatternData};
use yagi::em::{far_field, impedance_matrix, segment, simulate_grid, WireGrid};
use yagi::geometry::{build_design, DesignRule};
use yagi::impedance::ComplexImpedance;
use yagi::matching::{gamma_input_impedance, GammaMatchGeometry};

pub const ETA: f64 = 4.0e-7 * PI * 2.998e8;

/// Composite Simpson rule on [a, b] with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Sine integral.
pub fn si(x: f64) -> f64 {
    simpson(|t| if t == 0.0 { 1.0 } else { t.sin() / t }, 0.0, x, 20_000)
}

/// `Cin(x) = integral of (1 - cos t) / t from 0 to x`.
pub fn cin(x: f64) -> f64 {
    simpson(|t| if t == 0.0 { 0.0 } else { (1.0 - t.cos()) / t }, 0.0, x, 20_000)
}

/// Induced-EMF impedance of a thin half-wave dipole.
pub fn half_wave_emf_impedance() -> ComplexImpedance {
    let scale = ETA / (4.0 * PI);
    ComplexImpedance::new(scale * cin(2.0 * PI), scale * si(2.0 * PI))
}

/// Directivity of the sinusoidal-current half-wave dipole, dBi.
pub fn half_wave_directivity_dbi() -> f64 {
    let f2 = |t: f64| {
        let s = t.sin();
        if s < 1e-12 {
            0.0
        } else {
            let f = (0.5 * PI * t.cos()).cos() / s;
            f * f * s
        }
    };
    let integral = simpson(f2, 0.0, PI, 20_000);
    10.0 * (2.0 / integral).log10()
}

pub fn fixture(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Half-wave dipole with radius 1e-4 wavelength at 1 m wavelength.
pub fn dipole_grid(segments: usize) -> WireGrid {
    WireGrid::dipole(0.5, 1e-4, segments).expect("valid dipole")
}

pub const DIPOLE_FREQUENCY: f64 = 2.998e8;

pub fn dipole_impedance(segments: usize) -> ComplexImpedance {
    simulate_grid(dipole_grid(segments), DIPOLE_FREQUENCY, 5.0)
        .expect("dipole solves")
        .impedance
        .z
}

// Strategies -----------------------------------------------------------

pub fn rule() -> impl Strategy<Value = DesignRule> {
    prop_oneof![
        Just(DesignRule::Balanis),
        Just(DesignRule::Nbs688),
        Just(DesignRule::Ycope)
    ]
}

pub fn odd_segments(lo: usize, hi: usize) -> impl Strategy<Value = usize> {
    (lo / 2..=hi / 2).prop_map(|k| 2 * k + 1)
}

// Property checks ------------------------------------------------------

/// The impedance matrix of any valid design is complex-symmetric.
pub fn check_reciprocity(rule: DesignRule, f0: f64, f: f64, segs: usize) -> Result<(), TestCaseError> {
    let design = build_design(rule, f0, 5e-3).unwrap();
    let grid = segment(&design, segs).unwrap();
    let z = impedance_matrix(&grid, f).unwrap();
    let asym = z.relative_asymmetry();
    prop_assert!(asym <= 1e-10, "asymmetry {asym:e}");
    Ok(())
}

/// Gain integrates to 4 pi on the output grid.
pub fn check_normalization(rule: DesignRule, f: f64, segs: usize, resolution: f64) -> Result<(), TestCaseError> {
    let design = build_design(rule, 900e6, 5e-3).unwrap();
    let grid = segment(&design, segs).unwrap();
    let sim = simulate_grid(grid, f, resolution).unwrap();
    let ratio = sim.far_field.normalization_ratio();
    prop_assert!((ratio - 1.0).abs() <= 0.02, "ratio {ratio}");
    // the pattern is rebuilt from the same currents
    let again = far_field(&sim.solution, &sim.grid, resolution).unwrap();
    prop_assert_eq!(again.peak(), sim.far_field.peak());
    Ok(())
}

/// Impedance-admittance inversions in the gamma chain are exact to 1e-12.
pub fn check_inversions(za: ComplexImpedance, geom: GammaMatchGeometry) -> Result<(), TestCaseError> {
    let sol = gamma_input_impedance(za, &geom).unwrap();
    let one = Complex64::new(1.0, 0.0);
    prop_assert!((sol.z2_norm * sol.y2_norm - one).norm() <= 1e-12);
    prop_assert!((sol.zin_norm * sol.yin_norm - one).norm() <= 1e-12);
    prop_assert!((sol.zg_norm * sol.yg_norm - one).norm() <= 1e-12);
    Ok(())
}

/// Raising the VSWR limit never narrows the band.
pub fn check_bandwidth_monotone(
    points: &[(f64, f64, f64)],
    lo: f64,
    extra: f64,
) -> Result<(), TestCaseError> {
    let sweep: Vec<(f64, ComplexImpedance)> = points
        .iter()
        .enumerate()
        .map(|(i, &(df, r, x))| (1e8 + i as f64 * 1e6 + df, ComplexImpedance::new(r, x)))
        .collect();
    let narrow = bandwidth(&sweep, 50.0, lo).unwrap();
    let wide = bandwidth(&sweep, 50.0, lo + extra).unwrap();
    prop_assert!(
        wide.width_hz >= narrow.width_hz - 1e-6,
        "{} < {}",
        wide.width_hz,
        narrow.width_hz
    );
    Ok(())
}

/// Physical dimensions scale exactly with wavelength.
pub fn check_lambda_scaling(rule: DesignRule, f: f64) -> Result<(), TestCaseError> {
    let base = build_design(rule, 900e6, 5e-3).unwrap();
    let scaled = build_design(rule, f, 5e-3).unwrap();
    let k = 900e6 / f;
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(1e-3);
    for (b, s) in base.elements.iter().zip(&scaled.elements) {
        prop_assert!(close(b.length * k, s.length));
        prop_assert!(close(b.position * k, s.position));
        prop_assert_eq!(b.role, s.role);
    }
    prop_assert!(close(base.boom_length * k, scaled.boom_length));
    Ok(())
}

pub fn check_pattern_ordering(values: &[f64]) -> Result<(), TestCaseError> {
    let samples = values
        .iter()
        .enumerate()
        .map(|(i, &v)| PatternSample {
            angle_deg: i as f64 * 360.0 / values.len() as f64,
            value: v,
        })
        .collect();
    let p = RadiationPatternData::new(samples, PatternUnit::Meters, "p").unwrap();
    let st = pattern_stats(&p);
    prop_assert!(st.max.value >= st.mean - 1e-12 && st.mean >= st.min.value - 1e-12);
    Ok(())
}

pub fn check_range_ratio_inverse(g1: f64, g2: f64, n: f64) -> Result<(), TestCaseError> {
    let prod = range_ratio(g1, g2, n).unwrap() * range_ratio(g2, g1, n).unwrap();
    prop_assert!((prod - 1.0).abs() <= 1e-12);
    Ok(())
}
