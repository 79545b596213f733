//! Acceptance gate. Every criterion runs, prints one PASS/FAIL line, and
//! the test fails at the end if any criterion failed.

mod common;

use std::time::{Duration, Instant};

use common::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use yagi::analysis::{
    jamming_range, pattern_stats, range_ratio, return_loss_db, vswr, vswr_from_magnitude, PatternUnit,
    RadiationPatternData, RangeModel, HELIX_GAIN_DBI,
};
use yagi::em::simulate;
use yagi::geometry::{build_design, DesignRule};
use yagi::impedance::ComplexImpedance;
use yagi::matching::{gamma_chain, ChainInputs};

type Outcome = Result<String, String>;

fn within(name: &str, got: f64, want: f64, tol: f64) -> Result<String, String> {
    let msg = format!("{name} = {got:.4} (want {want:.4} +/- {tol:.3e})");
    if (got - want).abs() <= tol {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn in_range(name: &str, got: f64, lo: f64, hi: f64) -> Result<String, String> {
    let msg = format!("{name} = {got:.4} (want [{lo}, {hi}])");
    if (lo..=hi).contains(&got) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn faster_than(name: &str, elapsed: Duration, limit: Duration) -> Result<String, String> {
    let msg = format!("{name} took {elapsed:.3?} (limit {limit:?})");
    if elapsed < limit {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// Runs every check even after a failure and joins the messages.
fn all(checks: Vec<Result<String, String>>) -> Outcome {
    let failed: Vec<&String> = checks.iter().filter_map(|c| c.as_ref().err()).collect();
    if failed.is_empty() {
        Ok(checks.into_iter().map(Result::unwrap).collect::<Vec<_>>().join("; "))
    } else {
        Err(failed.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; "))
    }
}

fn gamma_rounded() -> Outcome {
    let za = ComplexImpedance::new(24.0, 3.73);
    let inputs = ChainInputs {
        u: 1.5,
        v: 6.9,
        alpha: 1.3,
        z0_line: 209.0,
        rod_length: 0.099,
        f0: 900e6,
    };
    let start = Instant::now();
    let reps = 1000;
    let mut sol = gamma_chain(za, &inputs).map_err(|e| e.to_string())?;
    for _ in 1..reps {
        sol = gamma_chain(std::hint::black_box(za), std::hint::black_box(&inputs)).map_err(|e| e.to_string())?;
    }
    let per_call = start.elapsed() / reps;
    let c = sol.c_farad.ok_or("no capacitor")?;
    all(vec![
        within("Z2.re", sol.z2_ohm.re, 63.48, 0.02),
        within("Z2.im", sol.z2_ohm.im, 9.87, 0.02),
        within("z2.re", sol.z2_norm.re, 0.30, 0.01),
        within("z2.im", sol.z2_norm.im, 0.05, 0.01),
        within("y2.re", sol.y2_norm.re, 3.2, 0.05),
        within("y2.im", sol.y2_norm.im, -0.5, 0.05),
        within("zg.re", sol.zg_norm.re, 0.0, 0.01),
        within("zg.im", sol.zg_norm.im, 0.72, 0.01),
        within("yin.re", sol.yin_norm.re, 3.2, 0.05),
        within("yin.im", sol.yin_norm.im, -1.9, 0.05),
        in_range("Zin.re", sol.zin_ohm.re, 48.0, 52.0),
        in_range("C pF", c * 1e12, 5.8, 6.6),
        faster_than("chain", per_call, Duration::from_millis(1)),
    ])
}

fn table_vswr() -> Outcome {
    let start = Instant::now();
    let v1 = vswr(ComplexImpedance::new(24.0, 3.73), 50.0).map_err(|e| e.to_string())?;
    let v2 = vswr(ComplexImpedance::new(83.4, 138.0), 50.0).map_err(|e| e.to_string())?;
    let v3 = vswr(ComplexImpedance::new(1.55, 25.6), 50.0).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    all(vec![
        within("VSWR(24+j3.73)", v1, 2.10, 0.02),
        within("VSWR(83.4+j138)", v2, 6.69, 0.1),
        within("VSWR(1.55+j25.6)", v3, 40.7, 0.5),
        faster_than("vswr", elapsed, Duration::from_millis(1)),
    ])
}

fn vswr_return_loss() -> Outcome {
    let v = 1.46;
    let mag = (v - 1.0) / (v + 1.0);
    let rl = return_loss_db(mag).map_err(|e| e.to_string())?.db().ok_or("perfect match")?;
    let back = vswr_from_magnitude(10f64.powf(-rl / 20.0)).map_err(|e| e.to_string())?;
    all(vec![
        within("RL(1.46) dB", rl, 14.56, 0.01),
        within("meter reading 14.51 dB vs computed", 14.51, rl, 0.15),
        within("VSWR round trip", back, v, 1e-12),
    ])
}

fn dipole_oracle() -> Outcome {
    let start = Instant::now();
    let oracle = half_wave_emf_impedance();
    let sim = yagi::em::simulate_grid(dipole_grid(51), DIPOLE_FREQUENCY, 1.0).map_err(|e| e.to_string())?;
    let z = sim.impedance.z;
    let gain = sim.far_field.peak().gain_dbi;
    let series: Vec<_> = [11, 21, 41].iter().map(|&n| dipole_impedance(n)).collect();
    let d1 = (series[1] - series[0]).norm();
    let d2 = (series[2] - series[1]).norm();
    let elapsed = start.elapsed();
    all(vec![
        within("R", z.re, oracle.re, 0.15 * oracle.re),
        within("X", z.im, oracle.im, 0.15 * oracle.im),
        within("gain dBi", gain, 2.15, 0.4),
        if d2 < d1 {
            Ok(format!("convergence steps {d1:.3} > {d2:.3}"))
        } else {
            Err(format!("convergence not monotone: {d1:.3} then {d2:.3}"))
        },
        faster_than("dipole", elapsed, Duration::from_secs(5)),
    ])
}

fn nbs_yagi() -> Outcome {
    let start = Instant::now();
    let design = build_design(DesignRule::Nbs688, 900e6, 5e-3).map_err(|e| e.to_string())?;
    let at900 = simulate(&design, 900e6, 41, 1.0).map_err(|e| e.to_string())?;
    let at960 = simulate(&design, 960e6, 41, 1.0).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let peak = at900.far_field.peak();
    let g960 = at960.far_field.peak().gain_dbi;
    all(vec![
        within("gain dBi", peak.gain_dbi, 11.2, 1.5),
        if peak.theta_deg == 90.0 && peak.phi_deg == 0.0 {
            Ok("main lobe toward directors (+x)".into())
        } else {
            Err(format!("main lobe at theta {} phi {}", peak.theta_deg, peak.phi_deg))
        },
        in_range("Re Z", at900.impedance.z.re, 14.0, 34.0),
        within("gain(960) - gain(900)", g960 - peak.gain_dbi, 0.0, 1.2),
        faster_than("two solves", elapsed, Duration::from_secs(60)),
    ])
}

fn fixture_stats() -> Outcome {
    let load = |name: &str| {
        RadiationPatternData::from_csv_str(&fixture(name), PatternUnit::Meters, name).map_err(|e| e.to_string())
    };
    let yagi = pattern_stats(&load("yagi_fig10.csv")?);
    let helix = pattern_stats(&load("helix_fig9.csv")?);
    all(vec![
        within("yagi max m", yagi.max.value, 16.72, 0.0),
        within("yagi max angle", yagi.max.angle_deg, 10.0, 0.0),
        within("yagi min m", yagi.min.value, 3.12, 0.0),
        within("yagi min angle", yagi.min.angle_deg, 120.0, 0.0),
        within("helix max m", helix.max.value, 4.6, 0.0),
        within("helix max angle", helix.max.angle_deg, 190.0, 0.0),
        in_range("helix mean m", helix.mean, 3.0, 4.0),
    ])
}

fn range_model() -> Outcome {
    let m = RangeModel::default();
    let helix = jamming_range(&m, HELIX_GAIN_DBI).map_err(|e| e.to_string())?;
    let yagi = jamming_range(&m, 11.2).map_err(|e| e.to_string())?;
    let ratio = range_ratio(-0.8, 11.2, 2.0).map_err(|e| e.to_string())?;
    all(vec![
        within("helix range m", helix.range_m, 4.0, 1e-9),
        in_range("yagi range m", yagi.range_m, 14.0, 18.0),
        within("range ratio", ratio, 3.98, 0.02),
    ])
}

fn run_property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<String, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    match runner.run(&strategy, test) {
        Ok(()) => Ok(format!("{name}: {cases} cases")),
        Err(e) => Err(format!("{name}: {e}")),
    }
}

fn property_suites() -> Outcome {
    use yagi::matching::GammaMatchGeometry;
    all(vec![
        run_property(
            "reciprocity",
            100,
            (rule(), 800e6..1000e6f64, 850e6..1000e6f64, odd_segments(3, 11)),
            |(r, f0, f, s)| check_reciprocity(r, f0, f, s),
        ),
        run_property(
            "normalization",
            100,
            (rule(), 850e6..1000e6f64, odd_segments(5, 11), prop::sample::select(vec![2.0, 3.0, 5.0])),
            |(r, f, s, res)| check_normalization(r, f, s, res),
        ),
        run_property(
            "z.y inversion",
            200,
            (1.0..200.0f64, -150.0..150.0f64, 1.0..5.0f64, 1.0..5.0f64, 1.5..8.0f64, 0.01..0.24f64),
            |(r, x, a, a_rod, gap, rod)| {
                check_inversions(
                    ComplexImpedance::new(r, x),
                    GammaMatchGeometry {
                        a,
                        a_rod,
                        s: (a + a_rod) * gap,
                        rod_length: rod,
                        f0: 900e6,
                    },
                )
            },
        ),
        run_property(
            "bandwidth monotone",
            200,
            (
                prop::collection::vec((0.0..0.5e6f64, 1.0..300.0f64, -200.0..200.0f64), 2..30),
                1.01..5.0f64,
                0.0..5.0f64,
            ),
            |(pts, lo, extra)| check_bandwidth_monotone(&pts, lo, extra),
        ),
        run_property("lambda scaling", 200, (rule(), 50e6..5e9f64), |(r, f)| check_lambda_scaling(r, f)),
    ])
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("gamma-match chain, rounded intermediates", gamma_rounded),
        ("VSWR of tabulated impedances", table_vswr),
        ("VSWR / return-loss consistency", vswr_return_loss),
        ("half-wave dipole against induced-EMF oracle", dipole_oracle),
        ("NBS Yagi at 41 segments per element", nbs_yagi),
        ("pattern statistics of digitized fixtures", fixture_stats),
        ("calibrated jamming-range model", range_model),
        ("randomized property suites", property_suites),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
