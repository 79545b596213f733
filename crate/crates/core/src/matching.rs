//! Gamma-match synthesis.
//!
//! The chain runs from the free-space feed impedance `Za` to the matched
//! input impedance and series capacitor:
//!
//! 1. current division factor `alpha = ln v / (ln v - ln u)`;
//! 2. step-up `(1 + alpha)^2` and `Z2 = (1 + alpha)^2 Za / 2`;
//! 3. rod/element line impedance `Z0 = 276 log10(s / sqrt(a a'))`;
//! 4. `z2 = Z2 / Z0`, `y2 = 1 / z2`;
//! 5. shorted rod as a stub, `zg = j tan(2 pi l)`, `yg = 1 / zg`;
//! 6. `yin = y2 + yg`, `zin = 1 / yin`, `Zin = zin Z0`;
//! 7. `C = 1 / (2 pi f0 Im Zin)` when `Im Zin > 0`.
//!
//! All steps are closed-form complex arithmetic at full precision.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::impedance::{complex_pair, ComplexImpedance};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatchError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("current division factor undefined: ln(v) equals ln(u) (u = {u}, v = {v})")]
    DivisionByZero { u: f64, v: f64 },
    #[error("conductors too close: s / sqrt(a a') = {ratio} must exceed 1")]
    ConductorsTooClose { ratio: f64 },
    #[error("quarter-wave shorted stub is an open circuit (infinite reactance)")]
    OpenCircuit,
    #[error("input admittance vanished; no finite input impedance")]
    DegenerateMatch,
    #[error("series capacitor needs a positive (inductive) reactance, got {0} ohm")]
    NonInductive(f64),
}

fn finite(name: &str, x: f64) -> Result<f64, MatchError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(MatchError::InvalidInput(format!("{name} = {x} is not finite")))
    }
}

fn positive(name: &str, x: f64) -> Result<f64, MatchError> {
    if finite(name, x)? > 0.0 {
        Ok(x)
    } else {
        Err(MatchError::InvalidInput(format!("{name} = {x} must be positive")))
    }
}

/// Physical gamma-match layout. `a`, `a_rod` and `s` share one length unit
/// (metres or wavelengths); only their ratios matter. `rod_length` is the
/// electrical length of the rod in wavelengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaMatchGeometry {
    /// Driven-element radius.
    pub a: f64,
    /// Gamma-rod radius.
    pub a_rod: f64,
    /// Centre-to-centre separation.
    pub s: f64,
    pub rod_length: f64,
    pub f0: f64,
}

impl GammaMatchGeometry {
    pub fn validate(&self) -> Result<(), MatchError> {
        positive("a", self.a)?;
        positive("a_rod", self.a_rod)?;
        positive("s", self.s)?;
        positive("f0", self.f0)?;
        if self.s <= self.a + self.a_rod {
            return Err(MatchError::InvalidInput(format!(
                "separation {} does not clear the conductors ({} + {})",
                self.s, self.a, self.a_rod
            )));
        }
        if !(self.rod_length > 0.0 && self.rod_length < 0.5) {
            return Err(MatchError::InvalidInput(format!(
                "rod length {} wavelengths outside (0, 0.5)",
                self.rod_length
            )));
        }
        Ok(())
    }

    /// Radius ratio and spacing ratio, both taken against the thinner
    /// conductor so that `u >= 1`.
    pub fn ratios(&self) -> (f64, f64) {
        let thin = self.a.min(self.a_rod);
        let thick = self.a.max(self.a_rod);
        (thick / thin, self.s / thin)
    }
}

/// `alpha = ln v / (ln v - ln u)`.
pub fn current_division_factor(u: f64, v: f64) -> Result<f64, MatchError> {
    positive("u", u)?;
    positive("v", v)?;
    let den = v.ln() - u.ln();
    if den == 0.0 {
        return Err(MatchError::DivisionByZero { u, v });
    }
    Ok(v.ln() / den)
}

/// `(1 + alpha)^2 * za / 2`.
pub fn folded_step_impedance(za: ComplexImpedance, alpha: f64) -> Result<ComplexImpedance, MatchError> {
    finite("za.re", za.re)?;
    finite("za.im", za.im)?;
    positive("alpha", alpha)?;
    Ok(za * ((1.0 + alpha).powi(2) / 2.0))
}

/// Characteristic impedance of the rod/element two-wire line,
/// `276 log10(s / sqrt(a a_rod))`.
pub fn two_wire_z0(s: f64, a: f64, a_rod: f64) -> Result<f64, MatchError> {
    positive("s", s)?;
    positive("a", a)?;
    positive("a_rod", a_rod)?;
    let ratio = s / (a * a_rod).sqrt();
    if ratio <= 1.0 {
        return Err(MatchError::ConductorsTooClose { ratio });
    }
    Ok(276.0 * ratio.log10())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StubImpedance {
    /// `j tan(2 pi l)`, normalized to the line impedance.
    pub normalized: Complex64,
    pub reactance_ohm: f64,
}

/// Input impedance of a shorted stub `len_lambda` wavelengths long.
pub fn shorted_stub_impedance(z0: f64, len_lambda: f64) -> Result<StubImpedance, MatchError> {
    positive("z0", z0)?;
    if !(len_lambda > 0.0 && len_lambda < 0.5) {
        return Err(MatchError::InvalidInput(format!(
            "stub length {len_lambda} wavelengths outside (0, 0.5)"
        )));
    }
    if (len_lambda - 0.25).abs() < 1e-12 {
        return Err(MatchError::OpenCircuit);
    }
    let t = (2.0 * PI * len_lambda).tan();
    Ok(StubImpedance {
        normalized: Complex64::new(0.0, t),
        reactance_ohm: z0 * t,
    })
}

/// `1 / (2 pi f0 x)`.
pub fn series_capacitance(f0: f64, x: f64) -> Result<f64, MatchError> {
    positive("f0", f0)?;
    finite("x", x)?;
    if x <= 0.0 {
        return Err(MatchError::NonInductive(x));
    }
    Ok(1.0 / (2.0 * PI * f0 * x))
}

/// Parameters fed into the chain. [`ChainInputs::from_geometry`] derives
/// them exactly; fields may be overwritten to replay a hand calculation
/// with rounded intermediates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainInputs {
    pub u: f64,
    pub v: f64,
    pub alpha: f64,
    pub z0_line: f64,
    pub rod_length: f64,
    pub f0: f64,
}

impl ChainInputs {
    pub fn from_geometry(geom: &GammaMatchGeometry) -> Result<Self, MatchError> {
        geom.validate()?;
        let (u, v) = geom.ratios();
        Ok(Self {
            u,
            v,
            alpha: current_division_factor(u, v)?,
            z0_line: two_wire_z0(geom.s, geom.a, geom.a_rod)?,
            rod_length: geom.rod_length,
            f0: geom.f0,
        })
    }
}

/// Every intermediate of one gamma-match evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaSolution {
    pub u: f64,
    pub v: f64,
    pub alpha: f64,
    pub step_up: f64,
    pub z2_ohm: ComplexImpedance,
    pub z0_line_ohm: f64,
    #[serde(with = "complex_pair")]
    pub z2_norm: Complex64,
    #[serde(with = "complex_pair")]
    pub y2_norm: Complex64,
    #[serde(with = "complex_pair")]
    pub zg_norm: Complex64,
    #[serde(with = "complex_pair")]
    pub yg_norm: Complex64,
    #[serde(with = "complex_pair")]
    pub yin_norm: Complex64,
    #[serde(with = "complex_pair")]
    pub zin_norm: Complex64,
    pub zin_ohm: ComplexImpedance,
    /// Series capacitor cancelling `Im Zin`; absent when `Im Zin <= 0`.
    pub c_farad: Option<f64>,
}

/// Runs the chain from explicit parameters.
pub fn gamma_chain(za: ComplexImpedance, p: &ChainInputs) -> Result<GammaSolution, MatchError> {
    finite("za.re", za.re)?;
    finite("za.im", za.im)?;
    positive("z0_line", p.z0_line)?;
    positive("f0", p.f0)?;
    if !(p.rod_length > 0.0 && p.rod_length < 0.5) {
        return Err(MatchError::InvalidInput(format!(
            "rod length {} wavelengths outside (0, 0.5)",
            p.rod_length
        )));
    }

    let step_up = (1.0 + p.alpha).powi(2);
    let z2_ohm = folded_step_impedance(za, p.alpha)?;
    let z2_norm = z2_ohm.to_complex() / p.z0_line;
    let y2_norm = z2_norm.inv();

    let beta_l = 2.0 * PI * p.rod_length;
    let zg_norm = Complex64::new(0.0, beta_l.tan());
    // -j cot, finite at a quarter wave where the stub opens
    let yg_norm = Complex64::new(0.0, -beta_l.cos() / beta_l.sin());

    let yin_norm = y2_norm + yg_norm;
    if yin_norm.norm() == 0.0 || !yin_norm.is_finite() {
        return Err(MatchError::DegenerateMatch);
    }
    let zin_norm = yin_norm.inv();
    let zin_ohm = ComplexImpedance::from(zin_norm * p.z0_line);
    let c_farad = if zin_ohm.im > 0.0 {
        Some(series_capacitance(p.f0, zin_ohm.im)?)
    } else {
        None
    };

    Ok(GammaSolution {
        u: p.u,
        v: p.v,
        alpha: p.alpha,
        step_up,
        z2_ohm,
        z0_line_ohm: p.z0_line,
        z2_norm,
        y2_norm,
        zg_norm,
        yg_norm,
        yin_norm,
        zin_norm,
        zin_ohm,
        c_farad,
    })
}

/// Full-precision chain for `za` (requires `za.re > 0`).
pub fn gamma_input_impedance(za: ComplexImpedance, geom: &GammaMatchGeometry) -> Result<GammaSolution, MatchError> {
    if !(za.re > 0.0) {
        return Err(MatchError::InvalidInput(format!(
            "feed resistance {} ohm must be positive",
            za.re
        )));
    }
    gamma_chain(za, &ChainInputs::from_geometry(geom)?)
}

pub const TUNE_MIN_ROD: f64 = 0.01;
pub const TUNE_MAX_ROD: f64 = 0.24;
pub const TUNE_STEP: f64 = 0.001;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TuneResult {
    pub rod_length: f64,
    pub solution: GammaSolution,
    pub c_farad: Option<f64>,
    /// Achieved `|Re Zin - target|`.
    pub error_ohm: f64,
    pub converged: bool,
}

/// Slides the rod over `[0.01, 0.24]` wavelengths looking for
/// `Re Zin = target`: a 0.001-wavelength scan followed by golden-section
/// refinement around the best grid point.
pub fn tune_gamma(
    za: ComplexImpedance,
    geom: &GammaMatchGeometry,
    target: f64,
    tol: f64,
) -> Result<TuneResult, MatchError> {
    positive("target", target)?;
    positive("tol", tol)?;
    let base = ChainInputs::from_geometry(&GammaMatchGeometry {
        rod_length: 0.1,
        ..*geom
    })?;
    let eval = |len: f64| -> Result<(f64, GammaSolution), MatchError> {
        let sol = gamma_chain(
            za,
            &ChainInputs {
                rod_length: len,
                ..base
            },
        )?;
        Ok(((sol.zin_ohm.re - target).abs(), sol))
    };

    let steps = ((TUNE_MAX_ROD - TUNE_MIN_ROD) / TUNE_STEP).round() as usize;
    let mut best = (f64::INFINITY, TUNE_MIN_ROD);
    for i in 0..=steps {
        let len = TUNE_MIN_ROD + i as f64 * TUNE_STEP;
        let (err, _) = eval(len)?;
        if err < best.0 {
            best = (err, len);
        }
    }

    let mut lo = (best.1 - TUNE_STEP).max(TUNE_MIN_ROD);
    let mut hi = (best.1 + TUNE_STEP).min(TUNE_MAX_ROD);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let mut f1 = eval(x1)?.0;
    let mut f2 = eval(x2)?.0;
    for _ in 0..60 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = eval(x1)?.0;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = eval(x2)?.0;
        }
    }
    let refined = 0.5 * (lo + hi);
    let (err_refined, _) = eval(refined)?;
    let rod_length = if err_refined <= best.0 { refined } else { best.1 };

    let (error_ohm, solution) = eval(rod_length)?;
    Ok(TuneResult {
        rod_length,
        solution,
        c_farad: solution.c_farad,
        error_ohm,
        converged: error_ohm <= tol,
    })
}
