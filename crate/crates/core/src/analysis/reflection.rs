use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::AnalysisError;
use crate::impedance::ComplexImpedance;

/// `(z - z_ref) / (z + z_ref)` for a real reference impedance.
pub fn reflection_coefficient(z: ComplexImpedance, z_ref: f64) -> Result<Complex64, AnalysisError> {
    if !(z_ref.is_finite() && z_ref > 0.0) {
        return Err(AnalysisError::InvalidReference(z_ref));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(AnalysisError::InvalidInput(format!("impedance {z} is not finite")));
    }
    let z = z.to_complex();
    let den = z + z_ref;
    if den.norm() == 0.0 {
        return Err(AnalysisError::ZeroDenominator);
    }
    Ok((z - z_ref) / den)
}

/// `(1 + |G|) / (1 - |G|)` for `0 <= |G| < 1`.
pub fn vswr_from_magnitude(mag: f64) -> Result<f64, AnalysisError> {
    if !(mag >= 0.0) {
        return Err(AnalysisError::InvalidInput(format!("|gamma| = {mag}")));
    }
    if mag >= 1.0 {
        return Err(AnalysisError::NonPassive(mag));
    }
    Ok((1.0 + mag) / (1.0 - mag))
}

pub fn vswr(z: ComplexImpedance, z_ref: f64) -> Result<f64, AnalysisError> {
    vswr_from_magnitude(reflection_coefficient(z, z_ref)?.norm())
}

/// Return loss; a perfect match has no finite value in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReturnLoss {
    Db(f64),
    PerfectMatch,
}

impl ReturnLoss {
    pub fn db(self) -> Option<f64> {
        match self {
            Self::Db(x) => Some(x),
            Self::PerfectMatch => None,
        }
    }
}

impl fmt::Display for ReturnLoss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Db(x) => write!(f, "{x:.3} dB"),
            Self::PerfectMatch => f.write_str("perfect match"),
        }
    }
}

/// Serialized as the dB value, or `null` for a perfect match.
impl Serialize for ReturnLoss {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.db().serialize(s)
    }
}

/// `-20 log10 |G|` for `0 <= |G| < 1`.
pub fn return_loss_db(mag: f64) -> Result<ReturnLoss, AnalysisError> {
    if !(mag >= 0.0) {
        return Err(AnalysisError::InvalidInput(format!("|gamma| = {mag}")));
    }
    if mag >= 1.0 {
        return Err(AnalysisError::NonPassive(mag));
    }
    if mag == 0.0 {
        return Ok(ReturnLoss::PerfectMatch);
    }
    Ok(ReturnLoss::Db(-20.0 * mag.log10()))
}

/// Mismatch of a load against a real reference. VSWR and return loss are
/// derived from the stored coefficient on demand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    pub load: ComplexImpedance,
    pub z_ref: f64,
    pub gamma: Complex64,
}

impl Reflection {
    pub fn new(load: ComplexImpedance, z_ref: f64) -> Result<Self, AnalysisError> {
        Ok(Self {
            load,
            z_ref,
            gamma: reflection_coefficient(load, z_ref)?,
        })
    }

    pub fn magnitude(&self) -> f64 {
        self.gamma.norm()
    }

    pub fn vswr(&self) -> Result<f64, AnalysisError> {
        vswr_from_magnitude(self.magnitude())
    }

    pub fn return_loss(&self) -> Result<ReturnLoss, AnalysisError> {
        return_loss_db(self.magnitude())
    }
}
