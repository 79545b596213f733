use std::f64::consts::PI;

use serde::Serialize;

use super::AnalysisError;
use crate::geometry::{SPEED_OF_LIGHT, TABLE_FREQUENCY_HZ};

/// Reference jammer: a helix of this gain disrupts the link out to
/// `HELIX_RANGE_M`.
pub const HELIX_GAIN_DBI: f64 = -0.8;
pub const HELIX_RANGE_M: f64 = 4.0;

const DEFAULT_EIRP_DBM: f64 = 30.0;
const DEFAULT_PATH_LOSS_EXPONENT: f64 = 2.0;

/// Free-space path loss at `distance_m`, `20 log10(4 pi d / lambda)`.
pub fn free_space_path_loss_db(distance_m: f64, frequency: f64) -> f64 {
    20.0 * (4.0 * PI * distance_m * frequency / SPEED_OF_LIGHT).log10()
}

/// Log-distance link model. The jammer disrupts the victim wherever the
/// received jamming power exceeds `threshold_dbm`:
///
/// `P(d) = eirp_dbm + G - PL(1 m) - 10 n log10(d)`.
///
/// `eirp_dbm` is the transmitter output referred to an isotropic radiator;
/// the antenna gain is added per direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RangeModel {
    pub eirp_dbm: f64,
    pub threshold_dbm: f64,
    pub path_loss_exponent: f64,
    pub frequency: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RangeEstimate {
    pub range_m: f64,
    /// The solved distance lies inside the 1 m reference distance, where
    /// the model is an extrapolation.
    pub below_reference: bool,
}

impl RangeModel {
    pub fn new(eirp_dbm: f64, threshold_dbm: f64, path_loss_exponent: f64, frequency: f64) -> Result<Self, AnalysisError> {
        let m = Self {
            eirp_dbm,
            threshold_dbm,
            path_loss_exponent,
            frequency,
        };
        m.validate()?;
        Ok(m)
    }

    /// Chooses the threshold so that an antenna of `ref_gain_dbi` reaches
    /// exactly `ref_range_m`.
    pub fn calibrated(
        eirp_dbm: f64,
        path_loss_exponent: f64,
        frequency: f64,
        ref_gain_dbi: f64,
        ref_range_m: f64,
    ) -> Result<Self, AnalysisError> {
        if !(ref_range_m.is_finite() && ref_range_m > 0.0) {
            return Err(AnalysisError::InvalidInput(format!("reference range {ref_range_m} m")));
        }
        let mut m = Self::new(eirp_dbm, 0.0, path_loss_exponent, frequency)?;
        m.threshold_dbm = eirp_dbm + ref_gain_dbi
            - free_space_path_loss_db(1.0, frequency)
            - 10.0 * path_loss_exponent * ref_range_m.log10();
        Ok(m)
    }

    fn validate(&self) -> Result<(), AnalysisError> {
        if !(1.6..=6.0).contains(&self.path_loss_exponent) {
            return Err(AnalysisError::PathLossExponent(self.path_loss_exponent));
        }
        if !(self.frequency.is_finite() && self.frequency > 0.0) {
            return Err(AnalysisError::InvalidInput(format!("frequency {} Hz", self.frequency)));
        }
        if !(self.eirp_dbm.is_finite() && self.threshold_dbm.is_finite()) {
            return Err(AnalysisError::InvalidInput("power levels must be finite".into()));
        }
        Ok(())
    }
}

impl Default for RangeModel {
    /// 30 dBm at 900 MHz in free space, calibrated on the helix reference.
    fn default() -> Self {
        Self::calibrated(
            DEFAULT_EIRP_DBM,
            DEFAULT_PATH_LOSS_EXPONENT,
            TABLE_FREQUENCY_HZ,
            HELIX_GAIN_DBI,
            HELIX_RANGE_M,
        )
        .expect("default model is valid")
    }
}

/// Distance at which a jammer with `gain_dbi` toward the victim falls to the
/// model threshold.
pub fn jamming_range(model: &RangeModel, gain_dbi: f64) -> Result<RangeEstimate, AnalysisError> {
    model.validate()?;
    if !gain_dbi.is_finite() {
        return Err(AnalysisError::InvalidInput(format!("gain {gain_dbi} dBi")));
    }
    let margin = model.eirp_dbm + gain_dbi - model.threshold_dbm - free_space_path_loss_db(1.0, model.frequency);
    let range_m = 10f64.powf(margin / (10.0 * model.path_loss_exponent));
    Ok(RangeEstimate {
        range_m,
        below_reference: range_m < 1.0,
    })
}

/// `d2 / d1 = 10^((g2 - g1) / (10 n))` for equal power and threshold.
pub fn range_ratio(g1_dbi: f64, g2_dbi: f64, path_loss_exponent: f64) -> Result<f64, AnalysisError> {
    if !(1.6..=6.0).contains(&path_loss_exponent) {
        return Err(AnalysisError::PathLossExponent(path_loss_exponent));
    }
    if !(g1_dbi.is_finite() && g2_dbi.is_finite()) {
        return Err(AnalysisError::InvalidInput("gains must be finite".into()));
    }
    Ok(10f64.powf((g2_dbi - g1_dbi) / (10.0 * path_loss_exponent)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helix_reference_reproduced() {
        let m = RangeModel::default();
        let r = jamming_range(&m, HELIX_GAIN_DBI).unwrap();
        assert!((r.range_m - 4.0).abs() < 1e-9);
        assert!(!r.below_reference);
    }

    #[test]
    fn yagi_reaches_four_times_further() {
        let m = RangeModel::default();
        let r = jamming_range(&m, 11.2).unwrap();
        assert!((r.range_m - 15.924).abs() < 1e-2, "{}", r.range_m);
        assert!((range_ratio(-0.8, 11.2, 2.0).unwrap() - 3.981).abs() < 1e-3);
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(range_ratio(5.0, 5.0, 3.0).unwrap(), 1.0);
        assert!((range_ratio(0.0, 12.0, 4.0).unwrap() - 1.995).abs() < 1e-3);
        assert!(matches!(range_ratio(0.0, 1.0, 1.0), Err(AnalysisError::PathLossExponent(_))));
        assert!(range_ratio(0.0, 1.0, 7.0).is_err());
    }

    #[test]
    fn weak_jammer_flagged() {
        let r = jamming_range(&RangeModel::default(), -20.0).unwrap();
        assert!(r.below_reference);
        assert!(r.range_m < 1.0);
    }

    #[test]
    fn path_loss_at_one_metre() {
        // 20 log10(4 pi / lambda) at 900 MHz
        assert!((free_space_path_loss_db(1.0, 900e6) - 31.53).abs() < 0.01);
    }

    #[test]
    fn explicit_model_validation() {
        assert!(RangeModel::new(30.0, -60.0, 1.5, 900e6).is_err());
        assert!(RangeModel::new(30.0, -60.0, 2.0, 0.0).is_err());
        assert!(RangeModel::new(30.0, f64::NAN, 2.0, 900e6).is_err());
        let m = RangeModel::new(30.0, -60.0, 2.0, 900e6).unwrap();
        let r = jamming_range(&m, 0.0).unwrap();
        // 30 - (-60) - 31.53 = 58.47 dB of path margin
        assert!((r.range_m - 10f64.powf(58.47 / 20.0)).abs() / r.range_m < 1e-3);
    }
}
