use serde::Serialize;

use super::{vswr, AnalysisError};
use crate::impedance::ComplexImpedance;

pub const DEFAULT_VSWR_LIMIT: f64 = 2.0;

/// Widest contiguous frequency interval with VSWR at or below the limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Band {
    pub low_hz: Option<f64>,
    pub high_hz: Option<f64>,
    pub width_hz: f64,
}

impl Band {
    const EMPTY: Band = Band {
        low_hz: None,
        high_hz: None,
        width_hz: 0.0,
    };
}

/// VSWR is interpolated linearly between sweep points, so band edges fall
/// between samples. Non-passive points count as infinite VSWR.
pub fn bandwidth(sweep: &[(f64, ComplexImpedance)], z_ref: f64, limit: f64) -> Result<Band, AnalysisError> {
    if sweep.len() < 2 {
        return Err(AnalysisError::InvalidInput(format!(
            "bandwidth needs at least 2 sweep points, got {}",
            sweep.len()
        )));
    }
    if !(limit.is_finite() && limit >= 1.0) {
        return Err(AnalysisError::InvalidInput(format!("VSWR limit {limit} must be at least 1")));
    }
    let mut pts = Vec::with_capacity(sweep.len());
    for &(f, z) in sweep {
        if !(f.is_finite() && f > 0.0) {
            return Err(AnalysisError::InvalidInput(format!("frequency {f} Hz")));
        }
        let v = match vswr(z, z_ref) {
            Ok(v) => v,
            Err(AnalysisError::NonPassive(_)) => f64::INFINITY,
            Err(e) => return Err(e),
        };
        pts.push((f, v));
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    if let Some(w) = pts.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(AnalysisError::InvalidInput(format!("duplicate frequency {} Hz", w[0].0)));
    }

    // sub-intervals of each panel where the interpolant is within the limit
    let mut runs: Vec<(f64, f64)> = Vec::new();
    let mut push = |lo: f64, hi: f64| match runs.last_mut() {
        Some(last) if last.1 == lo => last.1 = hi,
        _ => runs.push((lo, hi)),
    };
    for w in pts.windows(2) {
        let ((f0, v0), (f1, v1)) = (w[0], w[1]);
        let ok0 = v0 <= limit;
        let ok1 = v1 <= limit;
        let cross = |from: f64, to: f64| {
            // fraction of the panel from `from` to the limit crossing
            if from.is_infinite() || to.is_infinite() {
                if from.is_infinite() { 1.0 } else { 0.0 }
            } else {
                (limit - from) / (to - from)
            }
        };
        match (ok0, ok1) {
            (true, true) => push(f0, f1),
            (true, false) => push(f0, f0 + cross(v0, v1) * (f1 - f0)),
            (false, true) => push(f1 - cross(v1, v0) * (f1 - f0), f1),
            (false, false) => {}
        }
    }

    Ok(runs
        .into_iter()
        .fold(None, |best: Option<(f64, f64)>, r| match best {
            Some(b) if b.1 - b.0 >= r.1 - r.0 => Some(b),
            _ => Some(r),
        })
        .map_or(Band::EMPTY, |(lo, hi)| Band {
            low_hz: Some(lo),
            high_hz: Some(hi),
            width_hz: hi - lo,
        }))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Resistive loads whose VSWR against 50 ohm is exactly `v` (`R = 50 v`).
    fn sweep_with_vswr(points: &[(f64, f64)]) -> Vec<(f64, ComplexImpedance)> {
        points
            .iter()
            .map(|&(f, v)| (f, ComplexImpedance::resistive(50.0 * v)))
            .collect()
    }

    #[test]
    fn v_shape_interpolates_edges() {
        // 3.0 at 800, 1.0 at 900, 1.0 at 940, 3.0 at 1020 MHz: crossings at 850 and 980
        let s = sweep_with_vswr(&[(800e6, 3.0), (900e6, 1.0), (940e6, 1.0), (1020e6, 3.0)]);
        let b = bandwidth(&s, 50.0, 2.0).unwrap();
        assert!((b.low_hz.unwrap() - 850e6).abs() < 1e-3);
        assert!((b.high_hz.unwrap() - 980e6).abs() < 1e-3);
        assert!((b.width_hz - 130e6).abs() < 1e-3);
    }

    #[test]
    fn nothing_within_limit() {
        let s = sweep_with_vswr(&[(800e6, 3.0), (900e6, 2.5)]);
        let b = bandwidth(&s, 50.0, 2.0).unwrap();
        assert_eq!(b, Band::EMPTY);
    }

    #[test]
    fn widest_of_two_bands() {
        let s = sweep_with_vswr(&[(1e6, 1.0), (2e6, 3.0), (3e6, 1.0), (4e6, 1.0), (5e6, 3.0)]);
        let b = bandwidth(&s, 50.0, 2.0).unwrap();
        assert!((b.low_hz.unwrap() - 2.5e6).abs() < 1e-6);
        assert!((b.high_hz.unwrap() - 4.5e6).abs() < 1e-6);
    }

    #[test]
    fn unsorted_input_is_sorted() {
        let s = sweep_with_vswr(&[(940e6, 1.0), (800e6, 3.0), (1020e6, 3.0), (900e6, 1.0)]);
        assert!((bandwidth(&s, 50.0, 2.0).unwrap().width_hz - 130e6).abs() < 1e-3);
    }

    #[test]
    fn rejects_bad_sweeps() {
        let one = sweep_with_vswr(&[(900e6, 1.0)]);
        assert!(bandwidth(&one, 50.0, 2.0).is_err());
        let dup = sweep_with_vswr(&[(900e6, 1.0), (900e6, 1.5)]);
        assert!(bandwidth(&dup, 50.0, 2.0).is_err());
        let ok = sweep_with_vswr(&[(900e6, 1.0), (910e6, 1.5)]);
        assert!(bandwidth(&ok, 50.0, 0.5).is_err());
    }

    #[test]
    fn non_passive_point_breaks_band() {
        let mut s = sweep_with_vswr(&[(1e6, 1.0), (3e6, 1.0)]);
        s.insert(1, (2e6, ComplexImpedance::new(-10.0, 0.0)));
        let b = bandwidth(&s, 50.0, 2.0).unwrap();
        // the band stops at the last passive sample on either side
        assert_eq!(b.low_hz, Some(1e6));
        assert_eq!(b.high_hz, Some(1e6));
        assert_eq!(b.width_hz, 0.0);
    }
}
