use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::AnalysisError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternUnit {
    Meters,
    Dbi,
}

impl fmt::Display for PatternUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Meters => "meters",
            Self::Dbi => "dbi",
        })
    }
}

impl FromStr for PatternUnit {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "meters" | "m" => Ok(Self::Meters),
            "dbi" => Ok(Self::Dbi),
            _ => Err(AnalysisError::InvalidInput(format!("unknown pattern unit '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PatternSample {
    pub angle_deg: f64,
    pub value: f64,
}

/// Azimuthal pattern: distinct angles in `[0, 360)`, kept sorted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiationPatternData {
    samples: Vec<PatternSample>,
    unit: PatternUnit,
    label: String,
}

pub const CSV_HEADER: &str = "angle_deg,value";

impl RadiationPatternData {
    pub fn new(mut samples: Vec<PatternSample>, unit: PatternUnit, label: impl Into<String>) -> Result<Self, AnalysisError> {
        if samples.is_empty() {
            return Err(AnalysisError::Pattern("no samples".into()));
        }
        for s in &samples {
            if !(s.angle_deg.is_finite() && (0.0..360.0).contains(&s.angle_deg)) {
                return Err(AnalysisError::Pattern(format!("angle {} outside [0, 360)", s.angle_deg)));
            }
            if !s.value.is_finite() {
                return Err(AnalysisError::Pattern(format!("value at {} deg is not finite", s.angle_deg)));
            }
            if unit == PatternUnit::Meters && s.value < 0.0 {
                return Err(AnalysisError::Pattern(format!(
                    "negative range {} m at {} deg",
                    s.value, s.angle_deg
                )));
            }
        }
        samples.sort_by(|a, b| a.angle_deg.total_cmp(&b.angle_deg));
        if let Some(w) = samples.windows(2).find(|w| w[0].angle_deg == w[1].angle_deg) {
            return Err(AnalysisError::Pattern(format!("duplicate angle {}", w[0].angle_deg)));
        }
        Ok(Self {
            samples,
            unit,
            label: label.into(),
        })
    }

    /// Parses `angle_deg,value` CSV. Blank lines and lines starting with `#`
    /// are skipped; parse errors carry 1-based line numbers.
    pub fn from_csv_str(text: &str, unit: PatternUnit, label: impl Into<String>) -> Result<Self, AnalysisError> {
        let mut header_seen = false;
        let mut samples = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !header_seen {
                let cols: Vec<&str> = line.split(',').map(str::trim).collect();
                if cols != ["angle_deg", "value"] {
                    return Err(AnalysisError::Pattern(format!(
                        "line {line_no}: expected header '{CSV_HEADER}', found '{line}'"
                    )));
                }
                header_seen = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 2 {
                return Err(AnalysisError::Pattern(format!(
                    "line {line_no}: expected 2 fields, found {}",
                    fields.len()
                )));
            }
            let num = |s: &str, what: &str| {
                s.parse::<f64>()
                    .map_err(|_| AnalysisError::Pattern(format!("line {line_no}: bad {what} '{s}'")))
            };
            let angle_deg = num(fields[0], "angle")?;
            let value = num(fields[1], "value")?;
            if !(0.0..360.0).contains(&angle_deg) {
                return Err(AnalysisError::Pattern(format!(
                    "line {line_no}: angle {angle_deg} outside [0, 360)"
                )));
            }
            samples.push(PatternSample { angle_deg, value });
        }
        if !header_seen {
            return Err(AnalysisError::Pattern(format!("missing header '{CSV_HEADER}'")));
        }
        Self::new(samples, unit, label)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{CSV_HEADER}\n");
        for s in &self.samples {
            let _ = writeln!(out, "{},{}", s.angle_deg, s.value);
        }
        out
    }

    pub fn samples(&self) -> &[PatternSample] {
        &self.samples
    }

    pub fn unit(&self) -> PatternUnit {
        self.unit
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Sample closest to `angle` on the circle; ties go to the smaller angle.
    pub fn nearest(&self, angle: f64) -> PatternSample {
        let target = angle.rem_euclid(360.0);
        let gap = |a: f64| {
            let d = (a - target).abs();
            d.min(360.0 - d)
        };
        *self
            .samples
            .iter()
            .fold(None, |best: Option<&PatternSample>, s| match best {
                Some(b) if gap(b.angle_deg) <= gap(s.angle_deg) => Some(b),
                _ => Some(s),
            })
            .expect("non-empty")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StatPoint {
    pub value: f64,
    pub angle_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PatternStats {
    pub max: StatPoint,
    pub min: StatPoint,
    /// Arithmetic mean of the sample values.
    pub mean: f64,
    /// Peak minus the sample nearest the opposite direction; dBi patterns only.
    pub front_to_back_db: Option<f64>,
}

/// Extremes resolve ties to the smallest angle.
pub fn pattern_stats(pattern: &RadiationPatternData) -> PatternStats {
    let s = pattern.samples();
    let pick = |better: fn(f64, f64) -> bool| {
        let mut best = s[0];
        for x in &s[1..] {
            if better(x.value, best.value) {
                best = *x;
            }
        }
        StatPoint {
            value: best.value,
            angle_deg: best.angle_deg,
        }
    };
    let max = pick(|a, b| a > b);
    let min = pick(|a, b| a < b);
    let mean = s.iter().map(|x| x.value).sum::<f64>() / s.len() as f64;
    let front_to_back_db = match pattern.unit() {
        PatternUnit::Dbi => Some(max.value - pattern.nearest(max.angle_deg + 180.0).value),
        PatternUnit::Meters => None,
    };
    PatternStats {
        max,
        min,
        mean,
        front_to_back_db,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(points: &[(f64, f64)], unit: PatternUnit) -> RadiationPatternData {
        let samples = points
            .iter()
            .map(|&(angle_deg, value)| PatternSample { angle_deg, value })
            .collect();
        RadiationPatternData::new(samples, unit, "t").unwrap()
    }

    #[test]
    fn stats_of_small_pattern() {
        let p = pat(&[(0.0, 10.0), (90.0, 5.0), (180.0, 2.0), (270.0, 5.0)], PatternUnit::Meters);
        let st = pattern_stats(&p);
        assert_eq!(st.max, StatPoint { value: 10.0, angle_deg: 0.0 });
        assert_eq!(st.min, StatPoint { value: 2.0, angle_deg: 180.0 });
        assert_eq!(st.mean, 5.5);
        assert_eq!(st.front_to_back_db, None);
    }

    #[test]
    fn ties_pick_smallest_angle() {
        let p = pat(&[(270.0, 1.0), (10.0, 4.0), (200.0, 4.0), (90.0, 1.0)], PatternUnit::Meters);
        let st = pattern_stats(&p);
        assert_eq!(st.max.angle_deg, 10.0);
        assert_eq!(st.min.angle_deg, 90.0);
    }

    #[test]
    fn front_to_back_for_gain() {
        let p = pat(&[(0.0, 11.0), (90.0, -3.0), (180.0, -9.0), (270.0, -3.0)], PatternUnit::Dbi);
        assert_eq!(pattern_stats(&p).front_to_back_db, Some(20.0));
    }

    #[test]
    fn csv_round_trip_and_sorting() {
        let text = "# comment\nangle_deg,value\n\n90,2.5\n0,1\n# trailing\n";
        let p = RadiationPatternData::from_csv_str(text, PatternUnit::Meters, "x").unwrap();
        assert_eq!(p.samples()[0].angle_deg, 0.0);
        let again = RadiationPatternData::from_csv_str(&p.to_csv(), PatternUnit::Meters, "x").unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn csv_errors_name_lines() {
        let cases = [
            ("angle,value\n0,1\n", "line 1"),
            ("angle_deg,value\n0,1\n10,abc\n", "line 3"),
            ("angle_deg,value\n0,1,2\n", "line 2"),
            ("angle_deg,value\n360,1\n", "line 2"),
            ("angle_deg,value\n-5,1\n", "line 2"),
        ];
        for (text, want) in cases {
            let err = RadiationPatternData::from_csv_str(text, PatternUnit::Meters, "x").unwrap_err();
            assert!(err.to_string().contains(want), "{text:?}: {err}");
        }
    }

    #[test]
    fn validation_errors() {
        assert!(RadiationPatternData::from_csv_str("angle_deg,value\n", PatternUnit::Dbi, "x").is_err());
        assert!(RadiationPatternData::from_csv_str("", PatternUnit::Dbi, "x").is_err());
        let dup = "angle_deg,value\n10,1\n10,2\n";
        let err = RadiationPatternData::from_csv_str(dup, PatternUnit::Meters, "x").unwrap_err();
        assert!(err.to_string().contains("duplicate"));
        let neg = "angle_deg,value\n10,-1\n";
        assert!(RadiationPatternData::from_csv_str(neg, PatternUnit::Meters, "x").is_err());
        assert!(RadiationPatternData::from_csv_str(neg, PatternUnit::Dbi, "x").is_ok());
    }

    #[test]
    fn nearest_wraps() {
        let p = pat(&[(0.0, 1.0), (10.0, 2.0), (350.0, 3.0)], PatternUnit::Meters);
        assert_eq!(p.nearest(358.0).angle_deg, 0.0);
        assert_eq!(p.nearest(354.0).angle_deg, 350.0);
        assert_eq!(p.nearest(355.0).angle_deg, 0.0);
        assert_eq!(p.nearest(5.0).angle_deg, 0.0);
    }
}
