//! Polar SVG rendering of azimuth patterns.
//!
//! Each plotted sample carries `data-angle`, `data-value` and
//! `data-radius-px` attributes, and the root element records the pattern
//! extremes, so a plot can be checked by re-reading it with
//! [`parse_svg_samples`].

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::analysis::{pattern_stats, PatternUnit, RadiationPatternData};
use crate::io::{write_atomic, FileError};

const SIZE: f64 = 520.0;
const PLOT_RADIUS: f64 = 200.0;
const RINGS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolarScale {
    /// Radius proportional to the value (range in metres, or linear power
    /// gain for dBi patterns).
    Linear,
    /// Radius linear in decibels over `range_db` below the outer ring.
    Db { range_db: f64 },
}

impl PolarScale {
    pub const DEFAULT_DB: PolarScale = PolarScale::Db { range_db: 40.0 };
}

#[derive(Debug, Error)]
pub enum PlotError {
    #[error("dB range must be positive, got {0}")]
    Range(f64),
    #[error("pattern has no positive value to scale against")]
    NoPositiveValue,
    #[error(transparent)]
    File(#[from] FileError),
}

/// Rounds up to 1, 2, 2.5 or 5 times a power of ten.
fn nice_ceil(x: f64) -> f64 {
    let mag = 10f64.powf(x.log10().floor());
    [1.0, 2.0, 2.5, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&v| v >= x * (1.0 - 1e-12))
        .unwrap_or(10.0 * mag)
}

struct Axis {
    /// Maps a sample value to a radius fraction in [0, 1].
    map: Box<dyn Fn(f64) -> f64>,
    ring_labels: Vec<String>,
    title: String,
}

fn axis(pattern: &RadiationPatternData, scale: PolarScale) -> Result<Axis, PlotError> {
    let max = pattern_stats(pattern).max.value;
    match (scale, pattern.unit()) {
        (PolarScale::Linear, PatternUnit::Meters) => {
            if !(max > 0.0) {
                return Err(PlotError::NoPositiveValue);
            }
            let top = nice_ceil(max);
            Ok(Axis {
                map: Box::new(move |v| v / top),
                ring_labels: (1..=RINGS).map(|i| format!("{}", top * i as f64 / RINGS as f64)).collect(),
                title: "range (m)".into(),
            })
        }
        (PolarScale::Linear, PatternUnit::Dbi) => {
            let top = nice_ceil(10f64.powf(max / 10.0));
            Ok(Axis {
                map: Box::new(move |v| 10f64.powf(v / 10.0) / top),
                ring_labels: (1..=RINGS).map(|i| format!("{}", top * i as f64 / RINGS as f64)).collect(),
                title: "gain (linear)".into(),
            })
        }
        (PolarScale::Db { range_db }, unit) => {
            if !(range_db.is_finite() && range_db > 0.0) {
                return Err(PlotError::Range(range_db));
            }
            let (to_db, top, title): (Box<dyn Fn(f64) -> f64>, f64, &str) = match unit {
                PatternUnit::Dbi => (Box::new(|v| v), max.ceil(), "gain (dBi)"),
                PatternUnit::Meters => {
                    if !(max > 0.0) {
                        return Err(PlotError::NoPositiveValue);
                    }
                    (Box::new(move |v: f64| 20.0 * (v / max).log10()), 0.0, "range (dB rel. max)")
                }
            };
            let bottom = top - range_db;
            Ok(Axis {
                map: Box::new(move |v| {
                    let db = to_db(v);
                    if db.is_finite() {
                        ((db - bottom) / range_db).clamp(0.0, 1.0)
                    } else {
                        0.0
                    }
                }),
                ring_labels: (1..=RINGS)
                    .map(|i| format!("{}", bottom + range_db * i as f64 / RINGS as f64))
                    .collect(),
                title: title.into(),
            })
        }
    }
}

fn escape(text: &str) -> String {
    text.chars()
        .map(|c| match c {
            '&' => "&amp;".into(),
            '<' => "&lt;".into(),
            '>' => "&gt;".into(),
            '"' => "&quot;".into(),
            '\'' => "&apos;".into(),
            c => c.to_string(),
        })
        .collect()
}

/// Screen position of polar (radius px, angle deg); 0 degrees points right
/// and angles increase counter-clockwise.
fn point(radius: f64, angle_deg: f64) -> (f64, f64) {
    let a = angle_deg.to_radians();
    (SIZE / 2.0 + radius * a.cos(), SIZE / 2.0 - radius * a.sin())
}

pub fn render_polar_svg(pattern: &RadiationPatternData, scale: PolarScale) -> Result<String, PlotError> {
    let ax = axis(pattern, scale)?;
    let stats = pattern_stats(pattern);
    let c = SIZE / 2.0;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(s, "<!-- generated by yagi {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" data-unit="{}" data-max-value="{}" data-max-angle="{}" data-min-value="{}" data-min-angle="{}" data-plot-radius-px="{PLOT_RADIUS}">"#,
        pattern.unit(),
        stats.max.value,
        stats.max.angle_deg,
        stats.min.value,
        stats.min.angle_deg
    );
    let _ = writeln!(s, "<title>{}</title>", escape(pattern.label()));
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);

    let _ = writeln!(s, r##"<g class="grid" fill="none" stroke="#bbb" stroke-width="1">"##);
    for i in 1..=RINGS {
        let r = PLOT_RADIUS * i as f64 / RINGS as f64;
        let _ = writeln!(s, r#"<circle cx="{c}" cy="{c}" r="{r:.3}"/>"#);
    }
    for k in 0..12 {
        let (x, y) = point(PLOT_RADIUS, k as f64 * 30.0);
        let _ = writeln!(s, r#"<line x1="{c}" y1="{c}" x2="{x:.3}" y2="{y:.3}"/>"#);
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r##"<g class="labels" font-family="sans-serif" font-size="11" fill="#333">"##);
    for k in 0..12 {
        let angle = k * 30;
        let (x, y) = point(PLOT_RADIUS + 16.0, angle as f64);
        let _ = writeln!(
            s,
            r#"<text x="{x:.3}" y="{:.3}" text-anchor="middle">{angle}&#176;</text>"#,
            y + 4.0
        );
    }
    for (i, label) in ax.ring_labels.iter().enumerate() {
        let r = PLOT_RADIUS * (i + 1) as f64 / RINGS as f64;
        let (x, y) = point(r, 75.0);
        let _ = writeln!(s, r#"<text class="ring" x="{:.3}" y="{y:.3}">{}</text>"#, x + 3.0, escape(label));
    }
    let _ = writeln!(
        s,
        r#"<text class="axis-title" x="{c}" y="{:.3}" text-anchor="middle">{}</text>"#,
        SIZE - 12.0,
        escape(&ax.title)
    );
    let _ = writeln!(s, "</g>");

    let radii: Vec<f64> = pattern
        .samples()
        .iter()
        .map(|p| PLOT_RADIUS * (ax.map)(p.value))
        .collect();
    let mut pts = String::new();
    for (p, r) in pattern.samples().iter().zip(&radii) {
        let (x, y) = point(*r, p.angle_deg);
        let _ = write!(pts, "{x:.3},{y:.3} ");
    }
    let _ = writeln!(
        s,
        r##"<polygon class="trace" points="{}" fill="none" stroke="#c0392b" stroke-width="1.5"/>"##,
        pts.trim_end()
    );
    let _ = writeln!(s, r##"<g class="samples" fill="#c0392b">"##);
    for (p, r) in pattern.samples().iter().zip(&radii) {
        let (x, y) = point(*r, p.angle_deg);
        let _ = writeln!(
            s,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="1.5" data-angle="{}" data-value="{}" data-radius-px="{r:.6}"/>"#,
            p.angle_deg, p.value
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

pub fn write_polar_svg(pattern: &RadiationPatternData, scale: PolarScale, path: &Path) -> Result<(), PlotError> {
    let svg = render_polar_svg(pattern, scale)?;
    write_atomic(path, svg.as_bytes())?;
    Ok(())
}

/// One plotted sample read back from an SVG.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlottedSample {
    pub angle_deg: f64,
    pub value: f64,
    pub radius_px: f64,
}

fn attr(tag: &str, name: &str) -> Option<f64> {
    let key = format!(" {name}=\"");
    let start = tag.find(&key)? + key.len();
    let end = start + tag[start..].find('"')?;
    tag[start..end].parse().ok()
}

/// Reads the per-sample annotations of an SVG produced by
/// [`render_polar_svg`].
pub fn parse_svg_samples(svg: &str) -> Vec<PlottedSample> {
    svg.lines()
        .filter(|l| l.contains("data-angle="))
        .filter_map(|l| {
            Some(PlottedSample {
                angle_deg: attr(l, "data-angle")?,
                value: attr(l, "data-value")?,
                radius_px: attr(l, "data-radius-px")?,
            })
        })
        .collect()
}

/// Plot radius in pixels recorded on the root element.
pub fn parse_svg_plot_radius(svg: &str) -> Option<f64> {
    svg.lines().find(|l| l.starts_with("<svg")).and_then(|l| attr(l, "data-plot-radius-px"))
}
