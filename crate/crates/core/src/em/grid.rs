use std::fmt::Write as _;
use std::ops::Range;

use crate::geometry::{ElementRole, YagiDesign};

use super::kernel::{add, dist, dot, norm, scale, sub, Vec3};
use super::SolverError;

pub const DEFAULT_SEGMENTS_PER_ELEMENT: usize = 21;

/// Segments must be longer than this multiple of the wire radius.
pub const THIN_WIRE_RATIO: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WireSegment {
    pub start: Vec3,
    pub end: Vec3,
    pub radius: f64,
    /// Index of the wire (antenna element) this segment belongs to.
    pub element: usize,
}

impl WireSegment {
    pub fn length(&self) -> f64 {
        dist(self.start, self.end)
    }

    pub fn center(&self) -> Vec3 {
        scale(add(self.start, self.end), 0.5)
    }

    pub fn direction(&self) -> Vec3 {
        let d = sub(self.end, self.start);
        scale(d, 1.0 / norm(d))
    }
}

/// Segmented straight-wire model.
#[derive(Debug, Clone, PartialEq)]
pub struct WireGrid {
    segments: Vec<WireSegment>,
    feed_segment: usize,
    wires: Vec<Range<usize>>,
}

impl WireGrid {
    /// Builds a grid and checks its invariants: thin-wire validity, each
    /// wire's segments contiguous and collinear, and the feed on the middle
    /// segment of a wire with an odd segment count.
    pub fn new(segments: Vec<WireSegment>, feed_segment: usize) -> Result<Self, SolverError> {
        if segments.is_empty() {
            return Err(SolverError::InvalidGrid("no segments".into()));
        }
        if feed_segment >= segments.len() {
            return Err(SolverError::FeedOutOfRange {
                index: feed_segment,
                count: segments.len(),
            });
        }

        for s in &segments {
            let len = s.length();
            if !(s.radius.is_finite() && s.radius > 0.0) {
                return Err(SolverError::InvalidGrid(format!(
                    "element {}: radius {} m must be positive",
                    s.element, s.radius
                )));
            }
            if !(len.is_finite() && len > THIN_WIRE_RATIO * s.radius) {
                return Err(SolverError::Discretization {
                    element: s.element,
                    segment_length: len,
                    radius: s.radius,
                });
            }
        }

        let mut wires: Vec<Range<usize>> = Vec::new();
        let mut seen = Vec::new();
        let mut begin = 0;
        for i in 1..=segments.len() {
            if i == segments.len() || segments[i].element != segments[begin].element {
                let id = segments[begin].element;
                if seen.contains(&id) {
                    return Err(SolverError::InvalidGrid(format!(
                        "segments of element {id} are not contiguous"
                    )));
                }
                seen.push(id);
                wires.push(begin..i);
                begin = i;
            }
        }

        for w in &wires {
            let first = &segments[w.start];
            let dir = first.direction();
            for pair in segments[w.clone()].windows(2) {
                let (a, b) = (&pair[0], &pair[1]);
                let tol = 1e-9 * a.length().max(b.length());
                if dist(a.end, b.start) > tol {
                    return Err(SolverError::InvalidGrid(format!(
                        "element {}: segments are not connected end to start",
                        a.element
                    )));
                }
                if (dot(dir, b.direction()) - 1.0).abs() > 1e-9 {
                    return Err(SolverError::InvalidGrid(format!(
                        "element {}: segments are not collinear",
                        a.element
                    )));
                }
                if (b.radius - first.radius).abs() > 1e-12 * first.radius {
                    return Err(SolverError::InvalidGrid(format!(
                        "element {}: radius varies along the wire",
                        a.element
                    )));
                }
            }
        }

        let feed_wire = wires
            .iter()
            .find(|w| w.contains(&feed_segment))
            .expect("feed index is in range");
        if feed_wire.len() % 2 == 0 || feed_segment != feed_wire.start + feed_wire.len() / 2 {
            return Err(SolverError::InvalidGrid(format!(
                "feed segment {feed_segment} is not the middle of an odd-count wire"
            )));
        }

        Ok(Self {
            segments,
            feed_segment,
            wires,
        })
    }

    /// A single straight wire along z, centred at the origin, fed at its
    /// middle segment.
    pub fn dipole(length: f64, radius: f64, segments: usize) -> Result<Self, SolverError> {
        check_count(segments)?;
        let segs = straight_wire([0.0, 0.0, -0.5 * length], [0.0, 0.0, 0.5 * length], radius, segments, 0);
        Self::new(segs, segments / 2)
    }

    pub fn segments(&self) -> &[WireSegment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn feed_segment(&self) -> usize {
        self.feed_segment
    }

    /// Index ranges of the segments of each wire, in grid order.
    pub fn wires(&self) -> &[Range<usize>] {
        &self.wires
    }

    /// Rigidly translated copy.
    pub fn translated(&self, offset: Vec3) -> Self {
        let segments = self
            .segments
            .iter()
            .map(|s| WireSegment {
                start: add(s.start, offset),
                end: add(s.end, offset),
                ..*s
            })
            .collect();
        Self {
            segments,
            feed_segment: self.feed_segment,
            wires: self.wires.clone(),
        }
    }

    /// Current-carrying span of each segment's pulse. Interior pulses cover
    /// the whole segment; at a free wire end the pulse stops at the centre of
    /// the tip charge cell, a quarter segment in from the tip.
    pub(crate) fn current_spans(&self) -> Vec<(Vec3, Vec3)> {
        let mut spans: Vec<(Vec3, Vec3)> = self.segments.iter().map(|s| (s.start, s.end)).collect();
        for w in &self.wires {
            let first = &self.segments[w.start];
            let last = &self.segments[w.end - 1];
            spans[w.start].0 = add(first.start, scale(first.direction(), 0.25 * first.length()));
            spans[w.end - 1].1 = sub(last.end, scale(last.direction(), 0.25 * last.length()));
        }
        spans
    }

    /// CSV export: `x1,y1,z1,x2,y2,z2,radius_m,element_index`, one segment
    /// per line after the header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x1,y1,z1,x2,y2,z2,radius_m,element_index\n");
        for s in &self.segments {
            let [x1, y1, z1] = s.start;
            let [x2, y2, z2] = s.end;
            let _ = writeln!(out, "{x1},{y1},{z1},{x2},{y2},{z2},{},{}", s.radius, s.element);
        }
        out
    }
}

fn check_count(segments_per_element: usize) -> Result<(), SolverError> {
    if segments_per_element < 3 || segments_per_element % 2 == 0 {
        return Err(SolverError::Segmentation(segments_per_element));
    }
    Ok(())
}

fn straight_wire(start: Vec3, end: Vec3, radius: f64, count: usize, element: usize) -> Vec<WireSegment> {
    let step = scale(sub(end, start), 1.0 / count as f64);
    (0..count)
        .map(|i| WireSegment {
            start: add(start, scale(step, i as f64)),
            end: if i + 1 == count {
                end
            } else {
                add(start, scale(step, (i + 1) as f64))
            },
            radius,
            element,
        })
        .collect()
}

/// Segments every element of `design` uniformly. Elements lie parallel to z,
/// centred on the boom, which runs along +x from the reflector.
pub fn segment(design: &YagiDesign, segments_per_element: usize) -> Result<WireGrid, SolverError> {
    check_count(segments_per_element)?;
    let driven = design
        .elements
        .iter()
        .position(|e| e.role == ElementRole::Driven)
        .ok_or_else(|| SolverError::InvalidGrid("design has no driven element".into()))?;

    let mut segments = Vec::with_capacity(design.elements.len() * segments_per_element);
    for (i, e) in design.elements.iter().enumerate() {
        let seg_len = e.length / segments_per_element as f64;
        if !(seg_len > THIN_WIRE_RATIO * e.radius()) {
            return Err(SolverError::Discretization {
                element: i,
                segment_length: seg_len,
                radius: e.radius(),
            });
        }
        let half = 0.5 * e.length;
        segments.extend(straight_wire(
            [e.position, 0.0, -half],
            [e.position, 0.0, half],
            e.radius(),
            segments_per_element,
            i,
        ));
    }
    let feed = driven * segments_per_element + segments_per_element / 2;
    WireGrid::new(segments, feed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_design, DesignRule};

    fn nbs() -> YagiDesign {
        build_design(DesignRule::Nbs688, 900e6, 5e-3).unwrap()
    }

    #[test]
    fn six_elements_twenty_one_each() {
        let g = segment(&nbs(), 21).unwrap();
        assert_eq!(g.len(), 126);
        // 11th segment of element 1
        assert_eq!(g.feed_segment(), 21 + 10);
        assert_eq!(g.segments()[g.feed_segment()].element, 1);
        assert_eq!(g.wires().len(), 6);
    }

    #[test]
    fn minimal_dipole() {
        let g = WireGrid::dipole(0.5, 1e-4, 3).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.feed_segment(), 1);
    }

    #[test]
    fn nbs_41_is_valid() {
        let g = segment(&nbs(), 41).unwrap();
        assert_eq!(g.len(), 246);
        // re-running the validator on the raw parts must succeed
        WireGrid::new(g.segments().to_vec(), g.feed_segment()).unwrap();
        let feed = &g.segments()[g.feed_segment()];
        assert!(feed.center()[2].abs() < 1e-12);
    }

    #[test]
    fn bad_counts() {
        assert_eq!(segment(&nbs(), 20), Err(SolverError::Segmentation(20)));
        assert_eq!(segment(&nbs(), 1), Err(SolverError::Segmentation(1)));
    }

    #[test]
    fn too_fine_names_element() {
        let mut d = nbs();
        d.elements[3].diameter = 0.02;
        match segment(&d, 41) {
            Err(SolverError::Discretization { element, .. }) => assert_eq!(element, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_off_center_feed_and_broken_wires() {
        let g = WireGrid::dipole(1.0, 1e-3, 5).unwrap();
        assert!(WireGrid::new(g.segments().to_vec(), 1).is_err());

        let mut segs = g.segments().to_vec();
        segs[3].start[0] += 0.01;
        assert!(WireGrid::new(segs, 2).is_err());

        let mut segs = g.segments().to_vec();
        segs[0].element = 1;
        segs[4].element = 1;
        assert!(WireGrid::new(segs, 2).is_err());
    }

    #[test]
    fn csv_export() {
        let g = WireGrid::dipole(1.0, 1e-3, 3).unwrap();
        let csv = g.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x1,y1,z1,x2,y2,z2,radius_m,element_index");
        assert_eq!(lines.len(), 4);
        let fields: Vec<f64> = lines[1].split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(fields.len(), 8);
        assert_eq!(fields[2], -0.5);
        assert_eq!(fields[6], 0.001);
        assert!(!csv.lines().skip(1).any(|l| l.contains('e')), "no exponent notation: {csv}");
    }
}
