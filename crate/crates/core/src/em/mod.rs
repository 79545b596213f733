//! Thin-wire moment-method solver.
//!
//! Straight wires are split into segments carrying pulse (piecewise
//! constant) currents. The electric-field integral equation is enforced at
//! segment centres in mixed-potential form: the vector potential comes from
//! the segment currents, the scalar potential from line charges on cells
//! centred at segment junctions (charge follows from current continuity, so
//! free wire ends carry the charge of the outermost pulse). The kernel is the
//! reduced thin-wire kernel, with source current on the axis and the
//! observation point displaced by the wire radius.
//!
//! Rows are tested over the segment length, so the system is in voltage form
//! (`Z I = V`, entries in ohms) and the matrix is complex-symmetric.

mod farfield;
mod grid;
mod kernel;
mod lu;
mod matrix;
mod sweep;

pub use farfield::{far_field, FarField, FarFieldSample, PatternPeak};
pub use grid::{segment, WireGrid, WireSegment, DEFAULT_SEGMENTS_PER_ELEMENT};
pub use lu::LuFactors;
pub use matrix::{impedance_matrix, ImpedanceMatrix, FREE_SPACE_IMPEDANCE};
pub use sweep::{frequency_sweep, simulate, simulate_grid, Simulation, SweepEntry, SweepPoint};

use num_complex::Complex64;
use thiserror::Error;

use crate::geometry::GeometryError;
use crate::impedance::ComplexImpedance;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("segments per element must be odd and at least 3, got {0}")]
    Segmentation(usize),
    #[error("element {element}: segment length {segment_length} m does not exceed the wire radius {radius} m")]
    Discretization {
        element: usize,
        segment_length: f64,
        radius: f64,
    },
    #[error("invalid wire grid: {0}")]
    InvalidGrid(String),
    #[error("frequency must be positive and finite, got {0} Hz")]
    InvalidFrequency(f64),
    #[error("singular kernel: segment {observer} and segment {other} on different wires overlap")]
    SingularKernel { observer: usize, other: usize },
    #[error("matrix is numerically singular (condition estimate {condition_estimate:.3e})")]
    Singular { condition_estimate: f64 },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("feed index {index} out of range for {count} segments")]
    FeedOutOfRange { index: usize, count: usize },
    #[error("feed current {0:e} A is too small to define an input impedance")]
    DegenerateFeed(f64),
    #[error("solution radiates no power")]
    DegenerateSolution,
    #[error("pattern resolution must divide 360 degrees, got {0}")]
    Resolution(f64),
    #[error("frequency list is empty")]
    EmptySweep,
    #[error("at {frequency} Hz: {source}")]
    AtFrequency {
        frequency: f64,
        #[source]
        source: Box<SolverError>,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Segment currents from one solve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentSolution {
    pub currents: Vec<Complex64>,
    pub excitation_voltage: Complex64,
    pub feed_segment: usize,
    pub frequency: f64,
    /// Relative residual `|Z I - V| / |V|` of the solve.
    pub residual: f64,
}

impl CurrentSolution {
    pub fn feed_current(&self) -> Complex64 {
        self.currents[self.feed_segment]
    }

    /// Time-averaged power delivered at the feed, W.
    pub fn input_power(&self) -> f64 {
        0.5 * (self.excitation_voltage * self.feed_current().conj()).re
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpedanceResult {
    pub z: ComplexImpedance,
    pub frequency: f64,
    pub segment_count: usize,
}

/// Solves `matrix * I = V` for a delta-gap source of `excitation` volts at
/// `feed`.
pub fn solve_currents(
    matrix: &ImpedanceMatrix,
    feed: usize,
    excitation: Complex64,
) -> Result<CurrentSolution, SolverError> {
    let n = matrix.size();
    if feed >= n {
        return Err(SolverError::FeedOutOfRange { index: feed, count: n });
    }
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    rhs[feed] = excitation;

    let lu = LuFactors::factor(matrix)?;
    let mut currents = lu.solve(&rhs);

    // One step of iterative refinement keeps the residual near round-off on
    // larger grids.
    let r: Vec<Complex64> = matrix
        .mul_vec(&currents)
        .iter()
        .zip(&rhs)
        .map(|(a, b)| b - a)
        .collect();
    let correction = lu.solve(&r);
    for (c, d) in currents.iter_mut().zip(correction) {
        *c += d;
    }

    let residual = relative_residual(matrix, &currents, &rhs);
    Ok(CurrentSolution {
        currents,
        excitation_voltage: excitation,
        feed_segment: feed,
        frequency: matrix.frequency(),
        residual,
    })
}

fn relative_residual(matrix: &ImpedanceMatrix, x: &[Complex64], b: &[Complex64]) -> f64 {
    let ax = matrix.mul_vec(x);
    let num: f64 = ax.iter().zip(b).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
    let den: f64 = b.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

/// Feed-point impedance `V / I_feed`.
pub fn input_impedance(solution: &CurrentSolution) -> Result<ImpedanceResult, SolverError> {
    let i = solution.feed_current();
    if i.norm() < 1e-15 {
        return Err(SolverError::DegenerateFeed(i.norm()));
    }
    Ok(ImpedanceResult {
        z: (solution.excitation_voltage / i).into(),
        frequency: solution.frequency,
        segment_count: solution.currents.len(),
    })
}
