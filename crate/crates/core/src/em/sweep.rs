use num_complex::Complex64;

use crate::geometry::YagiDesign;

use super::{
    far_field, impedance_matrix, input_impedance, segment, solve_currents, CurrentSolution, FarField,
    ImpedanceResult, SolverError, WireGrid,
};

/// Everything one solve of a design produces.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub grid: WireGrid,
    pub solution: CurrentSolution,
    pub impedance: ImpedanceResult,
    pub far_field: FarField,
}

/// Segments, fills, solves with a 1 V gap at the driven element, and
/// computes the pattern.
pub fn simulate(
    design: &YagiDesign,
    frequency: f64,
    segments_per_element: usize,
    resolution: f64,
) -> Result<Simulation, SolverError> {
    let grid = segment(design, segments_per_element)?;
    simulate_grid(grid, frequency, resolution)
}

/// Solves an explicit grid, fed at its feed segment.
pub fn simulate_grid(grid: WireGrid, frequency: f64, resolution: f64) -> Result<Simulation, SolverError> {
    let matrix = impedance_matrix(&grid, frequency)?;
    let solution = solve_currents(&matrix, grid.feed_segment(), Complex64::new(1.0, 0.0))?;
    let impedance = input_impedance(&solution)?;
    let far_field = far_field(&solution, &grid, resolution)?;
    Ok(Simulation {
        grid,
        solution,
        impedance,
        far_field,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepEntry {
    pub frequency: f64,
    pub impedance: ImpedanceResult,
    pub peak_gain_dbi: f64,
}

/// One sweep point; a failed solve is kept rather than aborting the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub frequency: f64,
    pub outcome: Result<SweepEntry, SolverError>,
}

/// Solves `design` at every listed frequency, in input order.
pub fn frequency_sweep(
    design: &YagiDesign,
    frequencies: &[f64],
    segments_per_element: usize,
    resolution: f64,
) -> Result<Vec<SweepPoint>, SolverError> {
    if frequencies.is_empty() {
        return Err(SolverError::EmptySweep);
    }
    if let Some(&bad) = frequencies.iter().find(|f| !(f.is_finite() && **f > 0.0)) {
        return Err(SolverError::InvalidFrequency(bad));
    }
    let grid = segment(design, segments_per_element)?;
    Ok(frequencies
        .iter()
        .map(|&f| {
            let outcome = simulate_grid(grid.clone(), f, resolution)
                .map(|sim| SweepEntry {
                    frequency: f,
                    impedance: sim.impedance,
                    peak_gain_dbi: sim.far_field.peak().gain_dbi,
                })
                .map_err(|e| SolverError::AtFrequency {
                    frequency: f,
                    source: Box::new(e),
                });
            SweepPoint { frequency: f, outcome }
        })
        .collect())
}
