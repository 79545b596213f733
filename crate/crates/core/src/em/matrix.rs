use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::geometry::SPEED_OF_LIGHT;

use super::grid::WireGrid;
use super::kernel::{add, dot, mean_green, scale, segment_distance, LineSource, Vec3};
use super::SolverError;

/// Wave impedance of free space, `mu0 * c`, in ohms.
pub const FREE_SPACE_IMPEDANCE: f64 = 4.0e-7 * PI * SPEED_OF_LIGHT;

/// Dense square matrix of mutual impedances (ohms), row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpedanceMatrix {
    n: usize,
    data: Vec<Complex64>,
    frequency: f64,
}

impl ImpedanceMatrix {
    /// Wraps explicit rows. Fails unless the rows form a square matrix.
    pub fn from_rows(rows: Vec<Vec<Complex64>>, frequency: f64) -> Result<Self, SolverError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(SolverError::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
            frequency,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    pub(crate) fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |Z[i][j] - Z[j][i]| / max |Z|`.
    pub fn relative_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).norm());
            }
        }
        let scale = self.max_abs();
        if scale == 0.0 {
            0.0
        } else {
            worst / scale
        }
    }
}

/// Charge cells and junction nodes of a grid.
struct ChargeMesh {
    nodes: Vec<Vec3>,
    cells: Vec<LineSource>,
    /// (start node, end node) per segment.
    seg_nodes: Vec<(usize, usize)>,
}

impl ChargeMesh {
    fn new(grid: &WireGrid, spans: &[(Vec3, Vec3)]) -> Self {
        let segs = grid.segments();
        let mut nodes = Vec::new();
        let mut cells = Vec::new();
        let mut seg_nodes = vec![(0, 0); segs.len()];
        for wire in grid.wires() {
            let base = nodes.len();
            let radius = segs[wire.start].radius;
            nodes.push(spans[wire.start].0);
            for (local, m) in wire.clone().enumerate() {
                nodes.push(spans[m].1);
                seg_nodes[m] = (base + local, base + local + 1);
            }
            let count = wire.len();
            for k in 0..=count {
                let from = if k == 0 {
                    segs[wire.start].start
                } else {
                    segs[wire.start + k - 1].center()
                };
                let to = if k == count {
                    segs[wire.end - 1].end
                } else {
                    segs[wire.start + k].center()
                };
                cells.push(LineSource::between(from, to, radius));
            }
        }
        Self {
            nodes,
            cells,
            seg_nodes,
        }
    }
}

/// Symmetrized mean-kernel table: entry (p, q) averages the kernel of
/// source q seen from observer p and of source p seen from observer q.
fn symmetric_table(observers: &[Vec3], sources: &[LineSource], k: f64) -> Vec<Complex64> {
    let n = observers.len();
    let raw: Vec<Complex64> = (0..n)
        .into_par_iter()
        .flat_map_iter(|p| sources.iter().map(move |src| mean_green(observers[p], src, k)))
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for p in 0..n {
        for q in p..n {
            let v = 0.5 * (raw[p * n + q] + raw[q * n + p]);
            out[p * n + q] = v;
            out[q * n + p] = v;
        }
    }
    out
}

fn check_overlaps(grid: &WireGrid) -> Result<(), SolverError> {
    let segs = grid.segments();
    for (i, a) in segs.iter().enumerate() {
        for (j, b) in segs.iter().enumerate().skip(i + 1) {
            if a.element == b.element {
                continue;
            }
            let gap = segment_distance(a.start, a.end, b.start, b.end);
            if gap < a.radius.max(b.radius) {
                return Err(SolverError::SingularKernel {
                    observer: i,
                    other: j,
                });
            }
        }
    }
    Ok(())
}

/// Fills the mutual-impedance matrix for `grid` at `frequency` Hz.
///
/// `Z[m][n] = j k eta (t_m . t_n) L_m L_n psi(m, n)
///          - j (eta / k) [S(m+, n+) - S(m+, n-) - S(m-, n+) + S(m-, n-)]`
/// where `psi` is the mean kernel between segments and `S` the mean kernel
/// between segment end nodes and the charge cells around them.
pub fn impedance_matrix(grid: &WireGrid, frequency: f64) -> Result<ImpedanceMatrix, SolverError> {
    if !(frequency.is_finite() && frequency > 0.0) {
        return Err(SolverError::InvalidFrequency(frequency));
    }
    check_overlaps(grid)?;

    let k = 2.0 * PI * frequency / SPEED_OF_LIGHT;
    let eta = FREE_SPACE_IMPEDANCE;
    let segs = grid.segments();
    let n = segs.len();

    let spans = grid.current_spans();
    let lines: Vec<LineSource> = spans
        .iter()
        .zip(segs)
        .map(|(&(a, b), s)| LineSource::between(a, b, s.radius))
        .collect();
    let centers: Vec<Vec3> = spans.iter().map(|&(a, b)| scale(add(a, b), 0.5)).collect();
    let psi = symmetric_table(&centers, &lines, k);

    let mesh = ChargeMesh::new(grid, &spans);
    let scalar = symmetric_table(&mesh.nodes, &mesh.cells, k);
    let nodes = mesh.nodes.len();
    let s = |p: usize, q: usize| scalar[p * nodes + q];

    let vector_coef = Complex64::new(0.0, k * eta);
    let scalar_coef = Complex64::new(0.0, -eta / k);

    let data: Vec<Complex64> = (0..n)
        .into_par_iter()
        .flat_map_iter(|m| {
            let (sm, em) = mesh.seg_nodes[m];
            let (tm, lm) = (lines[m].dir, lines[m].length);
            let psi = &psi;
            let lines = &lines;
            let mesh = &mesh;
            (0..n).map(move |j| {
                let (sn, en) = mesh.seg_nodes[j];
                let parallel = dot(tm, lines[j].dir);
                let vector = vector_coef * (parallel * lm * lines[j].length) * psi[m * n + j];
                let charge = s(em, en) - s(em, sn) - s(sm, en) + s(sm, sn);
                vector + scalar_coef * charge
            })
        })
        .collect();

    Ok(ImpedanceMatrix { n, data, frequency })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_design, DesignRule};
    use crate::em::grid::segment;

    #[test]
    fn dipole_matrix_is_symmetric_with_lossy_diagonal() {
        let g = WireGrid::dipole(0.5, 1e-4, 3).unwrap();
        let z = impedance_matrix(&g, SPEED_OF_LIGHT).unwrap();
        assert_eq!(z.size(), 3);
        assert!(z.relative_asymmetry() < 1e-10);
        for i in 0..3 {
            assert!(z.get(i, i).re > 0.0, "{i}");
        }
    }

    #[test]
    fn yagi_matrix_is_symmetric() {
        let d = build_design(DesignRule::Nbs688, 900e6, 5e-3).unwrap();
        let g = segment(&d, 5).unwrap();
        let z = impedance_matrix(&g, 900e6).unwrap();
        assert!(z.relative_asymmetry() < 1e-10);
    }

    #[test]
    fn translation_invariant() {
        let d = build_design(DesignRule::Ycope, 900e6, 5e-3).unwrap();
        let g = segment(&d, 5).unwrap();
        let a = impedance_matrix(&g, 900e6).unwrap();
        let b = impedance_matrix(&g.translated([0.37, -1.25, 2.5]), 900e6).unwrap();
        let scale = a.max_abs();
        for (x, y) in a.data().iter().zip(b.data()) {
            assert!((x - y).norm() / scale < 1e-12);
        }
    }

    #[test]
    fn overlapping_wires_rejected() {
        use crate::em::grid::WireSegment;
        let mk = |x: f64, e: usize| -> Vec<WireSegment> {
            (0..3)
                .map(|i| WireSegment {
                    start: [x, 0.0, i as f64 * 0.1],
                    end: [x, 0.0, (i + 1) as f64 * 0.1],
                    radius: 1e-3,
                    element: e,
                })
                .collect()
        };
        let mut segs = mk(0.0, 0);
        segs.extend(mk(0.0005, 1));
        let g = WireGrid::new(segs, 1).unwrap();
        assert!(matches!(
            impedance_matrix(&g, 1e9),
            Err(SolverError::SingularKernel { .. })
        ));
    }

    #[test]
    fn bad_frequency() {
        let g = WireGrid::dipole(0.5, 1e-4, 3).unwrap();
        assert_eq!(impedance_matrix(&g, 0.0), Err(SolverError::InvalidFrequency(0.0)));
    }
}
