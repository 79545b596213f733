use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::geometry::SPEED_OF_LIGHT;

use super::grid::WireGrid;
use super::kernel::{add, dot, norm, scale, sub, Vec3};
use super::matrix::FREE_SPACE_IMPEDANCE;
use super::{CurrentSolution, SolverError};

/// Linear gain floor, keeps nulls finite in dBi.
const GAIN_FLOOR: f64 = 1e-30;

/// Quadrature used for total radiated power, independent of the output grid.
const POWER_THETA_NODES: usize = 96;
const POWER_PHI_NODES: usize = 192;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarFieldSample {
    pub theta_deg: f64,
    pub phi_deg: f64,
    pub gain_dbi: f64,
    /// Field magnitude relative to the pattern maximum.
    pub field: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternPeak {
    pub theta_deg: f64,
    pub phi_deg: f64,
    pub gain_dbi: f64,
}

/// Gain pattern on a regular (theta, phi) grid. Theta runs 0..=180 from +z,
/// phi 0..360 from +x.
#[derive(Debug, Clone, PartialEq)]
pub struct FarField {
    resolution: f64,
    theta_step: f64,
    theta_count: usize,
    phi_count: usize,
    gain_dbi: Vec<f64>,
    field: Vec<f64>,
    radiated_power: f64,
    input_power: f64,
}

impl FarField {
    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn theta_count(&self) -> usize {
        self.theta_count
    }

    pub fn phi_count(&self) -> usize {
        self.phi_count
    }

    pub fn theta_deg(&self, i: usize) -> f64 {
        i as f64 * self.theta_step
    }

    pub fn phi_deg(&self, j: usize) -> f64 {
        j as f64 * self.resolution
    }

    pub fn sample(&self, i: usize, j: usize) -> FarFieldSample {
        let idx = i * self.phi_count + j;
        FarFieldSample {
            theta_deg: self.theta_deg(i),
            phi_deg: self.phi_deg(j),
            gain_dbi: self.gain_dbi[idx],
            field: self.field[idx],
        }
    }

    pub fn samples(&self) -> impl Iterator<Item = FarFieldSample> + '_ {
        (0..self.theta_count).flat_map(move |i| (0..self.phi_count).map(move |j| self.sample(i, j)))
    }

    /// Maximum gain; ties resolve to the first sample in grid order.
    pub fn peak(&self) -> PatternPeak {
        let (idx, &g) = self
            .gain_dbi
            .iter()
            .enumerate()
            .fold(None, |best: Option<(usize, &f64)>, cur| match best {
                Some(b) if *b.1 >= *cur.1 => Some(b),
                _ => Some(cur),
            })
            .expect("pattern is non-empty");
        PatternPeak {
            theta_deg: self.theta_deg(idx / self.phi_count),
            phi_deg: self.phi_deg(idx % self.phi_count),
            gain_dbi: g,
        }
    }

    /// Integral of linear gain over the sphere on the output grid
    /// (trapezoid in theta, periodic in phi). Ideally `4 pi`.
    pub fn sphere_integral(&self) -> f64 {
        let dt = self.theta_step.to_radians();
        let dp = self.resolution.to_radians();
        let mut total = 0.0;
        for i in 0..self.theta_count {
            let theta = self.theta_deg(i).to_radians();
            let edge = if i == 0 || i + 1 == self.theta_count { 0.5 } else { 1.0 };
            let w = edge * theta.sin() * dt * dp;
            let row: f64 = (0..self.phi_count)
                .map(|j| 10f64.powf(self.gain_dbi[i * self.phi_count + j] / 10.0))
                .sum();
            total += w * row;
        }
        total
    }

    /// `sphere_integral / 4 pi`.
    pub fn normalization_ratio(&self) -> f64 {
        self.sphere_integral() / (4.0 * PI)
    }

    /// Gain along the theta = 90 degree plane (the plane containing the
    /// boom), as (phi_deg, gain_dbi) pairs.
    pub fn azimuth_cut(&self) -> Vec<(f64, f64)> {
        let i = (90.0 / self.theta_step).round() as usize;
        (0..self.phi_count)
            .map(|j| (self.phi_deg(j), self.gain_dbi[i * self.phi_count + j]))
            .collect()
    }

    /// Peak gain minus the gain in the opposite direction.
    pub fn front_to_back_db(&self) -> f64 {
        let p = self.peak();
        let back_theta = 180.0 - p.theta_deg;
        let back_phi = (p.phi_deg + 180.0).rem_euclid(360.0);
        let i = ((back_theta / self.theta_step).round() as usize).min(self.theta_count - 1);
        let j = ((back_phi / self.resolution).round() as usize) % self.phi_count;
        p.gain_dbi - self.gain_dbi[i * self.phi_count + j]
    }

    /// Total radiated power, W.
    pub fn radiated_power(&self) -> f64 {
        self.radiated_power
    }

    /// Radiated over delivered power; close to 1 for a converged lossless
    /// solution.
    pub fn power_balance(&self) -> f64 {
        self.radiated_power / self.input_power
    }
}

fn unit_direction(theta: f64, phi: f64) -> Vec3 {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

struct Radiator<'a> {
    /// (centre, unit direction, length) of each current span.
    spans: Vec<(Vec3, Vec3, f64)>,
    currents: &'a [Complex64],
    k: f64,
}

impl Radiator<'_> {
    /// `|F_perp|^2` with `F = sum I t L exp(jk r.c) sinc(k L (r.t) / 2)`.
    fn intensity(&self, r: Vec3) -> f64 {
        let mut f = [Complex64::new(0.0, 0.0); 3];
        for (&(c, t, len), &i) in self.spans.iter().zip(self.currents) {
            let x = 0.5 * self.k * len * dot(r, t);
            let sinc = if x.abs() < 1e-8 { 1.0 } else { x.sin() / x };
            let w = i * Complex64::from_polar(len * sinc, self.k * dot(r, c));
            for (fc, tc) in f.iter_mut().zip(t) {
                *fc += w * tc;
            }
        }
        let total: f64 = f.iter().map(|c| c.norm_sqr()).sum();
        let radial = f[0] * r[0] + f[1] * r[1] + f[2] * r[2];
        (total - radial.norm_sqr()).max(0.0)
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1].
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Radiation integral of the segment currents, normalized so the gain
/// integrates to `4 pi` over the sphere.
pub fn far_field(solution: &CurrentSolution, grid: &WireGrid, resolution: f64) -> Result<FarField, SolverError> {
    let per_turn = 360.0 / resolution;
    if !(resolution.is_finite() && resolution > 0.0 && resolution <= 180.0)
        || (per_turn - per_turn.round()).abs() > 1e-9
    {
        return Err(SolverError::Resolution(resolution));
    }
    if solution.currents.len() != grid.len() {
        return Err(SolverError::InvalidGrid(format!(
            "{} currents for {} segments",
            solution.currents.len(),
            grid.len()
        )));
    }
    let phi_count = per_turn.round() as usize;
    let theta_panels = (180.0 / resolution - 1e-9).ceil() as usize;
    let theta_step = 180.0 / theta_panels as f64;
    let theta_count = theta_panels + 1;

    let k = 2.0 * PI * solution.frequency / SPEED_OF_LIGHT;
    let rad = Radiator {
        spans: grid
            .current_spans()
            .into_iter()
            .map(|(a, b)| {
                let d = sub(b, a);
                let len = norm(d);
                (scale(add(a, b), 0.5), scale(d, 1.0 / len), len)
            })
            .collect(),
        currents: &solution.currents,
        k,
    };

    let nodes = gauss_legendre(POWER_THETA_NODES);
    let dphi = 2.0 * PI / POWER_PHI_NODES as f64;
    let integral: f64 = nodes
        .par_iter()
        .map(|&(mu, w)| {
            let theta = mu.acos();
            (0..POWER_PHI_NODES)
                .map(|j| rad.intensity(unit_direction(theta, j as f64 * dphi)))
                .sum::<f64>()
                * w
                * dphi
        })
        .sum();
    if !(integral > 0.0) {
        return Err(SolverError::DegenerateSolution);
    }

    let intensity: Vec<f64> = (0..theta_count)
        .into_par_iter()
        .flat_map_iter(|i| {
            let theta = (i as f64 * theta_step).to_radians();
            let rad = &rad;
            (0..phi_count).map(move |j| rad.intensity(unit_direction(theta, (j as f64 * resolution).to_radians())))
        })
        .collect();

    let peak = intensity.iter().cloned().fold(0.0, f64::max);
    let gain_dbi = intensity
        .iter()
        .map(|&u| 10.0 * (4.0 * PI * u / integral).max(GAIN_FLOOR).log10())
        .collect();
    let field = intensity
        .iter()
        .map(|&u| if peak > 0.0 { (u / peak).sqrt() } else { 0.0 })
        .collect();

    let radiated_power = k * k * FREE_SPACE_IMPEDANCE / (32.0 * PI * PI) * integral;

    Ok(FarField {
        resolution,
        theta_step,
        theta_count,
        phi_count,
        gain_dbi,
        field,
        radiated_power,
        input_power: solution.input_power(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let nodes = gauss_legendre(12);
        let sum_w: f64 = nodes.iter().map(|n| n.1).sum();
        assert!((sum_w - 2.0).abs() < 1e-13);
        let x4: f64 = nodes.iter().map(|(x, w)| w * x.powi(4)).sum();
        assert!((x4 - 0.4).abs() < 1e-13);
    }
}
