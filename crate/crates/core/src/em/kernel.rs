//! Reduced thin-wire kernel integrals over straight line sources.

use std::f64::consts::PI;

use num_complex::Complex64;

pub type Vec3 = [f64; 3];

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: Vec3, b: Vec3) -> f64 {
    norm(sub(a, b))
}

const GAUSS_8: [(f64, f64); 8] = [
    (-0.960_289_856_497_536_2, 0.101_228_536_290_376_69),
    (-0.796_666_477_413_626_7, 0.222_381_034_453_374_34),
    (-0.525_532_409_916_329, 0.313_706_645_877_887_05),
    (-0.183_434_642_495_649_78, 0.362_683_783_378_361_77),
    (0.183_434_642_495_649_78, 0.362_683_783_378_361_77),
    (0.525_532_409_916_329, 0.313_706_645_877_887_05),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_34),
    (0.960_289_856_497_536_2, 0.101_228_536_290_376_69),
];

fn gauss<F: Fn(f64) -> Complex64>(lo: f64, hi: f64, f: F) -> Complex64 {
    if hi <= lo {
        return Complex64::new(0.0, 0.0);
    }
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    GAUSS_8
        .iter()
        .map(|&(x, w)| f(mid + half * x) * w)
        .sum::<Complex64>()
        * half
}

/// Straight line source `start -> start + dir * length` on a wire of
/// `radius`.
#[derive(Debug, Clone, Copy)]
pub struct LineSource {
    pub start: Vec3,
    pub dir: Vec3,
    pub length: f64,
    pub radius: f64,
}

impl LineSource {
    pub fn between(a: Vec3, b: Vec3, radius: f64) -> Self {
        let d = sub(b, a);
        let length = norm(d);
        Self {
            start: a,
            dir: scale(d, 1.0 / length),
            length,
            radius,
        }
    }

    fn center(&self) -> Vec3 {
        add(self.start, scale(self.dir, 0.5 * self.length))
    }
}

/// Mean of `exp(-jkR) / (4 pi R)` over the source, with
/// `R^2 = rho^2 + radius^2 + (zeta - l)^2` (reduced kernel).
///
/// Near the source the `1/R` part is integrated in closed form and only the
/// smooth remainder is left to quadrature, split at the observer's axial
/// foot point.
pub fn mean_green(observer: Vec3, src: &LineSource, k: f64) -> Complex64 {
    let rel = sub(observer, src.start);
    let zeta = dot(rel, src.dir);
    let rho2 = (dot(rel, rel) - zeta * zeta).max(0.0);
    let rho_e2 = rho2 + src.radius * src.radius;
    let len = src.length;

    let kernel = |l: f64| {
        let r = (rho_e2 + (zeta - l) * (zeta - l)).sqrt();
        Complex64::from_polar(1.0 / r, -k * r)
    };

    let integral = if dist(observer, src.center()) > 3.0 * len {
        gauss(0.0, len, kernel)
    } else {
        let rho_e = rho_e2.sqrt();
        let singular = ((len - zeta) / rho_e).asinh() + (zeta / rho_e).asinh();
        let remainder = |l: f64| {
            let r = (rho_e2 + (zeta - l) * (zeta - l)).sqrt();
            (Complex64::from_polar(1.0, -k * r) - 1.0) / r
        };
        let split = zeta.clamp(0.0, len);
        Complex64::new(singular, 0.0) + gauss(0.0, split, remainder) + gauss(split, len, remainder)
    };
    integral / (4.0 * PI * len)
}

/// Shortest distance between two line segments.
pub fn segment_distance(p0: Vec3, p1: Vec3, q0: Vec3, q1: Vec3) -> f64 {
    let d1 = sub(p1, p0);
    let d2 = sub(q1, q0);
    let r = sub(p0, q0);
    let a = dot(d1, d1);
    let e = dot(d2, d2);
    let f = dot(d2, r);
    let c = dot(d1, r);
    let b = dot(d1, d2);
    let denom = a * e - b * b;

    let mut s = if denom > 1e-14 * a * e {
        ((b * f - c * e) / denom).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut t = (b * s + f) / e;
    if t < 0.0 {
        t = 0.0;
        s = (-c / a).clamp(0.0, 1.0);
    } else if t > 1.0 {
        t = 1.0;
        s = ((b - c) / a).clamp(0.0, 1.0);
    }
    dist(add(p0, scale(d1, s)), add(q0, scale(d2, t)))
}
