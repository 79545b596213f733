use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A complex impedance in ohms.
///
/// Serialized as a two-element array `[re, im]`. Parsed from the single-token
/// literal form `R+Xj` / `R-Xj` (for example `24+3.73j`).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexImpedance {
    pub re: f64,
    pub im: f64,
}

impl ComplexImpedance {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn resistive(r: f64) -> Self {
        Self { re: r, im: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl From<Complex64> for ComplexImpedance {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexImpedance> for Complex64 {
    fn from(z: ComplexImpedance) -> Self {
        z.to_complex()
    }
}

impl Add for ComplexImpedance {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ComplexImpedance {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul<f64> for ComplexImpedance {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.re * rhs, self.im * rhs)
    }
}

impl Div<f64> for ComplexImpedance {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        Self::new(self.re / rhs, self.im / rhs)
    }
}

impl fmt::Display for ComplexImpedance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        match f.precision() {
            Some(p) => write!(f, "{:.*}{sign}{:.*}j", p, self.re, p, self.im.abs()),
            None => write!(f, "{}{sign}{}j", self.re, self.im.abs()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid complex literal `{0}` (expected R+Xj, e.g. 24+3.73j)")]
pub struct ParseImpedanceError(pub String);

impl FromStr for ComplexImpedance {
    type Err = ParseImpedanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseImpedanceError(s.to_string());
        let t = s.trim();
        if t.is_empty() || t.contains(char::is_whitespace) {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('j').or_else(|| t.strip_suffix('i')) else {
            // purely real
            return t.parse::<f64>().map(Self::resistive).map_err(|_| err());
        };
        // The split point is the last sign that is not the leading sign and
        // not part of an exponent.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| {
                (bytes[i] == b'+' || bytes[i] == b'-')
                    && !matches!(bytes[i - 1], b'e' | b'E')
            })
            .ok_or_else(err)?;
        let re: f64 = body[..split].parse().map_err(|_| err())?;
        let im_text = &body[split..];
        let im: f64 = match im_text {
            "+" => 1.0,
            "-" => -1.0,
            _ => im_text.parse().map_err(|_| err())?,
        };
        let z = Self::new(re, im);
        if z.is_finite() {
            Ok(z)
        } else {
            Err(err())
        }
    }
}

impl Serialize for ComplexImpedance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.re, self.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexImpedance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Self { re, im })
    }
}

/// Serde adapter writing a [`Complex64`] as `[re, im]`.
pub(crate) mod complex_pair {
    use num_complex::Complex64;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }
}
