//! Contours in the spectral plane.
//!
//! `gamma` is the pair of rays `arg(lambda) = 3 pi / 4` (incoming from
//! infinity) and `arg(lambda) = pi / 4` (outgoing), on which
//! `Re(lambda^2) = 0` and `|exp(i lambda x)| = exp(-x |lambda| / sqrt 2)`.
//! The truncated and regularised variants cut `gamma` at `|lambda| = sqrt 2`,
//! i.e. at `-1 + i` and `1 + i`.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `exp(i pi / 4)`.
pub const OUT_DIR: Complex64 = Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
/// `exp(3 i pi / 4)`.
pub const IN_DIR: Complex64 = Complex64::new(-FRAC_1_SQRT_2, FRAC_1_SQRT_2);

/// Radius at which the truncated contours are cut.
pub const CUT_RADIUS: f64 = SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ContourPiece {
    /// Points `anchor + r * direction` for `r >= r_lo`. With `outward` the
    /// piece runs from `r_lo` to infinity, otherwise from infinity to `r_lo`.
    Ray { anchor: Complex64, direction: Complex64, r_lo: f64, outward: bool },
    /// Straight segment from `start` to `end`.
    Segment { start: Complex64, end: Complex64 },
}

impl ContourPiece {
    pub fn ray_out(direction: Complex64, r_lo: f64) -> Self {
        ContourPiece::Ray { anchor: Complex64::new(0.0, 0.0), direction, r_lo, outward: true }
    }

    pub fn ray_in(direction: Complex64, r_lo: f64) -> Self {
        ContourPiece::Ray { anchor: Complex64::new(0.0, 0.0), direction, r_lo, outward: false }
    }

    pub fn segment(start: Complex64, end: Complex64) -> Self {
        ContourPiece::Segment { start, end }
    }

    /// Finite endpoint where traversal starts, if any.
    pub fn start(&self) -> Option<Complex64> {
        match *self {
            ContourPiece::Ray { anchor, direction, r_lo, outward } => {
                outward.then(|| anchor + direction * r_lo)
            }
            ContourPiece::Segment { start, .. } => Some(start),
        }
    }

    /// Finite endpoint where traversal ends, if any.
    pub fn end(&self) -> Option<Complex64> {
        match *self {
            ContourPiece::Ray { anchor, direction, r_lo, outward } => {
                (!outward).then(|| anchor + direction * r_lo)
            }
            ContourPiece::Segment { end, .. } => Some(end),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ContourPiece::Segment { .. })
    }

    /// Distance of the piece from the origin.
    pub fn min_modulus(&self) -> f64 {
        match *self {
            ContourPiece::Ray { anchor, direction, r_lo, .. } => {
                // closest point of anchor + r d, r >= r_lo
                let r_star = (-(anchor * direction.conj()).re).max(r_lo);
                (anchor + direction * r_star).norm()
            }
            ContourPiece::Segment { start, end } => {
                let d = end - start;
                let s = if d.norm_sqr() == 0.0 {
                    0.0
                } else {
                    (-(start * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0)
                };
                (start + d * s).norm()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContourName {
    Gamma,
    GammaStar,
    Gamma0,
    Gamma1,
    Gamma2,
    RealLine,
    Custom,
}

impl FromStr for ContourName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "gamma" => ContourName::Gamma,
            "gamma_star" | "gamma*" => ContourName::GammaStar,
            "gamma0" => ContourName::Gamma0,
            "gamma1" => ContourName::Gamma1,
            "gamma2" => ContourName::Gamma2,
            "real_line" => ContourName::RealLine,
            "custom" => ContourName::Custom,
            other => return Err(Error::UnknownContour(other.to_string())),
        })
    }
}

impl fmt::Display for ContourName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ContourName::Gamma => "gamma",
            ContourName::GammaStar => "gamma_star",
            ContourName::Gamma0 => "gamma0",
            ContourName::Gamma1 => "gamma1",
            ContourName::Gamma2 => "gamma2",
            ContourName::RealLine => "real_line",
            ContourName::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// Ordered list of pieces traversed in sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub name: ContourName,
    pub pieces: Vec<ContourPiece>,
}

impl Contour {
    pub fn custom(pieces: Vec<ContourPiece>) -> Self {
        Self { name: ContourName::Custom, pieces }
    }

    /// JSON dump of the piece list, for plotting.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("contour serializes")
    }

    /// Largest modulus over the finite pieces; infinite if any ray is present.
    pub fn max_modulus(&self) -> f64 {
        self.pieces
            .iter()
            .map(|p| match *p {
                ContourPiece::Ray { .. } => f64::INFINITY,
                ContourPiece::Segment { start, end } => start.norm().max(end.norm()),
            })
            .fold(0.0, f64::max)
    }

    pub fn min_modulus(&self) -> f64 {
        self.pieces.iter().map(|p| p.min_modulus()).fold(f64::INFINITY, f64::min)
    }

    /// Whether `lambda` lies on the contour (up to `tol`).
    pub fn contains(&self, lambda: Complex64, tol: f64) -> bool {
        self.pieces.iter().any(|p| match *p {
            ContourPiece::Ray { anchor, direction, r_lo, .. } => {
                let rel = (lambda - anchor) * direction.conj();
                rel.im.abs() <= tol && rel.re >= r_lo - tol
            }
            ContourPiece::Segment { start, end } => {
                let d = end - start;
                let rel = (lambda - start) * d.conj() / d.norm_sqr();
                (rel.im * d.norm()).abs() <= tol && rel.re >= -tol && rel.re <= 1.0 + tol
            }
        })
    }
}

pub fn make_contour(name: ContourName) -> Result<Contour> {
    let m1 = Complex64::new(-1.0, 1.0);
    let p1 = Complex64::new(1.0, 1.0);
    let pieces = match name {
        ContourName::Gamma => vec![ContourPiece::ray_in(IN_DIR, 0.0), ContourPiece::ray_out(OUT_DIR, 0.0)],
        ContourName::GammaStar => vec![
            ContourPiece::ray_in(IN_DIR, CUT_RADIUS),
            ContourPiece::segment(m1, Complex64::new(-1.0, 0.0)),
            ContourPiece::segment(Complex64::new(1.0, 0.0), p1),
            ContourPiece::ray_out(OUT_DIR, CUT_RADIUS),
        ],
        ContourName::Gamma0 => vec![
            ContourPiece::ray_in(IN_DIR, CUT_RADIUS),
            ContourPiece::segment(m1, p1),
            ContourPiece::ray_out(OUT_DIR, CUT_RADIUS),
        ],
        ContourName::Gamma1 => vec![
            ContourPiece::segment(m1, Complex64::new(0.0, 0.0)),
            ContourPiece::segment(Complex64::new(0.0, 0.0), p1),
        ],
        ContourName::Gamma2 => {
            vec![ContourPiece::ray_in(IN_DIR, CUT_RADIUS), ContourPiece::ray_out(OUT_DIR, CUT_RADIUS)]
        }
        ContourName::RealLine => vec![
            ContourPiece::ray_in(Complex64::new(-1.0, 0.0), 0.0),
            ContourPiece::ray_out(Complex64::new(1.0, 0.0), 0.0),
        ],
        ContourName::Custom => {
            return Err(Error::UnknownContour("custom contours are built with Contour::custom".into()))
        }
    };
    Ok(Contour { name, pieces })
}

/// `|exp(i lambda x - lambda^2 t)| = exp(-x Im(lambda) - t Re(lambda^2))`.
pub fn modulus_bound(lambda: Complex64, x: f64, t: f64) -> f64 {
    (-x * lambda.im - t * (lambda * lambda).re).exp()
}

/// The dispersion relation `omega(lambda) = lambda^2`.
#[inline]
pub fn omega(lambda: Complex64) -> Complex64 {
    lambda * lambda
}
