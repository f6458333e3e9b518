//! Classical solution of the quarter-plane problem, independent of the
//! spectral machinery: method of images for `u` and `f`, the double-layer
//! boundary term for `g`.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::erf::erfc;

use crate::datafun::{BoundaryFunction, DatumTriple, ForcingFunction, HalfLineFunction};
use crate::error::{Error, Result};
use crate::lab::CompatLevel;
use crate::ops::{EvalRequest, SolutionField};
use crate::quad::adaptive;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub quad_tol: f64,
    pub fd_step: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { quad_tol: 1e-12, fd_step: 1e-3 }
    }
}

impl OracleConfig {
    pub fn new(quad_tol: f64, fd_step: f64) -> Result<Self> {
        if !(1e-4..=1e-2).contains(&fd_step) {
            return Err(Error::Config(format!("fd_step {fd_step} outside [1e-4, 1e-2]")));
        }
        if !(quad_tol > 0.0) {
            return Err(Error::Config(format!("quad_tol {quad_tol} must be positive")));
        }
        Ok(Self { quad_tol, fd_step })
    }
}

/// `K(x, t) = exp(-x^2 / 4t) / sqrt(4 pi t)`.
pub fn heat_kernel(x: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::OutsideDomain { x, t });
    }
    Ok(kernel(x, t))
}

fn kernel(x: f64, t: f64) -> f64 {
    (-x * x / (4.0 * t)).exp() / (4.0 * PI * t).sqrt()
}

fn integrate_real<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: f64) -> f64 {
    let g = |s: f64| Complex64::new(f(s), 0.0);
    adaptive(&g, breaks, tol, 2_000_000)
        .unwrap_or_else(|e| panic!("oracle quadrature failed: {e}"))
        .value
        .re
}

/// Break points on `[0, y_max]` that resolve a bump of width `w` at `x`.
fn bump_breaks(x: f64, w: f64, y_max: f64) -> Vec<f64> {
    let mut b = vec![0.0];
    for k in -8i32..=8 {
        let y = x + k as f64 * w;
        if y > 0.0 && y < y_max {
            b.push(y);
        }
    }
    b.push(y_max);
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

/// `int_0^inf [K(x - y, s) - K(x + y, s)] h(y) dy`.
fn image_integral(h: &HalfLineFunction, x: f64, s: f64, tol: f64) -> f64 {
    if h.is_zero() {
        return 0.0;
    }
    let w = s.sqrt();
    let y_max = x + 40.0 * w;
    let f = |y: f64| (kernel(x - y, s) - kernel(x + y, s)) * h.value(y);
    integrate_real(f, &bump_breaks(x, w, y_max), tol)
}

/// `int_0^t x / sqrt(4 pi) (t - tau)^{-3/2} exp(-x^2 / 4(t - tau)) g(tau) dtau`
/// with `sigma = sqrt(t - tau)`.
fn boundary_layer(g: &BoundaryFunction, x: f64, t: f64, tol: f64) -> f64 {
    if g.is_zero() {
        return 0.0;
    }
    let f = |sig: f64| {
        if sig == 0.0 {
            return 0.0;
        }
        x / PI.sqrt() / (sig * sig) * (-x * x / (4.0 * sig * sig)).exp() * g.value(t - sig * sig)
    };
    let top = t.sqrt();
    let breaks: Vec<f64> = (0..=32).map(|i| top * i as f64 / 32.0).collect();
    integrate_real(f, &breaks, tol)
}

/// Duhamel term `int_0^t int_0^inf [K(x-y, t-tau) - K(x+y, t-tau)] f(y, tau) dy dtau`,
/// with `sigma = sqrt(t - tau)` in the outer integral.
fn duhamel(f: &ForcingFunction, x: f64, t: f64, tol: f64) -> f64 {
    if f.is_zero() {
        return 0.0;
    }
    let outer = |sig: f64| {
        let tau = t - sig * sig;
        let inner: f64 = f
            .terms()
            .iter()
            .map(|term| {
                let tv = term.temporal.value(tau);
                if tv == 0.0 {
                    return 0.0;
                }
                let v = if sig == 0.0 {
                    term.spatial.value(x)
                } else {
                    image_integral(&term.spatial, x, sig * sig, tol)
                };
                v * tv
            })
            .sum();
        2.0 * sig * inner
    };
    let top = t.sqrt();
    let breaks: Vec<f64> = (0..=16).map(|i| top * i as f64 / 16.0).collect();
    integrate_real(outer, &breaks, tol)
}

/// Classical solution at an interior point.
pub fn classical_solution(datum: &DatumTriple, x: f64, t: f64) -> Result<f64> {
    classical_solution_with(datum, x, t, &OracleConfig::default())
}

pub fn classical_solution_with(datum: &DatumTriple, x: f64, t: f64, cfg: &OracleConfig) -> Result<f64> {
    if !(x > 0.0 && t > 0.0 && x.is_finite() && t.is_finite()) {
        return Err(Error::OutsideDomain { x, t });
    }
    let tol = cfg.quad_tol;
    Ok(image_integral(&datum.u, x, t, tol) + boundary_layer(&datum.g, x, t, tol) + duhamel(&datum.f, x, t, tol))
}

/// PDE residual `|Phi_t - Phi_xx - f|` by two routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    /// Derivatives from differentiated integrands.
    pub analytic: f64,
    /// Central differences of point values.
    pub finite_difference: f64,
}

pub fn residual(field: &SolutionField, x: f64, t: f64, cfg: &OracleConfig) -> Result<Residual> {
    let h = cfg.fd_step;
    if !(x >= 2.0 * h && t >= 2.0 * h) {
        return Err(Error::Config(format!("({x}, {t}) closer than 2 fd_step to the boundary")));
    }
    let at = |x: f64, t: f64, k: usize, l: usize| -> Result<f64> {
        Ok(field.eval(&EvalRequest::new(x, t).derivs(k, l))?.value.re)
    };
    let forcing = field.datum.f.value(x, t);
    let analytic = (at(x, t, 0, 1)? - at(x, t, 2, 0)? - forcing).abs();
    let centre = at(x, t, 0, 0)?;
    let phi_t = (at(x, t + h, 0, 0)? - at(x, t - h, 0, 0)?) / (2.0 * h);
    let phi_xx = (at(x + h, t, 0, 0)? - 2.0 * centre + at(x - h, t, 0, 0)?) / (h * h);
    let finite_difference = (phi_t - phi_xx - forcing).abs();
    Ok(Residual { analytic, finite_difference })
}

/// A datum with its closed-form solution.
pub struct ExactEntry {
    pub name: &'static str,
    pub datum: DatumTriple,
    pub class: CompatLevel,
    pub solution: fn(f64, f64) -> f64,
}

pub fn odd_gaussian() -> DatumTriple {
    let u = HalfLineFunction::gaussian(1.0, 1, 0.25).expect("valid term");
    DatumTriple::new(u, BoundaryFunction::zero(), ForcingFunction::zero())
}

pub fn unit_boundary() -> DatumTriple {
    DatumTriple::new(HalfLineFunction::zero(), BoundaryFunction::constant(1.0), ForcingFunction::zero())
}

pub fn exact_catalog() -> Vec<ExactEntry> {
    vec![
        ExactEntry {
            name: "odd-gaussian",
            datum: odd_gaussian(),
            class: CompatLevel::D1,
            solution: |x, t| (t + 1.0).powf(-1.5) * x * (-x * x / (4.0 * (t + 1.0))).exp(),
        },
        ExactEntry {
            name: "erfc",
            datum: unit_boundary(),
            class: CompatLevel::D,
            solution: |x, t| if t == 0.0 { if x == 0.0 { 1.0 } else { 0.0 } } else { erfc(x / (2.0 * t.sqrt())) },
        },
        ExactEntry { name: "zero", datum: DatumTriple::zero(), class: CompatLevel::D1, solution: |_, _| 0.0 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        assert!((heat_kernel(0.0, 1.0 / (4.0 * PI)).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(heat_kernel(0.7, 0.3).unwrap(), heat_kernel(-0.7, 0.3).unwrap());
        assert!(heat_kernel(1.0, 0.0).is_err());
        let mass = integrate_real(|x| kernel(x, 0.3), &[-20.0, -2.0, 0.0, 2.0, 20.0], 1e-14);
        assert!((mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn catalog_solutions_reproduced() {
        assert_eq!(classical_solution(&DatumTriple::zero(), 1.0, 1.0).unwrap(), 0.0);
        let v = classical_solution(&odd_gaussian(), 1.0, 1.0).unwrap();
        assert!((v - 2.0f64.powf(-1.5) * (-0.125f64).exp()).abs() < 1e-10);
        let v = classical_solution(&unit_boundary(), 1.0, 0.25).unwrap();
        assert!((v - erfc(1.0)).abs() < 1e-10);
        assert!(classical_solution(&unit_boundary(), 0.0, 0.25).is_err());
    }

    #[test]
    fn boundary_layer_tends_to_data() {
        let g = BoundaryFunction::exp_poly(1.0, 0, 1.0).unwrap();
        let v: Vec<f64> = [0.1, 0.05, 0.025].iter().map(|&x| boundary_layer(&g, x, 1.0, 1e-13)).collect();
        // first-order Richardson on a linear-in-x approach
        let extrap = 2.0 * v[2] - v[1];
        assert!((extrap - (-1.0f64).exp()).abs() < 1e-3, "{v:?}");
    }

    #[test]
    fn duhamel_against_constant_forcing() {
        // f = 1 on the half-line: U = t - boundary correction; compare far from x = 0
        let f = ForcingFunction::separable(HalfLineFunction::exponential(1.0, 0, 0.0001).unwrap(), BoundaryFunction::constant(1.0));
        let d = DatumTriple::new(HalfLineFunction::zero(), BoundaryFunction::zero(), f);
        let v = classical_solution(&d, 30.0, 0.5).unwrap();
        assert!((v - 0.5 * (-0.003f64).exp()).abs() < 1e-4, "{v}");
    }

    #[test]
    fn residual_of_exact_solution_is_small() {
        let field = SolutionField::new(odd_gaussian());
        let r = residual(&field, 1.0, 0.5, &OracleConfig::default()).unwrap();
        assert!(r.analytic < 1e-7, "{r:?}");
        assert!(r.finite_difference < 1e-4, "{r:?}");
    }

    #[test]
    fn config_bounds() {
        assert!(OracleConfig::new(1e-10, 1e-5).is_err());
        assert!(OracleConfig::new(1e-10, 1e-3).is_ok());
    }
}
