//! Spectral transforms of the data.
//!
//! * `u_hat(lambda) = int_0^inf exp(-i lambda y) u(y) dy`
//! * `g_tilde(omega, t) = int_0^t exp(omega tau) g(tau) dtau`
//! * `f_hat(lambda, tau)` and `f_tilde(lambda, omega, t)` for separable forcing.
//!
//! Exponential terms use closed forms. Gaussian terms go through the Faddeeva
//! function and a moment recurrence; when the recurrence cannot certify its
//! accuracy they are integrated along a ray in the complex `y`-plane, rotated
//! so that `exp(-i lambda y)` decays (the integrand is entire, so rotation
//! leaves the value unchanged).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, PI};

use num_complex::Complex64;

use errorfunctions::ComplexErrorFunctions;

use crate::datafun::{BoundaryFunction, ForcingFunction, GaussTerm, HalfLineFunction};
use crate::error::{Error, Result};
use crate::quad::adaptive;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A spectral point together with `omega = lambda^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub lambda: Complex64,
    pub omega: Complex64,
}

impl SpectralPoint {
    pub fn new(lambda: Complex64) -> Self {
        Self { lambda, omega: lambda * lambda }
    }
}

/// Regularisation order `M`: the number of integrations by parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RegOrder(pub usize);

impl RegOrder {
    /// Smallest admissible order for a `(k, l)` derivative: `M > k + 2l + 1`.
    pub fn minimal(k: usize, l: usize) -> Self {
        RegOrder(k + 2 * l + 2)
    }

    pub fn admits(&self, k: usize, l: usize) -> bool {
        self.0 > k + 2 * l + 1
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Half-line Fourier transform `u_hat(lambda)`.
pub fn half_line_ft(u: &HalfLineFunction, lambda: Complex64) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    let mut gaussian = Vec::new();
    for t in u.terms() {
        if t.a == 0.0 {
            let z = t.b + I * lambda;
            if z.re <= 0.0 {
                return Err(Error::DivergentTransform { re: lambda.re, im: lambda.im });
            }
            total += t.c * factorial(t.m) / z.powu(t.m + 1);
        } else {
            gaussian.push(*t);
        }
    }
    if !gaussian.is_empty() {
        total += gaussian_ft(&gaussian, lambda)?;
    }
    Ok(total)
}

/// `[u^(M)]^(lambda)`, the transform of the `M`-th derivative.
pub fn deriv_ft(u: &HalfLineFunction, order: RegOrder, lambda: Complex64) -> Result<Complex64> {
    half_line_ft(&u.deriv(order.0), lambda)
}

/// Right-hand side of the boundary-term identity
/// `[u^(M)]^ = (i lambda)^M u_hat - sum_{j=1}^M (i lambda)^(j-1) u^(M-j)(0)`.
pub fn deriv_ft_by_parts(u: &HalfLineFunction, order: RegOrder, lambda: Complex64) -> Result<Complex64> {
    let m = order.0;
    let il = I * lambda;
    let at0 = u.derivs_at_zero(m);
    let mut acc = il.powu(m as u32) * half_line_ft(u, lambda)?;
    for j in 1..=m {
        acc -= il.powu(j as u32 - 1) * at0[m - j];
    }
    Ok(acc)
}

/// Gaussian terms grouped by `(a, b)`; each group is summed from the moments
/// `J_m(s) = int_0^inf y^m exp(-a y^2 - s y) dy`, `s = b + i mu`, falling back
/// to quadrature when the moment recurrence cannot certify its accuracy.
fn gaussian_ft(terms: &[GaussTerm], mu: Complex64) -> Result<Complex64> {
    let mut keys: Vec<(f64, f64)> = terms.iter().map(|t| (t.a, t.b)).collect();
    keys.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    keys.dedup();
    let mut total = Complex64::new(0.0, 0.0);
    for (a, b) in keys {
        let group: Vec<GaussTerm> = terms.iter().filter(|t| t.a == a && t.b == b).copied().collect();
        total += match gaussian_moments(&group, mu) {
            Some(v) => v,
            None => gaussian_ft_rotated(&group, mu)?,
        };
    }
    Ok(total)
}

/// Absolute error budget of the moment route, relative to the real-axis size
/// of the group.
const MOMENT_BUDGET: f64 = 1e-14;

fn gaussian_moments(group: &[GaussTerm], mu: Complex64) -> Option<Complex64> {
    let (a, b) = (group[0].a, group[0].b);
    let s = b + I * mu;
    let m_max = group.iter().map(|t| t.m).max().unwrap_or(0) as usize;
    let j0 = 0.5 * (PI / a).sqrt() * (I * s / (2.0 * a.sqrt())).w();
    if !j0.is_finite() {
        return None;
    }
    let scale: f64 = group.iter().map(|t| t.c.abs() * real_moment(t.m, a)).sum::<f64>().max(1.0);
    let sum = |j: &[Complex64]| group.iter().map(|t| t.c * j[t.m as usize]).sum::<Complex64>();

    let (j, err) = forward_moments(j0, s, a, m_max);
    let bound: f64 = group.iter().map(|t| t.c.abs() * err[t.m as usize]).sum();
    if bound <= MOMENT_BUDGET * scale {
        return Some(sum(&j));
    }
    // J_m is the minimal solution when |s|^2 >> a m: recur downwards
    let start = m_max + 30;
    let j1 = backward_moments(j0, s, a, m_max, start)?;
    let j2 = backward_moments(j0, s, a, m_max, start + 30)?;
    let (v1, v2) = (sum(&j1), sum(&j2));
    ((v1 - v2).norm() <= MOMENT_BUDGET * scale).then_some(v2)
}

/// `J_0..J_m` by `2a J_{n+1} = n J_{n-1} - s J_n`, with a running bound on
/// the propagated absolute error.
fn forward_moments(j0: Complex64, s: Complex64, a: f64, m: usize) -> (Vec<Complex64>, Vec<f64>) {
    let eps = f64::EPSILON;
    let mut j = vec![j0];
    let mut err = vec![16.0 * eps * j0.norm()];
    if m >= 1 {
        j.push((1.0 - s * j0) / (2.0 * a));
        err.push((s.norm() * err[0] + eps * (1.0 + (s * j0).norm())) / (2.0 * a));
    }
    for n in 1..m {
        let nf = n as f64;
        let next = (nf * j[n - 1] - s * j[n]) / (2.0 * a);
        let e = (nf * err[n - 1] + s.norm() * err[n] + eps * (nf * j[n - 1].norm() + (s * j[n]).norm())) / (2.0 * a);
        j.push(next);
        err.push(e);
    }
    (j, err)
}

/// Miller's algorithm from index `start`, normalised by `J_0`.
fn backward_moments(j0: Complex64, s: Complex64, a: f64, m: usize, start: usize) -> Option<Vec<Complex64>> {
    let mut y = vec![Complex64::new(0.0, 0.0); start + 2];
    y[start] = Complex64::new(1e-30, 0.0);
    for n in (1..=start).rev() {
        y[n - 1] = (2.0 * a * y[n + 1] + s * y[n]) / n as f64;
        if y[n - 1].norm() > 1e200 {
            for v in y.iter_mut() {
                *v *= 1e-200;
            }
        }
    }
    if y[0].norm() == 0.0 || !y[0].is_finite() {
        return None;
    }
    let k = j0 / y[0];
    Some(y[..=m].iter().map(|v| v * k).collect())
}

/// `int_0^inf y^m exp(-a y^2) dy`, an upper bound for the group's size on the real axis.
fn real_moment(m: u32, a: f64) -> f64 {
    0.5 * statrs::function::gamma::gamma((m as f64 + 1.0) / 2.0) / a.powf((m as f64 + 1.0) / 2.0)
}

fn gaussian_ft_rotated(terms: &[GaussTerm], mu: Complex64) -> Result<Complex64> {
    // rotate y = s e^{i phi} towards steepest decay of exp(-i mu y)
    let mut phi = -FRAC_PI_2 - mu.arg();
    if phi < -PI {
        phi += 2.0 * PI;
    }
    let phi = phi.clamp(-FRAC_PI_8, FRAC_PI_8);
    let rot = Complex64::from_polar(1.0, phi);
    let decay_lin = (mu * rot).im; // exp(-i mu y) has modulus exp(s * decay_lin)

    let log_mag = |s: f64| -> f64 {
        terms
            .iter()
            .map(|t| {
                let p = if t.m == 0 { 0.0 } else { t.m as f64 * s.max(1e-300).ln() };
                t.c.abs().ln() + p - t.a * s * s * (2.0 * phi).cos() - t.b * s * phi.cos() + s * decay_lin
            })
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let floor = (1e-18f64).ln();
    let mut s_max = 1.0;
    while log_mag(s_max) > floor || log_mag(s_max * 1.1) > log_mag(s_max) {
        s_max *= 1.15;
        if s_max > 1e6 {
            return Err(Error::DivergentTransform { re: mu.re, im: mu.im });
        }
    }

    let f = |s: f64| {
        let y = rot * s;
        let mut acc = Complex64::new(0.0, 0.0);
        for t in terms {
            acc += t.c * y.powu(t.m) * (-t.a * y * y - t.b * y).exp();
        }
        acc * (-I * mu * y).exp() * rot
    };
    let rate = (mu * rot).re.abs() + 1.0;
    let n = ((rate * s_max / PI).ceil() as usize).clamp(2, 4000);
    let breaks: Vec<f64> = (0..=n).map(|i| s_max * i as f64 / n as f64).collect();
    let scale: f64 = terms.iter().map(|t| t.c.abs() * real_moment(t.m, t.a)).sum::<f64>().max(1.0);
    adaptive(&f, &breaks, MOMENT_BUDGET * scale, 400_000).map(|q| q.value)
}

/// `K_m(sigma, t) = int_0^t exp(-sigma (t - tau)) tau^m dtau`.
pub(crate) fn kernel_moment(m: u32, sigma: Complex64, t: f64) -> Complex64 {
    if t == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let z = sigma * t;
    let tm1 = t.powi(m as i32 + 1);
    let az = z.norm();
    if az <= 8.0 {
        // kappa_m(z) = sum_n (-z)^n m! / (n + m + 1)!
        let mut term = Complex64::new(1.0 / (m as f64 + 1.0), 0.0);
        let mut sum = term;
        for n in 1..400 {
            term *= -z / (n as f64 + m as f64 + 1.0);
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        return sum * tm1;
    }
    if (m as f64) <= 0.5 * az {
        let mut kappa = (1.0 - (-z).exp()) / z;
        for k in 1..=m {
            kappa = (1.0 - k as f64 * kappa) / z;
        }
        return kappa * tm1;
    }
    let f = |v: f64| (-z * (1.0 - v)).exp() * v.powi(m as i32);
    let n = ((az / PI).ceil() as usize + 4).min(2000);
    let breaks: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    adaptive(&f, &breaks, 1e-17, 400_000)
        .map(|q| q.value * tm1)
        .unwrap_or_else(|e| panic!("moment quadrature failed for m = {m}, z = {z}: {e}"))
}

/// `g_tilde(omega, t) = int_0^t exp(omega tau) g(tau) dtau`.
pub fn time_transform(g: &BoundaryFunction, omega: Complex64, t: f64) -> Complex64 {
    g.exp_terms()
        .iter()
        .map(|s| {
            let sig = omega + s.rate;
            s.coeff * (sig * t).exp() * kernel_moment(s.m, sig, t)
        })
        .sum()
}

/// `exp(-lambda^2 t) g_tilde(lambda^2, t) = int_0^t exp(-lambda^2 (t - tau)) g(tau) dtau`,
/// evaluated without forming the two exponentials separately.
pub fn damped_time_transform(g: &BoundaryFunction, lambda: Complex64, t: f64) -> Complex64 {
    let w = lambda * lambda;
    g.exp_terms()
        .iter()
        .map(|s| s.coeff * (s.rate * t).exp() * kernel_moment(s.m, w + s.rate, t))
        .sum()
}

/// `d^l/dt^l [exp(-lambda^2 t) g_tilde(lambda^2, t)]`.
pub fn damped_time_transform_dt(g: &BoundaryFunction, lambda: Complex64, t: f64, l: usize) -> Complex64 {
    let minus_w = -(lambda * lambda);
    let derivs = g.derivs_at(t, l);
    let mut acc = minus_w.powu(l as u32) * damped_time_transform(g, lambda, t);
    for (a, ga) in derivs.iter().enumerate() {
        acc += minus_w.powu((l - 1 - a) as u32) * *ga;
    }
    acc
}

/// Derivative values entering the integration-by-parts expansion:
/// `at_t[j] = g^(j)(t)`, `at_zero[j] = g^(j)(0)` for `j <= M`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeTable {
    pub at_t: Vec<f64>,
    pub at_zero: Vec<f64>,
}

impl DerivativeTable {
    pub fn new(g: &BoundaryFunction, t: f64, order: RegOrder) -> Self {
        Self { at_t: g.derivs_at(t, order.0 + 1), at_zero: g.derivs_at(0.0, order.0 + 1) }
    }
}

/// Integration-by-parts form of `exp(-lambda^2 t) g_tilde(lambda^2, t)`:
/// `sum_{j=0}^M (-1)^j [g^(j)(t) - g^(j)(0) e^{-lambda^2 t}] / lambda^(2j+2)
///  + (-1)^(M+1) lambda^(-2M-2) e^{-lambda^2 t} int_0^t e^{lambda^2 tau} g^(M+1)(tau) dtau`.
pub fn ibp_time_transform(g: &BoundaryFunction, lambda: Complex64, t: f64, order: RegOrder) -> Result<Complex64> {
    let table = DerivativeTable::new(g, t, order);
    ibp_time_transform_with_table(&table, &g.deriv(order.0 + 1), lambda, t, order)
}

/// As [`ibp_time_transform`] with caller-supplied derivative values.
pub fn ibp_time_transform_with_table(
    table: &DerivativeTable,
    g_next: &BoundaryFunction,
    lambda: Complex64,
    t: f64,
    order: RegOrder,
) -> Result<Complex64> {
    if lambda == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroLambda);
    }
    let m = order.0;
    if table.at_t.len() <= m || table.at_zero.len() <= m {
        return Err(Error::Config(format!("derivative table shorter than M + 1 = {}", m + 1)));
    }
    let w = lambda * lambda;
    let decay = (-w * t).exp();
    let inv_w = w.inv();
    let mut pw = inv_w;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..=m {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * (table.at_t[j] - table.at_zero[j] * decay) * pw;
        pw *= inv_w;
    }
    let sign = if (m + 1) % 2 == 0 { 1.0 } else { -1.0 };
    // pw == lambda^{-2M-4} here; the remainder carries lambda^{-2M-2}
    acc += sign * (pw * w) * damped_time_transform(g_next, lambda, t);
    Ok(acc)
}

/// `f_hat(lambda, tau) = sum_i S_i_hat(lambda) T_i(tau)`.
pub fn forcing_hat(f: &ForcingFunction, lambda: Complex64, tau: f64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for s in f.terms() {
        acc += half_line_ft(&s.spatial, lambda)? * s.temporal.value(tau);
    }
    Ok(acc)
}

/// `f_tilde(lambda, omega, t) = int_0^t exp(omega tau) f_hat(lambda, tau) dtau`.
pub fn forcing_transform(f: &ForcingFunction, lambda: Complex64, omega: Complex64, t: f64) -> Result<Complex64> {
    if t == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for s in f.terms() {
        acc += half_line_ft(&s.spatial, lambda)? * time_transform(&s.temporal, omega, t);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datafun::{GaussTerm, OscTerm};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Direct quadrature of `int_0^X exp(-i lambda y) u(y) dy` on the real axis.
    fn ft_oracle(u: &HalfLineFunction, lambda: Complex64) -> Complex64 {
        let f = |y: f64| (-I * lambda * y).exp() * u.value(y);
        let x_max = 80.0;
        let n = 4000;
        let breaks: Vec<f64> = (0..=n).map(|i| x_max * i as f64 / n as f64).collect();
        adaptive(&f, &breaks, 1e-15, 2_000_000).unwrap().value
    }

    /// Direct quadrature of `int_0^t exp(omega tau) g(tau) dtau`.
    fn time_oracle(g: &BoundaryFunction, omega: Complex64, t: f64) -> Complex64 {
        let f = |tau: f64| (omega * tau).exp() * g.value(tau);
        let breaks: Vec<f64> = (0..=200).map(|i| t * i as f64 / 200.0).collect();
        adaptive(&f, &breaks, 1e-16, 2_000_000).unwrap().value
    }

    #[test]
    fn zero_function_transforms_vanish() {
        assert_eq!(half_line_ft(&HalfLineFunction::zero(), c(0.3, -0.2)).unwrap(), c(0.0, 0.0));
        assert_eq!(deriv_ft(&HalfLineFunction::zero(), RegOrder(3), c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(time_transform(&BoundaryFunction::zero(), c(1.0, 1.0), 2.0), c(0.0, 0.0));
        assert_eq!(forcing_hat(&ForcingFunction::zero(), c(1.0, 0.0), 0.5).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn exponential_transform_closed_form() {
        let u = HalfLineFunction::exponential(1.0, 0, 1.0).unwrap();
        let at0 = half_line_ft(&u, c(0.0, 0.0)).unwrap();
        assert!((at0 - c(1.0, 0.0)).norm() < 1e-15);
        assert!((at0 - ft_oracle(&u, c(0.0, 0.0))).norm() < 1e-12);
        let at1 = half_line_ft(&u, c(1.0, 0.0)).unwrap();
        assert!((at1 - c(1.0, 1.0).inv()).norm() < 1e-15);
        assert!((at1 - ft_oracle(&u, c(1.0, 0.0))).norm() < 1e-12);
        let d1 = deriv_ft(&u, RegOrder(1), c(0.0, 0.0)).unwrap();
        assert!((d1 - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn divergent_region_rejected() {
        let u = HalfLineFunction::exponential(1.0, 0, 1.0).unwrap();
        assert!(matches!(half_line_ft(&u, c(0.0, 2.0)), Err(Error::DivergentTransform { .. })));
    }

    #[test]
    fn gaussian_transform_matches_real_axis_quadrature() {
        let u = HalfLineFunction::new(vec![
            GaussTerm { c: 1.0, m: 1, a: 0.25, b: 0.0 },
            GaussTerm { c: -0.5, m: 3, a: 1.0, b: 0.7 },
        ])
        .unwrap();
        for lambda in [c(0.0, 0.0), c(3.0, 0.0), c(-7.5, 0.0), c(2.0, -2.0), c(-1.0, -3.0), c(25.0, 0.0)] {
            let got = half_line_ft(&u, lambda).unwrap();
            let want = ft_oracle(&u, lambda);
            assert!((got - want).norm() < 1e-12, "{lambda}: {got} vs {want}");
        }
    }

    #[test]
    fn moment_route_matches_rotated_quadrature() {
        let mut fallbacks = 0;
        let mut total = 0;
        for &a in &[0.25, 1.0, 3.0] {
            for &b in &[0.0, 0.7] {
                for m in 0..13u32 {
                    let term = [GaussTerm { c: 1.0, m, a, b }];
                    for lambda in [c(0.0, 0.0), c(0.5, 0.0), c(-3.0, 0.0), c(12.0, 0.0), c(40.0, 0.0), c(-2.0, -2.0), c(5.0, -5.0), c(0.3, -0.9)] {
                        total += 1;
                        let want = gaussian_ft_rotated(&term, lambda).unwrap();
                        match gaussian_moments(&term, lambda) {
                            Some(got) => {
                                let scale = real_moment(m, a).max(1.0);
                                assert!((got - want).norm() <= 5e-13 * scale, "a={a} b={b} m={m} {lambda}: {got} vs {want}");
                            }
                            None => fallbacks += 1,
                        }
                    }
                }
            }
        }
        assert!(fallbacks * 3 < total, "{fallbacks} of {total} fell back");
    }

    #[test]
    fn boundary_term_identity() {
        let u = HalfLineFunction::gaussian(1.0, 1, 1.0).unwrap();
        let lhs = deriv_ft(&u, RegOrder(2), c(1.0, 0.0)).unwrap();
        let rhs = deriv_ft_by_parts(&u, RegOrder(2), c(1.0, 0.0)).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn time_transform_examples() {
        let one = BoundaryFunction::constant(1.0);
        assert!((time_transform(&one, c(0.0, 0.0), 2.0) - c(2.0, 0.0)).norm() < 1e-15);
        let e = std::f64::consts::E;
        assert!((time_transform(&one, c(1.0, 0.0), 1.0) - c(e - 1.0, 0.0)).norm() < 1e-14);
        assert!((time_oracle(&one, c(1.0, 0.0), 1.0) - c(e - 1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn moments_agree_across_regimes() {
        let g = BoundaryFunction::new(&[OscTerm { c: 1.3, m: 3, b: 0.4, phi: 2.0, phase: 0.3 }]).unwrap();
        for omega in [c(0.1, 0.0), c(0.0, 9.0), c(-30.0, 4.0), c(12.0, -40.0), c(0.0, -100.0)] {
            let t = 0.9;
            let got = time_transform(&g, omega, t);
            let want = time_oracle(&g, omega, t);
            assert!((got - want).norm() <= 1e-12 * want.norm().max(1.0), "{omega}: {got} vs {want}");
        }
        // large powers fall back to quadrature
        let g = BoundaryFunction::exp_poly(1.0, 20, 0.5).unwrap();
        let got = time_transform(&g, c(0.0, 12.0), 1.5);
        let want = time_oracle(&g, c(0.0, 12.0), 1.5);
        assert!((got - want).norm() <= 1e-12 * want.norm().max(1.0));
    }

    #[test]
    fn ibp_expansion_examples() {
        let one = BoundaryFunction::constant(1.0);
        let v = ibp_time_transform(&one, c(1.0, 0.0), 1.0, RegOrder(0)).unwrap();
        assert!((v - c(1.0 - (-1.0f64).exp(), 0.0)).norm() < 1e-15);
        let g = BoundaryFunction::exp_poly(1.0, 1, 1.0).unwrap();
        let lambda = c(1.0, 1.0);
        let want = (-lambda * lambda * 0.7).exp() * time_oracle(&g, lambda * lambda, 0.7);
        for m in 0..4 {
            let got = ibp_time_transform(&g, lambda, 0.7, RegOrder(m)).unwrap();
            assert!((got - want).norm() <= 1e-10 * want.norm(), "M = {m}");
        }
        assert!(matches!(ibp_time_transform(&g, c(0.0, 0.0), 1.0, RegOrder(1)), Err(Error::ZeroLambda)));
    }

    #[test]
    fn damped_transform_time_derivative() {
        let g = BoundaryFunction::new(&[OscTerm { c: 1.0, m: 1, b: 0.5, phi: 1.0, phase: 0.0 }]).unwrap();
        let lambda = c(0.8, 0.3);
        let t = 0.6;
        let h = 1e-4;
        for l in 1..3 {
            let fd = (damped_time_transform_dt(&g, lambda, t + h, l - 1)
                - damped_time_transform_dt(&g, lambda, t - h, l - 1))
                / (2.0 * h);
            let exact = damped_time_transform_dt(&g, lambda, t, l);
            assert!((fd - exact).norm() < 1e-6, "l = {l}");
        }
    }

    #[test]
    fn forcing_transforms() {
        let e = HalfLineFunction::exponential(1.0, 0, 1.0).unwrap();
        let et = BoundaryFunction::exp_poly(1.0, 0, 1.0).unwrap();
        let f = ForcingFunction::separable(e.clone(), et.clone());
        assert!((forcing_hat(&f, c(0.0, 0.0), 0.0).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let want = (-1.0f64).exp() * c(1.0, 1.0).inv();
        assert!((forcing_hat(&f, c(1.0, 0.0), 1.0).unwrap() - want).norm() < 1e-15);
        assert_eq!(forcing_transform(&f, c(1.0, 0.0), c(1.0, 0.0), 0.0).unwrap(), c(0.0, 0.0));
        let unit = ForcingFunction::separable(e, BoundaryFunction::constant(1.0));
        assert!((forcing_transform(&unit, c(0.0, 0.0), c(0.0, 0.0), 2.0).unwrap() - c(2.0, 0.0)).norm() < 1e-14);

        // 2-D brute force: tensor Gauss-Kronrod over [0, 40] x [0, t]
        let (lambda, omega, t) = (c(1.0, 0.0), c(1.0, 0.0), 1.0);
        let inner = |tau: f64| {
            let g = |x: f64| (-I * lambda * x + omega * tau).exp() * f.value(x, tau);
            let breaks: Vec<f64> = (0..=200).map(|i| 40.0 * i as f64 / 200.0).collect();
            adaptive(&g, &breaks, 1e-14, 1_000_000).unwrap().value
        };
        let brute = adaptive(&inner, &[0.0, 0.5, 1.0], 1e-12, 1_000_000).unwrap().value;
        let got = forcing_transform(&f, lambda, omega, t).unwrap();
        assert!((got - brute).norm() < 1e-9, "{got} vs {brute}");
    }
}
