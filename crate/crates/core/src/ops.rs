//! The five spectral operators and the solution operator
//!
//! `2 pi Phi(u, g, f) = I0+ u - I0- u - 2i I1 g + I2+ f - I2- f`.
//!
//! Every operator has at least two valid representations. Points near
//! `t = 0` use integration-by-parts forms in which the slowly decaying part of
//! the integrand is peeled off as explicit powers of `lambda`; those powers
//! are integrated along closed-up finite paths so that the limits at `x = 0`
//! and `t = 0` come out directly. Derivatives are always taken on the
//! integrand: `d/dx -> i lambda`, `d/dt -> -lambda^2`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datafun::{BoundaryFunction, DatumTriple, ForcingFunction, HalfLineFunction};
use crate::error::{Error, Result};
use crate::quad::{
    integrate_segment, paired_ray_integrate, real_line_integrate, Decay, QuadConfig, QuadResult,
    DEFAULT_ABS_TOL,
};
use crate::transforms::{damped_time_transform_dt, half_line_ft, RegOrder};

/// Below this time the real-line form of `I0+` loses its Gaussian decay.
pub const T_SWITCH: f64 = 0.05;
/// Below this depth the rays of `gamma` lose their exponential decay.
pub const X_SWITCH: f64 = 0.05;
/// Largest supported derivative or moment order.
pub const MAX_ORDER: usize = 8;

const I: Complex64 = Complex64::new(0.0, 1.0);
const LOG_RANGE: f64 = 25.0;
const RAY_BUDGET: f64 = 5000.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ipow(n: i64) -> Complex64 {
    match n.rem_euclid(4) {
        0 => c(1.0, 0.0),
        1 => c(0.0, 1.0),
        2 => c(-1.0, 0.0),
        _ => c(0.0, -1.0),
    }
}

fn sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// A point of the closed quadrant with derivative orders.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalRequest {
    pub x: f64,
    pub t: f64,
    #[serde(default)]
    pub k: usize,
    #[serde(default)]
    pub l: usize,
    /// Moment power: the returned value is `x^L d^{k+l} Phi`.
    #[serde(default, rename = "L")]
    pub moment: usize,
}

impl EvalRequest {
    pub fn new(x: f64, t: f64) -> Self {
        Self { x, t, k: 0, l: 0, moment: 0 }
    }

    pub fn derivs(self, k: usize, l: usize) -> Self {
        Self { k, l, ..self }
    }

    pub fn with_moment(self, moment: usize) -> Self {
        Self { moment, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x.is_finite() && self.t.is_finite()) || self.x < 0.0 || self.t < 0.0 {
            return Err(Error::OutsideDomain { x: self.x, t: self.t });
        }
        if self.x == 0.0 && self.t == 0.0 {
            return Err(Error::Corner);
        }
        if self.k > MAX_ORDER || self.l > MAX_ORDER || self.moment > MAX_ORDER {
            return Err(Error::OrderOutOfRange(format!(
                "k = {}, l = {}, L = {} (max {MAX_ORDER})",
                self.k, self.l, self.moment
            )));
        }
        Ok(())
    }
}

/// How the regularisation order is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegPolicy {
    /// Integrations by parts beyond the minimal `k + 2l + 2` in the
    /// half-line transforms of `u` and `f`.
    pub extra: usize,
}

impl Default for RegPolicy {
    fn default() -> Self {
        Self { extra: 4 }
    }
}

impl RegPolicy {
    pub fn order(&self, k: usize, l: usize) -> RegOrder {
        RegOrder(RegOrder::minimal(k, l).0 + self.extra)
    }
}

/// Representation override, mainly for cross-checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Representation {
    #[default]
    Auto,
    /// Integral over the real line.
    RealLine,
    /// Integral over the rays of `gamma`.
    Gamma,
    /// Integration-by-parts form around the cut `|lambda| = sqrt 2`.
    Regularized,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldValue {
    pub value: Complex64,
    pub err_est: f64,
}

impl From<QuadResult> for FieldValue {
    fn from(q: QuadResult) -> Self {
        Self { value: q.value, err_est: q.err_est }
    }
}

fn add(total: &mut QuadResult, q: QuadResult, coeff: Complex64) {
    if coeff != c(0.0, 0.0) {
        *total = total.combine(q.scaled(coeff));
    }
}

fn real_cost(x: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return f64::INFINITY;
    }
    let r = (LOG_RANGE / t).sqrt();
    r * (x + 2.0 * r * t) / PI + r.log2()
}

fn ray_cost(x: f64, t: f64) -> f64 {
    if x <= 0.0 {
        return f64::INFINITY;
    }
    let r = SQRT_2 * LOG_RANGE / x;
    r * (x + 2.0 * r * t) / PI + r.log2()
}

/// Unbounded part of the path in the expansion helpers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tail {
    /// `(-inf, -1] + [1, inf)`
    Real,
    /// `gamma` outside `|lambda| = sqrt 2`
    Gamma2,
}

/// Quadrature context at a fixed `(x, t)`.
struct Spectral {
    x: f64,
    t: f64,
    cfg: QuadConfig,
}

impl Spectral {
    fn hint(&self) -> Decay {
        Decay::new(self.x, self.t, 0.0)
    }

    fn seg<F: Fn(Complex64) -> Complex64>(&self, f: &F, a: Complex64, b: Complex64) -> Result<QuadResult> {
        integrate_segment(f, a, b, self.hint(), self.cfg)
    }

    fn rays_cheaper(&self) -> bool {
        ray_cost(self.x, self.t) < real_cost(self.x, self.t)
    }

    /// `int_tail e^{i lambda x} lambda^p dlambda`, with the tail closed up
    /// into the upper half-plane. The value is the limit `x -> 0+` at `x = 0`.
    fn closed_power(&self, p: i32, tail: Tail) -> Result<QuadResult> {
        let x = self.x;
        let f = |lam: Complex64| (I * lam * x).exp() * lam.powi(p);
        let mut total = self.seg(&f, c(-1.0, 1.0), c(1.0, 1.0))?;
        if tail == Tail::Real {
            total = total.combine(self.seg(&f, c(-1.0, 0.0), c(-1.0, 1.0))?);
            total = total.combine(self.seg(&f, c(1.0, 1.0), c(1.0, 0.0))?);
        }
        Ok(total.scaled(c(-1.0, 0.0)))
    }

    /// `int_tail e^{i lambda x - lambda^2 t} lambda^p dlambda`, taken along
    /// whichever of the real tails or the rays decays faster.
    fn gauss_power(&self, p: i32, tail: Tail) -> Result<QuadResult> {
        let (x, t) = (self.x, self.t);
        if t == 0.0 {
            return self.closed_power(p, tail);
        }
        let f = |lam: Complex64| (I * lam * x - lam * lam * t).exp() * lam.powi(p);
        let decay = Decay::new(x, t, p as f64);
        if self.rays_cheaper() {
            let mut q = paired_ray_integrate(&f, SQRT_2, decay, self.cfg)?;
            if tail == Tail::Real {
                q = q.combine(self.seg(&f, c(-1.0, 1.0), c(-1.0, 0.0))?);
                q = q.combine(self.seg(&f, c(1.0, 0.0), c(1.0, 1.0))?);
            }
            Ok(q)
        } else {
            let mut q = real_line_integrate(&f, 1.0, decay, self.cfg, false)?;
            if tail == Tail::Gamma2 {
                q = q.combine(self.seg(&f, c(-1.0, 0.0), c(-1.0, 1.0))?);
                q = q.combine(self.seg(&f, c(1.0, 1.0), c(1.0, 0.0))?);
            }
            Ok(q)
        }
    }

    /// `int_tail e^{i lambda x} lambda^q d^l/dt^l [e^{-lambda^2 t} g_tilde(lambda^2, t)] dlambda`
    /// via the integration-by-parts expansion of order `n` in time.
    fn damped_tail(&self, g: &BoundaryFunction, q: i32, tail: Tail, l: usize, n: usize) -> Result<QuadResult> {
        let (x, t) = (self.x, self.t);
        let at_t = g.derivs_at(t, n + l + 1);
        let at0 = g.derivs_at(0.0, n + 1);
        let mut total = QuadResult::zero();
        for j in 0..=n {
            let sj = sign(j);
            let p = q - 2 * j as i32 - 2;
            if at_t[j + l] != 0.0 {
                add(&mut total, self.closed_power(p, tail)?, c(sj * at_t[j + l], 0.0));
            }
            if at0[j] != 0.0 {
                let coeff = -sj * sign(l) * at0[j];
                add(&mut total, self.gauss_power(p + 2 * l as i32, tail)?, c(coeff, 0.0));
            }
        }
        let next = g.deriv(n + 1);
        if !next.is_zero() {
            let p = q - 2 * n as i32 - 2;
            let f = |lam: Complex64| (I * lam * x).exp() * lam.powi(p) * damped_time_transform_dt(&next, lam, t, l);
            let order = (p - 2 + 2 * l as i32) as f64;
            let rem = match tail {
                Tail::Real => real_line_integrate(&f, 1.0, Decay::new(x, 0.0, order), self.cfg, false)?,
                Tail::Gamma2 => paired_ray_integrate(&f, SQRT_2, Decay::new(x, t, order), self.cfg)?,
            };
            add(&mut total, rem, c(sign(n + 1), 0.0));
        }
        Ok(total)
    }

    /// `gamma_1`: the two segments `-1+i -> 0 -> 1+i`.
    fn gamma1<F: Fn(Complex64) -> Complex64>(&self, f: &F) -> Result<QuadResult> {
        let a = self.seg(f, c(-1.0, 1.0), c(0.0, 0.0))?;
        Ok(a.combine(self.seg(f, c(0.0, 0.0), c(1.0, 1.0))?))
    }
}

/// Order of the time expansion making the remainder decay like `|lambda|^-7`.
fn time_order(q: i32, l: usize) -> usize {
    ((q + 2 * l as i32 + 3).max(0) as usize).div_ceil(2)
}

fn weight(lam: Complex64, k: usize, l: usize) -> Complex64 {
    (I * lam).powu(k as u32) * (-(lam * lam)).powu(l as u32)
}

fn ft(u: &HalfLineFunction, lam: Complex64) -> Complex64 {
    half_line_ft(u, lam).unwrap_or_else(|e| panic!("half-line transform at {lam}: {e}"))
}

fn context(req: &EvalRequest, tol: f64) -> Result<Spectral> {
    req.validate()?;
    Ok(Spectral { x: req.x, t: req.t, cfg: QuadConfig::with_tol(tol) })
}

/// `d^{k+l}(I0+ u)`: `int_R e^{i lambda x - lambda^2 t} (i lambda)^k (-lambda^2)^l u_hat(lambda) dlambda`.
pub fn i0_plus(u: &HalfLineFunction, req: &EvalRequest, tol: f64, policy: RegPolicy, repr: Representation) -> Result<QuadResult> {
    let s = context(req, tol)?;
    if u.is_zero() {
        return Ok(QuadResult::zero());
    }
    let (x, t, k, l) = (req.x, req.t, req.k, req.l);
    let real = match repr {
        Representation::Auto => t >= T_SWITCH || (t > 0.0 && real_cost(x, t) <= ray_cost(x, t)),
        Representation::RealLine => true,
        Representation::Regularized => false,
        Representation::Gamma => return Err(Error::Config("I0+ has no gamma representation".into())),
    };
    if real {
        if t == 0.0 {
            return Err(Error::NonDecayingIntegrand("I0+ on the real line at t = 0".into()));
        }
        let f = |lam: Complex64| (I * lam * x - lam * lam * t).exp() * weight(lam, k, l) * ft(u, lam);
        return real_line_integrate(&f, 0.0, Decay::new(x, t, (k + 2 * l) as f64 - 1.0), s.cfg, true);
    }
    if x == 0.0 {
        return Err(Error::NonDecayingIntegrand("regularized I0+ at x = 0".into()));
    }
    let m = policy.order(k, l).0;
    let f = |lam: Complex64| (I * lam * x - lam * lam * t).exp() * weight(lam, k, l) * ft(u, lam);
    let mut total = s.seg(&f, c(-1.0, 0.0), c(1.0, 0.0))?;
    let at0 = u.derivs_at_zero(m);
    for j in 1..=m {
        if at0[j - 1] != 0.0 {
            let p = (k + 2 * l) as i32 - j as i32;
            let coeff = at0[j - 1] * ipow(k as i64 - j as i64) * sign(l);
            add(&mut total, s.gauss_power(p, Tail::Real)?, coeff);
        }
    }
    let um = u.deriv(m);
    if !um.is_zero() {
        let f = |lam: Complex64| {
            (I * lam * x - lam * lam * t).exp() * weight(lam, k, l) * ft(&um, lam) / (I * lam).powu(m as u32)
        };
        let order = (k + 2 * l) as f64 - m as f64 - 1.0;
        total = total.combine(real_line_integrate(&f, 1.0, Decay::new(x, t, order), s.cfg, false)?);
    }
    Ok(total)
}

/// `d^{k+l}(I0- u)`: the same kernel against `u_hat(-lambda)` on `gamma` or on the real line.
pub fn i0_minus(u: &HalfLineFunction, req: &EvalRequest, tol: f64, repr: Representation) -> Result<QuadResult> {
    let s = context(req, tol)?;
    if u.is_zero() {
        return Ok(QuadResult::zero());
    }
    let (x, t, k, l) = (req.x, req.t, req.k, req.l);
    let f = |lam: Complex64| (I * lam * x - lam * lam * t).exp() * weight(lam, k, l) * ft(u, -lam);
    let decay = Decay::new(x, t, (k + 2 * l) as f64 - 1.0);
    let rays = match repr {
        Representation::Auto => s.rays_cheaper(),
        Representation::Gamma => true,
        Representation::RealLine => false,
        Representation::Regularized => return Err(Error::Config("I0- has no regularized representation".into())),
    };
    if rays {
        if x == 0.0 {
            return Err(Error::NonDecayingIntegrand("I0- on gamma at x = 0".into()));
        }
        paired_ray_integrate(&f, 0.0, decay, s.cfg)
    } else {
        if t == 0.0 {
            return Err(Error::NonDecayingIntegrand("I0- on the real line at t = 0".into()));
        }
        real_line_integrate(&f, 0.0, decay, s.cfg, true)
    }
}

/// `d^{k+l}(I0+ u - I0- u)`.
///
/// Near the corner each operator alone sees the kink of the zero extension of
/// `u` and grows like a negative power of `t`, while their difference stays
/// bounded. On the real line the two kernels are merged into the transform of
/// the odd extension, `u_hat(lambda) - u_hat(-lambda)`, so that nothing large
/// cancels. At `t = 0` and `x > 0`, `I0-` vanishes: its integrand is analytic
/// and exponentially decaying above `gamma`.
pub fn i0_difference(u: &HalfLineFunction, req: &EvalRequest, tol: f64, policy: RegPolicy) -> Result<QuadResult> {
    let s = context(req, tol)?;
    if u.is_zero() {
        return Ok(QuadResult::zero());
    }
    let (x, t, k, l) = (req.x, req.t, req.k, req.l);
    if t == 0.0 {
        return i0_plus(u, req, tol, policy, Representation::Regularized);
    }
    let merged = t >= T_SWITCH || real_cost(x, t) <= ray_cost(x, t) || real_cost(x, t) < RAY_BUDGET;
    if !merged {
        let plus = i0_plus(u, req, tol, policy, Representation::Auto)?;
        let minus = i0_minus(u, req, tol, Representation::Auto)?;
        return Ok(plus.combine(minus.scaled(c(-1.0, 0.0))));
    }
    let f = |lam: Complex64| (I * lam * x - lam * lam * t).exp() * weight(lam, k, l) * (ft(u, lam) - ft(u, -lam));
    real_line_integrate(&f, 0.0, Decay::new(x, t, (k + 2 * l) as f64 - 1.0), s.cfg, true)
}

fn direct_gamma_ok(x: f64, t: f64) -> bool {
    x >= X_SWITCH && ray_cost(x, t) < RAY_BUDGET
}

/// `d^{k+l}(I1 g)`: `int_gamma e^{i lambda x} (i lambda)^k d^l/dt^l[e^{-lambda^2 t} g_tilde] lambda dlambda`.
pub fn i1(g: &BoundaryFunction, req: &EvalRequest, tol: f64, repr: Representation) -> Result<QuadResult> {
    let s = context(req, tol)?;
    if g.is_zero() {
        return Ok(QuadResult::zero());
    }
    let (x, t, k, l) = (req.x, req.t, req.k, req.l);
    let f = |lam: Complex64| (I * lam * x).exp() * (I * lam).powu(k as u32) * lam * damped_time_transform_dt(g, lam, t, l);
    let direct = match repr {
        Representation::Auto => direct_gamma_ok(x, t),
        Representation::Gamma => true,
        Representation::Regularized => false,
        Representation::RealLine => return Err(Error::Config("I1 has no real-line representation".into())),
    };
    if direct {
        if x == 0.0 {
            return Err(Error::NonDecayingIntegrand("I1 on gamma at x = 0".into()));
        }
        return paired_ray_integrate(&f, 0.0, Decay::new(x, t, (k + 2 * l) as f64 - 1.0), s.cfg);
    }
    let m = RegOrder::minimal(k, l).0;
    let mut total = s.gamma1(&f)?;
    add(&mut total, s.damped_tail(g, k as i32 + 1, Tail::Gamma2, l, m)?, ipow(k as i64));
    Ok(total)
}

/// `d^{k+l}(I2+ f)`: `int_R e^{i lambda x} (i lambda)^k d^l/dt^l[e^{-lambda^2 t} f_tilde(lambda, lambda^2, t)] dlambda`.
pub fn i2_plus(f: &ForcingFunction, req: &EvalRequest, tol: f64, policy: RegPolicy) -> Result<QuadResult> {
    let s = context(req, tol)?;
    let (x, t, k, l) = (req.x, req.t, req.k, req.l);
    let m = policy.order(k, l).0;
    let mut total = QuadResult::zero();
    for term in f.terms() {
        let (sp, tm) = (&term.spatial, &term.temporal);
        let h = |lam: Complex64| (I * lam * x).exp() * (I * lam).powu(k as u32) * ft(sp, lam) * damped_time_transform_dt(tm, lam, t, l);
        total = total.combine(s.seg(&h, c(-1.0, 0.0), c(1.0, 0.0))?);
        let at0 = sp.derivs_at_zero(m);
        for j in 1..=m {
            if at0[j - 1] != 0.0 {
                let q = k as i32 - j as i32;
                let coeff = at0[j - 1] * ipow(q as i64);
                add(&mut total, s.damped_tail(tm, q, Tail::Real, l, time_order(q, l))?, coeff);
            }
        }
        let sm = sp.deriv(m);
        if !sm.is_zero() {
            let h = |lam: Complex64| {
                (I * lam * x).exp() * (I * lam).powi(k as i32 - m as i32) * ft(&sm, lam) * damped_time_transform_dt(tm, lam, t, l)
            };
            let order = (k + 2 * l) as f64 - m as f64 - 3.0;
            total = total.combine(real_line_integrate(&h, 1.0, Decay::new(x, 0.0, order), s.cfg, false)?);
        }
    }
    Ok(total)
}

/// `d^{k+l}(I2- f)`: as `I2+` with `f_hat(-lambda, .)` on `gamma`.
pub fn i2_minus(f: &ForcingFunction, req: &EvalRequest, tol: f64, policy: RegPolicy, repr: Representation) -> Result<QuadResult> {
    let s = context(req, tol)?;
    let (x, t, k, l) = (req.x, req.t, req.k, req.l);
    let direct = match repr {
        Representation::Auto => direct_gamma_ok(x, t),
        Representation::Gamma => true,
        Representation::Regularized => false,
        Representation::RealLine => return Err(Error::Config("I2- has no real-line representation".into())),
    };
    if direct && x == 0.0 {
        return Err(Error::NonDecayingIntegrand("I2- on gamma at x = 0".into()));
    }
    let m = policy.order(k, l).0;
    let mut total = QuadResult::zero();
    for term in f.terms() {
        let (sp, tm) = (&term.spatial, &term.temporal);
        let h = |lam: Complex64| (I * lam * x).exp() * (I * lam).powu(k as u32) * ft(sp, -lam) * damped_time_transform_dt(tm, lam, t, l);
        if direct {
            let decay = Decay::new(x, t, (k + 2 * l) as f64 - 3.0);
            total = total.combine(paired_ray_integrate(&h, 0.0, decay, s.cfg)?);
            continue;
        }
        total = total.combine(s.gamma1(&h)?);
        let at0 = sp.derivs_at_zero(m);
        for j in 1..=m {
            if at0[j - 1] != 0.0 {
                let q = k as i32 - j as i32;
                let coeff = at0[j - 1] * ipow((k + j) as i64);
                add(&mut total, s.damped_tail(tm, q, Tail::Gamma2, l, time_order(q, l))?, coeff);
            }
        }
        let sm = sp.deriv(m);
        if !sm.is_zero() {
            let h = |lam: Complex64| {
                (I * lam * x).exp() * (I * lam).powu(k as u32) / (-I * lam).powu(m as u32)
                    * ft(&sm, -lam)
                    * damped_time_transform_dt(tm, lam, t, l)
            };
            let order = (k + 2 * l) as f64 - m as f64 - 3.0;
            total = total.combine(paired_ray_integrate(&h, SQRT_2, Decay::new(x, t, order), s.cfg)?);
        }
    }
    Ok(total)
}

/// Solution operator bound to a datum.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub datum: DatumTriple,
    pub quad_tol: f64,
    pub reg_policy: RegPolicy,
}

impl SolutionField {
    pub fn new(datum: DatumTriple) -> Self {
        Self { datum, quad_tol: DEFAULT_ABS_TOL, reg_policy: RegPolicy::default() }
    }

    pub fn with_tol(self, quad_tol: f64) -> Self {
        Self { quad_tol, ..self }
    }

    /// `x^L d^{k+l} Phi(x, t)`.
    pub fn eval(&self, req: &EvalRequest) -> Result<FieldValue> {
        req.validate()?;
        let d = &self.datum;
        let tol = self.quad_tol;
        let mut total = QuadResult::zero();
        if !d.u.is_zero() {
            total = total.combine(i0_difference(&d.u, req, tol, self.reg_policy)?);
        }
        if !d.g.is_zero() {
            let v = i1(&d.g, req, tol, Representation::Auto)?;
            total = total.combine(v.scaled(c(0.0, -2.0)));
        }
        if !d.f.is_zero() {
            let plus = i2_plus(&d.f, req, tol, self.reg_policy)?;
            let minus = i2_minus(&d.f, req, tol, self.reg_policy, Representation::Auto)?;
            total = total.combine(plus).combine(minus.scaled(c(-1.0, 0.0)));
        }
        let w = req.x.powi(req.moment as i32) / (2.0 * PI);
        Ok(FieldValue { value: total.value * w, err_est: total.err_est * w.abs() })
    }

    pub fn eval_grid(&self, grid: &[EvalRequest]) -> Vec<Result<FieldValue>> {
        grid.par_iter().map(|r| self.eval(r)).collect()
    }
}

pub fn eval_phi(datum: &DatumTriple, req: &EvalRequest) -> Result<Complex64> {
    SolutionField::new(datum.clone()).eval(req).map(|v| v.value)
}

pub fn eval_phi_grid(datum: &DatumTriple, grid: &[EvalRequest]) -> Vec<Result<Complex64>> {
    SolutionField::new(datum.clone()).eval_grid(grid).into_iter().map(|r| r.map(|v| v.value)).collect()
}

pub fn eval_i0_plus(u: &HalfLineFunction, req: &EvalRequest) -> Result<Complex64> {
    i0_plus(u, req, DEFAULT_ABS_TOL, RegPolicy::default(), Representation::Auto).map(|q| q.value)
}

pub fn eval_i0_minus(u: &HalfLineFunction, req: &EvalRequest) -> Result<Complex64> {
    i0_minus(u, req, DEFAULT_ABS_TOL, Representation::Auto).map(|q| q.value)
}

pub fn eval_i1(g: &BoundaryFunction, req: &EvalRequest) -> Result<Complex64> {
    i1(g, req, DEFAULT_ABS_TOL, Representation::Auto).map(|q| q.value)
}

pub fn eval_i2_plus(f: &ForcingFunction, req: &EvalRequest) -> Result<Complex64> {
    i2_plus(f, req, DEFAULT_ABS_TOL, RegPolicy::default()).map(|q| q.value)
}

pub fn eval_i2_minus(f: &ForcingFunction, req: &EvalRequest) -> Result<Complex64> {
    i2_minus(f, req, DEFAULT_ABS_TOL, RegPolicy::default(), Representation::Auto).map(|q| q.value)
}
