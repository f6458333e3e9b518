//! Adaptive quadrature along contour pieces.
//!
//! Finite pieces are integrated by globally adaptive Gauss-Kronrod (7/15)
//! bisection. Rays are truncated at a radius where an analytic envelope
//! bound on the tail falls below a quarter of the tolerance; the envelope
//! constant is calibrated from samples of the integrand.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::contour::{Contour, ContourPiece, IN_DIR, OUT_DIR};
use crate::error::{Error, Result};

pub const DEFAULT_ABS_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_NODES: usize = 200_000;

/// Env var that caps the per-contour node budget.
pub const MAX_NODES_ENV: &str = "UTMQ_MAX_NODES";

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of a quadrature call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub err_est: f64,
    pub nodes_used: usize,
    /// Largest radius reached on any ray piece (0 for finite contours).
    pub truncation_radius: f64,
}

impl QuadResult {
    pub fn zero() -> Self {
        Self { value: Complex64::new(0.0, 0.0), err_est: 0.0, nodes_used: 0, truncation_radius: 0.0 }
    }

    /// Sum of two results; error estimates add.
    pub fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            err_est: self.err_est + other.err_est,
            nodes_used: self.nodes_used + other.nodes_used,
            truncation_radius: self.truncation_radius.max(other.truncation_radius),
        }
    }

    pub fn scaled(self, c: Complex64) -> QuadResult {
        QuadResult { value: self.value * c, err_est: self.err_est * c.norm(), ..self }
    }
}

/// Decay certificate: `|F(lambda)| <= C |lambda|^poly_order
/// exp(-alpha_x Im(lambda) - alpha_t Re(lambda^2))` on the unbounded pieces.
///
/// On the rays of `gamma` this is `exp(-alpha_x |lambda| / sqrt 2)`. The two
/// rates double as oscillation hints: the phase of `exp(i lambda x -
/// lambda^2 t)` turns at most at rate `x + 2 |lambda| t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decay {
    pub alpha_x: f64,
    pub alpha_t: f64,
    pub poly_order: f64,
}

impl Decay {
    pub fn new(alpha_x: f64, alpha_t: f64, poly_order: f64) -> Self {
        Self { alpha_x, alpha_t, poly_order }
    }

    fn log_envelope(&self, lambda: Complex64) -> f64 {
        self.poly_order * lambda.norm().max(1.0).ln()
            - self.alpha_x * lambda.im
            - self.alpha_t * (lambda * lambda).re
    }

    fn phase_rate(&self, lambda: Complex64) -> f64 {
        self.alpha_x + 2.0 * lambda.norm() * self.alpha_t
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub max_nodes: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self::with_tol(DEFAULT_ABS_TOL)
    }
}

impl QuadConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        let cap = std::env::var(MAX_NODES_ENV)
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
            .unwrap_or(DEFAULT_MAX_NODES);
        Self { abs_tol, max_nodes: cap }
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    resabs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kron += (f1 + f2) * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let value = kron * half;
    let err = ((kron - gauss) * half).norm();
    Panel { a, b, value, err, resabs: resabs * half.abs() }
}

/// Globally adaptive integration of a real-parameter integrand over the
/// union of consecutive panels given by `breaks`.
pub fn adaptive<F: Fn(f64) -> Complex64>(
    f: &F,
    breaks: &[f64],
    abs_tol: f64,
    max_nodes: usize,
) -> Result<QuadResult> {
    if breaks.len() < 2 {
        return Ok(QuadResult::zero());
    }
    let mut heap = BinaryHeap::with_capacity(2 * breaks.len());
    let mut nodes = 0usize;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(gk15(f, w[0], w[1]));
            nodes += 15;
        }
    }
    let mut settled = Complex64::new(0.0, 0.0);
    let mut settled_err = 0.0;
    let (mut open_val, mut open_err, mut open_abs) = (Complex64::new(0.0, 0.0), 0.0, 0.0);
    for p in heap.iter() {
        open_val += p.value;
        open_err += p.err;
        open_abs += p.resabs;
    }
    let mut since_resum = 0usize;
    loop {
        if since_resum > 256 {
            // refresh running sums against drift
            open_val = heap.iter().map(|p| p.value).sum();
            open_err = heap.iter().map(|p| p.err).sum();
            open_abs = heap.iter().map(|p| p.resabs).sum();
            since_resum = 0;
        }
        let err = settled_err + open_err.max(0.0);
        let floor = 64.0 * f64::EPSILON * open_abs;
        if err <= abs_tol.max(floor) || heap.is_empty() {
            return Ok(QuadResult {
                value: settled + open_val,
                err_est: err,
                nodes_used: nodes,
                truncation_radius: 0.0,
            });
        }
        if nodes + 30 > max_nodes {
            return Err(Error::ToleranceNotMet { tol: abs_tol, err_est: err, nodes });
        }
        let worst = heap.pop().expect("non-empty heap");
        open_val -= worst.value;
        open_err -= worst.err;
        open_abs -= worst.resabs;
        let mid = 0.5 * (worst.a + worst.b);
        // panels too small to split or at the round-off floor are settled
        if mid <= worst.a || mid >= worst.b || worst.err <= 8.0 * f64::EPSILON * worst.resabs {
            settled += worst.value;
            settled_err += worst.err;
            continue;
        }
        for p in [gk15(f, worst.a, mid), gk15(f, mid, worst.b)] {
            open_val += p.value;
            open_err += p.err;
            open_abs += p.resabs;
            heap.push(p);
        }
        nodes += 30;
        since_resum += 1;
    }
}

/// Integral of `f(lambda) dlambda` along the segment from `start` to `end`.
pub fn integrate_segment<F: Fn(Complex64) -> Complex64>(
    f: &F,
    start: Complex64,
    end: Complex64,
    decay: Decay,
    cfg: QuadConfig,
) -> Result<QuadResult> {
    let d = end - start;
    let len = d.norm();
    if len == 0.0 {
        return Ok(QuadResult::zero());
    }
    let rate = decay.phase_rate(start).max(decay.phase_rate(end));
    let n = ((rate * len / PI).ceil() as usize).clamp(1, cfg.max_nodes / 60 + 1);
    let breaks: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    let g = |s: f64| f(start + d * s) * d;
    adaptive(&g, &breaks, cfg.abs_tol, cfg.max_nodes)
}

/// Integral of a radial integrand `h(r) dr` over `[r_lo, inf)`; `point(r)`
/// is the spectral point used for the envelope and oscillation estimates.
pub fn integrate_radial<H, P>(
    h: &H,
    point: &P,
    r_lo: f64,
    decay: Decay,
    cfg: QuadConfig,
) -> Result<QuadResult>
where
    H: Fn(f64) -> Complex64,
    P: Fn(f64) -> Complex64,
{
    let log_env = |r: f64| decay.log_envelope(point(r));
    let r_start = r_lo.max(1.0);

    // calibrate the envelope constant from samples
    let mut log_c = f64::NEG_INFINITY;
    let mut r = r_start;
    for _ in 0..400 {
        let v = h(r).norm();
        if v > 0.0 {
            log_c = log_c.max(v.ln() - log_env(r));
        }
        if log_env(r) + log_c.max(0.0) < (cfg.abs_tol * 1e-6).ln() && r > 4.0 * r_start {
            break;
        }
        r = r * 1.25 + 0.25;
    }
    if log_c == f64::NEG_INFINITY {
        // identically zero on the probe points
        let breaks = [r_lo, r_start.max(r_lo + 1.0)];
        return adaptive(h, &breaks, cfg.abs_tol, cfg.max_nodes)
            .map(|q| QuadResult { truncation_radius: breaks[1], ..q });
    }
    log_c += 4.0f64.ln();

    let tail_log = |r: f64| -> Option<f64> {
        let dr = 1e-4 * r.max(1.0);
        let rho = (log_env(r) - log_env(r + dr)) / dr;
        let exp_part = {
            let poly_free = Decay { poly_order: 0.0, ..decay };
            let p = point(r);
            let q = point(r + dr);
            (poly_free.log_envelope(p) - poly_free.log_envelope(q)) / dr
        };
        if exp_part > 1e-12 && rho > 0.0 {
            Some(log_c + log_env(r) - rho.ln())
        } else if decay.poly_order < -1.0 {
            Some(log_c + log_env(r) + (r / (-decay.poly_order - 1.0)).ln())
        } else {
            None
        }
    };

    let target = (cfg.abs_tol / 4.0).ln();
    let mut big_r = r_start;
    loop {
        match tail_log(big_r) {
            Some(tl) if tl < target => break,
            None if big_r > 1e3 * r_start => {
                return Err(Error::NonDecayingIntegrand(format!("ray from r = {r_lo}")))
            }
            _ => {}
        }
        big_r = big_r * 1.05 + 0.05;
        if big_r > 1e8 {
            return Err(Error::NonDecayingIntegrand(format!("ray from r = {r_lo}")));
        }
    }
    let tail_bound = tail_log(big_r).map(f64::exp).unwrap_or(0.0);

    // initial panels resolve the oscillation of the exponential factor
    let mut breaks = vec![r_lo];
    let mut r = r_lo;
    let max_panels = cfg.max_nodes / 60 + 1;
    while r < big_r && breaks.len() < max_panels {
        let rate = decay.phase_rate(point(r)).max(1e-3);
        let step = (PI / rate).min(r.max(0.5)).max(1e-3);
        r = (r + step).min(big_r);
        breaks.push(r);
    }
    if *breaks.last().expect("non-empty") < big_r {
        breaks.push(big_r);
    }
    let q = adaptive(h, &breaks, cfg.abs_tol * 0.75, cfg.max_nodes)?;
    Ok(QuadResult { err_est: q.err_est + tail_bound, truncation_radius: big_r, ..q })
}

/// Integral of `f(lambda) dlambda` along one piece, respecting orientation.
pub fn integrate_piece<F: Fn(Complex64) -> Complex64>(
    f: &F,
    piece: &ContourPiece,
    decay: Decay,
    cfg: QuadConfig,
) -> Result<QuadResult> {
    match *piece {
        ContourPiece::Segment { start, end } => integrate_segment(f, start, end, decay, cfg),
        ContourPiece::Ray { anchor, direction, r_lo, outward } => {
            let point = |r: f64| anchor + direction * r;
            let h = |r: f64| f(point(r)) * direction;
            let q = integrate_radial(&h, &point, r_lo, decay, cfg)?;
            Ok(if outward { q } else { q.scaled(Complex64::new(-1.0, 0.0)) })
        }
    }
}

/// Integral of `f(lambda) dlambda` along a contour, tolerance split evenly
/// across pieces.
pub fn integrate<F: Fn(Complex64) -> Complex64>(
    f: &F,
    contour: &Contour,
    decay: Decay,
    abs_tol: f64,
) -> Result<QuadResult> {
    let n = contour.pieces.len().max(1) as f64;
    let mut cfg = QuadConfig::with_tol(abs_tol / n);
    let mut total = QuadResult::zero();
    for piece in &contour.pieces {
        let q = integrate_piece(f, piece, decay, cfg)?;
        cfg.max_nodes = cfg.max_nodes.saturating_sub(q.nodes_used).max(1000);
        total = total.combine(q);
    }
    Ok(total)
}

/// Integral over both rays of `gamma` from radius `r_lo`, evaluating the two
/// rays at mirrored radii and summing before convergence is judged:
/// `int_{r_lo}^inf [F(r e^{i pi/4}) e^{i pi/4} - F(r e^{3 i pi/4}) e^{3 i pi/4}] dr`.
///
/// Conditionally convergent pairs (such as `dlambda / lambda` at `x = 0`)
/// evaluate to their combined limit.
pub fn paired_ray_integrate<F: Fn(Complex64) -> Complex64>(
    f: &F,
    r_lo: f64,
    decay: Decay,
    cfg: QuadConfig,
) -> Result<QuadResult> {
    let point = |r: f64| OUT_DIR * r;
    let h = |r: f64| f(OUT_DIR * r) * OUT_DIR - f(IN_DIR * r) * IN_DIR;
    integrate_radial(&h, &point, r_lo, decay, cfg)
}

/// Integral over the real line split at `+-split`: `(-inf, -split]`,
/// `[-split, split]`, `[split, inf)`; `split = 0` integrates the full line.
pub fn real_line_integrate<F: Fn(Complex64) -> Complex64>(
    f: &F,
    split: f64,
    decay: Decay,
    cfg: QuadConfig,
    include_middle: bool,
) -> Result<QuadResult> {
    let sub = QuadConfig { abs_tol: cfg.abs_tol / 3.0, ..cfg };
    // the two half-lines are folded onto one radial integral
    let point = |r: f64| Complex64::new(r, 0.0);
    let h = |r: f64| f(Complex64::new(r, 0.0)) + f(Complex64::new(-r, 0.0));
    let mut total = integrate_radial(&h, &point, split, decay, sub)?;
    if include_middle && split > 0.0 {
        let mid = integrate_segment(f, Complex64::new(-split, 0.0), Complex64::new(split, 0.0), decay, sub)?;
        total = total.combine(mid);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contour::{make_contour, ContourName};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Composite trapezoid along a parameterised piece; brute-force reference.
    fn trapezoid<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, n: usize) -> Complex64 {
        let h = (b - a) / n as f64;
        let mut s = (f(a) + f(b)) * 0.5;
        for i in 1..n {
            s += f(a + i as f64 * h);
        }
        s * h
    }

    #[test]
    fn zero_integrand() {
        let g = make_contour(ContourName::Gamma2).unwrap();
        let q = integrate(&|_l: Complex64| c(0.0, 0.0), &g, Decay::new(1.0, 0.0, 0.0), 1e-10).unwrap();
        assert_eq!(q.value, c(0.0, 0.0));
        assert_eq!(q.err_est, 0.0);
    }

    #[test]
    fn gaussian_on_real_line() {
        let real = make_contour(ContourName::RealLine).unwrap();
        let q = integrate(&|l: Complex64| (-l * l).exp(), &real, Decay::new(0.0, 1.0, 0.0), 1e-13).unwrap();
        assert!((q.value - c(PI.sqrt(), 0.0)).norm() < 1e-12, "{:?}", q);
        assert!(q.err_est <= 1e-13);
    }

    #[test]
    fn inverse_square_on_gamma2_matches_trapezoid() {
        // outgoing ray only differs from its mirror by a reflection; build the
        // reference from both rays with a 10^6-node trapezoid on [sqrt2, 60]
        let f = |l: Complex64| (c(0.0, 1.0) * l).exp() / (l * l);
        let g2 = make_contour(ContourName::Gamma2).unwrap();
        let q = integrate(&f, &g2, Decay::new(1.0, 0.0, -2.0), 1e-11).unwrap();
        let s2 = std::f64::consts::SQRT_2;
        let h = |r: f64| f(OUT_DIR * r) * OUT_DIR - f(IN_DIR * r) * IN_DIR;
        let reference = trapezoid(h, s2, 60.0, 1_000_000);
        assert!((q.value - reference).norm() < 1e-9, "{} vs {}", q.value, reference);
    }

    #[test]
    fn paired_rays_cancel_reciprocal_at_zero_x() {
        let q = paired_ray_integrate(&|l: Complex64| l.inv(), 2f64.sqrt(), Decay::new(0.0, 0.0, -1.0), QuadConfig::default());
        // integrand is identically zero once paired
        let q = q.unwrap();
        assert!(q.value.norm() < 1e-14);
    }

    #[test]
    fn paired_reciprocal_with_decay_matches_reference() {
        let f = |l: Complex64| (c(0.0, 1.0) * l).exp() / l;
        let q = paired_ray_integrate(&f, 2f64.sqrt(), Decay::new(1.0, 0.0, -1.0), QuadConfig::with_tol(1e-11)).unwrap();
        let h = |r: f64| f(OUT_DIR * r) * OUT_DIR - f(IN_DIR * r) * IN_DIR;
        let reference = trapezoid(h, 2f64.sqrt(), 60.0, 1_000_000);
        assert!((q.value - reference).norm() < 1e-9);
    }

    #[test]
    fn even_radial_integrand_doubles() {
        let f = |l: Complex64| (-l.norm_sqr()).exp() * c(1.0, 0.0);
        let cfg = QuadConfig::with_tol(1e-14);
        let single = integrate_radial(&|r: f64| c((-r * r).exp(), 0.0), &|r| c(r, 0.0), 0.0, Decay::new(0.0, 1.0, 0.0), cfg).unwrap();
        let both = real_line_integrate(&f, 0.0, Decay::new(0.0, 1.0, 0.0), cfg, true).unwrap();
        assert!((both.value - single.value * 2.0).norm() < 1e-12);
    }

    #[test]
    fn non_decaying_is_rejected() {
        let r = integrate_radial(&|_r: f64| c(1.0, 0.0), &|r| c(r, 0.0), 0.0, Decay::new(0.0, 0.0, 0.0), QuadConfig::default());
        assert!(matches!(r, Err(Error::NonDecayingIntegrand(_))));
    }

    #[test]
    fn budget_exhaustion_reported() {
        let cfg = QuadConfig { abs_tol: 1e-14, max_nodes: 100 };
        let r = adaptive(&|x: f64| c((50.0 * x).sin() * x.sqrt(), 0.0), &[0.0, 10.0], cfg.abs_tol, cfg.max_nodes);
        assert!(matches!(r, Err(Error::ToleranceNotMet { .. })));
    }

    #[test]
    fn halving_tolerance_does_not_increase_error() {
        let f = |l: Complex64| (c(0.0, 1.0) * l * 0.7).exp() / (l * l * l);
        let g2 = make_contour(ContourName::Gamma2).unwrap();
        let mut last = f64::INFINITY;
        for tol in [1e-6, 5e-7, 2.5e-7, 1.25e-7, 6e-8] {
            let q = integrate(&f, &g2, Decay::new(0.7, 0.0, -3.0), tol).unwrap();
            assert!(q.err_est <= tol);
            assert!(q.err_est <= last, "{} > {}", q.err_est, last);
            last = q.err_est;
        }
    }

    #[test]
    fn doubled_budget_agrees_within_error() {
        let f = |l: Complex64| (c(0.0, 1.0) * l * 0.3 - l * l * 0.2).exp() * l;
        let real = make_contour(ContourName::RealLine).unwrap();
        let q1 = integrate(&f, &real, Decay::new(0.3, 0.2, 1.0), 1e-9).unwrap();
        let q2 = integrate(&f, &real, Decay::new(0.3, 0.2, 1.0), 1e-12).unwrap();
        assert!((q1.value - q2.value).norm() <= 2.0 * q1.err_est + 1e-12);
    }
}
