//! Seminorms and metrics of the data and solution spaces, realised as grid
//! suprema with a refinement check.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datafun::{BoundaryFunction, DatumTriple, ForcingFunction, HalfLineFunction};
use crate::error::{Error, Result};
use crate::ops::{EvalRequest, SolutionField};

/// Largest `n` (derivative budget `k + l <= n`) accepted by the field seminorms.
pub const MAX_STRIP_ORDER: usize = 4;
/// Largest `N` accepted by `rho_N`.
pub const MAX_RHO_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StripKind {
    /// `{1/n <= t <= n} + {x >= 1/n, t <= 1/n}`
    Lambda,
    /// `{x >= 0, 1/n <= t <= n}`
    Lambda1,
    /// `{x >= 1/n, 0 <= t <= n}`
    Lambda2,
    /// `{t <= n}`
    LambdaStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strip {
    pub kind: StripKind,
    pub n: usize,
}

/// Axis-aligned piece of a strip: `x in [x_lo, inf)`, `t in [t_lo, t_hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Band {
    x_lo: f64,
    t_lo: f64,
    t_hi: f64,
}

impl Strip {
    pub fn new(kind: StripKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("strip index n must be positive".into()));
        }
        Ok(Self { kind, n })
    }

    fn bands(&self) -> Vec<Band> {
        let n = self.n as f64;
        let inv = 1.0 / n;
        match self.kind {
            StripKind::Lambda => {
                let mut b = vec![Band { x_lo: 0.0, t_lo: inv, t_hi: n }];
                b.push(Band { x_lo: inv, t_lo: 0.0, t_hi: inv });
                b
            }
            StripKind::Lambda1 => vec![Band { x_lo: 0.0, t_lo: inv, t_hi: n }],
            StripKind::Lambda2 => vec![Band { x_lo: inv, t_lo: 0.0, t_hi: n }],
            StripKind::LambdaStar => vec![Band { x_lo: 0.0, t_lo: 0.0, t_hi: n }],
        }
    }

    pub fn contains(&self, x: f64, t: f64) -> bool {
        x >= 0.0 && t >= 0.0 && self.bands().iter().any(|b| x >= b.x_lo && t >= b.t_lo && t <= b.t_hi)
    }
}

impl fmt::Display for Strip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            StripKind::Lambda => "Lambda",
            StripKind::Lambda1 => "Lambda1",
            StripKind::Lambda2 => "Lambda2",
            StripKind::LambdaStar => "LambdaStar",
        };
        write!(f, "{name}_{}", self.n)
    }
}

/// Sampling of a strip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Geometric `x` nodes per decade.
    pub x_per_decade: usize,
    /// `t` nodes per band.
    pub t_nodes: usize,
    /// First positive `x` node in bands that reach `x = 0`.
    pub x_min: f64,
    /// Initial `x` cap; doubled while the weighted values at the cap are not negligible.
    pub x_cap: f64,
    /// Relative change allowed between the half-density and full grids.
    pub stability_tol: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { x_per_decade: 64, t_nodes: 64, x_min: 1e-3, x_cap: 16.0, stability_tol: 1e-3 }
    }
}

impl GridSpec {
    /// A light grid for repeated experiments.
    pub fn coarse() -> Self {
        Self { x_per_decade: 8, t_nodes: 8, x_min: 1e-2, x_cap: 12.0, ..Self::default() }
    }

    /// `x` nodes from `x_lo` through the first node at or beyond `x_cap`,
    /// geometric from `max(x_lo, x_min)`. Raising the cap only appends nodes.
    fn x_nodes(&self, x_lo: f64, x_cap: f64) -> Vec<f64> {
        let mut xs = Vec::new();
        let start = if x_lo == 0.0 {
            xs.push(0.0);
            self.x_min
        } else {
            x_lo
        };
        let ratio = 10f64.powf(1.0 / self.x_per_decade.max(1) as f64);
        let mut i = 0;
        loop {
            let x = start * ratio.powi(i);
            xs.push(x);
            if x >= x_cap * (1.0 - 1e-12) {
                return xs;
            }
            i += 1;
        }
    }

    /// `t` nodes on `[t_lo, t_hi]`, clustered quadratically towards `t_lo`.
    fn t_nodes(&self, t_lo: f64, t_hi: f64) -> Vec<f64> {
        let m = self.t_nodes.max(2);
        (0..=m).map(|i| t_lo + (t_hi - t_lo) * (i as f64 / m as f64).powi(2)).collect()
    }
}

/// Point attaining a reported supremum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArgPoint {
    pub x: f64,
    pub t: f64,
    pub k: usize,
    pub l: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeminormReport {
    pub value: f64,
    pub arg_point: ArgPoint,
    pub grid: GridSpec,
    /// Halving the grid density changed the value by at most `stability_tol`
    /// (relative), and the weighted values at the `x` cap are negligible.
    pub converged: bool,
}

impl SeminormReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }

    fn zero(grid: GridSpec) -> Self {
        Self { value: 0.0, arg_point: ArgPoint { x: 0.0, t: 0.0, k: 0, l: 0 }, grid, converged: true }
    }
}

fn orders(n: usize) -> Vec<(usize, usize)> {
    (0..=n).flat_map(|s| (0..=s).map(move |l| (s - l, l))).collect()
}

struct Sample {
    x: f64,
    t: f64,
    k: usize,
    l: usize,
    weighted: f64,
    /// Node also belongs to the half-density grid.
    coarse: bool,
}

/// `sup (1 + x)^w |h_{k,l}(x, t)|` over a strip and `k + l <= n`.
///
/// The corner `(0, 0)` is skipped whenever a band reaches it.
pub fn strip_sup<F>(strip: &Strip, n: usize, weight: usize, grid: &GridSpec, h: F) -> Result<SeminormReport>
where
    F: Fn(f64, f64, usize, usize) -> Result<f64> + Sync,
{
    let ords = orders(n);
    let bands = strip.bands();
    let mut x_cap = grid.x_cap;
    // per band: samples so far and the number of x columns already evaluated
    let mut samples: Vec<Vec<Sample>> = bands.iter().map(|_| Vec::new()).collect();
    let mut done: Vec<usize> = vec![0; bands.len()];
    let mut last_x: Vec<f64> = vec![0.0; bands.len()];
    for attempt in 0..6 {
        for (b, band) in bands.iter().enumerate() {
            let xs = grid.x_nodes(band.x_lo, x_cap);
            let ts = grid.t_nodes(band.t_lo, band.t_hi);
            let mut points = Vec::new();
            for (i, &x) in xs.iter().enumerate().skip(done[b]) {
                for (j, &t) in ts.iter().enumerate() {
                    if x == 0.0 && t == 0.0 {
                        continue;
                    }
                    points.push((x, t, i % 2 == 0 && j % 2 == 0));
                }
            }
            let fresh = points
                .par_iter()
                .flat_map_iter(|&(x, t, coarse)| ords.iter().map(move |&(k, l)| (x, t, k, l, coarse)).collect::<Vec<_>>())
                .map(|(x, t, k, l, coarse)| {
                    let v = h(x, t, k, l)?;
                    Ok(Sample { x, t, k, l, weighted: (1.0 + x).powi(weight as i32) * v.abs(), coarse })
                })
                .collect::<Result<Vec<_>>>()?;
            samples[b].extend(fresh);
            done[b] = xs.len();
            last_x[b] = *xs.last().expect("at least one node");
        }

        let all = || samples.iter().flatten();
        let Some(best) = all().max_by(|a, b| a.weighted.total_cmp(&b.weighted)) else {
            return Ok(SeminormReport::zero(*grid));
        };
        let coarse_sup = all().filter(|s| s.coarse).map(|s| s.weighted).fold(0.0, f64::max);
        let cap_sup = samples
            .iter()
            .zip(&last_x)
            .flat_map(|(band, &xl)| band.iter().filter(move |s| s.x == xl))
            .map(|s| s.weighted)
            .fold(0.0, f64::max);
        let tol = grid.stability_tol * best.weighted.max(f64::MIN_POSITIVE);
        let stable = best.weighted - coarse_sup <= tol;
        let tail_ok = cap_sup <= tol || best.weighted == 0.0;
        if tail_ok || attempt == 5 {
            return Ok(SeminormReport {
                value: best.weighted,
                arg_point: ArgPoint { x: best.x, t: best.t, k: best.k, l: best.l },
                grid: GridSpec { x_cap, ..*grid },
                converged: stable && tail_ok,
            });
        }
        x_cap *= 2.0;
    }
    unreachable!("loop returns on its last attempt")
}

fn check_strip_order(n: usize) -> Result<()> {
    if n > MAX_STRIP_ORDER {
        return Err(Error::OrderOutOfRange(format!("n = {n} (max {MAX_STRIP_ORDER})")));
    }
    Ok(())
}

/// `lambda_n(Phi)` over `Lambda_n` with analytic derivatives.
pub fn lambda_n(field: &SolutionField, n: usize, grid: &GridSpec) -> Result<SeminormReport> {
    lambda_n_on(field, Strip::new(StripKind::Lambda, n)?, grid)
}

/// As [`lambda_n`] on any strip kind.
pub fn lambda_n_on(field: &SolutionField, strip: Strip, grid: &GridSpec) -> Result<SeminormReport> {
    check_strip_order(strip.n)?;
    if field.datum.is_zero() {
        return Ok(SeminormReport::zero(*grid));
    }
    strip_sup(&strip, strip.n, strip.n, grid, |x, t, k, l| {
        Ok(field.eval(&EvalRequest::new(x, t).derivs(k, l))?.value.norm())
    })
}

/// `lambda_n^*(f)` over `Lambda_n^* = {t <= n}`.
pub fn lambda_star_n(f: &ForcingFunction, n: usize, grid: &GridSpec) -> Result<SeminormReport> {
    let strip = Strip::new(StripKind::LambdaStar, n.max(1))?;
    check_strip_order(n)?;
    if f.is_zero() {
        return Ok(SeminormReport::zero(*grid));
    }
    let derivs: Vec<((usize, usize), ForcingFunction)> = orders(n).into_iter().map(|(k, l)| ((k, l), f.deriv(k, l))).collect();
    let strip = Strip { n: n.max(1), ..strip };
    let report = strip_sup(&strip, n, n, grid, |x, t, k, l| {
        let d = &derivs.iter().find(|(o, _)| *o == (k, l)).expect("order precomputed").1;
        Ok(d.value(x, t))
    })?;
    // the corner is part of Lambda_n^*; evaluate it explicitly
    let corner = derivs
        .iter()
        .map(|((k, l), d)| (d.value(0.0, 0.0).abs(), *k, *l))
        .fold((0.0, 0, 0), |a, b| if b.0 > a.0 { b } else { a });
    if corner.0 > report.value {
        return Ok(SeminormReport { value: corner.0, arg_point: ArgPoint { x: 0.0, t: 0.0, k: corner.1, l: corner.2 }, ..report });
    }
    Ok(report)
}

/// `rho_N(u) = sup {(1 + x)^N |u^(k)(x)| : k <= N, x >= 0}`.
pub fn rho_n(u: &HalfLineFunction, n: usize) -> Result<SeminormReport> {
    if n > MAX_RHO_ORDER {
        return Err(Error::OrderOutOfRange(format!("N = {n} (max {MAX_RHO_ORDER})")));
    }
    let grid = GridSpec { x_per_decade: 512, t_nodes: 0, x_min: 1e-4, x_cap: 16.0, stability_tol: 1e-6 };
    if u.is_zero() {
        return Ok(SeminormReport::zero(grid));
    }
    let derivs: Vec<HalfLineFunction> = (0..=n).map(|k| u.deriv(k)).collect();
    let weighted = |x: f64, k: usize| (1.0 + x).powi(n as i32) * derivs[k].value(x).abs();
    let mut x_cap = grid.x_cap;
    loop {
        let xs = grid.x_nodes(0.0, x_cap);
        let mut best = (0.0, 0.0, 0usize);
        let mut coarse = 0.0f64;
        let mut cap = 0.0f64;
        for (i, &x) in xs.iter().enumerate() {
            for k in 0..=n {
                let w = weighted(x, k);
                if w > best.0 {
                    best = (w, x, k);
                }
                if i % 2 == 0 {
                    coarse = coarse.max(w);
                }
                if i + 1 == xs.len() {
                    cap = cap.max(w);
                }
            }
        }
        // polish the maximiser by golden-section search on its neighbourhood
        let (mut v, mut xb, k) = best;
        if xb > 0.0 {
            let (lo, hi) = (xb / 1.05, xb * 1.05);
            let (x2, v2) = golden_max(|x| weighted(x, k), lo, hi);
            if v2 > v {
                v = v2;
                xb = x2;
            }
        }
        let tol = grid.stability_tol * v;
        if cap <= tol || x_cap > 1e4 {
            return Ok(SeminormReport {
                value: v,
                arg_point: ArgPoint { x: xb, t: 0.0, k, l: 0 },
                grid: GridSpec { x_cap, ..grid },
                converged: v - coarse <= 1e-3 * v && cap <= tol,
            });
        }
        x_cap *= 2.0;
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    for _ in 0..80 {
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Truncated Frechet metric with its tail bound `2^-N_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricValue {
    pub value: f64,
    pub tail_bound: f64,
}

/// `rho(u, v) = sum_{N <= N_max} 2^-N rho_N(u - v) / (1 + rho_N(u - v))`.
pub fn metric_rho(u: &HalfLineFunction, v: &HalfLineFunction, n_max: usize) -> Result<MetricValue> {
    if n_max > MAX_RHO_ORDER {
        return Err(Error::OrderOutOfRange(format!("N_max = {n_max} (max {MAX_RHO_ORDER})")));
    }
    let diff = u.add(&v.scale(-1.0));
    let mut value = 0.0;
    for n in 0..=n_max {
        let r = rho_n(&diff, n)?.value;
        value += r / (1.0 + r) / 2f64.powi(n as i32);
    }
    Ok(MetricValue { value, tail_bound: 2f64.powi(-(n_max as i32)) })
}

/// `lambda(h1, h2)` for the solutions of two data, truncated at `n_max`.
pub fn metric_lambda(a: &DatumTriple, b: &DatumTriple, n_max: usize, grid: &GridSpec) -> Result<MetricValue> {
    let field = SolutionField::new(a.add(&b.scale(-1.0)));
    let mut value = 0.0;
    for n in 1..=n_max {
        let r = lambda_n(&field, n, grid)?.value;
        value += r / (1.0 + r) / 2f64.powi(n as i32);
    }
    Ok(MetricValue { value, tail_bound: 2f64.powi(-(n_max as i32)) })
}

/// `sup {|g^(l)(t)| : 0 <= t <= n}`.
pub fn cinf_seminorm(g: &BoundaryFunction, l: usize, n: usize) -> f64 {
    if g.is_zero() {
        return 0.0;
    }
    let d = g.deriv(l);
    let top = n as f64;
    let m = 4000;
    let mut best = (0.0, 0.0);
    for i in 0..=m {
        let t = top * i as f64 / m as f64;
        let v = d.value(t).abs();
        if v > best.0 {
            best = (v, t);
        }
    }
    let h = top / m as f64;
    let (lo, hi) = ((best.1 - h).max(0.0), (best.1 + h).min(top));
    let (_, v) = golden_max(|t| d.value(t).abs(), lo, hi);
    best.0.max(v)
}
