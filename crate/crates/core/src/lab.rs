//! Experiments on the solution map: compatibility at the corner, continuous
//! dependence through seminorms, corner limits, smoothness near the corner
//! and causality.

use serde::{Deserialize, Serialize};

use crate::datafun::{BoundaryFunction, DatumTriple, ForcingFunction, HalfLineFunction, OscTerm};
use crate::error::{Error, Result};
use crate::ops::{EvalRequest, SolutionField};
use crate::spaces::{lambda_n, GridSpec};

/// Compatibility level at the corner; `D1` implies `D0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompatLevel {
    /// no condition holds
    D,
    /// `u(0) = g(0)`
    D0,
    /// also `g'(0) = u''(0) + f(0, 0)`
    D1,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompatCheck {
    pub condition: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompatClass {
    pub level: CompatLevel,
    pub checks: Vec<CompatCheck>,
}

pub fn compatibility_class(datum: &DatumTriple, tol: f64) -> CompatClass {
    let u = datum.u.derivs_at_zero(3);
    let g = datum.g.derivs_at(0.0, 2);
    let f00 = datum.f.value(0.0, 0.0);
    let r0 = u[0] - g[0];
    let r1 = g[1] - u[2] - f00;
    let level = match (r0.abs() <= tol, r1.abs() <= tol) {
        (true, true) => CompatLevel::D1,
        (true, false) => CompatLevel::D0,
        _ => CompatLevel::D,
    };
    CompatClass {
        level,
        checks: vec![
            CompatCheck { condition: "u(0) = g(0)".into(), residual: r0 },
            CompatCheck { condition: "g'(0) = u''(0) + f(0,0)".into(), residual: r1 },
        ],
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuityReport {
    pub scales: Vec<f64>,
    pub n_list: Vec<usize>,
    /// `seminorm_values[i][j] = lambda_{n_j}(Phi(datum / s_i))`
    pub seminorm_values: Vec<Vec<f64>>,
    /// `ratios[i][j] = seminorm_values[i + 1][j] / seminorm_values[i][j]`
    pub ratios: Vec<Vec<f64>>,
    /// Largest relative deviation from the `1/s` law.
    pub scaling_defect: f64,
    /// Same layout, for `u_s = exp(-x^2) exp(-x^2 / s) / s` with `g = f = 0`.
    pub width_values: Vec<Vec<f64>>,
    pub width_decreasing: bool,
    /// Every seminorm grid passed its refinement and tail checks.
    pub grids_converged: bool,
}

/// `u_s(x) = exp(-x^2) exp(-x^2 / s) / s`.
pub fn width_datum(s: f64) -> Result<DatumTriple> {
    let u = HalfLineFunction::gaussian(1.0 / s, 0, 1.0 + 1.0 / s)?;
    Ok(DatumTriple::new(u, BoundaryFunction::zero(), ForcingFunction::zero()))
}

pub fn continuity_experiment(datum: &DatumTriple, scales: &[f64], n_list: &[usize], grid: &GridSpec) -> Result<ContinuityReport> {
    if scales.is_empty() || scales.iter().any(|s| !(*s > 0.0)) || scales.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("scales must be positive and increasing".into()));
    }
    let mut converged = true;
    let mut sweep = |d: &dyn Fn(f64) -> Result<DatumTriple>| -> Result<Vec<Vec<f64>>> {
        scales
            .iter()
            .map(|&s| {
                let field = SolutionField::new(d(s)?);
                n_list
                    .iter()
                    .map(|&n| {
                        let r = lambda_n(&field, n, grid)?;
                        converged &= r.converged;
                        Ok(r.value)
                    })
                    .collect()
            })
            .collect()
    };
    let seminorm_values = sweep(&|s| Ok(datum.scale(1.0 / s)))?;
    let width_values = sweep(&width_datum)?;

    let mut ratios = Vec::new();
    let mut scaling_defect: f64 = 0.0;
    for i in 1..scales.len() {
        let row: Vec<f64> = (0..n_list.len())
            .map(|j| {
                let (a, b) = (seminorm_values[i - 1][j], seminorm_values[i][j]);
                if a == 0.0 && b == 0.0 {
                    return 0.0;
                }
                let r = b / a;
                let want = scales[i - 1] / scales[i];
                scaling_defect = scaling_defect.max((r / want - 1.0).abs());
                r
            })
            .collect();
        ratios.push(row);
    }
    let width_decreasing = (1..scales.len()).all(|i| (0..n_list.len()).all(|j| width_values[i][j] < width_values[i - 1][j]));
    Ok(ContinuityReport {
        scales: scales.to_vec(),
        n_list: n_list.to_vec(),
        seminorm_values,
        ratios,
        scaling_defect,
        width_values,
        width_decreasing,
        grids_converged: converged,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CornerProbe {
    /// `lim Phi(0, t)` as `t -> 0+`.
    pub boundary_limit: f64,
    /// `lim Phi(x, 0)` as `x -> 0+`.
    pub initial_limit: f64,
    pub mismatch: f64,
}

/// Polynomial extrapolation to `h = 0` (Neville).
fn richardson(h: &[f64], v: &[f64]) -> f64 {
    let mut p = v.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
        }
    }
    p[0]
}

pub fn corner_probe(datum: &DatumTriple) -> Result<CornerProbe> {
    let field = SolutionField::new(datum.clone());
    let h: Vec<f64> = (0..4).map(|i| 0.02 / 2f64.powi(i)).collect();
    let along = |x_axis: bool| -> Result<f64> {
        let v = h
            .iter()
            .map(|&s| {
                let req = if x_axis { EvalRequest::new(s, 0.0) } else { EvalRequest::new(0.0, s) };
                Ok(field.eval(&req)?.value.re)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(richardson(&h, &v))
    };
    let boundary_limit = along(false)?;
    let initial_limit = along(true)?;
    Ok(CornerProbe { boundary_limit, initial_limit, mismatch: boundary_limit - initial_limit })
}

/// Paths `x = a h`, `t = b h^2` into the corner.
const CORNER_PATHS: [(f64, f64); 4] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 4.0)];
const PROBE_LEVELS: usize = 7;
const PROBE_H0: f64 = 0.0625;
/// Largest ratio of successive corner oscillations counted as Cauchy.
pub const CAUCHY_FACTOR: f64 = 0.6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantityProbe {
    pub name: String,
    pub k: usize,
    pub l: usize,
    /// Level whose smoothness claim covers this derivative.
    pub claim: CompatLevel,
    pub h: Vec<f64>,
    /// `values[j][p]` on path `p` at `h[j]`.
    pub values: Vec<Vec<f64>>,
    /// Spread of the values over levels `j` and `j + 1`.
    pub oscillation: Vec<f64>,
    pub factors: Vec<f64>,
    pub bounded: bool,
    pub cauchy: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub quantities: Vec<QuantityProbe>,
    /// `Phi` and `Phi_x` are Cauchy near the corner.
    pub d0_claim_holds: bool,
    /// Additionally `Phi_t`, `Phi_xx`, `Phi_xxx`.
    pub d1_claim_holds: bool,
    /// As `d1_claim_holds` without `Phi_xxx`.
    pub c21_claim_holds: bool,
}

/// Oscillation below this is treated as resolved.
fn osc_floor(scale: f64) -> f64 {
    1e-8 * scale.max(1.0)
}

/// Moduli of continuity of `Phi` and its derivatives at the corner, estimated
/// on the parabolic paths `x = a h`, `t = b h^2` with `h` halved per level.
pub fn smoothness_probe(datum: &DatumTriple) -> Result<SmoothnessReport> {
    let field = SolutionField::new(datum.clone());
    let specs: [(&str, usize, usize, CompatLevel); 5] = [
        ("phi", 0, 0, CompatLevel::D0),
        ("phi_x", 1, 0, CompatLevel::D0),
        ("phi_t", 0, 1, CompatLevel::D1),
        ("phi_xx", 2, 0, CompatLevel::D1),
        ("phi_xxx", 3, 0, CompatLevel::D1),
    ];
    let h: Vec<f64> = (0..PROBE_LEVELS).map(|j| PROBE_H0 / 2f64.powi(j as i32)).collect();
    let mut quantities = Vec::new();
    for (name, k, l, claim) in specs {
        let values = h
            .iter()
            .map(|&s| {
                CORNER_PATHS
                    .iter()
                    .map(|&(a, b)| Ok(field.eval(&EvalRequest::new(a * s, b * s * s).derivs(k, l))?.value.re))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let scale = values.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        let floor = osc_floor(scale);
        let oscillation: Vec<f64> = values
            .windows(2)
            .map(|w| {
                let all = w[0].iter().chain(&w[1]);
                let hi = all.clone().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
                let lo = all.fold(f64::INFINITY, |m, &v| m.min(v));
                hi - lo
            })
            .collect();
        let factors: Vec<f64> = oscillation.windows(2).map(|w| if w[0] > 0.0 { w[1] / w[0] } else { 0.0 }).collect();
        let cauchy = oscillation.windows(2).all(|w| w[1] <= floor || w[1] <= CAUCHY_FACTOR * w[0]);
        let level_max = |j: usize| values[j].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let bounded = values.iter().flatten().all(|v| v.is_finite())
            && (1..PROBE_LEVELS).all(|j| level_max(j) <= 1.25 * level_max(j - 1) + floor);
        quantities.push(QuantityProbe {
            name: name.into(),
            k,
            l,
            claim,
            h: h.clone(),
            values,
            oscillation,
            factors,
            bounded,
            cauchy,
        });
    }
    let holds = |q: &QuantityProbe| q.bounded && q.cauchy;
    let d0_claim_holds = quantities.iter().filter(|q| q.claim == CompatLevel::D0).all(holds);
    let d1_claim_holds = quantities.iter().all(holds);
    let c21_claim_holds = quantities.iter().filter(|q| q.name != "phi_xxx").all(holds);
    Ok(SmoothnessReport { quantities, d0_claim_holds, d1_claim_holds, c21_claim_holds })
}

/// Boundary and forcing additions that are negligible on `[0, t_obs + delta]`:
/// temporal factors `(t/t_p)^m exp(m (1 - t/t_p))` peaking at `t_p` well after
/// the window, with `m` chosen for an early mass below `1e-13`.
pub fn late_modification(t_obs: f64, delta: f64, variant: u32) -> Result<DatumTriple> {
    if !(t_obs > 0.0 && delta > 0.0) {
        return Err(Error::Config("t_obs and delta must be positive".into()));
    }
    let edge = t_obs + delta;
    let r: f64 = 0.1;
    let t_p = edge / r;
    let m = (13.0 * 10f64.ln() / -(r.ln() + 1.0 - r)).ceil() as u32 + variant;
    let b = m as f64 / t_p;
    let c = (std::f64::consts::E / t_p).powi(m as i32);
    let phi = 0.7 * variant as f64 / t_p;
    let g = BoundaryFunction::new(&[OscTerm { c, m, b, phi, phase: 0.3 * variant as f64 }])?;
    let temporal = BoundaryFunction::exp_poly(-0.5 * c, m, b)?;
    let spatial = HalfLineFunction::exponential(1.0, variant, 1.0 + variant as f64)?;
    Ok(DatumTriple::new(HalfLineFunction::zero(), g, ForcingFunction::separable(spatial, temporal)))
}

/// `sup_{tau <= t}` of the modification's temporal factors.
pub fn early_mass(modification: &DatumTriple, t: f64) -> f64 {
    let m = 2000;
    let mut worst: f64 = 0.0;
    for i in 0..=m {
        let tau = t * i as f64 / m as f64;
        worst = worst.max(modification.g.value(tau).abs());
        for term in modification.f.terms() {
            worst = worst.max(term.temporal.value(tau).abs());
        }
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CausalityReport {
    pub t_obs: f64,
    pub delta: f64,
    pub early_mass: f64,
    /// `sup_x |Phi_modified - Phi_original|` at `t_obs`.
    pub difference: f64,
}

fn observation_points() -> Vec<f64> {
    (0..10).map(|i| 0.5 * i as f64).collect()
}

/// Change of `Phi(., t_obs)` when `modification` is added to the datum.
pub fn causality_difference(datum: &DatumTriple, modification: &DatumTriple, t_obs: f64) -> Result<f64> {
    let a = SolutionField::new(datum.clone());
    let b = SolutionField::new(datum.add(modification));
    let mut worst: f64 = 0.0;
    for x in observation_points() {
        let req = EvalRequest::new(x, t_obs);
        worst = worst.max((b.eval(&req)?.value - a.eval(&req)?.value).norm());
    }
    Ok(worst)
}

pub fn causality_test(datum: &DatumTriple, t_obs: f64, delta: f64) -> Result<CausalityReport> {
    let modification = late_modification(t_obs, delta, 0)?;
    Ok(CausalityReport {
        t_obs,
        delta,
        early_mass: early_mass(&modification, t_obs),
        difference: causality_difference(datum, &modification, t_obs)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{odd_gaussian, unit_boundary};

    fn d0_datum() -> DatumTriple {
        DatumTriple::new(HalfLineFunction::gaussian(1.0, 0, 1.0).unwrap(), BoundaryFunction::constant(1.0), ForcingFunction::zero())
    }

    #[test]
    fn compatibility_examples() {
        assert_eq!(compatibility_class(&DatumTriple::zero(), 1e-12).level, CompatLevel::D1);
        let c = compatibility_class(&d0_datum(), 1e-12);
        assert_eq!(c.level, CompatLevel::D0);
        assert!((c.checks[1].residual - 2.0).abs() < 1e-14);
        assert_eq!(compatibility_class(&odd_gaussian(), 1e-12).level, CompatLevel::D1);
        assert_eq!(compatibility_class(&unit_boundary(), 1e-12).level, CompatLevel::D);
    }

    #[test]
    fn richardson_is_exact_on_cubics() {
        let h = [0.1, 0.05, 0.025, 0.0125];
        let v: Vec<f64> = h.iter().map(|x| 2.0 - x + 3.0 * x * x - x * x * x).collect();
        assert!((richardson(&h, &v) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn corner_examples() {
        let z = corner_probe(&DatumTriple::zero()).unwrap();
        assert_eq!((z.boundary_limit, z.initial_limit, z.mismatch), (0.0, 0.0, 0.0));
        let e = corner_probe(&unit_boundary()).unwrap();
        assert!((e.boundary_limit - 1.0).abs() < 1e-4 && e.initial_limit.abs() < 1e-4, "{e:?}");
        let o = corner_probe(&odd_gaussian()).unwrap();
        assert!(o.mismatch.abs() < 1e-5, "{o:?}");
    }

    #[test]
    fn smoothness_examples() {
        let z = smoothness_probe(&DatumTriple::zero()).unwrap();
        assert!(z.d1_claim_holds);
        let d0 = smoothness_probe(&d0_datum()).unwrap();
        assert!(d0.d0_claim_holds && !d0.d1_claim_holds);
        let e = smoothness_probe(&unit_boundary()).unwrap();
        assert!(!e.quantities[0].cauchy);
        let o = smoothness_probe(&odd_gaussian()).unwrap();
        assert!(o.d1_claim_holds, "{:#?}", o.quantities);
    }

    #[test]
    fn causality_examples() {
        let none = causality_difference(&odd_gaussian(), &DatumTriple::zero(), 1.0).unwrap();
        assert_eq!(none, 0.0);
        let r = causality_test(&DatumTriple::zero(), 1.0, 0.1).unwrap();
        assert!(r.early_mass <= 1e-12, "{r:?}");
        assert!(r.difference <= 1e-9, "{r:?}");
        let a = late_modification(1.0, 0.1, 1).unwrap();
        let b = late_modification(1.0, 0.1, 2).unwrap();
        let d = odd_gaussian();
        let va = causality_difference(&d, &a, 1.0).unwrap();
        let vb = causality_difference(&d, &b, 1.0).unwrap();
        assert!(va <= 1e-9 && vb <= 1e-9, "{va} {vb}");
    }

    #[test]
    fn continuity_zero_and_scaling() {
        let g = GridSpec::coarse();
        let z = continuity_experiment(&DatumTriple::zero(), &[1.0, 2.0], &[1], &g).unwrap();
        assert!(z.seminorm_values.iter().flatten().all(|v| *v == 0.0));
        assert!(continuity_experiment(&DatumTriple::zero(), &[2.0, 1.0], &[1], &g).is_err());
    }
}
