//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on any failure.

use std::cell::Cell;
use std::time::Instant;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use statrs::function::erf::erfc;
use utmq::datafun::{BoundaryFunction, DatumTriple, ForcingFunction, HalfLineFunction, OscTerm};
use utmq::lab::{causality_difference, continuity_experiment, corner_probe, early_mass, late_modification, smoothness_probe};
use utmq::ops::{i0_minus, i1, EvalRequest, Representation, SolutionField};
use utmq::oracle::{classical_solution, odd_gaussian, residual, unit_boundary, OracleConfig};
use utmq::spaces::GridSpec;
use utmq::transforms::{damped_time_transform, ibp_time_transform, RegOrder};
use utmq::Result;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

thread_local! {
    /// Largest |Im Phi| seen on any grid.
    static MAX_IM: Cell<f64> = const { Cell::new(0.0) };
}

fn eval(field: &SolutionField, req: EvalRequest) -> Result<f64> {
    let v = field.eval(&req)?.value;
    MAX_IM.with(|m| m.set(m.get().max(v.im.abs())));
    Ok(v.re)
}

fn grid_20() -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    for i in 0..20 {
        for j in 0..20 {
            pts.push((0.1 + 3.9 * i as f64 / 19.0, 0.1 + 1.9 * j as f64 / 19.0));
        }
    }
    pts
}

fn random_points(rng: &mut StdRng, n: usize, x: (f64, f64), t: (f64, f64)) -> Vec<(f64, f64)> {
    (0..n).map(|_| (rng.gen_range(x.0..x.1), rng.gen_range(t.0..t.1))).collect()
}

fn forced() -> Result<DatumTriple> {
    let f = ForcingFunction::separable(HalfLineFunction::exponential(1.0, 0, 1.0)?, BoundaryFunction::exp_poly(1.0, 0, 1.0)?);
    Ok(DatumTriple::new(HalfLineFunction::zero(), BoundaryFunction::zero(), f))
}

fn oscillatory_g() -> Result<BoundaryFunction> {
    BoundaryFunction::new(&[OscTerm { c: 1.0, m: 0, b: 0.0, phi: 0.0, phase: 0.0 }, OscTerm { c: 1.0, m: 1, b: 1.0, phi: 2.0, phase: 0.3 }])
}

fn mixed() -> Result<DatumTriple> {
    Ok(DatumTriple::new(HalfLineFunction::gaussian(1.0, 0, 1.0)?, oscillatory_g()?, forced()?.f))
}

fn exact_odd_gaussian(x: f64, t: f64) -> f64 {
    (t + 1.0).powf(-1.5) * x * (-x * x / (4.0 * (t + 1.0))).exp()
}

fn c1_exact_solution() -> Result<Outcome> {
    let field = SolutionField::new(odd_gaussian());
    let start = Instant::now();
    let mut err: f64 = 0.0;
    for (x, t) in grid_20() {
        err = err.max((eval(&field, EvalRequest::new(x, t))? - exact_odd_gaussian(x, t)).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(err <= 1e-6 && secs <= 60.0, format!("sup error {err:.2e} (<= 1e-6), {secs:.2} s (<= 60 s)"))
}

fn c2_incompatible() -> Result<Outcome> {
    let field = SolutionField::new(unit_boundary());
    let mut err: f64 = 0.0;
    for (x, t) in grid_20() {
        err = err.max((eval(&field, EvalRequest::new(x, t))? - erfc(x / (2.0 * t.sqrt()))).abs());
    }
    let p = corner_probe(&unit_boundary())?;
    let limits_ok = (p.boundary_limit - 1.0).abs() <= 1e-4 && p.initial_limit.abs() <= 1e-4;
    outcome(
        err <= 1e-6 && limits_ok,
        format!("sup error {err:.2e} (<= 1e-6), corner limits ({:.2e}, {:.2e}) vs (1, 0) within 1e-4", p.boundary_limit, p.initial_limit),
    )
}

fn c3_forcing_oracle(rng: &mut StdRng) -> Result<Outcome> {
    let d = forced()?;
    let field = SolutionField::new(d.clone());
    let mut err: f64 = 0.0;
    for (x, t) in random_points(rng, 25, (0.02, 4.0), (0.02, 2.0)) {
        err = err.max((eval(&field, EvalRequest::new(x, t))? - classical_solution(&d, x, t)?).abs());
    }
    outcome(err <= 1e-5, format!("max |Phi - classical| {err:.2e} (<= 1e-5) at 25 random points"))
}

fn c4_residual(rng: &mut StdRng) -> Result<Outcome> {
    let u_only = DatumTriple::new(HalfLineFunction::gaussian(1.0, 0, 1.0)?, BoundaryFunction::zero(), ForcingFunction::zero());
    let g_only = DatumTriple::new(HalfLineFunction::zero(), oscillatory_g()?, ForcingFunction::zero());
    let cfg = OracleConfig::new(1e-12, 1e-3)?;
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, d) in [("u", u_only), ("g", g_only), ("f", forced()?)] {
        let field = SolutionField::new(d);
        let (mut an, mut fd): (f64, f64) = (0.0, 0.0);
        for (x, t) in random_points(rng, 25, (0.1, 4.0), (0.1, 2.0)) {
            let r = residual(&field, x, t, &cfg)?;
            an = an.max(r.analytic);
            fd = fd.max(r.finite_difference);
        }
        pass &= an <= 1e-6 && fd <= 1e-4;
        parts.push(format!("{name}-only analytic {an:.1e} fd {fd:.1e}"));
    }
    outcome(pass, format!("{} (<= 1e-6 / 1e-4)", parts.join(", ")))
}

fn c5_time_identity(rng: &mut StdRng) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let terms: Vec<OscTerm> = (0..rng.gen_range(1..=3))
            .map(|_| OscTerm {
                c: rng.gen_range(-2.0..2.0),
                m: rng.gen_range(0..=3),
                b: rng.gen_range(0.0..2.0),
                phi: rng.gen_range(0.0..3.0),
                phase: rng.gen_range(0.0..std::f64::consts::TAU),
            })
            .collect();
        let g = BoundaryFunction::new(&terms)?;
        let lambda = Complex64::from_polar(rng.gen_range(0.5..4.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let t = rng.gen_range(0.0..2.0);
        let m = rng.gen_range(0..=4);
        let a = ibp_time_transform(&g, lambda, t, RegOrder(m))?;
        let b = damped_time_transform(&g, lambda, t);
        if b.norm() > 0.0 {
            worst = worst.max((a - b).norm() / b.norm());
        }
    }
    outcome(worst <= 1e-10, format!("max relative difference {worst:.1e} (<= 1e-10) over 50 tuples"))
}

fn c6_representations(rng: &mut StdRng) -> Result<Outcome> {
    let u = odd_gaussian().u;
    let g = oscillatory_g()?;
    let (mut e0, mut e1): (f64, f64) = (0.0, 0.0);
    for (x, t) in random_points(rng, 20, (0.3, 3.0), (0.1, 1.5)) {
        let req = EvalRequest::new(x, t).derivs(rng.gen_range(0..=2), rng.gen_range(0..=1));
        let a = i0_minus(&u, &req, 1e-11, Representation::Gamma)?.value;
        let b = i0_minus(&u, &req, 1e-11, Representation::RealLine)?.value;
        e0 = e0.max((a - b).norm());
        let c = i1(&g, &req, 1e-11, Representation::Gamma)?.value;
        let d = i1(&g, &req, 1e-11, Representation::Regularized)?.value;
        e1 = e1.max((c - d).norm());
    }
    outcome(e0 <= 1e-8 && e1 <= 1e-8, format!("I0- gamma vs real {e0:.1e}, I1 direct vs expansion {e1:.1e} (<= 1e-8)"))
}

fn c7_traces() -> Result<Outcome> {
    let d = mixed()?;
    let field = SolutionField::new(d.clone());
    let (mut ic, mut bc): (f64, f64) = (0.0, 0.0);
    for i in 0..40 {
        let x = 0.1 + 3.9 * i as f64 / 39.0;
        ic = ic.max((eval(&field, EvalRequest::new(x, 0.0))? - d.u.eval(x)?).abs());
        let t = 0.1 + 1.9 * i as f64 / 39.0;
        bc = bc.max((eval(&field, EvalRequest::new(0.0, t))? - d.g.eval(t)?).abs());
    }
    outcome(ic <= 1e-6 && bc <= 1e-5, format!("initial trace {ic:.1e} (<= 1e-6), boundary trace {bc:.1e} (<= 1e-5)"))
}

fn c8_continuity() -> Result<Outcome> {
    let r = continuity_experiment(&odd_gaussian(), &[1.0, 2.0, 4.0, 8.0], &[1, 2], &GridSpec::coarse())?;
    let dev = r.ratios.iter().flatten().map(|q| (q - 0.5).abs()).fold(0.0, f64::max);
    outcome(
        dev <= 1e-6 && r.width_decreasing,
        format!("max |ratio - 0.5| {dev:.1e} (<= 1e-6), width sequence decreasing: {}", r.width_decreasing),
    )
}

fn c9_real_linear(rng: &mut StdRng) -> Result<Outcome> {
    let d1 = DatumTriple::new(odd_gaussian().u, oscillatory_g()?, ForcingFunction::zero());
    let d2 = DatumTriple::new(HalfLineFunction::gaussian(-0.5, 2, 1.0)?, BoundaryFunction::exp_poly(2.0, 0, 0.5)?, forced()?.f);
    let (f1, f2, f12) = (SolutionField::new(d1.clone()), SolutionField::new(d2.clone()), SolutionField::new(d1.add(&d2)));
    let mut lin: f64 = 0.0;
    for (x, t) in random_points(rng, 10, (0.0, 4.0), (0.05, 2.0)) {
        let req = EvalRequest::new(x, t);
        lin = lin.max((eval(&f12, req)? - eval(&f1, req)? - eval(&f2, req)?).abs());
    }
    let im = MAX_IM.with(|m| m.get());
    outcome(im <= 1e-8 && lin <= 1e-8, format!("max |Im Phi| {im:.1e} over all grids, linearity defect {lin:.1e} (both <= 1e-8)"))
}

fn c10_causality() -> Result<Outcome> {
    let m = late_modification(1.0, 0.1, 0)?;
    let mass = early_mass(&m, 1.0);
    let diff = causality_difference(&mixed()?, &m, 1.0)?;
    outcome(mass <= 1e-12 && diff <= 1e-9, format!("early mass {mass:.1e} (<= 1e-12), change at t_obs {diff:.1e} (<= 1e-9)"))
}

fn c11_smoothness() -> Result<Outcome> {
    let d0 = DatumTriple::new(HalfLineFunction::gaussian(1.0, 0, 1.0)?, BoundaryFunction::constant(1.0), ForcingFunction::zero());
    let a = smoothness_probe(&d0)?;
    let b = smoothness_probe(&odd_gaussian())?;
    let worst = |r: &utmq::lab::SmoothnessReport, names: &[&str]| {
        r.quantities.iter().filter(|q| names.contains(&q.name.as_str())).flat_map(|q| q.factors.clone()).fold(0.0, f64::max)
    };
    let fa = worst(&a, &["phi", "phi_x"]);
    let fb = worst(&b, &["phi", "phi_x", "phi_xx", "phi_xxx", "phi_t"]);
    outcome(
        a.d0_claim_holds && b.d1_claim_holds,
        format!("D0 datum Phi, Phi_x worst factor {fa:.3}; D1 datum through Phi_xxx, Phi_t worst factor {fb:.3} (<= 0.6)"),
    )
}

fn main() {
    let mut rng = StdRng::seed_from_u64(20);
    let mut criteria: Vec<(&str, Result<Outcome>, f64)> = Vec::new();
    let mut timed = |name, f: &mut dyn FnMut() -> Result<Outcome>| {
        let start = Instant::now();
        let r = f();
        criteria.push((name, r, start.elapsed().as_secs_f64()));
    };
    timed("exact-solution reproduction", &mut || c1_exact_solution());
    timed("incompatible boundary datum", &mut || c2_incompatible());
    timed("oracle equivalence with forcing", &mut || c3_forcing_oracle(&mut rng));
    timed("PDE residual", &mut || c4_residual(&mut rng));
    timed("time-transform expansion identity", &mut || c5_time_identity(&mut rng));
    timed("representation agreement", &mut || c6_representations(&mut rng));
    timed("initial and boundary recovery", &mut || c7_traces());
    timed("continuity", &mut || c8_continuity());
    timed("realness and linearity", &mut || c9_real_linear(&mut rng));
    timed("causality", &mut || c10_causality());
    timed("smoothing classes", &mut || c11_smoothness());

    let mut failed = 0;
    for (i, (name, r, secs)) in criteria.into_iter().enumerate() {
        let (pass, detail) = match r {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!("{} criterion {:>2} {name}: {detail} [{secs:.1} s]", if pass { "PASS" } else { "FAIL" }, i + 1);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
