//! Batch front-end. Field outputs are CSV (`x,t,k,l,re,im,err_est`), reports
//! are JSON. Exit codes: 0 success, 1 input error, 2 tolerance breach.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::json;

use crate::datafun::DatumTriple;
use crate::error::{Error, Result};
use crate::lab::{causality_test, compatibility_class, continuity_experiment, corner_probe};
use crate::ops::{EvalRequest, SolutionField};
use crate::oracle::{classical_solution_with, residual, OracleConfig};
use crate::spaces::{cinf_seminorm, lambda_n, lambda_star_n, rho_n, GridSpec};
use crate::transforms::{damped_time_transform, ibp_time_transform_with_table, DerivativeTable, RegOrder};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_TOLERANCE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandKind {
    Solve,
    Residual,
    OracleCompare,
    Seminorm,
    Continuity,
    Corner,
    Causality,
    IdentityCheck,
}

/// `x0:x1:nx`; `nx = 1` samples `x0` only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn nodes(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        (0..self.count).map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.count - 1) as f64).collect()
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(format!("axis `{s}` is not lo:hi:count"));
        };
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}"));
        let (lo, hi) = (num(lo)?, num(hi)?);
        let count = n.trim().parse::<usize>().map_err(|e| format!("`{n}`: {e}"))?;
        if count == 0 {
            return Err("axis count must be at least 1".into());
        }
        if !(lo >= 0.0 && hi >= lo && hi.is_finite()) {
            return Err(format!("axis `{s}` must satisfy 0 <= lo <= hi"));
        }
        Ok(Self { lo, hi, count })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridArg {
    pub x: Axis,
    pub t: Axis,
}

impl GridArg {
    pub fn points(&self) -> Vec<(f64, f64)> {
        let ts = self.t.nodes();
        self.x.nodes().into_iter().flat_map(|x| ts.iter().map(move |&t| (x, t))).collect()
    }
}

impl FromStr for GridArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (x, t) = s.split_once(',').ok_or_else(|| format!("grid `{s}` is not x0:x1:nx,t0:t1:nt"))?;
        Ok(Self { x: x.parse()?, t: t.parse()? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deriv(pub usize, pub usize);

impl FromStr for Deriv {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (k, l) = s.split_once(',').ok_or_else(|| format!("deriv `{s}` is not k,l"))?;
        let p = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("`{v}`: {e}"));
        Ok(Self(p(k)?, p(l)?))
    }
}

/// Comma-separated list of scales.
#[derive(Debug, Clone, PartialEq)]
pub struct Scales(pub Vec<f64>);

impl FromStr for Scales {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.split(',').map(|v| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"))).collect::<std::result::Result<_, _>>().map(Self)
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "utmq", version, about = "Quarter-plane heat solver and its verification experiments")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: CommandKind,
    /// Datum spec (JSON with `u`, `g`, `f` term lists).
    #[arg(long)]
    pub spec: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Absolute quadrature tolerance for every operator.
    #[arg(long)]
    pub quad_tol: Option<f64>,
    #[arg(long, default_value = "0.1:4:20,0.1:2:20")]
    pub grid: GridArg,
    #[arg(long, default_value = "0,0")]
    pub deriv: Deriv,
    /// Verification tolerance; each command has its own default.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 1e-3)]
    pub fd_step: f64,
    /// Seminorm order.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Use the light seminorm grid.
    #[arg(long)]
    pub coarse: bool,
    #[arg(long, default_value = "1,2,4,8")]
    pub scales: Scales,
    #[arg(long, default_value_t = 1.0)]
    pub t_obs: f64,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Corrupt the derivative table in identity-check.
    #[arg(long)]
    pub tamper: bool,
}

/// Outcome of a command before it is written out.
struct Output {
    body: String,
    /// Failing record, when a verification command breached its tolerance.
    breach: Option<String>,
}

fn json_body<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialises");
    s.push('\n');
    s
}

fn field(datum: DatumTriple, cfg: &RunConfig) -> SolutionField {
    let f = SolutionField::new(datum);
    match cfg.quad_tol {
        Some(tol) => f.with_tol(tol),
        None => f,
    }
}

fn checked_points(cfg: &RunConfig) -> Result<Vec<(f64, f64)>> {
    let pts = cfg.grid.points();
    if pts.iter().any(|&(x, t)| x == 0.0 && t == 0.0) {
        return Err(Error::Config("grid contains the corner (0, 0)".into()));
    }
    Ok(pts)
}

fn interior_points(cfg: &RunConfig) -> Result<Vec<(f64, f64)>> {
    let pts = checked_points(cfg)?;
    if pts.iter().any(|&(x, t)| x == 0.0 || t == 0.0) {
        return Err(Error::Config("this command needs interior points (x > 0, t > 0)".into()));
    }
    Ok(pts)
}

fn solve(datum: DatumTriple, cfg: &RunConfig) -> Result<Output> {
    let Deriv(k, l) = cfg.deriv;
    let reqs: Vec<EvalRequest> = checked_points(cfg)?.into_iter().map(|(x, t)| EvalRequest::new(x, t).derivs(k, l)).collect();
    let values = field(datum, cfg).eval_grid(&reqs);
    let mut body = String::from("x,t,k,l,re,im,err_est\n");
    for (r, v) in reqs.iter().zip(values) {
        let v = v?;
        writeln!(body, "{},{},{},{},{},{},{}", r.x, r.t, k, l, v.value.re, v.value.im, v.err_est).unwrap();
    }
    Ok(Output { body, breach: None })
}

fn residual_cmd(datum: DatumTriple, cfg: &RunConfig) -> Result<Output> {
    let oc = OracleConfig::new(cfg.quad_tol.unwrap_or(1e-12), cfg.fd_step)?;
    let tol = cfg.tol.unwrap_or(1e-6);
    let fd_tol = 1e-4;
    let phi = field(datum, cfg);
    let mut rows = Vec::new();
    let mut breach = None;
    for (x, t) in interior_points(cfg)? {
        let r = residual(&phi, x, t, &oc)?;
        let row = json!({ "x": x, "t": t, "analytic": r.analytic, "finite_difference": r.finite_difference });
        if breach.is_none() && (r.analytic > tol || r.finite_difference > fd_tol) {
            breach = Some(row.to_string());
        }
        rows.push(row);
    }
    let report = json!({ "tol": tol, "fd_tol": fd_tol, "fd_step": cfg.fd_step, "pass": breach.is_none(), "points": rows });
    Ok(Output { body: json_body(&report), breach })
}

fn oracle_compare(datum: DatumTriple, cfg: &RunConfig) -> Result<Output> {
    let tol = cfg.tol.unwrap_or(1e-5);
    let oc = OracleConfig::default();
    let phi = field(datum.clone(), cfg);
    let mut rows = Vec::new();
    let mut breach = None;
    let mut worst: f64 = 0.0;
    for (x, t) in interior_points(cfg)? {
        let a = phi.eval(&EvalRequest::new(x, t))?.value.re;
        let b = classical_solution_with(&datum, x, t, &oc)?;
        let diff = (a - b).abs();
        worst = worst.max(diff);
        let row = json!({ "x": x, "t": t, "phi": a, "classical": b, "diff": diff });
        if breach.is_none() && diff > tol {
            breach = Some(row.to_string());
        }
        rows.push(row);
    }
    let report = json!({ "tol": tol, "max_diff": worst, "pass": breach.is_none(), "points": rows });
    Ok(Output { body: json_body(&report), breach })
}

fn seminorm(datum: DatumTriple, cfg: &RunConfig) -> Result<Output> {
    let grid = if cfg.coarse { GridSpec::coarse() } else { GridSpec::default() };
    let n = cfg.n;
    let phi = field(datum.clone(), cfg);
    let lambda = lambda_n(&phi, n.max(1), &grid)?;
    let report = json!({
        "n": n,
        "lambda_n": lambda,
        "rho_n": rho_n(&datum.u, n)?,
        "lambda_star_n": lambda_star_n(&datum.f, n, &grid)?,
        "cinf": (0..=n).map(|l| cinf_seminorm(&datum.g, l, n.max(1))).collect::<Vec<_>>(),
    });
    let breach = (!lambda.converged).then(|| format!("lambda_{n} grid did not converge: {}", lambda.to_json()));
    Ok(Output { body: json_body(&report), breach })
}

fn continuity(datum: DatumTriple, cfg: &RunConfig) -> Result<Output> {
    let tol = cfg.tol.unwrap_or(1e-6);
    let grid = if cfg.coarse { GridSpec::coarse() } else { GridSpec::default() };
    let ns: Vec<usize> = (1..=cfg.n.max(1)).collect();
    let r = continuity_experiment(&datum, &cfg.scales.0, &ns, &grid)?;
    let breach = if r.scaling_defect > tol {
        Some(format!("scaling defect {} > {tol}", r.scaling_defect))
    } else if !r.width_decreasing {
        Some(format!("width sequence not decreasing: {:?}", r.width_values))
    } else {
        None
    };
    Ok(Output { body: json_body(&r), breach })
}

fn corner(datum: DatumTriple, cfg: &RunConfig) -> Result<Output> {
    let tol = cfg.tol.unwrap_or(1e-4);
    let probe = corner_probe(&datum)?;
    let class = compatibility_class(&datum, 1e-12);
    let expected = datum.g.derivs_at(0.0, 1)[0] - datum.u.derivs_at_zero(1)[0];
    let defect = (probe.mismatch - expected).abs();
    let report = json!({ "probe": probe, "class": class, "expected_mismatch": expected, "tol": tol, "pass": defect <= tol });
    let breach = (defect > tol).then(|| report.to_string());
    Ok(Output { body: json_body(&report), breach })
}

fn causality(datum: DatumTriple, cfg: &RunConfig) -> Result<Output> {
    let tol = cfg.tol.unwrap_or(1e-9);
    let r = causality_test(&datum, cfg.t_obs, cfg.delta)?;
    let breach = (r.difference > tol).then(|| serde_json::to_string(&r).unwrap());
    Ok(Output { body: json_body(&r), breach })
}

#[derive(Debug, Clone, Copy, Serialize)]
struct IdentitySample {
    lambda: Complex64,
    t: f64,
    order: usize,
    expansion: Complex64,
    direct: Complex64,
    rel_err: f64,
}

/// Integration-by-parts expansion of the damped time transform against its
/// closed form, at seeded random `(lambda, t, M)`.
fn identity_check(datum: DatumTriple, cfg: &RunConfig) -> Result<Output> {
    let tol = cfg.tol.unwrap_or(1e-10);
    let g = &datum.g;
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut samples = Vec::with_capacity(cfg.samples);
    for _ in 0..cfg.samples {
        let lambda = Complex64::from_polar(rng.gen_range(0.5..4.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let t = rng.gen_range(0.0..2.0f64).max(1e-3);
        let order = rng.gen_range(0..=4usize);
        let mut table = DerivativeTable::new(g, t, RegOrder(order));
        if cfg.tamper {
            table.at_t[0] = table.at_t[0] * (1.0 + 1e-3) + 1e-3;
        }
        let expansion = ibp_time_transform_with_table(&table, &g.deriv(order + 1), lambda, t, RegOrder(order))?;
        let direct = damped_time_transform(g, lambda, t);
        let diff = (expansion - direct).norm();
        let rel_err = if diff == 0.0 { 0.0 } else { diff / direct.norm().max(f64::MIN_POSITIVE) };
        samples.push(IdentitySample { lambda, t, order, expansion, direct, rel_err });
    }
    let worst = samples.iter().copied().max_by(|a, b| a.rel_err.total_cmp(&b.rel_err));
    let max_rel = worst.map_or(0.0, |w| w.rel_err);
    let breach = worst.filter(|w| w.rel_err > tol).map(|w| serde_json::to_string(&w).unwrap());
    let report = json!({ "tol": tol, "tampered": cfg.tamper, "max_rel_err": max_rel, "pass": breach.is_none(), "samples": samples });
    Ok(Output { body: json_body(&report), breach })
}

fn execute(cfg: &RunConfig) -> Result<Output> {
    let text = std::fs::read_to_string(&cfg.spec).map_err(|e| Error::Io(format!("{}: {e}", cfg.spec.display())))?;
    let datum = DatumTriple::from_json(&text)?;
    match cfg.command {
        CommandKind::Solve => solve(datum, cfg),
        CommandKind::Residual => residual_cmd(datum, cfg),
        CommandKind::OracleCompare => oracle_compare(datum, cfg),
        CommandKind::Seminorm => seminorm(datum, cfg),
        CommandKind::Continuity => continuity(datum, cfg),
        CommandKind::Corner => corner(datum, cfg),
        CommandKind::Causality => causality(datum, cfg),
        CommandKind::IdentityCheck => identity_check(datum, cfg),
    }
}

/// Runs one command and returns its exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    let out = match execute(cfg) {
        Ok(out) => out,
        Err(e @ Error::ToleranceNotMet { .. }) => {
            eprintln!("error: {e}");
            return EXIT_TOLERANCE;
        }
        Err(e) => {
            eprintln!("error: {}: {e}", cfg.spec.display());
            return EXIT_INPUT;
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &out.body).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{}", out.body);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_INPUT;
    }
    match out.breach {
        Some(record) => {
            eprintln!("tolerance breach: {record}");
            EXIT_TOLERANCE
        }
        None => EXIT_OK,
    }
}

/// Parses arguments and runs; usage errors map to the input-error code.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_and_deriv_parsing() {
        let g: GridArg = "0:1:2,0.5:0.5:1".parse().unwrap();
        assert_eq!(g.points(), vec![(0.0, 0.5), (1.0, 0.5)]);
        assert!("0:1".parse::<Axis>().is_err());
        assert!("1:0:3".parse::<Axis>().is_err());
        assert!("0:1:0".parse::<Axis>().is_err());
        assert_eq!("2,1".parse::<Deriv>().unwrap(), Deriv(2, 1));
    }
}
