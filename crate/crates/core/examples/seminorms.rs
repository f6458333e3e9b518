//! Data seminorms, the truncated metric, and a solution seminorm with its
//! attaining point.

use utmq::datafun::{BoundaryFunction, HalfLineFunction};
use utmq::ops::SolutionField;
use utmq::oracle::odd_gaussian;
use utmq::spaces::{cinf_seminorm, lambda_n, metric_rho, rho_n, GridSpec};

fn main() -> utmq::Result<()> {
    let u = HalfLineFunction::exponential(1.0, 0, 1.0)?;
    for n in 0..=3 {
        println!("rho_{n}(e^-x) = {:.12}", rho_n(&u, n)?.value);
    }
    let v = HalfLineFunction::gaussian(1.0, 0, 1.0)?;
    let m = metric_rho(&u, &v, 6)?;
    println!("rho(e^-x, e^-x^2) = {:.6} (+ tail <= {:.1e})", m.value, m.tail_bound);
    let g = BoundaryFunction::exp_poly(1.0, 1, 1.0)?;
    println!("sup |g| on [0, 3] for g = t e^-t: {:.12}", cinf_seminorm(&g, 0, 3));
    let report = lambda_n(&SolutionField::new(odd_gaussian()), 1, &GridSpec::coarse())?;
    println!("lambda_1 of the odd-Gaussian solution: {}", report.to_json());
    Ok(())
}
