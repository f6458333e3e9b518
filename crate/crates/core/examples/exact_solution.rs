//! Odd-Gaussian initial datum: the solution on a 20x20 grid against its
//! closed form `(t+1)^{-3/2} x exp(-x^2 / 4(t+1))`.

use std::time::Instant;

use utmq::ops::{EvalRequest, SolutionField};
use utmq::oracle::odd_gaussian;

fn main() -> utmq::Result<()> {
    let field = SolutionField::new(odd_gaussian());
    let exact = |x: f64, t: f64| (t + 1.0).powf(-1.5) * x * (-x * x / (4.0 * (t + 1.0))).exp();
    let mut reqs = Vec::new();
    for i in 0..20 {
        for j in 0..20 {
            reqs.push(EvalRequest::new(0.1 + 3.9 * i as f64 / 19.0, 0.1 + 1.9 * j as f64 / 19.0));
        }
    }
    let start = Instant::now();
    let values = field.eval_grid(&reqs);
    let (mut err, mut im) = (0.0f64, 0.0f64);
    for (r, v) in reqs.iter().zip(values) {
        let v = v?.value;
        err = err.max((v.re - exact(r.x, r.t)).abs());
        im = im.max(v.im.abs());
    }
    println!("400 points in {:.2?}: sup error {err:.2e}, sup |Im| {im:.2e}", start.elapsed());
    Ok(())
}
