//! Forcing f = exp(-x) exp(-t) against the Duhamel integral of the classical
//! method of images.

use utmq::datafun::{BoundaryFunction, DatumTriple, ForcingFunction, HalfLineFunction};
use utmq::ops::{EvalRequest, SolutionField};
use utmq::oracle::classical_solution;

fn main() -> utmq::Result<()> {
    let f = ForcingFunction::separable(HalfLineFunction::exponential(1.0, 0, 1.0)?, BoundaryFunction::exp_poly(1.0, 0, 1.0)?);
    let datum = DatumTriple::new(HalfLineFunction::zero(), BoundaryFunction::zero(), f);
    let field = SolutionField::new(datum.clone());
    for (x, t) in [(0.05, 0.3), (0.5, 0.5), (1.0, 1.0), (2.5, 1.7)] {
        let phi = field.eval(&EvalRequest::new(x, t))?.value.re;
        let oracle = classical_solution(&datum, x, t)?;
        println!("({x}, {t}): transform {phi:.13}  images {oracle:.13}  diff {:.1e}", (phi - oracle).abs());
    }
    Ok(())
}
