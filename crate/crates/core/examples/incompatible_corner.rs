//! Boundary datum g = 1 with zero initial datum: the erfc solution, whose
//! limits at the corner along the two axes differ.

use statrs::function::erf::erfc;
use utmq::lab::{compatibility_class, corner_probe};
use utmq::ops::{EvalRequest, SolutionField};
use utmq::oracle::unit_boundary;

fn main() -> utmq::Result<()> {
    let datum = unit_boundary();
    let field = SolutionField::new(datum.clone());
    for (x, t) in [(0.1, 0.1), (1.0, 0.25), (0.0, 0.5), (2.0, 2.0)] {
        let v = field.eval(&EvalRequest::new(x, t))?.value.re;
        let want = erfc(x / (2.0 * t.sqrt()));
        println!("Phi({x}, {t}) = {v:.12}  erfc = {want:.12}");
    }
    println!("class: {:?}", compatibility_class(&datum, 1e-12).level);
    let probe = corner_probe(&datum)?;
    println!("limit along x = 0: {:.3e}", probe.boundary_limit);
    println!("limit along t = 0: {:.3e}", probe.initial_limit);
    println!("mismatch: {:.3e}", probe.mismatch);
    Ok(())
}
