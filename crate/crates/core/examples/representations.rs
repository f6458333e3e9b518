//! The same operator value from different contour representations.

use utmq::datafun::{BoundaryFunction, HalfLineFunction};
use utmq::ops::{i0_minus, i1, EvalRequest, Representation};

fn main() -> utmq::Result<()> {
    let u = HalfLineFunction::gaussian(1.0, 1, 0.25)?;
    let g = BoundaryFunction::exp_poly(1.0, 1, 1.0)?;
    for (x, t) in [(0.5, 0.5), (1.0, 0.2), (2.0, 1.0)] {
        let req = EvalRequest::new(x, t).derivs(1, 0);
        let a = i0_minus(&u, &req, 1e-11, Representation::Gamma)?.value;
        let b = i0_minus(&u, &req, 1e-11, Representation::RealLine)?.value;
        let c = i1(&g, &req, 1e-11, Representation::Gamma)?.value;
        let d = i1(&g, &req, 1e-11, Representation::Regularized)?.value;
        println!("({x}, {t}) I0-: gamma vs real {:.1e}   I1: direct vs expansion {:.1e}", (a - b).norm(), (c - d).norm());
    }
    Ok(())
}
