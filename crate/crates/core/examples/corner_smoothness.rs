//! Moduli of continuity at the corner for a datum that satisfies only the
//! first compatibility condition and for one that satisfies both.

use utmq::datafun::{BoundaryFunction, DatumTriple, ForcingFunction, HalfLineFunction};
use utmq::lab::{compatibility_class, smoothness_probe};
use utmq::oracle::odd_gaussian;

fn main() -> utmq::Result<()> {
    let d0 = DatumTriple::new(HalfLineFunction::gaussian(1.0, 0, 1.0)?, BoundaryFunction::constant(1.0), ForcingFunction::zero());
    for (name, d) in [("exp(-x^2), g = 1", d0), ("odd Gaussian", odd_gaussian())] {
        let class = compatibility_class(&d, 1e-12);
        let r = smoothness_probe(&d)?;
        println!("{name}: {:?}", class.level);
        for q in &r.quantities {
            let last = q.factors.last().copied().unwrap_or(0.0);
            println!("  {:<8} bounded {:<5} cauchy {:<5} last factor {last:.3}", q.name, q.bounded, q.cauchy);
        }
    }
    Ok(())
}
