//! The integration-by-parts expansion of the damped time transform against
//! its closed form, for increasing expansion order.

use num_complex::Complex64;
use utmq::datafun::{BoundaryFunction, OscTerm};
use utmq::transforms::{damped_time_transform, ibp_time_transform, RegOrder};

fn main() -> utmq::Result<()> {
    let g = BoundaryFunction::new(&[OscTerm { c: 1.0, m: 1, b: 1.0, phi: 2.0, phase: 0.3 }])?;
    let lambda = Complex64::new(1.3, 0.8);
    let t = 1.2;
    let direct = damped_time_transform(&g, lambda, t);
    println!("closed form: {direct:.15}");
    for m in 0..=4 {
        let e = ibp_time_transform(&g, lambda, t, RegOrder(m))?;
        println!("M = {m}: {e:.15}  rel diff {:.1e}", (e - direct).norm() / direct.norm());
    }
    Ok(())
}
