//! Changing the boundary and forcing data only after the observation time
//! leaves the solution at that time unchanged.

use utmq::lab::{causality_difference, causality_test, early_mass, late_modification};
use utmq::oracle::odd_gaussian;

fn main() -> utmq::Result<()> {
    let d = odd_gaussian();
    let r = causality_test(&d, 1.0, 0.1)?;
    println!("early mass {:.1e}, change at t_obs {:.1e}", r.early_mass, r.difference);
    for variant in 1..=2 {
        let m = late_modification(1.0, 0.1, variant)?;
        println!(
            "variant {variant}: early mass {:.1e}, change {:.1e}",
            early_mass(&m, 1.0),
            causality_difference(&d, &m, 1.0)?
        );
    }
    Ok(())
}
