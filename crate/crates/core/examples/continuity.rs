//! Solution seminorms along scaled and shrinking data sequences.

use utmq::lab::continuity_experiment;
use utmq::oracle::odd_gaussian;
use utmq::spaces::GridSpec;

fn main() -> utmq::Result<()> {
    let r = continuity_experiment(&odd_gaussian(), &[1.0, 2.0, 4.0, 8.0], &[1, 2], &GridSpec::coarse())?;
    for (s, row) in r.scales.iter().zip(&r.seminorm_values) {
        println!("s = {s}: lambda_n(Phi(d/s)) = {row:?}");
    }
    println!("ratios: {:?}", r.ratios);
    println!("largest deviation from 1/s: {:.1e}", r.scaling_defect);
    println!("width sequence: {:?} decreasing: {}", r.width_values, r.width_decreasing);
    Ok(())
}
