//! Integrates the free heat kernel symbol over the named contours and checks
//! the deformation from the real line onto gamma: between the two the
//! kernel decays in both `x` and `t`.

use std::f64::consts::PI;

use num_complex::Complex64;
use utmq::contour::{make_contour, ContourName};
use utmq::quad::{integrate, Decay};

fn main() -> utmq::Result<()> {
    let (x, t) = (0.7, 0.3);
    let kernel = |lam: Complex64| (Complex64::i() * lam * x - lam * lam * t).exp();
    let exact = 2.0 * PI * (-x * x / (4.0 * t)).exp() / (4.0 * PI * t).sqrt();
    for name in [ContourName::RealLine, ContourName::Gamma] {
        let c = make_contour(name)?;
        let q = integrate(&kernel, &c, Decay::new(x, t, 0.0), 1e-12)?;
        println!("{name:>10}: {:.15} (err est {:.1e}, {} nodes)", q.value.re, q.err_est, q.nodes_used);
    }
    println!("     exact: {exact:.15}");
    println!("gamma1 pieces: {}", make_contour(ContourName::Gamma1)?.to_json());
    Ok(())
}
