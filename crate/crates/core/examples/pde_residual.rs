//! Residual of the heat equation with derivatives taken on the integrand and
//! by central differences.

use utmq::datafun::DatumTriple;
use utmq::ops::SolutionField;
use utmq::oracle::{residual, OracleConfig};

fn main() -> utmq::Result<()> {
    let text = r#"{
        "u": [{ "c": 1.0, "a": 1.0 }],
        "g": [{ "c": 0.5, "m": 1, "b": 1.0, "phi": 2.0 }],
        "f": [{ "spatial": [{ "c": 1.0, "b": 1.0 }], "temporal": [{ "c": 1.0, "b": 1.0 }] }]
    }"#;
    let field = SolutionField::new(DatumTriple::from_json(text)?);
    let cfg = OracleConfig::default();
    for (x, t) in [(0.2, 0.2), (1.0, 0.5), (3.0, 1.5)] {
        let r = residual(&field, x, t, &cfg)?;
        println!("({x}, {t}): analytic {:.2e}  finite difference {:.2e}", r.analytic, r.finite_difference);
    }
    Ok(())
}
