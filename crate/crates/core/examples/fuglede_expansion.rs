//! Second-order expansion of the energy around an ellipsoidal Wulff shape,
//! and the ratio `‖u‖²_{H¹} / δ` for small random perturbations.

use wulffkit::elliptic::{boundary_param, expansion_check, second_variation};
use wulffkit::experiments::suites::fuglede_stability;
use wulffkit::prelude::*;

fn main() -> wulffkit::Result<()> {
    let circle = boundary_param(&SurfaceTension::Euclidean, 8192)?;
    for k in 1..=6 {
        let u = circle.sample(|t| (k as f64 * t).cos());
        let b = second_variation(&circle, &u)?;
        let exact = 0.5 * std::f64::consts::PI * ((k * k) as f64 - 1.0);
        println!("circle  B(cos {k}t) = {b:.10}  expected {exact:.10}");
    }

    let t = SurfaceTension::diagonal(4.0, 1.0)?;
    let b = boundary_param(&t, 8192)?;
    let u = b.sample(|s| (2.0 * s).cos());
    let ex = expansion_check(&b, &u, &[0.01, 0.02, 0.04, 0.07, 0.1])?;
    println!("ellipse diag(4, 1), u = cos 2t");
    for r in &ex.rows {
        println!(
            "  eps {:.3}  gap {:.6e}  B/2 term {:.6e}  remainder {:.3e}",
            r.eps, r.energy_gap, r.second_variation, r.remainder
        );
    }
    println!("  remainder ~ eps^{:.3}", ex.fit.slope);

    for c1 in [0.05, 0.025] {
        let s = fuglede_stability(&t, 2048, 40, c1, 1)?;
        println!("C1 = {c1}: max |u|^2_H1 / delta = {:.4}", s.max_ratio);
    }
    Ok(())
}
