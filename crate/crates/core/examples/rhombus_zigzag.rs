//! Zigzag rhombi for the square tension: the deficit decays like `θ^½` while
//! `β*` stays large, so no power of `β*` controls `δ`.

use wulffkit::experiments::strictly_decreasing;
use wulffkit::experiments::suites::example61;

fn main() -> wulffkit::Result<()> {
    let ex = example61(1e-4, 1e-2, 8, 32)?;
    println!(
        "{:>10} {:>14} {:>14} {:>10} {:>10}",
        "theta", "delta", "closed form", "beta*^2", "Phi"
    );
    for r in &ex.rows {
        println!(
            "{:>10.2e} {:>14.6e} {:>14.6e} {:>10.4} {:>10.6}",
            r.theta, r.delta, r.closed_form_delta, r.beta_star_sq, r.phi
        );
    }
    println!(
        "delta ~ theta^{:.4} (r2 {:.6})",
        ex.delta_fit.slope, ex.delta_fit.r2
    );
    let ratios = ex.ratios(8.0);
    // ratios are listed for increasing θ; they should shrink as θ → 0
    let rev: Vec<f64> = ratios.iter().rev().copied().collect();
    println!(
        "delta / beta*^8 decreasing as theta -> 0: {}",
        strictly_decreasing(&rev)
    );
    Ok(())
}
