//! The ℓᵖ ball with its poles replaced by small cones. Deficit and `β*`
//! follow powers of the cone radius, and the ratio in the mixed inequality
//! stays within a bounded range.

use wulffkit::experiments::log_space;
use wulffkit::experiments::suites::{example62, mixed_inequality};

fn main() -> wulffkit::Result<()> {
    let p = 4.0;
    let ex = example62(p, 0.02, 0.2, 6)?;
    println!("p = {p}, q = {:.4}", ex.q);
    println!("{:>8} {:>7} {:>14} {:>14}", "r", "nodes", "delta", "beta*");
    for r in &ex.rows {
        println!(
            "{:>8.4} {:>7} {:>14.6e} {:>14.6e}",
            r.r, r.nodes, r.delta, r.beta_star
        );
    }
    println!(
        "delta ~ r^{:.4} (q + 1 = {:.4})",
        ex.delta_fit.slope,
        ex.q + 1.0
    );
    println!(
        "beta* ~ r^{:.4} (q - 1/2 = {:.4})",
        ex.beta_star_fit.slope,
        ex.q - 0.5
    );

    let rows = mixed_inequality(p, &log_space(0.03, 0.15, 4)?)?;
    println!("{:>8} {:>14} {:>14} {:>10}", "r", "delta", "beta", "C");
    for r in &rows {
        println!(
            "{:>8.4} {:>14.6e} {:>14.6e} {:>10.5}",
            r.r, r.delta, r.beta, r.constant
        );
    }
    Ok(())
}
