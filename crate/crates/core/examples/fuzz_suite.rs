//! Randomized invariant checks over all tension families.

use wulffkit::experiments::suites::fuzz;

fn main() -> wulffkit::Result<()> {
    let s = fuzz(42, 64)?;
    for c in &s.checks {
        println!(
            "{:<30} cases {:>4}  violations {}  worst margin {:.3e}",
            c.name, c.cases, c.violations, c.worst_margin
        );
    }
    println!("passed: {}", s.passed);
    Ok(())
}
