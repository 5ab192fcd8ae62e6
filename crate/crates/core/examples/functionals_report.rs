//! Full report of the isoperimetric functionals for a polygon read from JSON
//! files, or for a built-in hexagon and tension when no arguments are given.
//!
//! `cargo run --example functionals_report -- tension.json polygon.json`

use std::path::Path;

use wulffkit::io::{read_polygon, read_tension};
use wulffkit::prelude::*;

fn main() -> wulffkit::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (t, p) = if args.len() == 2 {
        (
            read_tension(Path::new(&args[0]))?,
            read_polygon(Path::new(&args[1]))?,
        )
    } else {
        let t = SurfaceTension::lp(3.0)?;
        let p = Polygon::from_points(&[
            [1.2, 0.0],
            [0.6, 1.0],
            [-0.6, 1.1],
            [-1.2, 0.0],
            [-0.6, -0.9],
            [0.6, -1.0],
        ])?;
        (t, p)
    };
    let r = functionals::analyze(&p, &t, &FunctionalOptions::default())?;
    println!("tension  {}", t.label());
    println!("Phi      {:.12}", r.phi);
    println!("|E|      {:.12}", r.area);
    println!("delta    {:.6e}", r.deficit);
    println!("alpha    {:.6e}", r.asymmetry);
    println!(
        "gamma    {:.12} at ({:.6}, {:.6})",
        r.gamma, r.center.x, r.center.y
    );
    println!(
        "beta     {:.6e} (boundary form {:.6e})",
        r.beta, r.beta_boundary
    );
    println!("beta*    {:.6e}", r.beta_star);
    println!("beta^2 - delta = {:.3e}", r.beta * r.beta - r.deficit);
    println!();
    println!(
        "{}",
        serde_json::to_string_pretty(&r).expect("report serializes")
    );
    Ok(())
}
