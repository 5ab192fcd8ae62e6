//! The fan formula for `∫_P dx / f*(x - y)` checked against the adaptive
//! triangulation oracle.

use wulffkit::polygeom::gauge_inverse_integral;
use wulffkit::polygeom::oracle::gauge_inverse_integral_oracle;
use wulffkit::prelude::*;

fn main() -> wulffkit::Result<()> {
    // a non-convex L-shaped polygon
    let p = Polygon::from_points(&[
        [0.0, 0.0],
        [2.0, 0.0],
        [2.0, 1.0],
        [1.0, 1.0],
        [1.0, 2.0],
        [0.0, 2.0],
    ])?;
    let tensions = [
        SurfaceTension::l_one(),
        SurfaceTension::lp(3.0)?,
        SurfaceTension::Euclidean,
    ];
    let centers = [
        Vec2::new(0.5, 0.5),
        Vec2::new(1.5, 1.5),
        Vec2::new(1.0, 0.5),
    ];
    println!(
        "{:<28} {:>12} {:>22} {:>22} {:>10}",
        "tension", "y", "fan", "oracle", "rel diff"
    );
    for t in &tensions {
        for y in centers {
            let fan = gauge_inverse_integral(&p, t, y)?;
            let oracle = gauge_inverse_integral_oracle(&p, t, y, 1e-9)?;
            println!(
                "{:<28} ({:.1}, {:.1}) {:>22.15} {:>22.15} {:>10.2e}",
                t.label(),
                y.x,
                y.y,
                fan.value,
                oracle,
                ((fan.value - oracle) / oracle).abs()
            );
        }
    }
    Ok(())
}
