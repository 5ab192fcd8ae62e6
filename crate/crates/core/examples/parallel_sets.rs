//! Parallel sets of crystalline Wulff shapes: moving the sides of `K` by
//! offsets `ε_i` changes the energy by exactly `-Σ ε_i |σ_i|` after volume
//! normalization.

use wulffkit::functionals::parallel_set;
use wulffkit::prelude::*;

fn main() -> wulffkit::Result<()> {
    let hexagon = SurfaceTension::crystalline_from(&[
        [1.0, 0.0],
        [0.5, 0.8660254037844386],
        [-0.5, 0.8660254037844386],
        [-1.0, 0.0],
        [-0.5, -0.8660254037844386],
        [0.5, -0.8660254037844386],
    ])?;
    for t in [SurfaceTension::l_one(), hexagon] {
        let k = t.wulff_shape(0)?;
        println!("{}", t.label());
        for offsets in [
            [0.1, 0.0, -0.05, 0.02, 0.0, 0.0],
            [0.0, 0.3, 0.0, 0.3, 0.1, -0.1],
        ] {
            let h: Vec<f64> = k
                .edges
                .iter()
                .zip(offsets)
                .map(|(e, o)| e.support + o)
                .collect();
            let ps = parallel_set(&k, &h)?;
            let id = &ps.identities;
            println!(
                "  delta {:.6e}  2|K|delta {:.15}  -sum eps|sigma| {:.15}  holds {}",
                id.deficit, id.two_k_delta, id.minus_eps_sigma, id.holds
            );
        }
    }
    Ok(())
}
