//! Wulff shapes of the built-in tension families and their basic data.
//!
//! Run with `cargo run --example wulff_shapes`.

use wulffkit::prelude::*;
use wulffkit::Mat2;

fn main() -> wulffkit::Result<()> {
    let tensions = vec![
        SurfaceTension::l_one(),
        SurfaceTension::l_infinity(),
        SurfaceTension::crystalline_from(&[
            [1.0, 0.0],
            [0.5, 0.866],
            [-0.5, 0.866],
            [-1.0, 0.0],
            [-0.5, -0.866],
            [0.5, -0.866],
        ])?,
        SurfaceTension::lp(4.0)?,
        SurfaceTension::quadratic(Mat2::new(2.0, 0.5, 0.5, 1.0))?,
        SurfaceTension::Euclidean,
    ];
    for t in &tensions {
        let k = t.wulff_shape(512)?;
        let b = t.bounds();
        println!("{}", t.label());
        println!(
            "  |K| = {:.12}  (polygon {:.12}, {} vertices)",
            t.wulff_area(),
            k.area(),
            k.vertices().len()
        );
        println!("  m = {:.6}  M = {:.6}", b.m, b.big_m);
        // every vertex of K has gauge one
        let worst = k
            .vertices()
            .iter()
            .map(|v| (t.gauge(*v) - 1.0).abs())
            .fold(0.0, f64::max);
        println!("  max |f*(v) - 1| over vertices = {worst:.2e}");
    }

    // A linear change of variables moves K to L(K).
    let l = Mat2::new(1.5, 0.3, 0.0, 0.8);
    let sq = SurfaceTension::l_one();
    let mapped = sq.affine_map(&l)?;
    println!(
        "square under L: area {:.6} -> {:.6} (det L = {:.3})",
        sq.wulff_area(),
        mapped.wulff_area(),
        l.determinant()
    );
    Ok(())
}
