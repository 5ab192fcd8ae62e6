//! Deficit and `β` do not change when both the set and the Wulff shape are
//! moved by the same linear map.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wulffkit::experiments::generators::{random_crystalline, random_star_polygon};
use wulffkit::functionals::{beta, deficit};
use wulffkit::prelude::*;
use wulffkit::Mat2;

fn main() -> wulffkit::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let t = random_crystalline(&mut rng, 6);
        let p = random_star_polygon(&mut rng, 9, 0.5, 1.5);
        let l = Mat2::new(
            rng.gen_range(0.5..2.0),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(0.5..2.0),
        );
        let lt = t.affine_map(&l)?;
        let lp = p.affine_map(&l, Vec2::zeros())?;
        let (d0, d1) = (deficit(&p, &t), deficit(&lp, &lt));
        let (b0, b1) = (beta(&p, &t)?.beta, beta(&lp, &lt)?.beta);
        println!(
            "det L {:.3}  delta {d0:.10} vs {d1:.10}  beta {b0:.10} vs {b1:.10}",
            l.determinant()
        );
    }
    Ok(())
}
