use crate::error::{Result, WulffError};
use crate::Vec2;

use super::{signed_area, Polygon};

/// Sutherland–Hodgman step: keep `{x : n.x <= h}`.
pub fn clip_halfplane(pts: &[Vec2], n: Vec2, h: f64) -> Vec<Vec2> {
    let mut out = Vec::with_capacity(pts.len() + 2);
    let m = pts.len();
    if m == 0 {
        return out;
    }
    for i in 0..m {
        let cur = pts[i];
        let next = pts[(i + 1) % m];
        let dc = n.dot(&cur) - h;
        let dn = n.dot(&next) - h;
        if dc <= 0.0 {
            out.push(cur);
        }
        if (dc < 0.0 && dn > 0.0) || (dc > 0.0 && dn < 0.0) {
            let t = dc / (dc - dn);
            out.push(cur + (next - cur) * t);
        }
    }
    out
}

/// Vertex chain of `P ∩ C` for convex `C`. For non-convex `P` the chain may
/// contain zero-width bridges; its shoelace area is still exact.
pub fn clipped_polygon(p: &Polygon, c: &Polygon) -> Result<Vec<Vec2>> {
    if !c.is_convex() {
        return Err(WulffError::InvalidPolygon("clipper must be convex".into()));
    }
    let mut pts = p.vertices().to_vec();
    for e in c.edges() {
        let h = e.normal.dot(&e.start);
        pts = clip_halfplane(&pts, e.normal, h);
        if pts.len() < 3 {
            return Ok(Vec::new());
        }
    }
    Ok(pts)
}

/// `|P ∩ C|` for convex `C`.
pub fn clip_convex(p: &Polygon, c: &Polygon) -> Result<f64> {
    let pts = clipped_polygon(p, c)?;
    Ok(signed_area(&pts).max(0.0))
}

/// `|P Δ C| = |P| + |C| - 2 |P ∩ C|` for convex `C`.
pub fn symmetric_difference_area(p: &Polygon, c: &Polygon) -> Result<f64> {
    let inter = clip_convex(p, c)?;
    Ok((p.area() + c.area() - 2.0 * inter).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Polygon {
        Polygon::from_points(&[[x0, y0], [x1, y0], [x1, y1], [x0, y1]]).unwrap()
    }

    fn diamond() -> Polygon {
        Polygon::from_points(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]).unwrap()
    }

    #[test]
    fn idempotent_and_overlap() {
        let sq = rect(0.0, 0.0, 1.0, 1.0);
        assert!((clip_convex(&sq, &sq).unwrap() - 1.0).abs() < 1e-15);
        let a = rect(0.0, 0.0, 2.0, 1.0);
        let b = rect(1.0, 0.0, 3.0, 1.0);
        assert!((clip_convex(&a, &b).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diamond_quadrant_against_monte_carlo() {
        let d = diamond();
        let sq = rect(0.0, 0.0, 1.0, 1.0);
        let exact = clip_convex(&d, &sq).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 2_000_000;
        let hits = (0..n)
            .filter(|_| {
                let x: f64 = rng.gen();
                let y: f64 = rng.gen();
                x + y <= 1.0
            })
            .count();
        let mc = hits as f64 / n as f64;
        assert!((exact - 0.5).abs() < 1e-15);
        assert!((mc - exact).abs() < 1e-3);
    }

    #[test]
    fn symmetric_differences() {
        let sq = rect(0.0, 0.0, 1.0, 1.0);
        assert!(symmetric_difference_area(&sq, &sq).unwrap().abs() < 1e-15);
        let far = rect(5.0, 5.0, 6.0, 6.0);
        assert!((symmetric_difference_area(&sq, &far).unwrap() - 2.0).abs() < 1e-15);
        let slab = rect(-2.0, -0.5, 2.0, 0.5);
        let k = rect(-1.0, -1.0, 1.0, 1.0);
        assert!((symmetric_difference_area(&slab, &k).unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn non_convex_subject() {
        // U shape: [0,3]x[0,2] minus [1,2]x[1,2]
        let u = Polygon::from_points(&[
            [0.0, 0.0],
            [3.0, 0.0],
            [3.0, 2.0],
            [2.0, 2.0],
            [2.0, 1.0],
            [1.0, 1.0],
            [1.0, 2.0],
            [0.0, 2.0],
        ])
        .unwrap();
        let top = rect(-1.0, 1.5, 4.0, 3.0);
        assert!((clip_convex(&u, &top).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn non_convex_clipper_rejected() {
        let u = Polygon::from_points(&[
            [0.0, 0.0],
            [3.0, 0.0],
            [3.0, 2.0],
            [2.0, 2.0],
            [2.0, 1.0],
            [1.0, 1.0],
            [1.0, 2.0],
            [0.0, 2.0],
        ])
        .unwrap();
        assert!(clip_convex(&u, &u).is_err());
    }

    #[test]
    fn intersection_bounded_by_areas() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = rect(
                rng.gen_range(-1.0..0.0),
                rng.gen_range(-1.0..0.0),
                rng.gen_range(0.1..1.0),
                rng.gen_range(0.1..1.0),
            );
            let b = rect(
                rng.gen_range(-1.0..0.0),
                rng.gen_range(-1.0..0.0),
                rng.gen_range(0.1..1.0),
                rng.gen_range(0.1..1.0),
            );
            let i = clip_convex(&a, &b).unwrap();
            assert!(i <= a.area().min(b.area()) + 1e-14);
        }
    }
}
