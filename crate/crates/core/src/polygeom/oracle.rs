//! Independent area quadrature for `∫_P g(x) dx`, used to cross-check the
//! fan formula.
//!
//! `P` is ear-clipped into triangles, every triangle is cut along the rays
//! from `y` in the given directions (where the integrand has kinks), and the
//! pieces are refined adaptively with the 7-point degree-5 rule. The error
//! of a triangle is estimated as the difference between its rule and the sum
//! over its four midpoint children; the worst triangle is split first.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::anisotropy::SurfaceTension;
use crate::error::{Result, WulffError};
use crate::{cross, Vec2};

use super::gauge_integral::check_center;
use super::{clip_halfplane, Polygon};

/// Leaf-triangle budget for the adaptive refinement.
pub const MAX_TRIANGLES: usize = 400_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: f64,
    pub error_estimate: f64,
    pub triangles: usize,
}

/// Split a simple CCW polygon into triangles.
pub fn triangulate(p: &Polygon) -> Vec<[Vec2; 3]> {
    let mut idx: Vec<usize> = (0..p.len()).collect();
    let v = p.vertices();
    let mut tris = Vec::with_capacity(p.len().saturating_sub(2));
    let mut guard = 0usize;
    let mut i = 0usize;
    while idx.len() > 3 {
        let n = idx.len();
        let (ia, ib, ic) = (idx[(i + n - 1) % n], idx[i % n], idx[(i + 1) % n]);
        let (a, b, c) = (v[ia], v[ib], v[ic]);
        let turn = cross(b - a, c - b);
        let is_ear = turn > 0.0
            && idx
                .iter()
                .filter(|&&j| j != ia && j != ib && j != ic)
                .all(|&j| !in_triangle(v[j], a, b, c));
        if is_ear || turn == 0.0 || guard > 2 * n {
            if turn != 0.0 {
                tris.push([a, b, c]);
            }
            idx.remove(i % n);
            guard = 0;
            i = i.saturating_sub(1);
        } else {
            i = (i + 1) % n;
            guard += 1;
        }
    }
    tris.push([v[idx[0]], v[idx[1]], v[idx[2]]]);
    tris
}

fn in_triangle(p: Vec2, a: Vec2, b: Vec2, c: Vec2) -> bool {
    cross(b - a, p - a) >= 0.0 && cross(c - b, p - b) >= 0.0 && cross(a - c, p - c) >= 0.0
}

fn rule7<G: Fn(Vec2) -> f64>(g: &G, t: &[Vec2; 3]) -> f64 {
    const S15: f64 = 3.872_983_346_207_417;
    let a1 = (6.0 - S15) / 21.0;
    let a2 = (6.0 + S15) / 21.0;
    let w0 = 9.0 / 40.0;
    let w1 = (155.0 - S15) / 1200.0;
    let w2 = (155.0 + S15) / 1200.0;
    let [p, q, r] = *t;
    let at = |l0: f64, l1: f64| g(p * l0 + q * l1 + r * (1.0 - l0 - l1));
    let area = 0.5 * cross(q - p, r - p).abs();
    let c = 1.0 / 3.0;
    let b1 = 1.0 - 2.0 * a1;
    let b2 = 1.0 - 2.0 * a2;
    let s = w0 * at(c, c)
        + w1 * (at(a1, a1) + at(a1, b1) + at(b1, a1))
        + w2 * (at(a2, a2) + at(a2, b2) + at(b2, a2));
    area * s
}

fn children(t: &[Vec2; 3]) -> [[Vec2; 3]; 4] {
    let [a, b, c] = *t;
    let (ab, bc, ca) = ((a + b) * 0.5, (b + c) * 0.5, (c + a) * 0.5);
    [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]
}

struct Cell {
    tri: [Vec2; 3],
    coarse: f64,
    fine: f64,
    kids: [f64; 4],
}

impl Cell {
    fn new<G: Fn(Vec2) -> f64>(g: &G, tri: [Vec2; 3], coarse: f64) -> Cell {
        let ch = children(&tri);
        let kids = [
            rule7(g, &ch[0]),
            rule7(g, &ch[1]),
            rule7(g, &ch[2]),
            rule7(g, &ch[3]),
        ];
        Cell {
            tri,
            coarse,
            fine: kids.iter().sum(),
            kids,
        }
    }

    fn err(&self) -> f64 {
        (self.coarse - self.fine).abs()
    }
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.err() == other.err()
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err().total_cmp(&other.err())
    }
}

/// Cut triangles along rays from `y`. `dirs` must be sorted by angle with
/// consecutive gaps below π.
fn split_by_rays(tris: Vec<[Vec2; 3]>, y: Vec2, dirs: &[Vec2]) -> Vec<[Vec2; 3]> {
    let mut out = Vec::new();
    let k = dirs.len();
    for t in tris {
        for i in 0..k {
            let (v, w) = (dirs[i], dirs[(i + 1) % k]);
            let n1 = Vec2::new(v.y, -v.x);
            let n2 = Vec2::new(-w.y, w.x);
            let piece = clip_halfplane(&t, n1, n1.dot(&y));
            let piece = clip_halfplane(&piece, n2, n2.dot(&y));
            if piece.len() < 3 {
                continue;
            }
            // fan from the vertex nearest y so y never sits inside an edge
            let s = (0..piece.len())
                .min_by(|&a, &b| (piece[a] - y).norm().total_cmp(&(piece[b] - y).norm()))
                .unwrap();
            for j in 1..piece.len() - 1 {
                let tri = [
                    piece[s],
                    piece[(s + j) % piece.len()],
                    piece[(s + j + 1) % piece.len()],
                ];
                if cross(tri[1] - tri[0], tri[2] - tri[0]).abs() > 0.0 {
                    out.push(tri);
                }
            }
        }
    }
    out
}

fn sorted_directions(dirs: &[Vec2]) -> Vec<Vec2> {
    let mut d: Vec<Vec2> = dirs.iter().map(|v| v / v.norm()).collect();
    d.sort_by(|a, b| a.y.atan2(a.x).total_cmp(&b.y.atan2(b.x)));
    d.dedup_by(|a, b| (*a - *b).norm() < 1e-14);
    let gaps_ok = d.len() >= 3 && (0..d.len()).all(|i| cross(d[i], d[(i + 1) % d.len()]) > 0.0);
    if gaps_ok {
        d
    } else {
        // three rays at 120 degrees make y a vertex of every piece it touches
        (0..3)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / 3.0 + 0.1;
                Vec2::new(a.cos(), a.sin())
            })
            .collect()
    }
}

/// Adaptive area integral of `g` over `p`, refined around `y` and along rays
/// from `y` in `dirs`, to relative accuracy `tol`.
pub fn integrate_polygon<G: Fn(Vec2) -> f64>(
    p: &Polygon,
    y: Vec2,
    dirs: &[Vec2],
    g: G,
    tol: f64,
) -> Result<OracleValue> {
    let dirs = sorted_directions(dirs);
    let tris = split_by_rays(triangulate(p), y, &dirs);
    let mut heap = BinaryHeap::new();
    let (mut total, mut err) = (0.0, 0.0);
    for t in tris {
        let c = Cell::new(&g, t, rule7(&g, &t));
        total += c.fine;
        err += c.err();
        heap.push(c);
    }
    while err > tol * total.abs() {
        if heap.len() >= MAX_TRIANGLES {
            return Err(WulffError::NoConvergence(format!(
                "area quadrature: {} triangles, estimated relative error {:.2e}",
                heap.len(),
                err / total.abs()
            )));
        }
        let c = heap.pop().unwrap();
        total -= c.fine;
        err -= c.err();
        for (t, q) in children(&c.tri).into_iter().zip(c.kids) {
            let k = Cell::new(&g, t, q);
            total += k.fine;
            err += k.err();
            heap.push(k);
        }
        if heap.len() % 4096 == 0 {
            // resum to keep drift out of the running totals
            total = heap.iter().map(|c| c.fine).sum();
            err = heap.iter().map(|c| c.err()).sum();
        }
    }
    Ok(OracleValue {
        value: total,
        error_estimate: err,
        triangles: heap.len(),
    })
}

/// `∫_P dx / f*(x - y)` by adaptive area quadrature.
pub fn gauge_inverse_integral_oracle(
    p: &Polygon,
    t: &SurfaceTension,
    y: Vec2,
    tol: f64,
) -> Result<f64> {
    check_center(p, y)?;
    let g = |x: Vec2| {
        let s = t.gauge(x - y);
        if s > 0.0 {
            1.0 / s
        } else {
            0.0
        }
    };
    Ok(integrate_polygon(p, y, &t.kink_directions(), g, tol)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangulation_covers_area() {
        let u = Polygon::from_points(&[
            [0.0, 0.0],
            [3.0, 0.0],
            [3.0, 3.0],
            [2.0, 3.0],
            [2.0, 1.0],
            [1.0, 1.0],
            [1.0, 3.0],
            [0.0, 3.0],
        ])
        .unwrap();
        let tris = triangulate(&u);
        assert_eq!(tris.len(), 6);
        let a: f64 = tris
            .iter()
            .map(|t| 0.5 * cross(t[1] - t[0], t[2] - t[0]))
            .sum();
        assert!((a - u.area()).abs() < 1e-14);
        assert!(tris.iter().all(|t| cross(t[1] - t[0], t[2] - t[0]) > 0.0));
    }

    #[test]
    fn rule_is_degree_five() {
        let t = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ];
        // ∫ x^2 y^3 over the unit simplex = 2! 3! / 7! = 1/420
        let v = rule7(&|p: Vec2| p.x * p.x * p.y.powi(3), &t);
        assert!((v - 1.0 / 420.0).abs() < 1e-15);
    }

    #[test]
    fn wulff_shape_gives_twice_area() {
        let t = SurfaceTension::l_infinity();
        let k = t.wulff_shape(0).unwrap();
        let v = gauge_inverse_integral_oracle(&k.polygon, &t, Vec2::zeros(), 1e-8).unwrap();
        assert!((v - 4.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn far_away_mean_value() {
        let p = Polygon::from_points(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let y = Vec2::new(-100.0 * p.diameter(), 3.0);
        let t = SurfaceTension::lp(3.0).unwrap();
        let v = gauge_inverse_integral_oracle(&p, &t, y, 1e-8).unwrap();
        let approx = p.area() / t.gauge(p.barycenter() - y);
        assert!(((v - approx) / approx).abs() < 0.05);
    }

    #[test]
    fn budget_exhaustion_reports_no_convergence() {
        let p = Polygon::from_points(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        // 1/|x|^2 is not integrable at a corner: refinement never settles
        let r = integrate_polygon(
            &p,
            Vec2::new(0.0, 0.0),
            &[],
            |x: Vec2| 1.0 / x.norm_squared().max(1e-300),
            1e-12,
        );
        assert!(matches!(r, Err(WulffError::NoConvergence(_))));
    }
}
