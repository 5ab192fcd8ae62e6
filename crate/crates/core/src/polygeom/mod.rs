//! Simple planar polygons: validation, measures, convex clipping, affine
//! maps, and the gauge-weighted area integral used by `gamma`.

mod clip;
pub(crate) mod gauge_integral;
pub mod oracle;

pub use clip::{clip_convex, clip_halfplane, clipped_polygon, symmetric_difference_area};
pub use gauge_integral::{gauge_inverse_integral, FanIntegral};

use serde::Serialize;

use crate::error::{Result, WulffError};
use crate::{cross, right_perp, Mat2, Vec2};

/// One directed edge of a CCW polygon.
#[derive(Debug, Clone, Copy)]
pub struct Edge {
    pub start: Vec2,
    pub end: Vec2,
    /// Outward unit normal.
    pub normal: Vec2,
    pub length: f64,
}

impl Edge {
    pub fn direction(&self) -> Vec2 {
        self.end - self.start
    }
}

/// Area, perimeter, and centroid of a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Measures {
    pub area: f64,
    pub perimeter: f64,
    #[serde(with = "crate::io::vec2_serde")]
    pub barycenter: Vec2,
}

/// A simple polygon with counterclockwise vertex order. The closing edge
/// from the last vertex back to the first is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

impl Polygon {
    /// Validate and build. Clockwise input is reversed.
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        Self::new_oriented(vertices).map(|(p, _)| p)
    }

    /// Like [`Polygon::new`], also reporting whether the input was reversed.
    pub fn new_oriented(mut vertices: Vec<Vec2>) -> Result<(Self, bool)> {
        if vertices.len() < 3 {
            return Err(WulffError::InvalidPolygon(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices
            .iter()
            .any(|v| !v.x.is_finite() || !v.y.is_finite())
        {
            return Err(WulffError::InvalidPolygon("non-finite vertex".into()));
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(WulffError::InvalidPolygon(format!(
                    "zero-length edge at vertex {i}"
                )));
            }
        }
        let area = signed_area(&vertices);
        if area == 0.0 || !area.is_finite() {
            return Err(WulffError::InvalidPolygon("zero signed area".into()));
        }
        let reversed = area < 0.0;
        if reversed {
            vertices.reverse();
        }
        if let Some((i, j)) = find_self_intersection(&vertices) {
            return Err(WulffError::InvalidPolygon(format!(
                "edges {i} and {j} intersect"
            )));
        }
        Ok((Polygon { vertices }, reversed))
    }

    /// Skip validation; the caller guarantees a simple CCW polygon.
    pub(crate) fn from_ccw_unchecked(vertices: Vec<Vec2>) -> Self {
        debug_assert!(vertices.len() >= 3);
        Polygon { vertices }
    }

    pub fn from_points(points: &[[f64; 2]]) -> Result<Self> {
        Self::new(points.iter().map(|p| Vec2::new(p[0], p[1])).collect())
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge(&self, i: usize) -> Edge {
        let n = self.vertices.len();
        let start = self.vertices[i];
        let end = self.vertices[(i + 1) % n];
        let d = end - start;
        let length = d.norm();
        Edge {
            start,
            end,
            normal: right_perp(d) / length,
            length,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|e| e.length).sum()
    }

    pub fn barycenter(&self) -> Vec2 {
        let n = self.vertices.len();
        // shift for conditioning
        let o = self.vertices[0];
        let mut a2 = 0.0;
        let mut c = Vec2::zeros();
        for i in 0..n {
            let p = self.vertices[i] - o;
            let q = self.vertices[(i + 1) % n] - o;
            let w = cross(p, q);
            a2 += w;
            c += (p + q) * w;
        }
        o + c / (3.0 * a2)
    }

    pub fn measures(&self) -> Measures {
        Measures {
            area: self.area(),
            perimeter: self.perimeter(),
            barycenter: self.barycenter(),
        }
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        let v = &self.vertices;
        if v.len() > 400 {
            // bounding-box diagonal is within a factor sqrt(2)
            let (lo, hi) = self.bounding_box();
            return (hi - lo).norm();
        }
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                d = d.max((v[i] - v[j]).norm());
            }
        }
        d
    }

    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let mut lo = self.vertices[0];
        let mut hi = lo;
        for v in &self.vertices {
            lo = lo.inf(v);
            hi = hi.sup(v);
        }
        (lo, hi)
    }

    pub fn translate(&self, t: Vec2) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|v| v + t).collect(),
        }
    }

    /// Dilation about the origin, `s > 0`.
    pub fn scale(&self, s: f64) -> Polygon {
        assert!(s > 0.0);
        Polygon {
            vertices: self.vertices.iter().map(|v| v * s).collect(),
        }
    }

    /// `x -> L x + t` for `det L > 0`.
    pub fn affine_map(&self, l: &Mat2<f64>, t: Vec2) -> Result<Polygon> {
        let det = l.determinant();
        if !(det > 0.0) || !det.is_finite() {
            return Err(WulffError::SingularMatrix);
        }
        Ok(Polygon {
            vertices: self.vertices.iter().map(|v| l * v + t).collect(),
        })
    }

    /// Even-odd point containment; boundary points may go either way.
    pub fn contains(&self, p: Vec2) -> bool {
        let v = &self.vertices;
        let n = v.len();
        let mut inside = false;
        let mut j = n - 1;
        for i in 0..n {
            let (a, b) = (v[i], v[j]);
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if p.x < x {
                    inside = !inside;
                }
            }
            j = i;
        }
        inside
    }

    pub fn is_convex(&self) -> bool {
        let v = &self.vertices;
        let n = v.len();
        (0..n).all(|i| {
            let a = v[i];
            let b = v[(i + 1) % n];
            let c = v[(i + 2) % n];
            cross(b - a, c - b) >= 0.0
        })
    }

    /// Index of a vertex within `tol` of `p`.
    pub fn vertex_near(&self, p: Vec2, tol: f64) -> Option<usize> {
        self.vertices.iter().position(|v| (v - p).norm() <= tol)
    }

    pub fn to_points(&self) -> Vec<[f64; 2]> {
        self.vertices.iter().map(|v| [v.x, v.y]).collect()
    }
}

/// Shoelace formula.
pub fn signed_area(v: &[Vec2]) -> f64 {
    let n = v.len();
    if n < 3 {
        return 0.0;
    }
    let o = v[0];
    let mut s = 0.0;
    for i in 1..n - 1 {
        s += cross(v[i] - o, v[i + 1] - o);
    }
    0.5 * s
}

fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    cross(b - a, c - a)
}

fn on_segment(a: Vec2, b: Vec2, p: Vec2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed segments `ab` and `cd` share a point.
pub(crate) fn segments_touch(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

/// First pair of non-adjacent edges that touch, or adjacent edges that fold
/// back onto each other. Sweeps edges in order of their left x-extent.
pub(crate) fn find_self_intersection(v: &[Vec2]) -> Option<(usize, usize)> {
    let n = v.len();
    let seg = |i: usize| (v[i], v[(i + 1) % n]);
    for i in 0..n {
        let (a, b) = seg(i);
        let c = v[(i + 2) % n];
        if cross(b - a, c - b) == 0.0 && (b - a).dot(&(c - b)) < 0.0 {
            return Some((i, (i + 1) % n));
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let xmin = |i: usize| {
        let (a, b) = seg(i);
        a.x.min(b.x)
    };
    order.sort_by(|&i, &j| xmin(i).total_cmp(&xmin(j)));
    let mut active: Vec<usize> = Vec::new();
    for &i in &order {
        let (a, b) = seg(i);
        let x0 = a.x.min(b.x);
        let (y0, y1) = (a.y.min(b.y), a.y.max(b.y));
        active.retain(|&j| {
            let (c, d) = seg(j);
            c.x.max(d.x) >= x0
        });
        for &j in &active {
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            if adjacent {
                continue;
            }
            let (c, d) = seg(j);
            if c.y.max(d.y) < y0 || c.y.min(d.y) > y1 {
                continue;
            }
            if segments_touch(a, b, c, d) {
                return Some((i.min(j), i.max(j)));
            }
        }
        active.push(i);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: &[[f64; 2]]) -> Polygon {
        Polygon::from_points(p).unwrap()
    }

    #[test]
    fn unit_square_measures() {
        let m = poly(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).measures();
        assert_eq!(m.area, 1.0);
        assert_eq!(m.perimeter, 4.0);
        assert!((m.barycenter - Vec2::new(0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn diamond_measures() {
        let m = poly(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]).measures();
        assert!((m.area - 2.0).abs() < 1e-15);
        assert!((m.perimeter - 4.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!(m.barycenter.norm() < 1e-15);
    }

    #[test]
    fn triangle_measures() {
        let m = poly(&[[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]]).measures();
        assert!((m.area - 2.0).abs() < 1e-15);
        assert!((m.perimeter - (4.0 + 2.0 * 2f64.sqrt())).abs() < 1e-14);
        assert!((m.barycenter - Vec2::new(2.0 / 3.0, 2.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn clockwise_input_is_reversed() {
        let (p, rev) = Polygon::new_oriented(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 0.0),
        ])
        .unwrap();
        assert!(rev);
        assert!(p.area() > 0.0);
    }

    #[test]
    fn rejects_bowtie_and_short_input() {
        let bowtie = Polygon::from_points(&[[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]]);
        assert!(matches!(bowtie, Err(WulffError::InvalidPolygon(_))));
        assert!(matches!(
            Polygon::from_points(&[[0.0, 0.0], [1.0, 1.0]]),
            Err(WulffError::InvalidPolygon(_))
        ));
        // touching at a vertex (figure eight through a shared point)
        let pinch = Polygon::from_points(&[
            [0.0, 0.0],
            [2.0, 0.0],
            [1.0, 1.0],
            [2.0, 2.0],
            [0.0, 2.0],
            [1.0, 1.0],
        ]);
        assert!(pinch.is_err());
    }

    #[test]
    fn normals_close_up() {
        let p = poly(&[[0.0, 0.0], [3.0, 0.0], [3.5, 2.0], [1.0, 1.0], [-0.5, 2.5]]);
        let s: Vec2 = p.edges().map(|e| e.normal * e.length).sum();
        assert!(s.norm() < 1e-12);
    }

    #[test]
    fn containment() {
        let p = poly(&[[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [1.0, 0.5], [0.0, 2.0]]);
        assert!(p.contains(Vec2::new(0.5, 0.3)));
        assert!(!p.contains(Vec2::new(1.0, 1.5)));
        assert!(!p.is_convex());
    }
}
