//! Surface tensions `f`, their gauges `f*`, and Wulff shapes.
//!
//! A tension is positively 1-homogeneous, convex, and positive away from the
//! origin. Its Wulff shape `K = {x : x.v < f(v) for all unit v}` is the unit
//! ball of the gauge `f*(x) = sup {x.v : f(v) <= 1}`, and `f` is the support
//! function of `K`.

use std::f64::consts::PI;

use crate::error::{Result, WulffError};
use crate::optimize::golden_section;
use crate::polygeom::Polygon;
use crate::{cross, Mat2, Vec2};

/// Default polygon resolution for Wulff shapes of smooth tensions.
pub const DEFAULT_WULFF_RESOLUTION: usize = 2048;

/// Angular tolerance used to detect a radial projection onto a vertex of K.
pub const VERTEX_ANGLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WulffEdge {
    /// Outward unit normal `n_k`.
    pub normal: Vec2,
    /// Support distance `H_k = f(n_k)`.
    pub support: f64,
    pub length: f64,
}

/// Convex polygonal Wulff shape, exact for crystalline tensions and an
/// inscribed approximation otherwise. `edges[k]` runs from vertex `k` to
/// vertex `k + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WulffShape {
    pub polygon: Polygon,
    pub edges: Vec<WulffEdge>,
    pub exact: bool,
}

impl WulffShape {
    fn from_convex_vertices(vertices: Vec<Vec2>, exact: bool) -> Result<Self> {
        let polygon = Polygon::new(vertices)?;
        let edges: Vec<WulffEdge> = polygon
            .edges()
            .map(|e| WulffEdge {
                normal: e.normal,
                support: e.normal.dot(&e.start),
                length: e.length,
            })
            .collect();
        if let Some(k) = edges.iter().position(|e| !(e.support > 0.0)) {
            return Err(WulffError::DegenerateTension(format!(
                "origin is not interior to the Wulff shape (edge {k} has support {:.3e})",
                edges[k].support
            )));
        }
        Ok(WulffShape {
            polygon,
            edges,
            exact,
        })
    }

    pub fn vertices(&self) -> &[Vec2] {
        self.polygon.vertices()
    }

    pub fn area(&self) -> f64 {
        self.polygon.area()
    }

    /// Polygonal gauge `max_k (x.n_k)/H_k`.
    pub fn gauge(&self, x: Vec2) -> f64 {
        self.edges
            .iter()
            .map(|e| x.dot(&e.normal) / e.support)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Index of the edge hit by the ray through `x`. A ray through a vertex
    /// maps to the edge that starts there (the counterclockwise neighbour).
    pub fn sector(&self, x: Vec2) -> usize {
        let v = self.vertices();
        let n = v.len();
        for k in 0..n {
            if cross(v[k], x) >= 0.0 && cross(x, v[(k + 1) % n]) > 0.0 {
                return k;
            }
        }
        // numerically ambiguous: pick the edge with the largest ratio
        (0..n)
            .max_by(|&i, &j| {
                let a = x.dot(&self.edges[i].normal) / self.edges[i].support;
                let b = x.dot(&self.edges[j].normal) / self.edges[j].support;
                a.total_cmp(&b)
            })
            .unwrap()
    }

    /// True if the direction of `x` is within `tol` radians of a vertex.
    pub fn near_vertex_direction(&self, x: Vec2, tol: f64) -> bool {
        let xn = x.norm();
        self.vertices().iter().any(|v| {
            let c = cross(x, *v) / (xn * v.norm());
            c.abs() < tol && x.dot(v) > 0.0
        })
    }

    /// `K -> r K + t`.
    pub fn scaled_translated(&self, r: f64, t: Vec2) -> Polygon {
        self.polygon.scale(r).translate(t)
    }
}

/// `m <= f(v) <= M` for unit `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensionBounds {
    pub m: f64,
    pub big_m: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crystal {
    points: Vec<Vec2>,
    wulff: WulffShape,
}

impl Crystal {
    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn wulff(&self) -> &WulffShape {
        &self.wulff
    }
}

/// A planar surface tension.
#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceTension {
    /// `f(v) = max_j x_j . v`; `K = conv{x_j}`.
    Crystalline(Crystal),
    /// `f = l^p`, `f* = l^q` with `1/p + 1/q = 1`.
    Lp {
        p: f64,
        q: f64,
    },
    /// `f(v) = sqrt(v' A v)`, `f*(x) = sqrt(x' A^-1 x)`; K is an ellipse.
    Quadratic {
        a: Mat2<f64>,
        a_inv: Mat2<f64>,
    },
    Euclidean,
}

impl SurfaceTension {
    pub fn crystalline(points: Vec<Vec2>) -> Result<Self> {
        if points.is_empty() {
            return Err(WulffError::DegenerateTension("empty point set".into()));
        }
        if points
            .iter()
            .any(|p| !(p.norm() > 0.0) || !p.x.is_finite() || !p.y.is_finite())
        {
            return Err(WulffError::DegenerateTension(
                "points must be finite and nonzero".into(),
            ));
        }
        let hull = convex_hull(&points);
        if hull.len() < 3 {
            return Err(WulffError::DegenerateTension(
                "convex hull is degenerate".into(),
            ));
        }
        let wulff = WulffShape::from_convex_vertices(hull, true)?;
        Ok(SurfaceTension::Crystalline(Crystal { points, wulff }))
    }

    pub fn crystalline_from(points: &[[f64; 2]]) -> Result<Self> {
        Self::crystalline(points.iter().map(|p| Vec2::new(p[0], p[1])).collect())
    }

    pub fn lp(p: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(WulffError::DegenerateTension(format!(
                "l^p needs 1 < p < inf, got {p}"
            )));
        }
        Ok(SurfaceTension::Lp {
            p,
            q: p / (p - 1.0),
        })
    }

    pub fn quadratic(a: Mat2<f64>) -> Result<Self> {
        let sym = (a[(0, 1)] - a[(1, 0)]).abs() <= 1e-12 * a.norm();
        let det = a.determinant();
        if !sym || !(a[(0, 0)] > 0.0) || !(det > 0.0) {
            return Err(WulffError::DegenerateTension(
                "quadratic tension needs a symmetric positive-definite matrix".into(),
            ));
        }
        let a = 0.5 * (a + a.transpose());
        let a_inv = a.try_inverse().ok_or(WulffError::SingularMatrix)?;
        Ok(SurfaceTension::Quadratic { a, a_inv })
    }

    /// `diag(a11, a22)`.
    pub fn diagonal(a11: f64, a22: f64) -> Result<Self> {
        Self::quadratic(Mat2::new(a11, 0.0, 0.0, a22))
    }

    /// `f = l^inf` (K is the l^1 diamond).
    pub fn l_infinity() -> Self {
        Self::crystalline_from(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]).unwrap()
    }

    /// `f = l^1` (K is the square `[-1, 1]^2`).
    pub fn l_one() -> Self {
        Self::crystalline_from(&[[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]).unwrap()
    }

    /// Crystalline tension whose Wulff shape is the given convex polygon.
    pub fn from_wulff_polygon(k: &Polygon) -> Result<Self> {
        Self::crystalline(k.vertices().to_vec())
    }

    pub fn is_crystalline(&self) -> bool {
        matches!(self, SurfaceTension::Crystalline(_))
    }

    pub fn as_crystal(&self) -> Option<&Crystal> {
        match self {
            SurfaceTension::Crystalline(c) => Some(c),
            _ => None,
        }
    }

    /// `f(v)`.
    pub fn tension(&self, v: Vec2) -> f64 {
        match self {
            SurfaceTension::Crystalline(c) => c
                .points
                .iter()
                .map(|x| x.dot(&v))
                .fold(f64::NEG_INFINITY, f64::max),
            SurfaceTension::Lp { p, .. } => lp_norm(v, *p),
            SurfaceTension::Quadratic { a, .. } => (v.dot(&(a * v))).max(0.0).sqrt(),
            SurfaceTension::Euclidean => v.norm(),
        }
    }

    /// `f*(x)`.
    pub fn gauge(&self, x: Vec2) -> f64 {
        match self {
            SurfaceTension::Crystalline(c) => c.wulff.gauge(x),
            SurfaceTension::Lp { q, .. } => lp_norm(x, *q),
            SurfaceTension::Quadratic { a_inv, .. } => (x.dot(&(a_inv * x))).max(0.0).sqrt(),
            SurfaceTension::Euclidean => x.norm(),
        }
    }

    /// `grad f(v)`: the point of `∂K` with outward normal `v`. For a
    /// crystalline tension this is a maximizing `x_j`.
    pub fn tension_gradient(&self, v: Vec2) -> Vec2 {
        match self {
            SurfaceTension::Crystalline(c) => *c
                .points
                .iter()
                .max_by(|a, b| a.dot(&v).total_cmp(&b.dot(&v)))
                .unwrap(),
            SurfaceTension::Lp { p, .. } => lp_gradient(v, *p),
            SurfaceTension::Quadratic { a, .. } => {
                let av = a * v;
                av / v.dot(&av).sqrt()
            }
            SurfaceTension::Euclidean => v / v.norm(),
        }
    }

    /// `grad f*(x) = ν_K(x/f*(x)) / f(ν_K(x/f*(x)))`. Fails with
    /// [`WulffError::VertexHit`] when `x/f*(x)` is a vertex of a polygonal K.
    pub fn gauge_gradient(&self, x: Vec2) -> Result<Vec2> {
        if x == Vec2::zeros() {
            return Err(WulffError::ZeroVector);
        }
        match self {
            SurfaceTension::Crystalline(c) => {
                if c.wulff.near_vertex_direction(x, VERTEX_ANGLE_TOL) {
                    return Err(WulffError::VertexHit);
                }
                let e = &c.wulff.edges[c.wulff.sector(x)];
                Ok(e.normal / e.support)
            }
            SurfaceTension::Lp { q, .. } => Ok(lp_gradient(x, *q)),
            SurfaceTension::Quadratic { a_inv, .. } => {
                let ax = a_inv * x;
                Ok(ax / x.dot(&ax).sqrt())
            }
            SurfaceTension::Euclidean => Ok(x / x.norm()),
        }
    }

    /// Outer unit normal of K at the radial projection `x/f*(x)`, with the
    /// counterclockwise tie-break at vertices of a polygonal K.
    pub fn wulff_normal(&self, x: Vec2) -> Vec2 {
        match self {
            SurfaceTension::Crystalline(c) => c.wulff.edges[c.wulff.sector(x)].normal,
            SurfaceTension::Lp { q, .. } => {
                let g = Vec2::new(signed_pow(x.x, q - 1.0), signed_pow(x.y, q - 1.0));
                g / g.norm()
            }
            SurfaceTension::Quadratic { a_inv, .. } => {
                let g = a_inv * x;
                g / g.norm()
            }
            SurfaceTension::Euclidean => x / x.norm(),
        }
    }

    /// Directions across which `f*` is not smooth: vertex directions of a
    /// polygonal K, the coordinate axes for `l^q` with `q != 2`.
    pub fn kink_directions(&self) -> Vec<Vec2> {
        match self {
            SurfaceTension::Crystalline(c) => c.wulff.vertices().to_vec(),
            SurfaceTension::Lp { p, .. } if (*p - 2.0).abs() > 1e-15 => vec![
                Vec2::new(1.0, 0.0),
                Vec2::new(0.0, 1.0),
                Vec2::new(-1.0, 0.0),
                Vec2::new(0.0, -1.0),
            ],
            _ => Vec::new(),
        }
    }

    /// `m = min f`, `M = max f` over the unit circle.
    pub fn bounds(&self) -> TensionBounds {
        match self {
            SurfaceTension::Crystalline(c) => {
                // f on the circle is a max of cosines; its minima sit at the
                // edge normals and its maxima at the vertex directions
                let m = c
                    .wulff
                    .edges
                    .iter()
                    .map(|e| e.support)
                    .fold(f64::INFINITY, f64::min);
                let big_m = c
                    .wulff
                    .vertices()
                    .iter()
                    .map(|v| v.norm())
                    .fold(0.0, f64::max);
                TensionBounds { m, big_m }
            }
            _ => {
                const SAMPLES: usize = 4096;
                let g = |t: f64| self.tension(Vec2::new(t.cos(), t.sin()));
                let dt = 2.0 * PI / SAMPLES as f64;
                let vals: Vec<f64> = (0..SAMPLES).map(|i| g(i as f64 * dt)).collect();
                let imin = (0..SAMPLES)
                    .min_by(|&i, &j| vals[i].total_cmp(&vals[j]))
                    .unwrap();
                let imax = (0..SAMPLES)
                    .max_by(|&i, &j| vals[i].total_cmp(&vals[j]))
                    .unwrap();
                let t0 = imin as f64 * dt;
                let (_, m) = golden_section(g, t0 - dt, t0 + dt, 1e-10);
                let t1 = imax as f64 * dt;
                let (_, neg) = golden_section(|t| -g(t), t1 - dt, t1 + dt, 1e-10);
                TensionBounds {
                    m: m.min(vals[imin]),
                    big_m: (-neg).max(vals[imax]),
                }
            }
        }
    }

    /// Polygonal Wulff shape. Exact for crystalline tensions (and `n` is
    /// ignored); otherwise the inscribed `n`-gon with vertices `grad f(ν_i)`
    /// at equispaced normal angles.
    pub fn wulff_shape(&self, n: usize) -> Result<WulffShape> {
        match self {
            SurfaceTension::Crystalline(c) => Ok(c.wulff.clone()),
            _ => {
                if n < 8 {
                    return Err(WulffError::InvalidConfig(format!(
                        "smooth Wulff shapes need n >= 8, got {n}"
                    )));
                }
                let vertices: Vec<Vec2> = (0..n)
                    .map(|i| {
                        let t = 2.0 * PI * i as f64 / n as f64;
                        self.tension_gradient(Vec2::new(t.cos(), t.sin()))
                    })
                    .collect();
                WulffShape::from_convex_vertices(vertices, false)
            }
        }
    }

    /// Exact `|K|`.
    pub fn wulff_area(&self) -> f64 {
        match self {
            SurfaceTension::Crystalline(c) => c.wulff.area(),
            SurfaceTension::Lp { q, .. } => {
                let g1 = libm::tgamma(1.0 + 1.0 / q);
                4.0 * g1 * g1 / libm::tgamma(1.0 + 2.0 / q)
            }
            SurfaceTension::Quadratic { a, .. } => PI * a.determinant().sqrt(),
            SurfaceTension::Euclidean => PI,
        }
    }

    /// Tension whose Wulff shape is `L(K)`. Crystalline tensions map their
    /// Wulff vertices; quadratic and Euclidean ones map `A -> L A L'`.
    pub fn affine_map(&self, l: &Mat2<f64>) -> Result<SurfaceTension> {
        let det = l.determinant();
        if !(det > 0.0) || !det.is_finite() {
            return Err(WulffError::SingularMatrix);
        }
        match self {
            SurfaceTension::Crystalline(c) => {
                Self::crystalline(c.wulff.vertices().iter().map(|v| l * v).collect())
            }
            SurfaceTension::Quadratic { a, .. } => Self::quadratic(l * a * l.transpose()),
            SurfaceTension::Euclidean => Self::quadratic(l * l.transpose()),
            SurfaceTension::Lp { .. } => Err(WulffError::Unsupported(
                "the image of an l^q ball under a linear map is not an l^q ball".into(),
            )),
        }
    }

    /// Short human-readable label.
    pub fn label(&self) -> String {
        match self {
            SurfaceTension::Crystalline(c) => {
                format!("crystalline({} vertices)", c.wulff.vertices().len())
            }
            SurfaceTension::Lp { p, .. } => format!("lp(p={p})"),
            SurfaceTension::Quadratic { a, .. } => {
                format!(
                    "quadratic([[{}, {}], [{}, {}]])",
                    a[(0, 0)],
                    a[(0, 1)],
                    a[(1, 0)],
                    a[(1, 1)]
                )
            }
            SurfaceTension::Euclidean => "euclidean".into(),
        }
    }
}

#[inline]
fn signed_pow(x: f64, e: f64) -> f64 {
    x.signum() * x.abs().powf(e)
}

pub(crate) fn lp_norm(v: Vec2, p: f64) -> f64 {
    let (a, b) = (v.x.abs(), v.y.abs());
    let s = a.max(b);
    if s == 0.0 {
        return 0.0;
    }
    s * ((a / s).powf(p) + (b / s).powf(p)).powf(1.0 / p)
}

/// Gradient of the `l^p` norm at `v != 0`.
fn lp_gradient(v: Vec2, p: f64) -> Vec2 {
    let n = lp_norm(v, p);
    let u = v / n;
    Vec2::new(signed_pow(u.x, p - 1.0), signed_pow(u.y, p - 1.0))
}

/// Andrew's monotone chain, CCW, collinear points dropped.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && cross(
                lower[lower.len() - 1] - lower[lower.len() - 2],
                p - lower[lower.len() - 2],
            ) <= 0.0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(
                upper[upper.len() - 1] - upper[upper.len() - 2],
                p - upper[upper.len() - 2],
            ) <= 0.0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
