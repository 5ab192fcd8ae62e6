//! `∫_P dx / f*(x - y)` by the signed fan formula.
//!
//! The integrand is (-1)-homogeneous about `y`, so the cone over an edge
//! `s(u) = a + u (b - a)` (translated by `-y`) contributes
//! `det(a, b) ∫_0^1 du / f*(s(u))`. Summing over the edges of a CCW polygon
//! gives the area integral whether `y` is inside, outside or on an edge.

use serde::Serialize;

use crate::anisotropy::SurfaceTension;
use crate::error::{Result, WulffError};
use crate::quadrature::integrate_segment;
use crate::{cross, Vec2};

use super::Polygon;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct FanIntegral {
    pub value: f64,
    /// Integrand evaluations.
    pub evals: usize,
}

/// Parameters in `(0, 1)` where the direction of `a + u d` passes through one
/// of `dirs`.
pub(crate) fn direction_breaks(a: Vec2, d: Vec2, dirs: &[Vec2], out: &mut Vec<f64>) {
    out.clear();
    for v in dirs {
        let den = cross(d, *v);
        if den == 0.0 {
            continue;
        }
        let u = -cross(a, *v) / den;
        if u > 0.0 && u < 1.0 && (a + d * u).dot(v) > 0.0 {
            out.push(u);
        }
    }
}

/// Reject `y` on a vertex of `p`. The tolerance is 1e-12 in units of the
/// polygon size.
pub(crate) fn check_center(p: &Polygon, y: Vec2) -> Result<()> {
    let tol = 1e-12 * (1.0 + p.diameter());
    match p.vertex_near(y, tol) {
        Some(_) => Err(WulffError::CenterOnVertex),
        None => Ok(()),
    }
}

/// `∫_0^1 du / (g0 + g1 (u - u0))` over `[u0, u1]`, stable as `g1 → 0`.
fn inverse_linear(g0: f64, g1: f64, len: f64) -> f64 {
    let x = g1 * len / g0;
    let ratio = if x.abs() < 1e-8 {
        1.0 - 0.5 * x
    } else {
        x.ln_1p() / x
    };
    len / g0 * ratio
}

/// Exact `∫_0^1 du / f*(a + u d)` where the gauge allows it: piecewise linear
/// for a crystalline tension, the square root of a quadratic for an
/// ellipsoidal one. `breaks` gets sorted.
pub(crate) fn segment_closed_form(
    t: &SurfaceTension,
    a: Vec2,
    d: Vec2,
    breaks: &mut [f64],
) -> Option<f64> {
    match t {
        SurfaceTension::Crystalline(c) => {
            breaks.sort_by(f64::total_cmp);
            let w = c.wulff();
            let mut total = 0.0;
            let mut lo = 0.0;
            for hi in breaks.iter().copied().chain(std::iter::once(1.0)) {
                if hi > lo {
                    let e = &w.edges[w.sector(a + d * (0.5 * (lo + hi)))];
                    let g0 = (a + d * lo).dot(&e.normal) / e.support;
                    let g1 = d.dot(&e.normal) / e.support;
                    total += inverse_linear(g0, g1, hi - lo);
                }
                lo = hi;
            }
            Some(total)
        }
        SurfaceTension::Quadratic { a_inv, .. } => Some(inverse_sqrt_quadratic(a_inv, a, d)),
        SurfaceTension::Euclidean => Some(inverse_sqrt_quadratic(&crate::Mat2::identity(), a, d)),
        SurfaceTension::Lp { .. } => None,
    }
}

/// `∫_0^1 du / |a + u d|_B` with `|x|_B² = x·Bx`; the segment must miss 0.
fn inverse_sqrt_quadratic(b: &crate::Mat2<f64>, a: Vec2, d: Vec2) -> f64 {
    let c1 = a.dot(&(b * d));
    let c2 = d.dot(&(b * d));
    let disc = (b.determinant() * cross(a, d).powi(2)).sqrt();
    ((c2 + c1) / disc).asinh() / c2.sqrt() - (c1 / disc).asinh() / c2.sqrt()
}

/// `∫_P dx / f*(x - y)`.
pub fn gauge_inverse_integral(p: &Polygon, t: &SurfaceTension, y: Vec2) -> Result<FanIntegral> {
    check_center(p, y)?;
    let kinks = t.kink_directions();
    let mut breaks = Vec::with_capacity(kinks.len());
    let mut out = FanIntegral::default();
    for e in p.edges() {
        let a = e.start - y;
        let b = e.end - y;
        let w = cross(a, b);
        if w == 0.0 {
            continue;
        }
        let d = b - a;
        direction_breaks(a, d, &kinks, &mut breaks);
        let (value, evals) = match segment_closed_form(t, a, d, &mut breaks) {
            Some(v) => (v, breaks.len() + 1),
            None => {
                let q = integrate_segment(a, d, &breaks, |u| 1.0 / t.gauge(a + d * u));
                (q.value, q.evals)
            }
        };
        out.value += w * value;
        out.evals += evals;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(h: f64) -> Polygon {
        Polygon::from_points(&[[-h, -h], [h, -h], [h, h], [-h, h]]).unwrap()
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let tensions = [
            SurfaceTension::l_one(),
            SurfaceTension::crystalline_from(&[[1.0, 0.2], [-0.3, 1.1], [-0.9, -0.4], [0.5, -1.0]])
                .unwrap(),
            SurfaceTension::diagonal(4.0, 1.0).unwrap(),
            SurfaceTension::quadratic(crate::Mat2::new(2.0, 0.7, 0.7, 1.0)).unwrap(),
            SurfaceTension::Euclidean,
        ];
        let segs = [
            (Vec2::new(1.0, -2.0), Vec2::new(0.5, 4.0)),
            (Vec2::new(-3.0, 0.1), Vec2::new(6.0, 0.0)),
            (Vec2::new(0.01, 0.3), Vec2::new(-0.02, -0.1)),
        ];
        for t in &tensions {
            let kinks = t.kink_directions();
            for (a, d) in segs {
                let mut br = Vec::new();
                direction_breaks(a, d, &kinks, &mut br);
                let q = integrate_segment(a, d, &br, |u| 1.0 / t.gauge(a + d * u)).value;
                let c = segment_closed_form(t, a, d, &mut br).unwrap();
                assert!((q - c).abs() < 1e-11 * q.abs(), "{} {q} {c}", t.label());
            }
        }
    }

    #[test]
    fn wulff_shape_gives_twice_area() {
        for t in [SurfaceTension::l_one(), SurfaceTension::l_infinity()] {
            let k = t.wulff_shape(0).unwrap();
            for r in [0.5, 1.0, 3.0] {
                let v = gauge_inverse_integral(&k.polygon.scale(r), &t, Vec2::zeros())
                    .unwrap()
                    .value;
                assert!((v - 2.0 * k.area() * r).abs() < 1e-12 * v, "{v}");
            }
        }
    }

    #[test]
    fn ell_infinity_gauge_on_square() {
        // f = l^1 has f* = l^inf and K = [-1,1]^2
        let v =
            gauge_inverse_integral(&square(1.0), &SurfaceTension::l_one(), Vec2::zeros()).unwrap();
        assert!((v.value - 8.0).abs() < 1e-12);
    }

    #[test]
    fn euclidean_disc_sector() {
        // unit disc approximated by a fine regular polygon: ∫ 1/|x| = 2π R
        let n = 4000;
        let pts: Vec<[f64; 2]> = (0..n)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                [a.cos(), a.sin()]
            })
            .collect();
        let p = Polygon::from_points(&pts).unwrap();
        let v = gauge_inverse_integral(&p, &SurfaceTension::Euclidean, Vec2::zeros())
            .unwrap()
            .value;
        assert!((v - 2.0 * std::f64::consts::PI).abs() < 1e-5);
    }

    #[test]
    fn center_on_vertex_rejected() {
        let r = gauge_inverse_integral(
            &square(1.0),
            &SurfaceTension::Euclidean,
            Vec2::new(1.0, 1.0),
        );
        assert!(matches!(r, Err(WulffError::CenterOnVertex)));
    }

    #[test]
    fn center_on_edge_is_fine() {
        // y on the right edge: the region is a half-disc-like fan of angle π
        let t = SurfaceTension::l_one();
        let v = gauge_inverse_integral(&square(1.0), &t, Vec2::new(1.0, 0.0))
            .unwrap()
            .value;
        let inside = gauge_inverse_integral(&square(1.0), &t, Vec2::new(1.0 - 1e-9, 0.0))
            .unwrap()
            .value;
        assert!((v - inside).abs() < 1e-6, "{v} {inside}");
    }

    #[test]
    fn direction_breaks_found() {
        let mut out = Vec::new();
        direction_breaks(
            Vec2::new(1.0, -1.0),
            Vec2::new(0.0, 2.0),
            &[Vec2::new(1.0, 0.0), Vec2::new(-1.0, 0.0)],
            &mut out,
        );
        assert_eq!(out, vec![0.5]);
    }
}
