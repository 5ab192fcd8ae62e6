//! Nearly-Wulff perturbations for quadratic tensions.
//!
//! For `f(ν) = √(νᵀAν)` the Wulff shape is the ellipse `xᵀA⁻¹x ≤ 1`,
//! parameterized as `x(t) = A^½ (cos t, sin t)`. A profile `u` sampled at the
//! nodes describes the polygon with vertices `x_i + u_i ν_K(x_i)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::anisotropy::SurfaceTension;
use crate::error::{Result, WulffError};
use crate::experiments::{fit_rate, RateFit};
use crate::functionals::{deficit, surface_energy};
use crate::polygeom::Polygon;
use crate::{cross, Mat2, Vec2};

/// Default node count for expansion checks.
pub const DEFAULT_NODES: usize = 4096;

const PROJECTION_ITERS: usize = 50;
const PROJECTION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryNode {
    pub point: Vec2,
    pub normal: Vec2,
    /// Arclength weight `|x'(t_i)| 2π/N`.
    pub weight: f64,
    pub curvature: f64,
    /// Tangential Hessian of `f` at `normal`.
    pub hessian: f64,
}

#[derive(Debug, Clone)]
pub struct BoundaryParam {
    pub nodes: Vec<BoundaryNode>,
    pub tension: SurfaceTension,
    /// Area of the unperturbed node polygon.
    pub poly_area: f64,
    /// `Φ` of the unperturbed node polygon.
    pub poly_energy: f64,
}

impl BoundaryParam {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn perimeter(&self) -> f64 {
        self.nodes.iter().map(|n| n.weight).sum()
    }

    /// Parameter angle of node `i`.
    pub fn angle(&self, i: usize) -> f64 {
        2.0 * PI * i as f64 / self.nodes.len() as f64
    }

    /// Sample `g(t)` at the parameter angles.
    pub fn sample<G: Fn(f64) -> f64>(&self, g: G) -> Vec<f64> {
        (0..self.len()).map(|i| g(self.angle(i))).collect()
    }

    /// Largest admissible `|u|`, the inverse of the maximal curvature.
    pub fn reach(&self) -> f64 {
        1.0 / self.nodes.iter().map(|n| n.curvature).fold(0.0, f64::max)
    }

    pub fn unperturbed(&self) -> Polygon {
        Polygon::from_ccw_unchecked(self.nodes.iter().map(|n| n.point).collect())
    }
}

fn quadratic_matrix(t: &SurfaceTension) -> Result<Mat2<f64>> {
    match t {
        SurfaceTension::Quadratic { a, .. } => Ok(*a),
        SurfaceTension::Euclidean => Ok(Mat2::identity()),
        _ => Err(WulffError::Unsupported(format!(
            "elliptic tools need a quadratic tension, got {}",
            t.label()
        ))),
    }
}

fn sqrt_spd(a: &Mat2<f64>) -> Mat2<f64> {
    let eig = a.symmetric_eigen();
    let d = Mat2::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    eig.eigenvectors * d * eig.eigenvectors.transpose()
}

/// `N` equispaced parameter nodes on `∂K`.
pub fn boundary_param(t: &SurfaceTension, n: usize) -> Result<BoundaryParam> {
    if n < 64 {
        return Err(WulffError::InvalidConfig(format!(
            "boundary parameterization needs N >= 64, got {n}"
        )));
    }
    let a = quadratic_matrix(t)?;
    let s = sqrt_spd(&a);
    let a_inv = a.try_inverse().ok_or(WulffError::SingularMatrix)?;
    let det_s = s.determinant();
    let dt = 2.0 * PI / n as f64;
    let mut nodes = Vec::with_capacity(n);
    for i in 0..n {
        let th = i as f64 * dt;
        let point = s * Vec2::new(th.cos(), th.sin());
        let dx = s * Vec2::new(-th.sin(), th.cos());
        let speed = dx.norm();
        let g = a_inv * point;
        let normal = g / g.norm();
        nodes.push(BoundaryNode {
            point,
            normal,
            weight: speed * dt,
            curvature: det_s / speed.powi(3),
            hessian: hessian_tangential(t, normal)?,
        });
    }
    let poly = Polygon::from_ccw_unchecked(nodes.iter().map(|n| n.point).collect());
    Ok(BoundaryParam {
        poly_area: poly.area(),
        poly_energy: surface_energy(&poly, t),
        nodes,
        tension: t.clone(),
    })
}

/// `τᵀ ∇²f(ν) τ` for the unit tangent `τ ⊥ ν`, with
/// `∇²f(ν) = (A f² - (Aν)(Aν)ᵀ) / f³`.
pub fn hessian_tangential(t: &SurfaceTension, nu: Vec2) -> Result<f64> {
    let a = quadratic_matrix(t)?;
    let len = nu.norm();
    if len == 0.0 {
        return Err(WulffError::ZeroVector);
    }
    let av = a * nu;
    let f = nu.dot(&av).sqrt();
    let h = (a * (f * f) - av * av.transpose()) / f.powi(3);
    let tau = Vec2::new(-nu.y, nu.x) / len;
    Ok(tau.dot(&(h * tau)))
}

/// Arclength derivative by centered differences on the closed chain.
pub fn arclength_derivative(b: &BoundaryParam, u: &[f64]) -> Vec<f64> {
    let n = u.len();
    (0..n)
        .map(|i| (u[(i + 1) % n] - u[(i + n - 1) % n]) / (2.0 * b.nodes[i].weight))
        .collect()
}

fn check_profile(b: &BoundaryParam, u: &[f64]) -> Result<()> {
    if u.len() != b.len() {
        return Err(WulffError::InvalidConfig(format!(
            "profile has {} values for {} nodes",
            u.len(),
            b.len()
        )));
    }
    if u.iter().any(|v| !v.is_finite()) {
        return Err(WulffError::InvalidConfig(
            "profile values must be finite".into(),
        ));
    }
    Ok(())
}

/// `B(u) = ½ Σ w_i [h_i u'_i² - κ_i u_i²]`.
pub fn second_variation(b: &BoundaryParam, u: &[f64]) -> Result<f64> {
    check_profile(b, u)?;
    let du = arclength_derivative(b, u);
    Ok(0.5
        * b.nodes
            .iter()
            .zip(u.iter().zip(&du))
            .map(|(n, (v, d))| n.weight * (n.hessian * d * d - n.curvature * v * v))
            .sum::<f64>())
}

/// `(Σ w_i (u_i² + u'_i²))^½`.
pub fn h1_norm(b: &BoundaryParam, u: &[f64]) -> Result<f64> {
    check_profile(b, u)?;
    let du = arclength_derivative(b, u);
    Ok(b.nodes
        .iter()
        .zip(u.iter().zip(&du))
        .map(|(n, (v, d))| n.weight * (v * v + d * d))
        .sum::<f64>()
        .sqrt())
}

/// `max |u| + max |u'|`.
pub fn c1_norm(b: &BoundaryParam, u: &[f64]) -> Result<f64> {
    check_profile(b, u)?;
    let du = arclength_derivative(b, u);
    let m0 = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let m1 = du.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(m0 + m1)
}

#[derive(Debug, Clone)]
pub struct Perturbed {
    pub polygon: Polygon,
    /// Uniform normal offset added to `u`.
    pub offset: f64,
    pub translation: Vec2,
    pub iterations: usize,
}

impl Perturbed {
    /// The profile actually realized after projection, to first order in the
    /// translation: `u_i + c + t · ν_i`.
    pub fn effective_profile(&self, b: &BoundaryParam, u: &[f64]) -> Vec<f64> {
        u.iter()
            .zip(&b.nodes)
            .map(|(v, n)| v + self.offset + self.translation.dot(&n.normal))
            .collect()
    }
}

fn displaced(b: &BoundaryParam, u: &[f64], c: f64, t: Vec2) -> Vec<Vec2> {
    b.nodes
        .iter()
        .zip(u)
        .map(|(n, v)| n.point + n.normal * (v + c) + t)
        .collect()
}

fn simple_polygon(v: Vec<Vec2>) -> Result<Polygon> {
    Polygon::new(v).map_err(|_| WulffError::SelfIntersection)
}

/// Polygon with vertices `x_i + u_i ν_i`. With `enforce`, a uniform offset
/// and a translation are adjusted so that the area equals that of the node
/// polygon of `K` and the barycenter is the origin.
pub fn build_perturbed(b: &BoundaryParam, u: &[f64], enforce: bool) -> Result<Perturbed> {
    check_profile(b, u)?;
    let umax = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if umax >= b.reach() {
        return Err(WulffError::SelfIntersection);
    }
    if !enforce {
        return Ok(Perturbed {
            polygon: simple_polygon(displaced(b, u, 0.0, Vec2::zeros()))?,
            offset: 0.0,
            translation: Vec2::zeros(),
            iterations: 0,
        });
    }
    let target = b.poly_area;
    let scale = b.perimeter();
    let (mut c, mut t) = (0.0, Vec2::zeros());
    for it in 0..PROJECTION_ITERS {
        let v = displaced(b, u, c, t);
        let area = crate::polygeom::signed_area(&v);
        let bar = polygon_centroid(&v, area);
        let perim = (0..v.len())
            .map(|i| (v[(i + 1) % v.len()] - v[i]).norm())
            .sum::<f64>();
        if (area - target).abs() <= PROJECTION_TOL * target && bar.norm() <= PROJECTION_TOL * scale
        {
            return Ok(Perturbed {
                polygon: simple_polygon(v)?,
                offset: c,
                translation: t,
                iterations: it,
            });
        }
        c += (target - area) / perim;
        t -= bar;
    }
    Err(WulffError::NoConvergence(format!(
        "volume/barycenter projection did not settle in {PROJECTION_ITERS} iterations"
    )))
}

fn polygon_centroid(v: &[Vec2], area: f64) -> Vec2 {
    let o = v[0];
    let mut acc = Vec2::zeros();
    for i in 0..v.len() {
        let (p, q) = (v[i] - o, v[(i + 1) % v.len()] - o);
        acc += (p + q) * cross(p, q);
    }
    o + acc / (6.0 * area)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExpansionRow {
    pub eps: f64,
    /// `Φ(E_ε) - Φ(K_poly)`.
    pub energy_gap: f64,
    /// `B(ε u + c)` with the projection offset `c`.
    pub second_variation: f64,
    pub remainder: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpansionCheck {
    pub rows: Vec<ExpansionRow>,
    pub fit: RateFit,
}

/// Remainder `R(ε) = |Φ(E_ε) - Φ(K_poly) - B(u_eff)|` of the second-order
/// expansion, and its log-log slope in `ε`.
pub fn expansion_check(b: &BoundaryParam, u: &[f64], eps_list: &[f64]) -> Result<ExpansionCheck> {
    check_profile(b, u)?;
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let ue: Vec<f64> = u.iter().map(|v| eps * v).collect();
        let e = build_perturbed(b, &ue, true)?;
        let ueff: Vec<f64> = ue.iter().map(|v| v + e.offset).collect();
        let gap = surface_energy(&e.polygon, &b.tension) - b.poly_energy;
        let bv = second_variation(b, &ueff)?;
        rows.push(ExpansionRow {
            eps,
            energy_gap: gap,
            second_variation: bv,
            remainder: (gap - bv).abs(),
        });
    }
    let fit = fit_rate(
        &rows
            .iter()
            .map(|r| (r.eps, r.remainder))
            .collect::<Vec<_>>(),
    )?;
    Ok(ExpansionCheck { rows, fit })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct StabilitySample {
    pub c1: f64,
    pub h1_sq: f64,
    pub deficit: f64,
    pub ratio: f64,
}

/// `‖u_eff‖²_{H¹} / δ(E)` for a constrained perturbation.
pub fn stability_sample(b: &BoundaryParam, u: &[f64]) -> Result<StabilitySample> {
    let e = build_perturbed(b, u, true)?;
    let ueff = e.effective_profile(b, u);
    let h1 = h1_norm(b, &ueff)?;
    let d = deficit(&e.polygon, &b.tension);
    Ok(StabilitySample {
        c1: c1_norm(b, u)?,
        h1_sq: h1 * h1,
        deficit: d,
        ratio: h1 * h1 / d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize) -> BoundaryParam {
        boundary_param(&SurfaceTension::Euclidean, n).unwrap()
    }

    fn ellipse(n: usize) -> BoundaryParam {
        boundary_param(&SurfaceTension::diagonal(4.0, 1.0).unwrap(), n).unwrap()
    }

    #[test]
    fn circle_nodes() {
        let b = circle(256);
        assert!(b.nodes.iter().all(|n| (n.curvature - 1.0).abs() < 1e-14));
        assert!((b.perimeter() - 2.0 * PI).abs() < 1e-6);
    }

    #[test]
    fn ellipse_curvature_extremes() {
        let b = ellipse(1024);
        let kmax = b.nodes.iter().map(|n| n.curvature).fold(0.0, f64::max);
        let kmin = b
            .nodes
            .iter()
            .map(|n| n.curvature)
            .fold(f64::INFINITY, f64::min);
        assert!((kmax - 2.0).abs() < 1e-12 && (kmin - 0.25).abs() < 1e-12);
        // finite-difference curvature of the parameterization at t = 0
        let x = |t: f64| Vec2::new(2.0 * t.cos(), t.sin());
        let h = 1e-4;
        let d1 = (x(h) - x(-h)) / (2.0 * h);
        let d2 = (x(h) - x(0.0) * 2.0 + x(-h)) / (h * h);
        let k = cross(d1, d2) / d1.norm().powi(3);
        assert!((k - 2.0).abs() < 1e-6);
    }

    #[test]
    fn ellipse_perimeter_by_adaptive_arclength() {
        let b = ellipse(512);
        let q = crate::quadrature::integrate(
            |t| (4.0 * t.sin().powi(2) + t.cos().powi(2)).sqrt(),
            0.0,
            2.0 * PI,
        );
        assert!(((b.perimeter() - q.value) / q.value).abs() < 1e-6);
        assert!((q.value - 9.688_448_220_547_675).abs() < 1e-9);
    }

    #[test]
    fn hessian_examples() {
        let e = SurfaceTension::Euclidean;
        assert!((hessian_tangential(&e, Vec2::new(0.6, 0.8)).unwrap() - 1.0).abs() < 1e-15);
        let t = SurfaceTension::diagonal(4.0, 1.0).unwrap();
        assert!((hessian_tangential(&t, Vec2::new(1.0, 0.0)).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(
            hessian_tangential(&t, Vec2::zeros()),
            Err(WulffError::ZeroVector)
        ));
        assert!(matches!(
            hessian_tangential(&SurfaceTension::lp(4.0).unwrap(), Vec2::new(1.0, 0.0)),
            Err(WulffError::Unsupported(_))
        ));
    }

    #[test]
    fn hessian_is_inverse_curvature() {
        let b = ellipse(512);
        for n in &b.nodes {
            assert!((n.hessian * n.curvature - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn second_variation_on_circle() {
        let b = circle(4096);
        let c = 0.3;
        let bv = second_variation(&b, &vec![c; 4096]).unwrap();
        assert!((bv + PI * c * c).abs() < 1e-10);
        for k in 1..=4 {
            let u = b.sample(|t| (k as f64 * t).cos());
            let bv = second_variation(&b, &u).unwrap();
            let exact = 0.5 * PI * ((k * k) as f64 - 1.0);
            assert!((bv - exact).abs() < 1e-3, "k={k}: {bv}");
        }
    }

    #[test]
    fn h1_norms() {
        let b = circle(4096);
        assert!((h1_norm(&b, &vec![1.0; 4096]).unwrap() - (2.0 * PI).sqrt()).abs() < 1e-12);
        let u = b.sample(|t| (2.0 * t).cos());
        let v = h1_norm(&b, &u).unwrap();
        assert!((v - (5.0 * PI).sqrt()).abs() < 1e-5);
        let u3: Vec<f64> = u.iter().map(|x| 0.3 * x).collect();
        assert!((h1_norm(&b, &u3).unwrap() - 0.3 * v).abs() < 1e-14);
    }

    #[test]
    fn perturbation_without_enforcement() {
        let b = circle(2048);
        let p = build_perturbed(&b, &vec![0.0; 2048], false).unwrap();
        assert!((p.polygon.area() - PI).abs() < 1e-5);
        let c = 0.1;
        let p = build_perturbed(&b, &vec![c; 2048], false).unwrap();
        assert!((p.polygon.area() - PI * (1.0 + c) * (1.0 + c)).abs() < 1e-5);
    }

    #[test]
    fn perturbation_with_enforcement() {
        let b = circle(2048);
        let u = b.sample(|t| 0.05 * (2.0 * t).cos() + 0.02 * t.sin() + 0.03);
        let p = build_perturbed(&b, &u, true).unwrap();
        let m = p.polygon.measures();
        assert!((m.area - b.poly_area).abs() < 1e-10 * PI);
        assert!(m.barycenter.norm() < 1e-9);
        assert!((m.area - PI).abs() < 1e-5);
    }

    #[test]
    fn oversized_profile_rejected() {
        let b = ellipse(256);
        let u = vec![0.6; 256];
        assert!(matches!(
            build_perturbed(&b, &u, false),
            Err(WulffError::SelfIntersection)
        ));
    }

    #[test]
    fn kernel_direction_has_small_remainder() {
        let b = circle(8192);
        let u = b.sample(f64::cos);
        assert!(second_variation(&b, &u).unwrap().abs() < 1e-6);
        let ex = expansion_check(&b, &u, &[0.01, 0.02, 0.04, 0.08, 0.1]).unwrap();
        assert!(ex.fit.slope >= 2.5, "{:?}", ex.rows);
    }
}
