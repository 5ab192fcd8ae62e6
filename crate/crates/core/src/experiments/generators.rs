//! Polygon and tension generators: the rhombus–zigzag and ℓᵖ-cone families,
//! and random inputs for the fuzz suites.

use std::f64::consts::{FRAC_PI_4, PI};

use rand::Rng;

use crate::anisotropy::SurfaceTension;
use crate::error::{Result, WulffError};
use crate::functionals::deficit;
use crate::polygeom::Polygon;
use crate::{Mat2, Vec2};

/// Unit-area rhombus `K_θ` with a zigzag cut at both sharp vertices.
#[derive(Debug, Clone)]
pub struct RhombusZigzag {
    pub theta: f64,
    pub teeth: usize,
    pub tension: SurfaceTension,
    pub wulff: Polygon,
    pub polygon: Polygon,
    /// Side length `(sin θ)^{-1/2}`.
    pub side: f64,
    /// Cut height `L = θ^{-1/4}`.
    pub cut: f64,
    /// Straight-cut triangle area `A = L² tan(θ/2)`.
    pub triangle_area: f64,
    /// `m = L / cos(θ/2)`, the length of a removed rhombus side.
    pub m: f64,
    /// Area added back by the teeth of one zigzag, `A / k`.
    pub area_gap: f64,
}

impl RhombusZigzag {
    /// `δ(E_θ) = (1 - 2A(1 - 1/k))^{-1/2} - 1`, since `Φ(E_θ) = Φ(K_θ) = 2`.
    pub fn closed_form_deficit(&self) -> f64 {
        let removed = 2.0 * self.triangle_area * (1.0 - 1.0 / self.teeth as f64);
        (1.0 - removed).powf(-0.5) - 1.0
    }
}

pub fn rhombus_zigzag(theta: f64, teeth: usize) -> Result<RhombusZigzag> {
    if !(theta > 0.0 && theta < FRAC_PI_4) {
        return Err(WulffError::BadTheta(theta));
    }
    if teeth == 0 {
        return Err(WulffError::InvalidConfig("need at least one tooth".into()));
    }
    let side = theta.sin().powf(-0.5);
    let (sh, ch) = (0.5 * theta).sin_cos();
    let dl = side * ch;
    let ds = side * sh;
    let cut = theta.powf(-0.25);
    if cut >= dl {
        return Err(WulffError::BadTheta(theta));
    }
    let b = cut * (0.5 * theta).tan();
    let k = teeth as f64;
    let x0 = dl - cut;
    let tip = x0 + cut / k;
    // right-hand chain from P- to P+: up-right then up-left per tooth
    let mut chain = vec![Vec2::new(x0, -b)];
    for j in 0..teeth {
        let j = j as f64;
        chain.push(Vec2::new(tip, -b + (2.0 * j + 1.0) * b / k));
        chain.push(Vec2::new(x0, -b + (2.0 * j + 2.0) * b / k));
    }
    let mut half = vec![Vec2::new(0.0, -ds)];
    half.extend(chain);
    let mut verts = half.clone();
    verts.extend(half.iter().map(|v| -v));
    let polygon = Polygon::new(verts)?;
    let wulff_pts = vec![
        Vec2::new(dl, 0.0),
        Vec2::new(0.0, ds),
        Vec2::new(-dl, 0.0),
        Vec2::new(0.0, -ds),
    ];
    let tension = SurfaceTension::crystalline(wulff_pts.clone())?;
    let triangle_area = cut * b;
    Ok(RhombusZigzag {
        theta,
        teeth,
        tension,
        wulff: Polygon::new(wulff_pts)?,
        polygon,
        side,
        cut,
        triangle_area,
        m: cut / ch,
        area_gap: triangle_area / k,
    })
}

/// Polygonized ℓ^q ball with the caps over `|x₁| < r` replaced by the tangent
/// cones `±w(x₁) = ±(C₀ - r^{q-1}|x₁| / (1 - r^q)^{1/p})`.
#[derive(Debug, Clone)]
pub struct LpCone {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    /// Base number of equispaced normal angles.
    pub n: usize,
    pub tension: SurfaceTension,
    pub polygon: Polygon,
    /// Node polygon of `K` before the caps are replaced.
    pub wulff_poly: Polygon,
    pub wulff_poly_deficit: f64,
    /// Apex height `C₀`.
    pub apex: f64,
}

impl LpCone {
    /// `w(x₁)` for `|x₁| ≤ r`.
    pub fn cone_height(&self, x1: f64) -> f64 {
        let rq = self.r.powf(self.q);
        self.apex - self.r.powf(self.q - 1.0) * x1.abs() / (1.0 - rq).powf(1.0 / self.p)
    }

    /// The ℓ^q ball's upper boundary `v_q(x₁) = (1 - |x₁|^q)^{1/q}`.
    pub fn ball_height(&self, x1: f64) -> f64 {
        (1.0 - x1.abs().powf(self.q)).powf(1.0 / self.q)
    }

    /// Error budget `r^{q+1}`.
    pub fn scale(&self) -> f64 {
        self.r.powf(self.q + 1.0)
    }
}

fn lp_ball_nodes(p: f64, r: f64, n: usize) -> Vec<Vec2> {
    let t = SurfaceTension::Lp {
        p,
        q: p / (p - 1.0),
    };
    let point = |phi: f64| t.tension_gradient(Vec2::new(phi.cos(), phi.sin()));
    let dphi = 2.0 * PI / n as f64;
    let mut out = Vec::with_capacity(2 * n);
    for j in 0..n {
        let (a, b) = (j as f64 * dphi, (j + 1) as f64 * dphi);
        let (pa, pb) = (point(a), point(b));
        let sub = if pa.x.abs() < 2.0 * r || pb.x.abs() < 2.0 * r {
            4
        } else {
            1
        };
        out.push(pa);
        for s in 1..sub {
            out.push(point(a + (b - a) * s as f64 / sub as f64));
        }
    }
    out
}

/// `E_r` at a fixed base resolution `n` (rounded up to a multiple of 4).
pub fn lp_cone(p: f64, r: f64, n: usize) -> Result<LpCone> {
    if !(p > 2.0) || !p.is_finite() {
        return Err(WulffError::InvalidConfig(format!(
            "cone family needs p > 2, got {p}"
        )));
    }
    if !(r > 0.0 && r < 0.3) {
        return Err(WulffError::InvalidConfig(format!(
            "cone radius must lie in (0, 0.3), got {r}"
        )));
    }
    let n = n.max(8).div_ceil(4) * 4;
    let q = p / (p - 1.0);
    let tension = SurfaceTension::Lp { p, q };
    let nodes = lp_ball_nodes(p, r, n);
    let wulff_poly = Polygon::new(nodes.clone())?;
    let wulff_poly_deficit = deficit(&wulff_poly, &tension);
    let rq = r.powf(q);
    let apex = (1.0 - rq).powf(1.0 / q) + rq / (1.0 - rq).powf(1.0 / p);
    let v = (1.0 - rq).powf(1.0 / q);
    let budget = 0.05 * r.powf(q + 1.0);
    if wulff_poly_deficit > budget {
        return Err(WulffError::ResolutionTooLow {
            error: wulff_poly_deficit,
            budget,
        });
    }
    let mut verts = Vec::with_capacity(nodes.len() + 6);
    let (mut top_done, mut bottom_done) = (false, false);
    for x in nodes {
        if x.x.abs() < r {
            if x.y > 0.0 && !top_done {
                verts.extend([Vec2::new(r, v), Vec2::new(0.0, apex), Vec2::new(-r, v)]);
                top_done = true;
            } else if x.y < 0.0 && !bottom_done {
                verts.extend([Vec2::new(-r, -v), Vec2::new(0.0, -apex), Vec2::new(r, -v)]);
                bottom_done = true;
            }
            continue;
        }
        verts.push(x);
    }
    // the node at angle 0 starts the list, so the caps are always reached
    debug_assert!(top_done && bottom_done);
    let polygon = Polygon::new(verts)?;
    Ok(LpCone {
        p,
        q,
        r,
        n,
        tension,
        polygon,
        wulff_poly,
        wulff_poly_deficit,
        apex,
    })
}

/// `E_r` with the base resolution doubled until the node polygon of `K` has
/// deficit below `frac · r^{q+1}`.
pub fn lp_cone_auto(p: f64, r: f64, frac: f64) -> Result<LpCone> {
    if !(frac > 0.0 && frac <= 0.05) {
        return Err(WulffError::InvalidConfig(format!(
            "deficit fraction must lie in (0, 0.05], got {frac}"
        )));
    }
    let mut n = 64;
    loop {
        match lp_cone(p, r, n) {
            Ok(c) if c.wulff_poly_deficit < frac * c.scale() => return Ok(c),
            Ok(_) | Err(WulffError::ResolutionTooLow { .. }) => {}
            Err(e) => return Err(e),
        }
        n *= 2;
        if n > 1 << 20 {
            return Err(WulffError::NoConvergence(format!(
                "cone resolution for r = {r} exceeds 2^20 nodes"
            )));
        }
    }
}

/// Star-shaped polygon around the origin with sorted random angles and radii
/// in `[r_lo, r_hi]`.
pub fn random_star_polygon<R: Rng>(rng: &mut R, n: usize, r_lo: f64, r_hi: f64) -> Polygon {
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        angles.sort_by(f64::total_cmp);
        let gaps_ok = (0..n).all(|i| {
            let next = if i + 1 < n {
                angles[i + 1]
            } else {
                angles[0] + 2.0 * PI
            };
            next - angles[i] > 1e-3 && next - angles[i] < PI * 0.9
        });
        if !gaps_ok {
            continue;
        }
        let v: Vec<Vec2> = angles
            .iter()
            .map(|a| Vec2::new(a.cos(), a.sin()) * rng.gen_range(r_lo..r_hi))
            .collect();
        if let Ok(p) = Polygon::new(v) {
            return p;
        }
    }
}

/// Random convex polygon containing the origin, usable as a crystalline
/// Wulff shape.
pub fn random_crystalline<R: Rng>(rng: &mut R, k: usize) -> SurfaceTension {
    loop {
        let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Vec2> = angles
            .iter()
            .map(|a| Vec2::new(a.cos(), a.sin()) * rng.gen_range(0.6..1.6))
            .collect();
        if let Ok(t) = SurfaceTension::crystalline(pts) {
            if t.as_crystal().unwrap().wulff().vertices().len() >= 3 {
                return t;
            }
        }
    }
}

/// Random symmetric positive-definite quadratic tension.
pub fn random_quadratic<R: Rng>(rng: &mut R) -> SurfaceTension {
    let a: f64 = rng.gen_range(0.0..PI);
    let (s, c) = a.sin_cos();
    let rot = Mat2::new(c, -s, s, c);
    let d = Mat2::from_diagonal(&Vec2::new(rng.gen_range(0.3..3.0), rng.gen_range(0.3..3.0)));
    SurfaceTension::quadratic(rot * d * rot.transpose()).unwrap()
}

/// One tension per kind, cycling crystalline, ℓᵖ, quadratic, Euclidean.
pub fn random_tension<R: Rng>(rng: &mut R, kind: usize) -> SurfaceTension {
    match kind % 4 {
        0 => {
            let k = rng.gen_range(3..9);
            random_crystalline(rng, k)
        }
        1 => SurfaceTension::lp(rng.gen_range(1.3..6.0)).unwrap(),
        2 => random_quadratic(rng),
        _ => SurfaceTension::Euclidean,
    }
}

/// Radially perturbed node polygon of `K`: vertex `v` becomes
/// `v (1 + amp ξ)` with `ξ` uniform in `[-1, 1]`.
pub fn random_perturbed_wulff<R: Rng>(
    rng: &mut R,
    t: &SurfaceTension,
    n: usize,
    amp: f64,
) -> Result<Polygon> {
    let base = if t.is_crystalline() {
        // refine the edges so the perturbation is not confined to corners
        let k = t.wulff_shape(0)?;
        let v = k.vertices();
        let per = n.div_ceil(v.len()).max(1);
        let mut pts = Vec::with_capacity(per * v.len());
        for i in 0..v.len() {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            for s in 0..per {
                pts.push(a + (b - a) * (s as f64 / per as f64));
            }
        }
        pts
    } else {
        t.wulff_shape(n.max(8))?.vertices().to_vec()
    };
    loop {
        let pts: Vec<Vec2> = base
            .iter()
            .map(|v| v * (1.0 + amp * rng.gen_range(-1.0..1.0)))
            .collect();
        if let Ok(p) = Polygon::new(pts) {
            return Ok(p);
        }
    }
}
