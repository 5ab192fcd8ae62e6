//! Parameter sweeps and randomized suites behind the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::anisotropy::SurfaceTension;
use crate::anisotropy::DEFAULT_WULFF_RESOLUTION;
use crate::elliptic::{
    boundary_param, c1_norm, expansion_check, stability_sample, BoundaryParam, StabilitySample,
};
use crate::error::{Result, WulffError};
use crate::functionals::{
    beta, beta_boundary, beta_star, beta_with_gamma, deficit, gamma_from_seeds, poincare_chain,
};
use crate::io::CsvTable;
use crate::polygeom::{gauge_inverse_integral, Polygon};
use crate::Vec2;

use super::generators::{lp_cone_auto, random_star_polygon, random_tension, rhombus_zigzag};
use super::{fit_rate, log_space, RateFit};

/// Per-case RNG: independent of evaluation order.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Example61Row {
    pub theta: f64,
    pub delta: f64,
    pub beta_star_sq: f64,
    pub m: f64,
    pub area_gap: f64,
    pub phi: f64,
    pub closed_form_delta: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Example61 {
    pub teeth: usize,
    pub rows: Vec<Example61Row>,
    pub delta_fit: RateFit,
}

impl Example61 {
    pub fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(&[
            "theta",
            "delta",
            "beta_star_sq",
            "m",
            "area_gap",
            "phi",
            "closed_form_delta",
        ]);
        for r in &self.rows {
            t.push(vec![
                r.theta,
                r.delta,
                r.beta_star_sq,
                r.m,
                r.area_gap,
                r.phi,
                r.closed_form_delta,
            ]);
        }
        t
    }

    /// `δ / β*^σ` along the sweep, in increasing `θ`.
    pub fn ratios(&self, sigma: f64) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| r.delta / r.beta_star_sq.powf(0.5 * sigma))
            .collect()
    }
}

/// Rhombus–zigzag sweep over log-spaced `θ`; `β*` is evaluated at the
/// symmetry center.
pub fn example61(theta_min: f64, theta_max: f64, steps: usize, teeth: usize) -> Result<Example61> {
    let thetas = log_space(theta_min, theta_max, steps)?;
    let rows = thetas
        .par_iter()
        .map(|&theta| {
            let z = rhombus_zigzag(theta, teeth)?;
            let bs = beta_star(&z.polygon, &z.tension, Some(Vec2::zeros()))?;
            Ok(Example61Row {
                theta,
                delta: deficit(&z.polygon, &z.tension),
                beta_star_sq: bs.beta_star_sq,
                m: z.m,
                area_gap: z.area_gap,
                phi: crate::functionals::surface_energy(&z.polygon, &z.tension),
                closed_form_delta: z.closed_form_deficit(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let delta_fit = fit_rate(&rows.iter().map(|r| (r.theta, r.delta)).collect::<Vec<_>>())?;
    Ok(Example61 {
        teeth,
        rows,
        delta_fit,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Example62Row {
    pub r: f64,
    pub nodes: usize,
    pub vertices: usize,
    pub delta: f64,
    pub beta_star: f64,
    pub beta_star_sq: f64,
    pub wulff_poly_deficit: f64,
    pub area_excess: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Example62 {
    pub p: f64,
    pub q: f64,
    pub rows: Vec<Example62Row>,
    pub delta_fit: RateFit,
    pub beta_star_fit: RateFit,
}

impl Example62 {
    pub fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(&[
            "r",
            "nodes",
            "vertices",
            "delta",
            "beta_star",
            "beta_star_sq",
            "wulff_poly_deficit",
            "area_excess",
        ]);
        for r in &self.rows {
            t.push(vec![
                r.r,
                r.nodes as f64,
                r.vertices as f64,
                r.delta,
                r.beta_star,
                r.beta_star_sq,
                r.wulff_poly_deficit,
                r.area_excess,
            ]);
        }
        t
    }

    /// `δ / β*^σ` along the sweep, in increasing `r`.
    pub fn ratios(&self, sigma: f64) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| r.delta / r.beta_star.powf(sigma))
            .collect()
    }
}

/// Default resolution target for the cone family: the node polygon of `K`
/// has deficit below this fraction of `r^{q+1}`.
pub const CONE_DEFICIT_FRACTION: f64 = 0.002;

/// ℓᵖ-cone sweep over log-spaced `r`; `β*` at the symmetry center.
pub fn example62(p: f64, r_min: f64, r_max: f64, steps: usize) -> Result<Example62> {
    let rs = log_space(r_min, r_max, steps)?;
    let rows = rs
        .par_iter()
        .map(|&r| {
            let c = lp_cone_auto(p, r, CONE_DEFICIT_FRACTION)?;
            let bs = beta_star(&c.polygon, &c.tension, Some(Vec2::zeros()))?;
            Ok(Example62Row {
                r,
                nodes: c.n,
                vertices: c.polygon.len(),
                delta: deficit(&c.polygon, &c.tension),
                beta_star: bs.beta_star,
                beta_star_sq: bs.beta_star_sq,
                wulff_poly_deficit: c.wulff_poly_deficit,
                area_excess: c.polygon.area() - c.wulff_poly.area(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let delta_fit = fit_rate(&rows.iter().map(|r| (r.r, r.delta)).collect::<Vec<_>>())?;
    let beta_star_fit = fit_rate(&rows.iter().map(|r| (r.r, r.beta_star)).collect::<Vec<_>>())?;
    Ok(Example62 {
        p,
        q: p / (p - 1.0),
        rows,
        delta_fit,
        beta_star_fit,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MixedInequalityRow {
    pub r: f64,
    pub delta: f64,
    pub beta: f64,
    pub beta_star_sq: f64,
    /// `P(E) / (2 |K|^½ |E|^½)` with the Euclidean perimeter.
    pub perimeter_ratio: f64,
    /// `β*^{(2+γ)/2} / ((P/(2|K|^½|E|^½))^{γ/4} β)`.
    pub constant: f64,
}

/// Empirical constant of `β*^{(2+γ)/2} ≤ C (P/(2|K|^½|E|^½))^{γ/4} β` on the
/// ℓᵖ cone family, `γ = p - 2`.
pub fn mixed_inequality(p: f64, rs: &[f64]) -> Result<Vec<MixedInequalityRow>> {
    let g = p - 2.0;
    rs.par_iter()
        .map(|&r| {
            let c = lp_cone_auto(p, r, CONE_DEFICIT_FRACTION)?;
            let e = &c.polygon;
            // E_r is symmetric about both axes; start the center search there
            let d = e.diameter();
            let seeds = [
                Vec2::zeros(),
                Vec2::new(0.05 * d, 0.0),
                Vec2::new(0.0, 0.05 * d),
            ];
            let b = beta_with_gamma(e, &c.tension, gamma_from_seeds(e, &c.tension, &seeds)?)?;
            let bs = beta_star(e, &c.tension, Some(Vec2::zeros()))?;
            let pr = e.perimeter() / (2.0 * (c.tension.wulff_area() * e.area()).sqrt());
            Ok(MixedInequalityRow {
                r,
                delta: deficit(e, &c.tension),
                beta: b.beta,
                beta_star_sq: bs.beta_star_sq,
                perimeter_ratio: pr,
                constant: bs.beta_star.powf(1.0 + 0.5 * g) / (pr.powf(0.25 * g) * b.beta),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FugledeRow {
    pub mode: usize,
    pub eps: f64,
    pub energy_gap: f64,
    pub second_variation: f64,
    pub remainder: f64,
    pub slope: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Fuglede {
    pub a11: f64,
    pub a22: f64,
    pub nodes: usize,
    pub rows: Vec<FugledeRow>,
    /// `(mode, B(cos(mode t)))` at unit amplitude.
    pub second_variations: Vec<(usize, f64)>,
}

impl Fuglede {
    pub fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(&[
            "mode",
            "eps",
            "energy_gap",
            "second_variation",
            "remainder",
            "slope",
        ]);
        for r in &self.rows {
            t.push(vec![
                r.mode as f64,
                r.eps,
                r.energy_gap,
                r.second_variation,
                r.remainder,
                r.slope,
            ]);
        }
        t
    }

    pub fn slope(&self, mode: usize) -> Option<f64> {
        self.rows.iter().find(|r| r.mode == mode).map(|r| r.slope)
    }
}

/// Expansion remainders for `u = cos(k t)` on the ellipse `diag(a11, a22)`.
pub fn fuglede(
    a11: f64,
    a22: f64,
    modes: &[usize],
    eps_list: &[f64],
    nodes: usize,
) -> Result<Fuglede> {
    let t = SurfaceTension::diagonal(a11, a22)?;
    let b = boundary_param(&t, nodes)?;
    let per_mode = modes
        .par_iter()
        .map(|&k| {
            let u = b.sample(|s| (k as f64 * s).cos());
            let ex = expansion_check(&b, &u, eps_list)?;
            let bv = crate::elliptic::second_variation(&b, &u)?;
            let rows: Vec<FugledeRow> = ex
                .rows
                .iter()
                .map(|r| FugledeRow {
                    mode: k,
                    eps: r.eps,
                    energy_gap: r.energy_gap,
                    second_variation: r.second_variation,
                    remainder: r.remainder,
                    slope: ex.fit.slope,
                })
                .collect();
            Ok((rows, (k, bv)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut second_variations = Vec::new();
    for (r, bv) in per_mode {
        rows.extend(r);
        second_variations.push(bv);
    }
    Ok(Fuglede {
        a11,
        a22,
        nodes,
        rows,
        second_variations,
    })
}

/// Random profile with modes 2–8, scaled to `‖u‖_{C¹} = c1`.
pub fn band_limited_profile<R: Rng>(rng: &mut R, b: &BoundaryParam, c1: f64) -> Result<Vec<f64>> {
    let coef: Vec<(f64, f64)> = (2..=8)
        .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let raw = b.sample(|t| {
        coef.iter()
            .enumerate()
            .map(|(j, (a, s))| {
                let k = (j + 2) as f64;
                a * (k * t).cos() + s * (k * t).sin()
            })
            .sum()
    });
    let norm = c1_norm(b, &raw)?;
    Ok(raw.iter().map(|v| v * c1 / norm).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilitySuite {
    pub c1: f64,
    pub samples: Vec<StabilitySample>,
    pub max_ratio: f64,
}

/// `‖u‖²_{H¹}/δ` over `count` constrained random profiles.
pub fn fuglede_stability(
    t: &SurfaceTension,
    nodes: usize,
    count: usize,
    c1: f64,
    seed: u64,
) -> Result<StabilitySuite> {
    let b = boundary_param(t, nodes)?;
    let samples = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i);
            let u = band_limited_profile(&mut rng, &b, c1)?;
            stability_sample(&b, &u)
        })
        .collect::<Result<Vec<_>>>()?;
    let max_ratio = samples.iter().map(|s| s.ratio).fold(0.0, f64::max);
    Ok(StabilitySuite {
        c1,
        samples,
        max_ratio,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub cases: usize,
    pub violations: usize,
    /// Worst margin observed (negative means violated).
    pub worst_margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzCase {
    pub case: usize,
    pub tension: String,
    pub vertices: usize,
    pub deficit: f64,
    pub fenchel_margin: f64,
    pub invariance_margin: f64,
    pub fan_margin: f64,
    pub beta_margin: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub count: usize,
    pub passed: bool,
    pub checks: Vec<CheckSummary>,
    #[serde(skip)]
    pub cases: Vec<FuzzCase>,
}

impl FuzzSummary {
    pub fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(&[
            "case",
            "vertices",
            "deficit",
            "fenchel_margin",
            "invariance_margin",
            "fan_margin",
            "beta_margin",
        ]);
        for c in &self.cases {
            t.push(vec![
                c.case as f64,
                c.vertices as f64,
                c.deficit,
                c.fenchel_margin,
                c.invariance_margin,
                c.fan_margin,
                c.beta_margin.unwrap_or(f64::NAN),
            ]);
        }
        t
    }
}

/// Every eighth case also runs the (more expensive) β checks.
const BETA_EVERY: usize = 8;

fn fuzz_case(seed: u64, i: usize) -> Result<FuzzCase> {
    let mut rng = case_rng(seed, i as u64);
    let t = random_tension(&mut rng, i);
    let n = rng.gen_range(4..16);
    let p = random_star_polygon(&mut rng, n, 0.3, 1.7);
    let d = deficit(&p, &t);

    let mut fenchel_margin = f64::INFINITY;
    for _ in 0..32 {
        let x = Vec2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let nu = Vec2::new(a.cos(), a.sin());
        fenchel_margin = fenchel_margin.min(t.gauge(x) * t.tension(nu) - x.dot(&nu) + 1e-12);
    }

    let s = rng.gen_range(0.1..10.0);
    let v = Vec2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
    let moved = Polygon::new(p.vertices().iter().map(|x| x * s + v).collect())?;
    let invariance_margin = 1e-8 * d.abs().max(1.0) - (deficit(&moved, &t) - d).abs();

    let y = p.barycenter() + Vec2::new(rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2));
    let i0 = gauge_inverse_integral(&p, &t, y)?.value;
    let i1 = gauge_inverse_integral(&moved, &t, y * s + v)?.value;
    let fan_margin = 1e-10 * (s * i0).abs() - (i1 - s * i0).abs();

    let beta_margin = if i.is_multiple_of(BETA_EVERY) {
        let b = beta(&p, &t)?;
        let bb = beta_boundary(&p, &t, b.gamma.center)?;
        let chain = poincare_chain(&p, &t, &b, DEFAULT_WULFF_RESOLUTION)?.margin + 1e-6;
        let decomposition =
            1e-6 * b.beta_sq_raw.abs().max(1.0) - (bb.beta.powi(2) - b.beta.powi(2)).abs();
        Some(chain.min(decomposition))
    } else {
        None
    };

    Ok(FuzzCase {
        case: i,
        tension: t.label(),
        vertices: p.len(),
        deficit: d,
        fenchel_margin,
        invariance_margin,
        fan_margin,
        beta_margin,
    })
}

/// Randomized invariant suite; deterministic for a fixed seed.
pub fn fuzz(seed: u64, count: usize) -> Result<FuzzSummary> {
    if count == 0 {
        return Err(WulffError::InvalidConfig(
            "fuzz count must be positive".into(),
        ));
    }
    let cases = (0..count)
        .into_par_iter()
        .map(|i| fuzz_case(seed, i))
        .collect::<Result<Vec<_>>>()?;
    let summarize = |name: &str, margins: Vec<f64>| {
        let violations = margins.iter().filter(|m| !(**m >= 0.0)).count();
        CheckSummary {
            name: name.into(),
            cases: margins.len(),
            violations,
            worst_margin: margins.iter().copied().fold(f64::INFINITY, f64::min),
        }
    };
    let checks = vec![
        summarize(
            "wulff_inequality",
            cases.iter().map(|c| c.deficit + 1e-8).collect(),
        ),
        summarize("fenchel", cases.iter().map(|c| c.fenchel_margin).collect()),
        summarize(
            "deficit_invariance",
            cases.iter().map(|c| c.invariance_margin).collect(),
        ),
        summarize(
            "fan_covariance",
            cases.iter().map(|c| c.fan_margin).collect(),
        ),
        summarize(
            "beta_chain_and_decomposition",
            cases.iter().filter_map(|c| c.beta_margin).collect(),
        ),
    ];
    let passed = checks.iter().all(|c| c.violations == 0);
    Ok(FuzzSummary {
        seed,
        count,
        passed,
        checks,
        cases,
    })
}
