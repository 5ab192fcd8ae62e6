//! Gauss–Legendre rules and a segment integrator for integrands that are
//! nearly singular at the origin (`1/f*(s)` along a segment `s(u) = a + u d`).
//!
//! A segment is cut at caller-supplied breakpoints (kinks of the integrand),
//! then geometrically graded towards its closest point to the origin so that
//! every piece sees the singularity at a distance of at least half its
//! length. Each piece is integrated with a 16-point rule, checked against the
//! 8-point rule and bisected when they disagree.

use std::sync::OnceLock;

use crate::Vec2;

/// Nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Newton iteration on the Legendre recurrence.
    pub fn legendre(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { x } else { p1 };
                let pm = if n == 1 { 1.0 } else { p0 };
                dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussRule { nodes, weights }
    }

    /// Integral of `g` over `[lo, hi]`.
    pub fn apply<F: FnMut(f64) -> f64>(&self, lo: f64, hi: f64, mut g: F) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(mid + half * x))
            .sum::<f64>()
            * half
    }
}

pub fn gl16() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::legendre(16))
}

pub fn gl8() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::legendre(8))
}

/// Result of a one-dimensional integration.
#[derive(Debug, Clone, Copy, Default)]
pub struct Quad {
    pub value: f64,
    pub evals: usize,
}

impl std::ops::AddAssign for Quad {
    fn add_assign(&mut self, rhs: Self) {
        self.value += rhs.value;
        self.evals += rhs.evals;
    }
}

const REL_TOL: f64 = 1e-12;
const ABS_TOL: f64 = 1e-15;
const MAX_DEPTH: u32 = 40;

fn adapt<F: FnMut(f64) -> f64>(g: &mut F, lo: f64, hi: f64, depth: u32, out: &mut Quad) {
    let whole = gl16().apply(lo, hi, &mut *g);
    out.evals += 16;
    refine(g, lo, hi, whole, depth, out);
}

/// The error of `whole` is estimated by the two-half 16-point sum.
fn refine<F: FnMut(f64) -> f64>(
    g: &mut F,
    lo: f64,
    hi: f64,
    whole: f64,
    depth: u32,
    out: &mut Quad,
) {
    let mid = 0.5 * (lo + hi);
    let left = gl16().apply(lo, mid, &mut *g);
    let right = gl16().apply(mid, hi, &mut *g);
    out.evals += 32;
    let halves = left + right;
    let err = (halves - whole).abs();
    if err <= (REL_TOL * halves.abs()).max(ABS_TOL * (hi - lo)) || depth >= MAX_DEPTH {
        out.value += halves;
    } else {
        refine(g, lo, mid, left, depth + 1, out);
        refine(g, mid, hi, right, depth + 1, out);
    }
}

/// Adaptive Gauss–Legendre on `[lo, hi]` without any geometric grading.
pub fn integrate<F: FnMut(f64) -> f64>(mut g: F, lo: f64, hi: f64) -> Quad {
    let mut q = Quad::default();
    if hi > lo {
        adapt(&mut g, lo, hi, 0, &mut q);
    }
    q
}

/// Closest parameter of `a + u d` to the origin, clamped to `[lo, hi]`.
fn closest_param(a: Vec2, d: Vec2, lo: f64, hi: f64) -> f64 {
    let dd = d.norm_squared();
    if dd == 0.0 {
        return lo;
    }
    (-a.dot(&d) / dd).clamp(lo, hi)
}

/// Cut `[lo, hi]` into pieces whose distance to the origin is at least half
/// their length.
pub fn graded_pieces(a: Vec2, d: Vec2, lo: f64, hi: f64, out: &mut Vec<(f64, f64)>) {
    let dn = d.norm();
    let floor = 1e-15 * dn.max(a.norm());
    let mut stack = vec![(lo, hi)];
    while let Some((l, h)) = stack.pop() {
        let len = dn * (h - l);
        let uc = closest_param(a, d, l, h);
        let dist = (a + d * uc).norm().max(floor);
        if dist >= 0.5 * len || len <= floor {
            out.push((l, h));
            continue;
        }
        if uc > l && uc < h {
            stack.push((uc, h));
            stack.push((l, uc));
            continue;
        }
        let step = 2.0 * dist / dn;
        if uc <= l {
            let m = l + step;
            if m >= h {
                out.push((l, h));
            } else {
                stack.push((m, h));
                out.push((l, m));
            }
        } else {
            let m = h - step;
            if m <= l {
                out.push((l, h));
            } else {
                out.push((m, h));
                stack.push((l, m));
            }
        }
    }
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
}

/// Integrate `g(u)` over `u in [0, 1]` for the segment `a + u d`, splitting at
/// `breaks` (values outside (0, 1) are ignored) and grading towards the
/// origin. Pieces ending at a break are integrated after a power
/// substitution.
pub fn integrate_segment<F: FnMut(f64) -> f64>(a: Vec2, d: Vec2, breaks: &[f64], mut g: F) -> Quad {
    let mut cuts: Vec<f64> = Vec::with_capacity(breaks.len() + 2);
    cuts.push(0.0);
    cuts.extend(breaks.iter().copied().filter(|u| *u > 0.0 && *u < 1.0));
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut pieces = Vec::new();
    for w in cuts.windows(2) {
        graded_pieces(a, d, w[0], w[1], &mut pieces);
    }
    let is_kink = |u: f64| u > 0.0 && u < 1.0 && cuts.binary_search_by(|c| c.total_cmp(&u)).is_ok();
    let mut q = Quad::default();
    for (l, h) in pieces {
        match (is_kink(l), is_kink(h)) {
            (false, false) => adapt(&mut g, l, h, 0, &mut q),
            (true, false) => toward_kink(&mut g, l, h, &mut q),
            (false, true) => toward_kink(&mut g, h, l, &mut q),
            (true, true) => {
                let m = 0.5 * (l + h);
                toward_kink(&mut g, l, m, &mut q);
                toward_kink(&mut g, h, m, &mut q);
            }
        }
    }
    q
}

/// Power of the substitution `u = k + (e - k) τ^M` used next to a kink.
const KINK_POWER: i32 = 4;

/// `∫ g` between a kink `k` and `e`. The substitution flattens terms like
/// `|u - k|^q` with non-integer `q`, which the Gauss rules resolve poorly.
fn toward_kink<F: FnMut(f64) -> f64>(g: &mut F, k: f64, e: f64, out: &mut Quad) {
    let span = e - k;
    let m = KINK_POWER as f64;
    let mut h = |tau: f64| g(k + span * tau.powi(KINK_POWER)) * m * tau.powi(KINK_POWER - 1);
    let mut part = Quad::default();
    adapt(&mut h, 0.0, 1.0, 0, &mut part);
    out.value += part.value * span.abs();
    out.evals += part.evals;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules_integrate_polynomials_exactly() {
        for (rule, deg) in [(gl8(), 15), (gl16(), 31)] {
            let s: f64 = rule.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-14);
            let q = rule.apply(0.0, 1.0, |x| x.powi(deg));
            assert!((q - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "{q}");
        }
    }

    #[test]
    fn nearly_singular_segment() {
        // int_0^1 du / |(u, h)| = asinh(1/h)
        for h in [1e-1, 1e-4, 1e-9] {
            let a = Vec2::new(0.0, h);
            let d = Vec2::new(1.0, 0.0);
            let q = integrate_segment(a, d, &[], |u| 1.0 / (a + d * u).norm());
            let exact = (1.0 / h).asinh();
            assert!(
                (q.value - exact).abs() < 1e-12 * exact,
                "h={h}: {} vs {exact}",
                q.value
            );
        }
    }

    #[test]
    fn interior_closest_point_is_split() {
        let h = 1e-6;
        let a = Vec2::new(-0.3, h);
        let d = Vec2::new(1.0, 0.0);
        let q = integrate_segment(a, d, &[], |u| 1.0 / (a + d * u).norm());
        let exact = (0.3 / h).asinh() + (0.7 / h).asinh();
        assert!((q.value - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn graded_pieces_cover_interval() {
        let mut p = Vec::new();
        graded_pieces(Vec2::new(1e-8, 1e-9), Vec2::new(1.0, 0.2), 0.0, 1.0, &mut p);
        assert!((p[0].0).abs() < 1e-300);
        assert!((p.last().unwrap().1 - 1.0).abs() < 1e-15);
        for w in p.windows(2) {
            assert_eq!(w[0].1, w[1].0);
        }
    }
}
