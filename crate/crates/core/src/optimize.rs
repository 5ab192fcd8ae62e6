//! Derivative-free minimization in the plane: Nelder–Mead with a
//! deterministic multistart driver.

use rayon::prelude::*;
use serde::Serialize;

use crate::Vec2;

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Edge length of the initial simplex.
    pub initial_step: f64,
    /// Stop when the simplex diameter falls below this.
    pub x_tol: f64,
    pub max_evals: usize,
}

impl SimplexOptions {
    pub fn scaled(diam: f64) -> Self {
        SimplexOptions {
            initial_step: 0.1 * diam,
            x_tol: 1e-8 * diam,
            max_evals: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SimplexResult {
    #[serde(with = "crate::io::vec2_serde")]
    pub x: Vec2,
    pub f: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Minimize `f` from `start`. Non-finite objective values are treated as
/// `+inf`, so an objective may reject points by returning NaN or infinity.
pub fn nelder_mead<F: Fn(Vec2) -> f64>(f: F, start: Vec2, opts: &SimplexOptions) -> SimplexResult {
    let eval = |x: Vec2| {
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };
    let h = opts.initial_step;
    let mut pts = [
        start,
        start + Vec2::new(h, 0.0),
        start + Vec2::new(0.5 * h, 0.866_025_403_784_438_6 * h),
    ];
    let mut vals = [eval(pts[0]), eval(pts[1]), eval(pts[2])];
    let mut evals = 3;
    let mut converged = false;

    while evals < opts.max_evals {
        // order: best, middle, worst
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        pts = [pts[idx[0]], pts[idx[1]], pts[idx[2]]];
        vals = [vals[idx[0]], vals[idx[1]], vals[idx[2]]];

        let size = (pts[1] - pts[0]).norm().max((pts[2] - pts[0]).norm());
        if size <= opts.x_tol {
            converged = true;
            break;
        }

        let centroid = 0.5 * (pts[0] + pts[1]);
        let xr = centroid + (centroid - pts[2]);
        let fr = eval(xr);
        evals += 1;
        if fr < vals[0] {
            let xe = centroid + 2.0 * (centroid - pts[2]);
            let fe = eval(xe);
            evals += 1;
            if fe < fr {
                pts[2] = xe;
                vals[2] = fe;
            } else {
                pts[2] = xr;
                vals[2] = fr;
            }
            continue;
        }
        if fr < vals[1] {
            pts[2] = xr;
            vals[2] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[2] {
            let xc = centroid + 0.5 * (xr - centroid);
            (xc, eval(xc))
        } else {
            let xc = centroid + 0.5 * (pts[2] - centroid);
            (xc, eval(xc))
        };
        evals += 1;
        if fc < vals[2].min(fr) {
            pts[2] = xc;
            vals[2] = fc;
            continue;
        }
        // shrink towards the best vertex
        for i in 1..3 {
            pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
            vals[i] = eval(pts[i]);
        }
        evals += 2;
    }

    let best = (0..3).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap();
    SimplexResult {
        x: pts[best],
        f: vals[best],
        evals,
        converged,
    }
}

/// Outcome of a multistart run. `runs` are in seed order.
#[derive(Debug, Clone, Serialize)]
pub struct Multistart {
    pub best: SimplexResult,
    pub runs: Vec<SimplexResult>,
}

impl Multistart {
    pub fn starts(&self) -> usize {
        self.runs.len()
    }

    pub fn all_converged(&self) -> bool {
        self.runs.iter().all(|r| r.converged)
    }
}

/// Run one simplex descent per seed (concurrently) and keep the minimum.
/// Ties are broken lexicographically on the witness so the result does not
/// depend on scheduling.
pub fn multistart<F>(f: F, seeds: &[Vec2], opts: &SimplexOptions) -> Multistart
where
    F: Fn(Vec2) -> f64 + Sync,
{
    assert!(!seeds.is_empty());
    let runs: Vec<SimplexResult> = seeds
        .par_iter()
        .map(|&s| nelder_mead(&f, s, opts))
        .collect();
    let best = *runs
        .iter()
        .min_by(|a, b| {
            a.f.total_cmp(&b.f)
                .then(a.x.x.total_cmp(&b.x.x))
                .then(a.x.y.total_cmp(&b.x.y))
        })
        .unwrap();
    Multistart { best, runs }
}

/// Golden-section search for a minimum of a unimodal `f` on `[lo, hi]`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = hi - g * (hi - lo);
    let mut d = lo + g * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}
