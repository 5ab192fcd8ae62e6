//! Planar anisotropic isoperimetry.
//!
//! Surface tensions and their Wulff shapes, the anisotropic surface energy of
//! polygons, and the stability functionals built on top of it: deficit,
//! asymmetry, the gauge-weighted volume `gamma` with its center, and the two
//! oscillation indices. The `elliptic` module handles nearly-Wulff
//! perturbations of smooth (quadratic) tensions, and `experiments` holds the
//! example families, rate fits and randomized suites driven by the CLI.
//!
//! Everything is two-dimensional and works on simple polygons.

// `!(x > 0.0)` is used on purpose so that NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod anisotropy;
pub mod elliptic;
pub mod error;
pub mod experiments;
pub mod functionals;
pub mod io;
pub mod optimize;
pub mod polygeom;
pub mod quadrature;

pub use nalgebra::{Matrix2 as Mat2, Vector2 as Vector};

/// Planar point / vector type used throughout the crate.
pub type Vec2 = nalgebra::Vector2<f64>;

pub use anisotropy::{SurfaceTension, TensionBounds, WulffShape};
pub use error::{Result, WulffError};
pub use functionals::IsoperimetricReport;
pub use polygeom::Polygon;

/// z-component of the cross product.
#[inline]
pub fn cross(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Rotate by -90 degrees: the outward normal direction of a CCW edge.
#[inline]
pub(crate) fn right_perp(d: Vec2) -> Vec2 {
    Vec2::new(d.y, -d.x)
}

pub mod prelude {
    pub use crate::anisotropy::{SurfaceTension, TensionBounds, WulffShape};
    pub use crate::error::{Result, WulffError};
    pub use crate::functionals::{self, FunctionalOptions, IsoperimetricReport};
    pub use crate::polygeom::{self, Polygon};
    pub use crate::{cross, Vec2};
}
