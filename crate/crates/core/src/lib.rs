//! Dynamics of the exponential family `f_a(z) = e^z + a` and of Fatou's
//! function `f(z) = z + 1 + e^{-z}`.
//!
//! - [`tower`]: magnitudes as towers of exponentials, so orbit sizes and the
//!   iterated maximum modulus `M^n(R)` stay comparable past `f64` range.
//! - [`expmap`]: evaluation, orbits and `M(r)` for `e^z + a`.
//! - [`classify`]: basin / bounded / slow / fast escaping seeds, and
//!   attracting / parabolic / postsingularly finite parameters.
//! - [`symbolic`]: strip itineraries, external addresses, hair tracing by
//!   inverse branches, endpoint estimates and the escape-rate constants.
//! - [`fatou`]: Fatou's function and its semiconjugacy to `w e^{-w} / e`.
//! - [`render`]: deterministic parallel rasterizer and PGM output.
//! - [`verify`]: self-check suites behind `expbouquet verify`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::approx_constant)]

pub mod classify;
pub mod cli;
pub mod error;
pub mod expmap;
pub mod fatou;
pub mod fmt;
pub mod render;
pub mod symbolic;
pub mod tower;
pub mod verify;

pub use classify::{
    classify_param, classify_point, fast_escape_test, find_cycle, Cycle, ParamClass, PointClass,
    PointClassifier,
};
pub use error::{Error, Result};
pub use expmap::{m_iterates, max_modulus, orbit, OrbitSample, Params};
pub use num_complex::Complex64;
pub use tower::TowerReal;
