//! Escape-rate constants and tests built on top of the orbit machinery:
//! the separation constant `lambda`, the domination index of a fast escaping
//! orbit over a slower one, and membership in the closed Fatou set
//! `f_a^{-1}(D u sigma)` with `D = {|z - a| <= e^{-c}}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::classify::{PointClass, PointClassifier, DEFAULT_BAILOUT};
use crate::error::{Error, Result};
use crate::expmap::{self, magnitude_track, OrbitSample, Params};

/// Half-plane depth `c`, strip height `delta` and slack `kappa`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationConfig {
    pub c: f64,
    pub delta: f64,
    pub kappa: f64,
}

impl SeparationConfig {
    /// Requires `c >= 1`, `delta >= 2 pi`, `kappa > 0`.
    pub fn new(c: f64, delta: f64, kappa: f64) -> Result<Self> {
        if !(c >= 1.0 && c.is_finite()) {
            return Err(Error::Precondition(format!("c = {c} must be at least 1")));
        }
        if !(delta >= 2.0 * PI && delta.is_finite()) {
            return Err(Error::Precondition(format!(
                "delta = {delta} must be at least 2 pi"
            )));
        }
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::Precondition(format!(
                "kappa = {kappa} must be positive"
            )));
        }
        Ok(SeparationConfig { c, delta, kappa })
    }
}

/// `lambda = max{R, c, ln(1 + 2(|a| + delta)), ln(5 + |a|)} + 6`.
pub fn compute_lambda(p: &Params, cfg: &SeparationConfig) -> f64 {
    let abs_a = p.a().norm();
    [
        p.radius(),
        cfg.c,
        (1.0 + 2.0 * (abs_a + cfg.delta)).ln(),
        (5.0 + abs_a).ln(),
    ]
    .into_iter()
    .fold(f64::NEG_INFINITY, f64::max)
        + 6.0
}

/// Least `n <= depth` with `|f^n(s)| > 2|f^n(z0)| + kappa` and
/// `Re f^n(s) > 0`.
///
/// `s` must classify as fast escaping and `z0` must not. Magnitudes are
/// compared as towers. Past overflow the sign of the real part is read from
/// the last in-range step (`Re f^{n}(s)` has the sign of `cos Im f^{n-1}(s)`)
/// and taken as positive afterwards, when the orbit only grows along the
/// real direction.
pub fn find_domination_index(
    p: &Params,
    s: Complex64,
    z0: Complex64,
    kappa: f64,
    depth: usize,
) -> Result<Option<usize>> {
    if !(kappa > 0.0) {
        return Err(Error::Precondition(format!(
            "kappa = {kappa} must be positive"
        )));
    }
    let classifier = PointClassifier::new(*p);
    let class_depth = depth.max(10);
    let s_class = classifier.classify(s, class_depth, DEFAULT_BAILOUT)?;
    if !matches!(s_class, PointClass::FastEscaping { .. }) {
        return Err(Error::Precondition(format!(
            "s = {s} is not fast escaping ({})",
            s_class.tag()
        )));
    }
    let z_class = classifier.classify(z0, class_depth, DEFAULT_BAILOUT)?;
    if matches!(z_class, PointClass::FastEscaping { .. }) {
        return Err(Error::Precondition(format!("z0 = {z0} is fast escaping")));
    }

    let fast = magnitude_track(p, s, depth);
    let slow = magnitude_track(p, z0, depth);
    Ok((0..=depth).find(|&n| {
        let rhs = slow[n].magnitude.affine(2.0, kappa);
        fast[n].magnitude.cmp_tower(&rhs).is_gt() && real_part_positive(&fast, n)
    }))
}

fn real_part_positive(track: &[OrbitSample], n: usize) -> bool {
    match (track[n].z, n.checked_sub(1).and_then(|m| track[m].z)) {
        (Some(z), _) => z.re > 0.0,
        (None, Some(prev)) => prev.im.cos() > 0.0,
        (None, None) => true,
    }
}

/// Polyline standing in for the arc `sigma` inside the immediate basin.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline(Vec<Complex64>);

impl Polyline {
    /// At least two vertices with strictly increasing real parts.
    pub fn new(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Precondition("polyline needs two vertices".into()));
        }
        if vertices.windows(2).any(|w| !(w[1].re > w[0].re)) {
            return Err(Error::Precondition(
                "polyline real parts must increase".into(),
            ));
        }
        Ok(Polyline(vertices))
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.0
    }

    /// Euclidean distance from `w` to the polyline.
    pub fn distance(&self, w: Complex64) -> f64 {
        self.0
            .windows(2)
            .map(|seg| {
                let (u, v) = (seg[0], seg[1]);
                let d = v - u;
                let t = ((w - u).re * d.re + (w - u).im * d.im) / d.norm_sqr();
                (w - (u + d * t.clamp(0.0, 1.0))).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Distance within which `f_a(z)` counts as lying on `sigma`.
pub const ARC_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prop4Membership {
    /// `Re z <= -c`, equivalently `|f_a(z) - a| <= e^{-c}`.
    InHalfPlane,
    /// `f_a(z)` lies on `sigma`.
    InArc,
    Outside,
}

/// Membership of `z` in `f_a^{-1}(D u sigma)`.
pub fn prop4_membership(
    p: &Params,
    cfg: &SeparationConfig,
    sigma: Option<&Polyline>,
    z: Complex64,
) -> Prop4Membership {
    if z.re <= -cfg.c {
        return Prop4Membership::InHalfPlane;
    }
    match (sigma, expmap::eval(p, z)) {
        (Some(arc), Ok(w)) if arc.distance(w) <= ARC_TOL => Prop4Membership::InArc,
        _ => Prop4Membership::Outside,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const ATTRACTING_FP: f64 = -1.841_405_660_436_960_6;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(re: f64, im: f64) -> Params {
        Params::new(c(re, im)).unwrap()
    }

    #[test]
    fn lambda_examples() {
        let p = params(-2.0, 0.0);
        let cfg = SeparationConfig::new(3.0, 2.0 * PI + 1.0, 1.0).unwrap();
        assert_eq!(compute_lambda(&p, &cfg), 13.0);
        let cfg0 = SeparationConfig::new(3.0, 2.0 * PI, 1.0).unwrap();
        assert_eq!(compute_lambda(&params(0.0, 0.0), &cfg0), 9.0);
        let big_c = SeparationConfig::new(20.0, 2.0 * PI + 1.0, 1.0).unwrap();
        assert_eq!(compute_lambda(&p, &big_c), 26.0);
    }

    #[test]
    fn config_validation() {
        assert!(SeparationConfig::new(0.5, 7.0, 1.0).is_err());
        assert!(SeparationConfig::new(3.0, 6.0, 1.0).is_err());
        assert!(SeparationConfig::new(3.0, 7.0, 0.0).is_err());
    }

    #[test]
    fn domination_examples() {
        let p = params(-2.0, 0.0);
        let s = c(10.0, 0.0);
        let z0 = c(ATTRACTING_FP, 0.0);
        assert_eq!(
            find_domination_index(&p, s, z0, 1000.0, 20).unwrap(),
            Some(1)
        );
        assert_eq!(
            find_domination_index(&p, s, z0, 30000.0, 20).unwrap(),
            Some(2)
        );
        assert!(matches!(
            find_domination_index(&p, z0, z0, 1000.0, 20),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            find_domination_index(&p, s, s, 1000.0, 20),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn domination_rejects_fast_reference_orbit() {
        // 1.2 is fast escaping with offset 4
        let p = params(-2.0, 0.0);
        assert!(find_domination_index(&p, c(10.0, 0.0), c(1.2, 0.0), 1.0, 20).is_err());
    }

    #[test]
    fn halfplane_examples() {
        let p = params(-2.0, 0.0);
        let cfg = SeparationConfig::new(3.0, 2.0 * PI, 1.0).unwrap();
        assert_eq!(
            prop4_membership(&p, &cfg, None, c(-5.0, 0.0)),
            Prop4Membership::InHalfPlane
        );
        assert_eq!(
            prop4_membership(&p, &cfg, None, c(-3.0, 0.0)),
            Prop4Membership::InHalfPlane
        );
        assert_eq!(
            prop4_membership(&p, &cfg, None, c(0.0, 0.0)),
            Prop4Membership::Outside
        );
    }

    #[test]
    fn arc_membership() {
        let p = params(-2.0, 0.0);
        let cfg = SeparationConfig::new(3.0, 2.0 * PI, 1.0).unwrap();
        // the real ray from a to the right, inside the immediate basin
        let sigma = Polyline::new(vec![c(-2.0, 0.0), c(-1.9, 0.0)]).unwrap();
        // f(z) = e^z - 2 lies on [-2, -1.9] for real z <= ln 0.1
        let z = c(0.1f64.ln() - 0.5, 0.0);
        assert_eq!(
            prop4_membership(&p, &cfg, Some(&sigma), z),
            Prop4Membership::InArc
        );
        assert_eq!(
            prop4_membership(&p, &cfg, Some(&sigma), c(0.0, 0.0)),
            Prop4Membership::Outside
        );
        assert!(Polyline::new(vec![c(1.0, 0.0), c(0.0, 1.0)]).is_err());
    }

    #[test]
    fn halfplane_matches_direct_modulus_test() {
        let p = params(-2.0, 0.0);
        let cfg = SeparationConfig::new(3.0, 2.0 * PI, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..1000 {
            let z = c(rng.gen_range(-10.0..4.0), rng.gen_range(-10.0..10.0));
            let direct = z.exp().norm() <= (-cfg.c).exp();
            let member = prop4_membership(&p, &cfg, None, z) == Prop4Membership::InHalfPlane;
            assert_eq!(direct, member, "{z}");
        }
    }
}
