//! The exponential family `f_a(z) = e^z + a`: evaluation, orbits with a
//! tower-valued magnitude track, and the maximum modulus `M(r)`.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fmt::sig17;
use crate::tower::TowerReal;

/// Largest real part for which `e^z` is evaluated directly.
pub const DIRECT_RE_LIMIT: f64 = 700.0;

/// Upper limit on escape radii accepted by [`orbit`].
pub const BAILOUT_GUARD: f64 = 1e15;

/// Samples used by the circle search in [`max_modulus`].
pub const CIRCLE_SAMPLES: usize = 4096;

/// Parameter `a` together with the escape base radius `R`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    a: Complex64,
    radius: f64,
}

impl Params {
    /// Uses the default radius `R = 3 + 2|a|`.
    pub fn new(a: Complex64) -> Result<Self> {
        Self::with_radius(a, Self::default_radius(a))
    }

    pub fn default_radius(a: Complex64) -> f64 {
        3.0 + 2.0 * a.norm()
    }

    /// Custom radius; requires `M(R) > R`.
    pub fn with_radius(a: Complex64, radius: f64) -> Result<Self> {
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "parameter a={a} is not finite"
            )));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidParams(format!(
                "radius {radius} must be positive"
            )));
        }
        let p = Params { a, radius };
        if max_modulus(&p, radius) <= radius {
            return Err(Error::InvalidParams(format!(
                "M(R) <= R for R={radius}; choose a larger radius"
            )));
        }
        Ok(p)
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// `e^z + a`.
pub fn eval(p: &Params, z: Complex64) -> Result<Complex64> {
    Ok(deriv(p, z)? + p.a)
}

/// `f_a'(z) = e^z`.
pub fn deriv(_p: &Params, z: Complex64) -> Result<Complex64> {
    if z.re > DIRECT_RE_LIMIT {
        return Err(Error::Overflow { re: z.re });
    }
    Ok(z.exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleStatus {
    InRange,
    /// Only the magnitude is known; the point itself left `f64` range.
    Overflowed,
}

impl SampleStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SampleStatus::InRange => "in-range",
            SampleStatus::Overflowed => "overflowed",
        }
    }
}

/// One step `z_n` of an orbit.
///
/// `magnitude` is `|z_n|` in tower form. While the sample is in range it
/// agrees with `|z|`; afterwards it is the only information kept.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitSample {
    pub n: usize,
    pub z: Option<Complex64>,
    pub magnitude: TowerReal,
    pub status: SampleStatus,
}

impl OrbitSample {
    pub(crate) fn in_range(n: usize, z: Complex64) -> Self {
        OrbitSample {
            n,
            z: Some(z),
            magnitude: TowerReal::from_real(z.norm()),
            status: SampleStatus::InRange,
        }
    }

    /// `ln |z_n|` as a tower.
    pub fn ln_magnitude(&self) -> Option<TowerReal> {
        self.magnitude.ln().ok()
    }

    /// Whether `|z_n|` exceeds `bound`.
    pub fn exceeds(&self, bound: f64) -> bool {
        self.magnitude
            .cmp_tower(&TowerReal::from_real(bound))
            .is_gt()
    }
}

/// Iterates `f_a` from `z0` for up to `depth` steps, stopping early once
/// `|z_n| > bailout`.
///
/// Returns samples `z_0, ..., z_m` with `m <= depth`. When a step starts from
/// `Re z > 700` the next sample is overflowed: its magnitude is `e^{Re z}`
/// (the relative correction `|1 + a e^{-z}|` is below `1e-300` there) and
/// its argument is dropped.
pub fn orbit(p: &Params, z0: Complex64, depth: usize, bailout: f64) -> Result<Vec<OrbitSample>> {
    if depth == 0 {
        return Err(Error::Precondition("orbit depth must be at least 1".into()));
    }
    if !(bailout > 0.0 && bailout <= BAILOUT_GUARD) {
        return Err(Error::Precondition(format!(
            "bailout {bailout} outside (0, {BAILOUT_GUARD}]"
        )));
    }
    Ok(trajectory(p, z0, depth, Some(bailout)))
}

/// Orbit without the bailout stop, continued past overflow.
///
/// The first overflowed sample `z_m = e^{w} + a` (from `Re w > 700`) still
/// has a known half-plane, the sign of `cos(Im w)`. Facing left, `e^{z_m}`
/// underflows and `z_{m+1} = a` exactly. Facing right,
/// `ln|z_{m+1}| = e^{Re w} cos(Im w)`. Beyond that the argument is lost and
/// the track assumes `|z_{n+1}| = e^{|z_n|}`, growth along the real
/// direction, which is how fast escaping orbits of `f_a` leave.
pub(crate) fn magnitude_track(p: &Params, z0: Complex64, steps: usize) -> Vec<OrbitSample> {
    trajectory(p, z0, steps, None)
}

fn overflowed(n: usize, magnitude: TowerReal) -> OrbitSample {
    OrbitSample {
        n,
        z: None,
        magnitude,
        status: SampleStatus::Overflowed,
    }
}

fn trajectory(p: &Params, z0: Complex64, depth: usize, bailout: Option<f64>) -> Vec<OrbitSample> {
    let mut samples = Vec::with_capacity(depth.min(256) + 1);
    let mut current = OrbitSample::in_range(0, z0);
    let mut launch: Option<Complex64> = None;
    samples.push(current);
    for n in 1..=depth {
        if bailout.is_some_and(|b| current.exceeds(b)) {
            break;
        }
        let next = match (current.z, launch) {
            (Some(z), _) if z.re > DIRECT_RE_LIMIT => {
                launch = Some(z);
                overflowed(n, TowerReal::from_real(z.re).exp())
            }
            (Some(z), _) => OrbitSample::in_range(n, z.exp() + p.a),
            (None, Some(w)) => {
                launch = None;
                let c = w.im.cos();
                if c <= 0.0 {
                    OrbitSample::in_range(n, p.a)
                } else {
                    let ln_ln = TowerReal::from_real(w.re + c.ln());
                    overflowed(n, ln_ln.exp().exp())
                }
            }
            (None, None) => overflowed(n, current.magnitude.exp()),
        };
        samples.push(next);
        current = next;
    }
    samples
}

/// Writes samples as CSV with header `n,re,im,log_level,log_mantissa,status`.
///
/// `log_level`/`log_mantissa` are the tower form of `|z_n|`; `re` and `im` are
/// empty for overflowed samples.
pub fn write_orbit_csv<W: Write>(mut out: W, samples: &[OrbitSample]) -> std::io::Result<()> {
    writeln!(out, "n,re,im,log_level,log_mantissa,status")?;
    for s in samples {
        let (re, im) = match s.z {
            Some(z) => (sig17(z.re), sig17(z.im)),
            None => (String::new(), String::new()),
        };
        writeln!(
            out,
            "{},{},{},{},{},{}",
            s.n,
            re,
            im,
            s.magnitude.level(),
            sig17(s.magnitude.mantissa()),
            s.status.as_str()
        )?;
    }
    Ok(())
}

/// Maximum modulus `M(r) = max{|f_a(z)| : |z| = r}`.
///
/// On the circle `|e^z| = e^{r cos t}` peaks only at `z = r`, where `e^z` is
/// real, so `e^r + |a|` is an upper bound that is generally not attained
/// (for `a = -2`, `M(r) = e^r - 2`). The maximum is located by sampling
/// [`CIRCLE_SAMPLES`] angles and refining the best local maxima by
/// golden-section search. Saturates to `+inf` once `e^r` overflows.
pub fn max_modulus(p: &Params, r: f64) -> f64 {
    if r > DIRECT_RE_LIMIT {
        return r.exp() + p.a.norm();
    }
    let modulus = |t: f64| (Complex64::from_polar(r, t).exp() + p.a).norm();
    let step = 2.0 * PI / CIRCLE_SAMPLES as f64;
    let values: Vec<f64> = (0..CIRCLE_SAMPLES)
        .map(|i| modulus(i as f64 * step))
        .collect();
    let n = values.len();
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| values[i] >= values[(i + n - 1) % n] && values[i] >= values[(i + 1) % n])
        .collect();
    peaks.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    peaks.truncate(8);
    peaks
        .into_iter()
        .map(|i| golden_max(&modulus, i as f64 * step - step, i as f64 * step + step))
        .fold(values.iter().copied().fold(0.0, f64::max), f64::max)
}

fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > 1e-13 {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    fc.max(fd)
}

/// `M^0(R), ..., M^n(R)` as towers.
///
/// Radii within direct range go through [`max_modulus`]; beyond it
/// `ln M(r) = r + O(|a| e^{-r})` and the step is a plain tower `exp`.
pub fn m_iterates(p: &Params, n: usize) -> Vec<TowerReal> {
    let mut out = Vec::with_capacity(n + 1);
    let mut m = TowerReal::from_real(p.radius);
    out.push(m);
    for _ in 0..n {
        m = if m.level() == 0 && m.mantissa() <= DIRECT_RE_LIMIT {
            TowerReal::from_real(max_modulus(p, m.mantissa()))
        } else {
            m.exp()
        };
        out.push(m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(re: f64, im: f64) -> Params {
        Params::new(Complex64::new(re, im)).unwrap()
    }

    // Frozen from an mpmath evaluation.
    const ATTRACTING_FP: f64 = -1.841_405_660_436_960_6;
    const REPELLING_FP: f64 = 1.146_193_220_620_582_6;

    #[test]
    fn eval_examples() {
        let p = params(-2.0, 0.0);
        assert_eq!(
            eval(&p, Complex64::new(0.0, 0.0)).unwrap(),
            Complex64::new(-1.0, 0.0)
        );
        let x = eval(&p, Complex64::new(REPELLING_FP, 0.0)).unwrap();
        assert!((x.re - REPELLING_FP).abs() < 1e-9);
        let q = params(5.0, 3.14);
        assert_eq!(
            eval(&q, Complex64::new(0.0, 0.0)).unwrap(),
            Complex64::new(6.0, 3.14)
        );
        assert!(matches!(
            eval(&p, Complex64::new(701.0, 0.0)),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn deriv_examples() {
        let p = params(-2.0, 0.0);
        assert_eq!(
            deriv(&p, Complex64::new(0.0, 0.0)).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let d = deriv(&p, Complex64::new(0.0, PI)).unwrap();
        assert!((d - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let d = deriv(&p, Complex64::new(1.0, PI / 2.0)).unwrap();
        assert!((d - Complex64::new(0.0, std::f64::consts::E)).norm() < 1e-9);
    }

    #[test]
    fn orbit_at_attracting_fixed_point() {
        let p = params(-2.0, 0.0);
        let o = orbit(&p, Complex64::new(ATTRACTING_FP, 0.0), 100, 1e10).unwrap();
        assert_eq!(o.len(), 101);
        assert!(o
            .iter()
            .all(|s| (s.z.unwrap().re - ATTRACTING_FP).abs() < 1e-9));
    }

    #[test]
    fn orbit_switches_to_magnitude_track() {
        let p = params(-2.0, 0.0);
        let o = orbit(&p, Complex64::new(10.0, 0.0), 3, BAILOUT_GUARD).unwrap();
        assert!((o[1].z.unwrap().re - 22_024.465_794_806_717).abs() < 1e-8);
        assert_eq!(o[2].status, SampleStatus::Overflowed);
        assert_eq!(o[2].magnitude.level(), 1);
        assert!((o[2].magnitude.mantissa() - 22_024.465_794_806_717).abs() < 1e-8);
        // bailout stops the orbit at the first overflowed sample
        assert_eq!(o.len(), 3);

        let track = magnitude_track(&p, Complex64::new(10.0, 0.0), 3);
        assert_eq!(track.len(), 4);
        assert_eq!(track[3].magnitude.level(), 2);
    }

    #[test]
    fn orbit_short_real() {
        let p = params(-2.0, 0.0);
        let o = orbit(&p, Complex64::new(0.0, 0.0), 2, 1e10).unwrap();
        let re: Vec<f64> = o.iter().map(|s| s.z.unwrap().re).collect();
        assert_eq!(re[..2], [0.0, -1.0]);
        assert!((re[2] + 1.632_120_558_828_557_7).abs() < 1e-12);
    }

    #[test]
    fn orbit_preconditions() {
        let p = params(-2.0, 0.0);
        assert!(orbit(&p, Complex64::new(0.0, 0.0), 0, 1e10).is_err());
        assert!(orbit(&p, Complex64::new(0.0, 0.0), 5, 1e16).is_err());
    }

    // Reference maxima from an mpmath search (dense sampling, then a root
    // of the angular derivative).
    #[test]
    fn max_modulus_examples() {
        let p = params(-2.0, 0.0);
        assert!((max_modulus(&p, 3.0) - 18.085_536_923_187_668).abs() < 1e-9);
        assert!((max_modulus(&p, PI) - 21.140_692_632_779_27).abs() < 1e-9);
        assert!((max_modulus(&p, 7.0) - 1_094.633_158_428_458_6).abs() < 1e-9);
        let q = params(5.0, 3.14);
        assert!((max_modulus(&q, 4.0) - 59.904_530_369_743_32).abs() < 1e-8);
        assert!((max_modulus(&q, PI) - 28.595_814_603_616_365).abs() < 1e-8);
        let r = params(1.004, 2.9);
        assert!((max_modulus(&r, 12.0) - 162_755.795_754_850_35).abs() < 1e-4);
    }

    #[test]
    fn max_modulus_below_triangle_bound() {
        for (re, im) in [(-2.0, 0.0), (5.0, 3.14), (2.06, 1.57), (0.0, 0.0)] {
            let p = params(re, im);
            for r in [0.5, 2.0, 4.0, 10.0] {
                let m = max_modulus(&p, r);
                assert!(m <= r.exp() + p.a().norm() + 1e-9);
                assert!(m >= r.exp() - p.a().norm());
            }
        }
    }

    #[test]
    fn m_iterates_examples() {
        let p = Params::with_radius(Complex64::new(-2.0, 0.0), 7.0).unwrap();
        let m = m_iterates(&p, 2);
        assert_eq!(m[0], TowerReal::from_real(7.0));
        // e^7 - 2
        assert!((m[1].mantissa() - 1_094.633_158_428_458_6).abs() < 1e-4);
        assert_eq!(m[2].level(), 1);
        assert!((m[2].mantissa() - m[1].mantissa()).abs() < 1e-6);
        assert_eq!(m_iterates(&p, 0), vec![TowerReal::from_real(7.0)]);
    }

    #[test]
    fn small_radius_uses_sampling() {
        let p = params(0.0, 0.0);
        assert_eq!(p.radius(), 3.0);
        // |e^z| on |z| = 3 peaks at z = 3.
        assert!((max_modulus(&p, 3.0) - 3f64.exp()).abs() < 1e-9 * 3f64.exp());
        let m = m_iterates(&p, 3);
        assert!(m.windows(2).all(|w| w[0].cmp_tower(&w[1]).is_lt()));
    }

    #[test]
    fn csv_layout() {
        let p = params(-2.0, 0.0);
        let o = orbit(&p, Complex64::new(10.0, 0.0), 3, BAILOUT_GUARD).unwrap();
        let mut buf = Vec::new();
        write_orbit_csv(&mut buf, &o).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,re,im,log_level,log_mantissa,status");
        assert_eq!(lines[1], "0,10,0,0,10,in-range");
        assert!(lines[3].starts_with("2,,,1,22024.46579480671"));
        assert!(lines[3].ends_with(",overflowed"));
    }

    #[test]
    fn rejects_bad_radius() {
        assert!(Params::with_radius(Complex64::new(-2.0, 0.0), -1.0).is_err());
        assert!(Params::with_radius(Complex64::new(f64::NAN, 0.0), 5.0).is_err());
    }

    #[test]
    fn overflow_keeps_the_half_plane_for_one_step() {
        let p = Params::new(Complex64::new(-2.0, 0.0)).unwrap();
        // facing left: e^{z_1} underflows and z_2 = a
        let left = magnitude_track(&p, Complex64::new(701.0, PI), 3);
        assert_eq!(left[1].status, SampleStatus::Overflowed);
        assert_eq!(left[2].z, Some(Complex64::new(-2.0, 0.0)));
        // facing right: ln ln |z_2| = 701
        let right = magnitude_track(&p, Complex64::new(701.0, 0.0), 3);
        assert_eq!(right[2].magnitude, TowerReal::from_parts(2, 701.0).unwrap());
        assert_eq!(right[3].magnitude, TowerReal::from_parts(3, 701.0).unwrap());
    }
}
