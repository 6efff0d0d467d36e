//! Orbit classes for seeds and parameters of `f_a`.
//!
//! Points are sorted into basin, bounded, slowly escaping and fast escaping
//! orbits. Fast escape means `|f^{l+n}(z)| >= M^n(R)` for every checkable `n`,
//! compared in tower form so the test keeps working after overflow.
//! Parameters are classified through the orbit of the singular value `a`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expmap::{
    self, m_iterates, magnitude_track, OrbitSample, Params, BAILOUT_GUARD, DIRECT_RE_LIMIT,
};
use crate::fmt::sig17;
use crate::tower::TowerReal;

/// Distance at which an orbit counts as having reached a cycle.
pub const CYCLE_DETECT_TOL: f64 = 1e-6;
/// Residual target for Newton refinement of cycles.
pub const CYCLE_REFINE_TOL: f64 = 1e-10;
/// Extra iterations a basin verdict must survive.
pub const BASIN_CONFIRM_STEPS: usize = 10;
/// Half-width of the band around `|multiplier| = 1` reported as parabolic.
pub const PARABOLIC_BAND: f64 = 1e-6;
/// Margin below 1 required for an attracting multiplier.
pub const ATTRACTING_MARGIN: f64 = 1e-9;
/// Two singular-orbit points closer than this are the same point.
pub const REVISIT_TOL: f64 = 1e-10;
/// Minimum number of tower comparisons behind a fast-escape verdict.
pub const MIN_VERIFIED_DEPTH: usize = 3;
/// Default escape radius for point classification and rendering.
pub const DEFAULT_BAILOUT: f64 = 1e10;
/// Default cycle-period search limit.
pub const DEFAULT_MAX_PERIOD: usize = 64;

const NEWTON_MAX_STEPS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PointClass {
    /// Converged to an attracting cycle of the given period.
    Basin {
        period: usize,
    },
    /// Stayed below the escape radius for `depth` steps; `bound` is the
    /// largest modulus seen.
    NonEscapingBounded {
        depth: usize,
        bound: f64,
    },
    EscapingSlow {
        first_exit_step: usize,
    },
    /// `|f^{offset+n}(z)| >= M^n(R)` for `n = 0..=verified_depth`.
    FastEscaping {
        offset: usize,
        verified_depth: usize,
        first_exit_step: usize,
    },
    Undecided,
}

impl PointClass {
    pub fn tag(&self) -> &'static str {
        match self {
            PointClass::Basin { .. } => "Basin",
            PointClass::NonEscapingBounded { .. } => "NonEscapingBounded",
            PointClass::EscapingSlow { .. } => "EscapingSlow",
            PointClass::FastEscaping { .. } => "FastEscaping",
            PointClass::Undecided => "Undecided",
        }
    }

    pub fn is_escaping(&self) -> bool {
        self.first_exit_step().is_some()
    }

    pub fn first_exit_step(&self) -> Option<usize> {
        match *self {
            PointClass::EscapingSlow { first_exit_step }
            | PointClass::FastEscaping {
                first_exit_step, ..
            } => Some(first_exit_step),
            _ => None,
        }
    }

    /// Escaping, but not as fast as possible; or bounded and outside the
    /// basin when the parameter is known to have an attracting cycle.
    pub fn is_meandering_candidate(&self, parameter_attracting: bool) -> bool {
        match self {
            PointClass::EscapingSlow { .. } => true,
            PointClass::NonEscapingBounded { .. } => parameter_attracting,
            _ => false,
        }
    }
}

impl fmt::Display for PointClass {
    /// `class=<tag> period=<k> ell=<l> exit=<n>` with absent fields omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class={}", self.tag())?;
        match *self {
            PointClass::Basin { period } => write!(f, " period={period}"),
            PointClass::FastEscaping {
                offset,
                first_exit_step,
                ..
            } => write!(f, " ell={offset} exit={first_exit_step}"),
            PointClass::EscapingSlow { first_exit_step } => write!(f, " exit={first_exit_step}"),
            _ => Ok(()),
        }
    }
}

/// A periodic orbit and its multiplier `prod e^{z_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cycle {
    pub points: Vec<Complex64>,
    pub multiplier: Complex64,
}

impl Cycle {
    pub fn period(&self) -> usize {
        self.points.len()
    }

    fn from_points(points: Vec<Complex64>) -> Self {
        // |prod e^{z_i}| = e^{sum Re z_i}, argument sum Im z_i
        let sum: Complex64 = points.iter().sum();
        Cycle {
            points,
            multiplier: sum.exp(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ParamClass {
    Attracting(Cycle),
    ParabolicSuspect(Cycle),
    PostsingularlyFinite { preperiod: usize, period: usize },
    SingularValueEscapes { first_exit_step: usize },
    Undetermined,
}

impl ParamClass {
    pub fn tag(&self) -> &'static str {
        match self {
            ParamClass::Attracting(_) => "Attracting",
            ParamClass::ParabolicSuspect(_) => "ParabolicSuspect",
            ParamClass::PostsingularlyFinite { .. } => "PostsingularlyFinite",
            ParamClass::SingularValueEscapes { .. } => "SingularValueEscapes",
            ParamClass::Undetermined => "Undetermined",
        }
    }

    /// The attracting or parabolic cycle, if one was found.
    pub fn cycle(&self) -> Option<&Cycle> {
        match self {
            ParamClass::Attracting(c) | ParamClass::ParabolicSuspect(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for ParamClass {
    /// `class=<tag> period=<k> multiplier=<re>,<im> exit=<n>`, multiplier
    /// with six decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class={}", self.tag())?;
        match self {
            ParamClass::Attracting(c) | ParamClass::ParabolicSuspect(c) => write!(
                f,
                " period={} multiplier={:.6},{:.6}",
                c.period(),
                c.multiplier.re,
                c.multiplier.im
            ),
            ParamClass::PostsingularlyFinite { preperiod, period } => {
                write!(f, " preperiod={preperiod} period={period}")
            }
            ParamClass::SingularValueEscapes { first_exit_step } => {
                write!(f, " exit={first_exit_step}")
            }
            ParamClass::Undetermined => Ok(()),
        }
    }
}

/// Result of [`fast_escape_test`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FastEscape {
    pub offset: usize,
    pub verified_depth: usize,
}

/// Least offset `l <= depth - 3` with `|f^{l+n}(z)| >= M^n(R)` for all
/// `n = 0..=depth-l`.
///
/// The orbit is followed past overflow on its magnitude track. Once both
/// sides sit at tower level >= 1 every further step applies `exp` to both,
/// so the comparisons beyond that point can no longer change.
pub fn fast_escape_test(p: &Params, z: Complex64, depth: usize) -> Option<FastEscape> {
    let iterates = m_iterates(p, depth);
    fast_escape_with(p, z, depth, &iterates)
}

fn fast_escape_with(
    p: &Params,
    z: Complex64,
    depth: usize,
    iterates: &[TowerReal],
) -> Option<FastEscape> {
    fast_escape_on_track(&magnitude_track(p, z, depth), depth, iterates)
}

fn fast_escape_on_track(
    track: &[OrbitSample],
    depth: usize,
    iterates: &[TowerReal],
) -> Option<FastEscape> {
    if depth < MIN_VERIFIED_DEPTH || track.len() <= depth {
        return None;
    }
    (0..=depth - MIN_VERIFIED_DEPTH)
        .find(|&offset| {
            (0..=depth - offset)
                .all(|n| track[offset + n].magnitude.cmp_tower(&iterates[n]).is_ge())
        })
        .map(|offset| FastEscape {
            offset,
            verified_depth: depth - offset,
        })
}

/// Point classifier for a fixed parameter.
///
/// Without a known attractor, basins are found by watching the orbit close
/// up on itself (`|z_n - z_{n-k}| < 1e-6` with a contracting multiplier).
/// With one, by proximity to its points.
#[derive(Clone, Debug)]
pub struct PointClassifier {
    params: Params,
    attractor: Option<Cycle>,
    max_period: usize,
    iterates: Vec<TowerReal>,
}

const CACHED_ITERATES: usize = 128;

impl PointClassifier {
    pub fn new(params: Params) -> Self {
        PointClassifier {
            params,
            attractor: None,
            max_period: DEFAULT_MAX_PERIOD,
            iterates: m_iterates(&params, CACHED_ITERATES),
        }
    }

    pub fn with_attractor(mut self, cycle: Cycle) -> Self {
        self.attractor = Some(cycle);
        self
    }

    pub fn with_max_period(mut self, max_period: usize) -> Self {
        self.max_period = max_period.max(1);
        self
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Classifies `z` from its first `depth` steps.
    ///
    /// The orbit exits at the first `n <= depth` where both `|z_n|` and
    /// `|z_{n+1}|` exceed the bailout. A single large sample does not count:
    /// from `Re z_n <= 0`, or from an overflow facing left, the next step
    /// lands near `a`.
    pub fn classify(&self, z: Complex64, depth: usize, bailout: f64) -> Result<PointClass> {
        if depth < 10 {
            return Err(Error::Precondition(format!(
                "classification depth {depth} < 10"
            )));
        }
        if !(bailout > 0.0 && bailout <= BAILOUT_GUARD) {
            return Err(Error::Precondition(format!(
                "bailout {bailout} outside (0, {BAILOUT_GUARD}]"
            )));
        }
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Ok(PointClass::Undecided);
        }
        let track = magnitude_track(&self.params, z, depth + MIN_VERIFIED_DEPTH + 1);
        let exit =
            (0..=depth).find(|&n| track[n].exceeds(bailout) && track[n + 1].exceeds(bailout));
        if let Some(exit) = exit {
            let horizon = depth.max(exit + MIN_VERIFIED_DEPTH);
            let fast = if horizon <= CACHED_ITERATES {
                fast_escape_on_track(&track, horizon, &self.iterates)
            } else {
                fast_escape_test(&self.params, z, horizon)
            };
            return Ok(match fast {
                Some(fe) => PointClass::FastEscaping {
                    offset: fe.offset,
                    verified_depth: fe.verified_depth,
                    first_exit_step: exit,
                },
                None => PointClass::EscapingSlow {
                    first_exit_step: exit,
                },
            });
        }
        // an overflowed sample that fell back onto `a` never matches a cycle
        let gap = Complex64::new(f64::NAN, f64::NAN);
        let points: Vec<Complex64> = track[..=depth].iter().map(|s| s.z.unwrap_or(gap)).collect();
        let period = match &self.attractor {
            Some(cycle) => self.basin_by_attractor(&points, cycle),
            None => self.basin_by_recurrence(&points),
        };
        Ok(match period {
            Some(period) => PointClass::Basin { period },
            None => PointClass::NonEscapingBounded {
                depth,
                bound: points
                    .iter()
                    .filter(|w| !w.re.is_nan())
                    .map(|w| w.norm())
                    .fold(0.0, f64::max),
            },
        })
    }

    fn basin_by_attractor(&self, points: &[Complex64], cycle: &Cycle) -> Option<usize> {
        let k = cycle.period();
        let tol2 = CYCLE_DETECT_TOL * CYCLE_DETECT_TOL;
        points.iter().find_map(|&w| {
            let idx = cycle
                .points
                .iter()
                .position(|c| (w - c).norm_sqr() < tol2)?;
            let mut cur = w;
            for j in 1..=BASIN_CONFIRM_STEPS {
                cur = expmap::eval(&self.params, cur).ok()?;
                if (cur - cycle.points[(idx + j) % k]).norm_sqr() >= tol2 {
                    return None;
                }
            }
            Some(k)
        })
    }

    fn basin_by_recurrence(&self, points: &[Complex64]) -> Option<usize> {
        let tol2 = CYCLE_DETECT_TOL * CYCLE_DETECT_TOL;
        for n in 1..points.len() {
            for k in 1..=self.max_period.min(n) {
                if (points[n] - points[n - k]).norm_sqr() >= tol2 {
                    continue;
                }
                let log_mult: f64 = points[n + 1 - k..=n].iter().map(|w| w.re).sum();
                if log_mult < 0.0 && self.confirms_recurrence(&points[n + 1 - k..=n]) {
                    return Some(k);
                }
            }
        }
        None
    }

    /// Ten more steps from the end of `window` stay `k`-periodic.
    fn confirms_recurrence(&self, window: &[Complex64]) -> bool {
        let tol2 = CYCLE_DETECT_TOL * CYCLE_DETECT_TOL;
        let mut history = window.to_vec();
        let k = window.len();
        for _ in 0..BASIN_CONFIRM_STEPS {
            let Ok(next) = expmap::eval(&self.params, *history.last().unwrap()) else {
                return false;
            };
            if (next - history[history.len() - k]).norm_sqr() >= tol2 {
                return false;
            }
            history.push(next);
        }
        true
    }
}

/// Classifies a seed; see [`PointClassifier`].
pub fn classify_point(p: &Params, z: Complex64, depth: usize, bailout: f64) -> Result<PointClass> {
    PointClassifier::new(*p).classify(z, depth, bailout)
}

/// Refines a cycle of the given period by damped Newton on `f^k(z) - z`.
///
/// After the residual drops below `tol` the iteration keeps polishing while
/// the residual still decreases, which matters for parabolic cycles where
/// Newton converges only linearly. The result is reduced to its minimal
/// period.
pub fn find_cycle(p: &Params, z_init: Complex64, period: usize, tol: f64) -> Result<Cycle> {
    if period == 0 {
        return Err(Error::Precondition(
            "cycle period must be at least 1".into(),
        ));
    }
    let residual_at = |z: Complex64| -> Option<(Complex64, Complex64)> {
        // (f^k(z) - z, (f^k)'(z) - 1)
        let mut w = z;
        let mut d = Complex64::new(1.0, 0.0);
        for _ in 0..period {
            let e = expmap::deriv(p, w).ok()?;
            d *= e;
            w = e + p.a();
        }
        let r = w - z;
        (r.re.is_finite() && r.im.is_finite()).then_some((r, d - 1.0))
    };

    let mut z = z_init;
    let (mut r, mut dr) = residual_at(z).ok_or(Error::NoConvergence {
        steps: 0,
        residual: f64::INFINITY,
    })?;
    let mut converged = false;
    for _ in 0..NEWTON_MAX_STEPS {
        let res = r.norm();
        if res < tol {
            converged = true;
        }
        if dr.norm() == 0.0 {
            break;
        }
        let step = -r / dr;
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let cand = z + step * lambda;
            if let Some((rc, dc)) = residual_at(cand) {
                if rc.norm() < res {
                    accepted = Some((cand, rc, dc));
                    break;
                }
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((cand, rc, dc)) => {
                z = cand;
                r = rc;
                dr = dc;
            }
            None => break,
        }
    }
    if !converged && r.norm() < tol {
        converged = true;
    }
    if !converged {
        return Err(Error::NoConvergence {
            steps: NEWTON_MAX_STEPS,
            residual: r.norm(),
        });
    }

    let mut points = Vec::with_capacity(period);
    let mut w = z;
    for _ in 0..period {
        points.push(w);
        w = expmap::eval(p, w)?;
    }
    let minimal = (1..=period)
        .filter(|q| period.is_multiple_of(*q))
        .find(|&q| q == period || (points[q] - points[0]).norm() < tol.sqrt())
        .unwrap_or(period);
    points.truncate(minimal);
    Ok(Cycle::from_points(points))
}

/// Classifies `a` by following the singular orbit `a, f(a), f^2(a), ...`.
pub fn classify_param(p: &Params, max_period: usize, depth: usize) -> Result<ParamClass> {
    if max_period == 0 {
        return Err(Error::Precondition("max_period must be at least 1".into()));
    }
    if depth < 100 {
        return Err(Error::Precondition(format!(
            "parameter classification depth {depth} < 100"
        )));
    }
    let tol2 = CYCLE_DETECT_TOL * CYCLE_DETECT_TOL;
    let mut orbit_pts: Vec<Complex64> = Vec::with_capacity(depth + 1);
    let mut z = p.a();
    for n in 0..=depth {
        let leaves = z.re > DIRECT_RE_LIMIT
            || (z.norm() > DEFAULT_BAILOUT
                && expmap::eval(p, z).map_or(true, |w| w.norm() > DEFAULT_BAILOUT));
        if leaves {
            return Ok(ParamClass::SingularValueEscapes { first_exit_step: n });
        }
        orbit_pts.push(z);
        for k in 1..=max_period.min(n) {
            if (z - orbit_pts[n - k]).norm_sqr() >= tol2 {
                continue;
            }
            let Ok(cycle) = find_cycle(p, z, k, CYCLE_REFINE_TOL) else {
                continue;
            };
            let modulus = cycle.multiplier.norm();
            if (modulus - 1.0).abs() <= PARABOLIC_BAND {
                return Ok(ParamClass::ParabolicSuspect(cycle));
            }
            if modulus < 1.0 - ATTRACTING_MARGIN {
                return Ok(ParamClass::Attracting(cycle));
            }
            if let Some((i, j)) = first_revisit(&orbit_pts) {
                return Ok(ParamClass::PostsingularlyFinite {
                    preperiod: i,
                    period: j - i,
                });
            }
        }
        z = expmap::eval(p, z)?;
    }
    Ok(ParamClass::Undetermined)
}

/// Earliest `(i, j)`, ordered by `j`, with `|z_j - z_i| < 1e-10`.
fn first_revisit(points: &[Complex64]) -> Option<(usize, usize)> {
    (1..points.len()).find_map(|j| {
        (0..j)
            .find(|&i| (points[j] - points[i]).norm() < REVISIT_TOL)
            .map(|i| (i, j))
    })
}

/// Single-line report for a cycle, used by the command line.
pub fn format_cycle_points(cycle: &Cycle) -> String {
    cycle
        .points
        .iter()
        .map(|w| format!("{},{}", sig17(w.re), sig17(w.im)))
        .collect::<Vec<_>>()
        .join(";")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // Roots of e^x - 2 = x, mpmath.
    const ATTRACTING_FP: f64 = -1.841_405_660_436_960_6;
    const REPELLING_FP: f64 = 1.146_193_220_620_582_6;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(re: f64, im: f64) -> Params {
        Params::new(c(re, im)).unwrap()
    }

    #[test]
    fn basin_at_attracting_fixed_point() {
        let p = params(-2.0, 0.0);
        let class = classify_point(&p, c(ATTRACTING_FP, 0.0), 100, DEFAULT_BAILOUT).unwrap();
        assert_eq!(class, PointClass::Basin { period: 1 });
    }

    #[test]
    fn repelling_fixed_point_is_not_basin() {
        let p = params(-2.0, 0.0);
        let class = classify_point(&p, c(REPELLING_FP, 0.0), 20, DEFAULT_BAILOUT).unwrap();
        assert!(!matches!(class, PointClass::Basin { .. }), "{class:?}");
    }

    #[test]
    fn fast_escape_offsets() {
        let p = params(-2.0, 0.0);
        assert_eq!(p.radius(), 7.0);
        let ten = classify_point(&p, c(10.0, 0.0), 10, DEFAULT_BAILOUT).unwrap();
        assert!(
            matches!(ten, PointClass::FastEscaping { offset: 0, verified_depth, .. } if verified_depth >= 3)
        );
        let slow_start = classify_point(&p, c(1.2, 0.0), 20, DEFAULT_BAILOUT).unwrap();
        assert!(
            matches!(slow_start, PointClass::FastEscaping { offset: 4, .. }),
            "{slow_start:?}"
        );

        assert_eq!(fast_escape_test(&p, c(10.0, 0.0), 10).unwrap().offset, 0);
        assert_eq!(fast_escape_test(&p, c(1.2, 0.0), 20).unwrap().offset, 4);
        assert_eq!(fast_escape_test(&p, c(ATTRACTING_FP, 0.0), 20), None);
    }

    #[test]
    fn fast_escape_needs_three_comparisons() {
        let p = params(-2.0, 0.0);
        assert_eq!(fast_escape_test(&p, c(10.0, 0.0), 2), None);
        assert_eq!(
            fast_escape_test(&p, c(10.0, 0.0), 3),
            Some(FastEscape {
                offset: 0,
                verified_depth: 3
            })
        );
    }

    #[test]
    fn report_lines() {
        let p = params(-2.0, 0.0);
        let class = classify_point(&p, c(1.2, 0.0), 20, DEFAULT_BAILOUT).unwrap();
        assert_eq!(class.to_string(), "class=FastEscaping ell=4 exit=5");
        assert_eq!(
            PointClass::Basin { period: 2 }.to_string(),
            "class=Basin period=2"
        );
        let pc = classify_param(&p, 8, 200).unwrap();
        assert_eq!(
            pc.to_string(),
            "class=Attracting period=1 multiplier=0.158594,0.000000"
        );
    }

    #[test]
    fn depth_precondition() {
        let p = params(-2.0, 0.0);
        assert!(classify_point(&p, c(0.0, 0.0), 9, DEFAULT_BAILOUT).is_err());
        assert!(classify_param(&p, 4, 99).is_err());
    }

    #[test]
    fn attracting_parameter() {
        let p = params(-2.0, 0.0);
        let ParamClass::Attracting(cycle) = classify_param(&p, 8, 200).unwrap() else {
            panic!("expected attracting");
        };
        assert_eq!(cycle.period(), 1);
        assert!((cycle.points[0].re - ATTRACTING_FP).abs() < 1e-9);
        assert!((cycle.multiplier.re - 0.158_594_339_563_039_36).abs() < 1e-9);
    }

    #[test]
    fn parabolic_parameter() {
        let p = params(-1.0, 0.0);
        let class = classify_param(&p, 8, 10_000).unwrap();
        let ParamClass::ParabolicSuspect(cycle) = class else {
            panic!("expected parabolic, got {class:?}");
        };
        assert_eq!(cycle.period(), 1);
        assert!((cycle.multiplier - c(1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn postsingularly_finite_parameter() {
        let p = params(PI.ln(), PI / 2.0);
        assert_eq!(
            classify_param(&p, 8, 200).unwrap(),
            ParamClass::PostsingularlyFinite {
                preperiod: 2,
                period: 1
            }
        );
    }

    #[test]
    fn escaping_singular_value() {
        let p = params(0.2, 0.0);
        assert!(matches!(
            classify_param(&p, 8, 200).unwrap(),
            ParamClass::SingularValueEscapes { .. }
        ));
    }

    #[test]
    fn find_cycle_examples() {
        let p = params(-2.0, 0.0);
        let a = find_cycle(&p, c(-1.8, 0.0), 1, 1e-12).unwrap();
        assert!((a.points[0].re - ATTRACTING_FP).abs() < 1e-10);
        assert!((a.multiplier.re - 0.158_594_339_563_039_36).abs() < 1e-9);
        let r = find_cycle(&p, c(1.1, 0.0), 1, 1e-12).unwrap();
        assert!((r.points[0].re - REPELLING_FP).abs() < 1e-10);
        assert!((r.multiplier.re - 3.146_193_220_620_582_6).abs() < 1e-9);

        let q = params(0.2, 0.0);
        assert!(matches!(
            find_cycle(&q, c(0.2, 0.0), 1, 1e-10),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn doubled_period_reduces_to_minimal_cycle() {
        let p = params(5.0, 3.14);
        let k = find_cycle(&p, p.a(), 2, 1e-10).unwrap();
        let k2 = find_cycle(&p, p.a(), 4, 1e-10).unwrap();
        assert_eq!(k.period(), 2);
        assert_eq!(k2.period(), 2);
        for w in &k.points {
            assert!(k2.points.iter().any(|v| (v - w).norm() < 1e-9));
        }
    }

    #[test]
    fn classifier_with_known_attractor() {
        let p = params(-2.0, 0.0);
        let cycle = classify_param(&p, 8, 200)
            .unwrap()
            .cycle()
            .cloned()
            .unwrap();
        let cls = PointClassifier::new(p).with_attractor(cycle);
        assert_eq!(
            cls.classify(c(0.0, 0.0), 60, DEFAULT_BAILOUT).unwrap(),
            PointClass::Basin { period: 1 }
        );
        assert!(cls
            .classify(c(3.0, 0.0), 60, DEFAULT_BAILOUT)
            .unwrap()
            .is_escaping());
    }

    #[test]
    fn meandering_candidates() {
        let slow = PointClass::EscapingSlow { first_exit_step: 3 };
        let bounded = PointClass::NonEscapingBounded {
            depth: 10,
            bound: 2.0,
        };
        assert!(slow.is_meandering_candidate(false));
        assert!(bounded.is_meandering_candidate(true));
        assert!(!bounded.is_meandering_candidate(false));
        assert!(!PointClass::Basin { period: 1 }.is_meandering_candidate(true));
    }

    #[test]
    fn large_samples_that_fall_back_are_not_exits() {
        let p = Params::new(c(-2.0, 0.0)).unwrap();
        // |z_2| ~ 5.7e11 with Re z_2 < 0, then z_3 = -2
        assert_eq!(
            classify_point(&p, c(3.5, 0.5), 50, DEFAULT_BAILOUT).unwrap(),
            PointClass::Basin { period: 1 }
        );
        // Re z_2 > 700 with cos(Im z_2) < 0
        assert_eq!(
            classify_point(&p, c(2.5, 0.5), 50, DEFAULT_BAILOUT).unwrap(),
            PointClass::Basin { period: 1 }
        );
    }
}
