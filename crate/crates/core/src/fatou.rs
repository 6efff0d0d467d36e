//! Fatou's function `f(z) = z + 1 + e^{-z}` and the map
//! `h(w) = e^{-1} w e^{-w}` it is semiconjugate to via `w = e^{-z}`.
//!
//! Escape for `f` is linear drift to the right, so orbits are classified by
//! watching the real part rather than by a bailout radius.

use num_complex::Complex64;

use crate::classify::PointClass;
use crate::error::{Error, Result};
use crate::expmap::{OrbitSample, SampleStatus, DIRECT_RE_LIMIT};
use crate::tower::TowerReal;

/// Real part beyond which `|e^{-z}| < e^{-50}` and `f(z) = z + 1` to
/// working precision.
pub const DRIFT_THRESHOLD: f64 = 50.0;
/// Consecutive increasing steps needed to certify escape.
pub const DRIFT_WINDOW: usize = 10;
/// Orbits whose imaginary part wanders further than this from the seed are
/// not reported as bounded.
pub const BOUNDED_SPREAD: f64 = 50.0;

fn check_re(z: Complex64) -> Result<()> {
    if z.re < -DIRECT_RE_LIMIT {
        Err(Error::Overflow { re: z.re })
    } else {
        Ok(())
    }
}

/// `f(z) = z + 1 + e^{-z}`.
pub fn fatou_eval(z: Complex64) -> Result<Complex64> {
    check_re(z)?;
    Ok(z + 1.0 + (-z).exp())
}

/// `h(w) = e^{-1} w e^{-w}`.
pub fn h_eval(w: Complex64) -> Result<Complex64> {
    check_re(w)?;
    Ok(w * (-w - 1.0).exp())
}

/// `|e^{-f(z)} - h(e^{-z})|`, the defect of the semiconjugacy.
pub fn semiconj_residual(z: Complex64) -> Result<f64> {
    let fz = fatou_eval(z)?;
    check_re(fz)?;
    let w = (-z).exp();
    Ok(((-fz).exp() - h_eval(w)?).norm())
}

/// Orbit `z_0, ..., z_depth` of Fatou's function.
///
/// A step from `Re z < -700` lands near `Re = e^{-Re z}` on the positive
/// real side; that sample and all later ones are overflowed, with magnitude
/// `e^{|Re z|}` growing by one per step.
pub fn fatou_orbit(z0: Complex64, depth: usize) -> Vec<OrbitSample> {
    let mut samples = Vec::with_capacity(depth + 1);
    let mut current = OrbitSample::in_range(0, z0);
    samples.push(current);
    for n in 1..=depth {
        let next = match current.z.map(fatou_eval) {
            Some(Ok(w)) => OrbitSample::in_range(n, w),
            Some(Err(_)) => OrbitSample {
                n,
                z: None,
                magnitude: TowerReal::from_real(-current.z.unwrap().re).exp(),
                status: SampleStatus::Overflowed,
            },
            None => OrbitSample {
                n,
                z: None,
                magnitude: current.magnitude.affine(1.0, 1.0),
                status: SampleStatus::Overflowed,
            },
        };
        samples.push(next);
        current = next;
    }
    samples
}

/// Escaping / bounded / undecided verdict for a seed of Fatou's function.
///
/// - `EscapingSlow` at the first step `n <= depth` with `Re z_n > 50`,
///   provided the following [`DRIFT_WINDOW`] steps keep increasing the real
///   part (they may run past `depth`). Fatou's function never produces
///   `FastEscaping`.
/// - `NonEscapingBounded` when no step exits, the imaginary part stays within
///   [`BOUNDED_SPREAD`] of the seed and the orbit is not drifting right at the
///   end of the run.
/// - `Undecided` otherwise.
pub fn fatou_classify(z: Complex64, depth: usize) -> Result<PointClass> {
    if depth < 10 {
        return Err(Error::Precondition(format!(
            "classification depth {depth} < 10"
        )));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Ok(PointClass::Undecided);
    }
    let mut points = Vec::with_capacity(depth + 1);
    let mut w = z;
    for n in 0..=depth {
        points.push(w);
        if w.re > DRIFT_THRESHOLD {
            return Ok(if drift_confirmed(w) {
                PointClass::EscapingSlow { first_exit_step: n }
            } else {
                PointClass::Undecided
            });
        }
        if n == depth {
            break;
        }
        w = match fatou_eval(w) {
            Ok(next) => next,
            // Re f(w) is about e^{-Re w} > e^700: drift is immediate.
            Err(_) => {
                return Ok(PointClass::EscapingSlow {
                    first_exit_step: n + 1,
                })
            }
        };
    }
    let spread_ok = points.iter().all(|p| (p.im - z.im).abs() <= BOUNDED_SPREAD);
    let tail = &points[points.len() - DRIFT_WINDOW..];
    let drifting = tail.windows(2).all(|s| s[1].re > s[0].re + 0.5);
    Ok(if spread_ok && !drifting {
        PointClass::NonEscapingBounded {
            depth,
            bound: points.iter().map(|p| p.norm()).fold(0.0, f64::max),
        }
    } else {
        PointClass::Undecided
    })
}

fn drift_confirmed(mut w: Complex64) -> bool {
    for _ in 0..DRIFT_WINDOW {
        match fatou_eval(w) {
            Ok(next) if next.re > w.re => w = next,
            _ => return false,
        }
    }
    true
}
