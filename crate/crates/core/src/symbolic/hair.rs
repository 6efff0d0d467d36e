use std::f64::consts::PI;

use num_complex::Complex64;

use super::address::ExternalAddress;
use crate::error::{Error, Result};
use crate::expmap::{self, Params};

/// The `k` with `(2k-1)pi < Im z <= (2k+1)pi`.
pub fn strip_index(z: Complex64) -> i64 {
    ((z.im - PI) / (2.0 * PI)).ceil() as i64
}

/// Strip itinerary `(strip(z), strip(f(z)), ..., strip(f^{n-1}(z)))`.
pub fn itinerary(p: &Params, z: Complex64, n: usize) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(n);
    let mut w = z;
    for i in 0..n {
        out.push(strip_index(w));
        if i + 1 < n {
            w = expmap::eval(p, w)?;
        }
    }
    Ok(out)
}

/// Branch of `f_a^{-1}` onto strip `k`: `Log(w - a) + 2 pi i k`.
pub fn inverse_branch(p: &Params, k: i64, w: Complex64) -> Result<Complex64> {
    let d = w - p.a();
    if d.norm() == 0.0 {
        return Err(Error::SingularInput);
    }
    Ok(d.ln() + Complex64::new(0.0, 2.0 * PI * k as f64))
}

/// A point on the hair of `address`, obtained by pulling an anchor back
/// `depth` times.
#[derive(Clone, Debug, PartialEq)]
pub struct HairPoint {
    pub address: ExternalAddress,
    pub depth: usize,
    pub z: Complex64,
    /// `|z_depth - z_{depth-1}|`.
    pub residual: f64,
}

/// `L_{s_0} o L_{s_1} o ... o L_{s_{d-1}}(anchor)`.
fn pull_back(p: &Params, s: &ExternalAddress, depth: usize, anchor: f64) -> Result<Complex64> {
    let mut w = Complex64::new(anchor, 0.0);
    for j in (0..depth).rev() {
        w = inverse_branch(p, s.entry(j), w)?;
    }
    Ok(w)
}

/// Smallest admissible anchor, `max(10, R)`.
pub fn default_anchor(p: &Params) -> f64 {
    p.radius().max(10.0)
}

/// Traces the hair of `s` by `depth` pullbacks of the real anchor.
///
/// Forward iteration of the result retraces the address, but each forward
/// step amplifies rounding error by `|f'|`, so only roughly the first
/// `min(depth, 36 / log10|f'|)` itinerary entries are reliable in `f64`.
pub fn trace_hair(p: &Params, s: &ExternalAddress, depth: usize, anchor: f64) -> Result<HairPoint> {
    if depth == 0 {
        return Err(Error::Precondition("hair depth must be at least 1".into()));
    }
    if anchor < default_anchor(p) {
        return Err(Error::Precondition(format!(
            "anchor {anchor} below max(10, R) = {}",
            default_anchor(p)
        )));
    }
    let z = pull_back(p, s, depth, anchor)?;
    let prev = pull_back(p, s, depth - 1, anchor)?;
    Ok(HairPoint {
        address: s.clone(),
        depth,
        z,
        residual: (z - prev).norm(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EndpointEstimate {
    pub point: HairPoint,
    /// `false` when `max_depth` was reached with the residual still above
    /// tolerance; the endpoint is then unresolved.
    pub converged: bool,
}

/// Deepens the pullback until successive depths agree to `tol`.
pub fn endpoint_estimate(
    p: &Params,
    s: &ExternalAddress,
    tol: f64,
    max_depth: usize,
) -> Result<EndpointEstimate> {
    if !(tol >= 1e-12) {
        return Err(Error::Precondition(format!("tolerance {tol} below 1e-12")));
    }
    if max_depth == 0 {
        return Err(Error::Precondition("max_depth must be at least 1".into()));
    }
    let anchor = default_anchor(p);
    let mut prev = Complex64::new(anchor, 0.0);
    let mut last = None;
    for depth in 1..=max_depth {
        let z = pull_back(p, s, depth, anchor)?;
        let point = HairPoint {
            address: s.clone(),
            depth,
            z,
            residual: (z - prev).norm(),
        };
        if point.residual < tol {
            return Ok(EndpointEstimate {
                point,
                converged: true,
            });
        }
        prev = z;
        last = Some(point);
    }
    Ok(EndpointEstimate {
        point: last.expect("max_depth >= 1"),
        converged: false,
    })
}

/// First step at which the strip itineraries of `z0` and `z1` differ.
///
/// Distinct strips at step `n` put `f^n(z0)` and `f^n(z1)` on opposite sides
/// of a line `Im = (2k+1) pi`, so the two points lie in different components
/// of the complement of the pulled-back boundary lines.
pub fn separation_index(
    p: &Params,
    z0: Complex64,
    z1: Complex64,
    depth: usize,
) -> Result<Option<usize>> {
    let (mut u, mut v) = (z0, z1);
    for n in 0..depth {
        if strip_index(u) != strip_index(v) {
            return Ok(Some(n));
        }
        if n + 1 < depth {
            u = expmap::eval(p, u)?;
            v = expmap::eval(p, v)?;
        }
    }
    Ok(None)
}
