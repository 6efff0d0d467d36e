//! Self-check suites behind `expbouquet verify <suite>`.
//!
//! Each suite runs a list of checks against brute-force or closed-form
//! references and reports one line per check. Random samples come from a
//! ChaCha8 stream seeded by `EXPBOUQUET_SEED` (default 0).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify_param, ParamClass, PointClass};
use crate::error::{Error, Result};
use crate::expmap::{m_iterates, max_modulus, Params};
use crate::fatou::{fatou_eval, semiconj_residual};
use crate::render::{classify_pixels, fraction_escaping, render_with_threads, MapKind, RenderSpec};
use crate::symbolic::{
    compute_lambda, endpoint_estimate, find_domination_index, itinerary, separation_index,
    trace_hair, ExternalAddress, SeparationConfig,
};
use crate::tower::TowerReal;

pub const SEED_VAR: &str = "EXPBOUQUET_SEED";

/// Seed from `EXPBOUQUET_SEED`, 0 when unset or unparsable.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Tower,
    Maxmod,
    Lemma7,
    Semiconj,
    Separation,
    Figures,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Tower,
        Suite::Maxmod,
        Suite::Lemma7,
        Suite::Semiconj,
        Suite::Separation,
        Suite::Figures,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Tower => "tower",
            Suite::Maxmod => "maxmod",
            Suite::Lemma7 => "lemma7",
            Suite::Semiconj => "semiconj",
            Suite::Separation => "separation",
            Suite::Figures => "figures",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

/// Parameters of the published figures.
pub const FIGURE_PARAMS: [(f64, f64); 4] = [(-2.0, 0.0), (5.0, 3.14), (2.06, 1.57), (1.004, 2.9)];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        Suite::Tower => Ok(tower_checks(&mut rng)),
        Suite::Maxmod => maxmod_checks(&mut rng),
        Suite::Lemma7 => lemma7_checks(&mut rng),
        Suite::Semiconj => semiconj_checks(&mut rng),
        Suite::Separation => separation_checks(),
        Suite::Figures => figure_checks(),
    }
}

fn tower_checks(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let xs: Vec<f64> = (0..100_000)
        .map(|_| 10f64.powf(rng.gen_range(-3.0..300.0)))
        .collect();
    let round_trip = xs
        .iter()
        .filter(|&&x| {
            let back = TowerReal::from_real(x).to_f64();
            (back - x).abs() > 1e-12 * x
        })
        .count();
    let mut sorted = xs.clone();
    sorted.sort_by(f64::total_cmp);
    let monotone = sorted
        .windows(2)
        .filter(|w| TowerReal::from_real(w[0]) > TowerReal::from_real(w[1]))
        .count();
    let ordinary = xs
        .iter()
        .map(|x| x.log10().rem_euclid(30.0))
        .filter(|&x| {
            let t = TowerReal::from_real(x).exp().to_f64();
            (t - x.exp()).abs() > 1e-12 * x.exp()
        })
        .count();
    let literals = xs
        .iter()
        .take(1000)
        .filter(|&&x| {
            let t = TowerReal::from_real(x).exp().exp();
            t.to_string().parse::<TowerReal>().ok() != Some(t)
        })
        .count();
    vec![
        Check::new(
            "round-trip",
            round_trip == 0,
            format!("{round_trip} failures in 100000"),
        ),
        Check::new(
            "monotone",
            monotone == 0,
            format!("{monotone} order inversions"),
        ),
        Check::new(
            "ordinary-range-exp",
            ordinary == 0,
            format!("{ordinary} mismatches"),
        ),
        Check::new(
            "text-literal",
            literals == 0,
            format!("{literals} mismatches"),
        ),
    ]
}

/// Brute-force circle maximum: `2^16` samples plus a dense rescan around the
/// best one.
fn circle_oracle(a: Complex64, r: f64) -> f64 {
    let f = |t: f64| (Complex64::from_polar(r, t).exp() + a).norm();
    let n = 1 << 16;
    let step = 2.0 * PI / n as f64;
    let best = (0..n)
        .map(|k| k as f64 * step)
        .max_by(|x, y| f(*x).total_cmp(&f(*y)))
        .unwrap_or(0.0);
    (0..=4000)
        .map(|k| f(best - step + 2.0 * step * k as f64 / 4000.0))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn maxmod_checks(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut params: Vec<(f64, f64)> = vec![(-1.0, 0.0)];
    params.extend(FIGURE_PARAMS);
    let mut worst = 0.0f64;
    for &(re, im) in &params {
        let p = Params::new(c(re, im))?;
        for r in [PI, 4.0, 7.0, 12.0, 20.0] {
            let rel = (max_modulus(&p, r) / circle_oracle(p.a(), r) - 1.0).abs();
            worst = worst.max(rel);
        }
    }
    let mut worst_random = 0.0f64;
    for _ in 0..20 {
        let a = c(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
        let r = rng.gen_range(PI..20.0);
        let p = Params::new(a)?;
        worst_random = worst_random.max((max_modulus(&p, r) / circle_oracle(a, r) - 1.0).abs());
    }
    let mut growth_failures = 0;
    let mut monotone_failures = 0;
    for &(re, im) in &params {
        let p = Params::new(c(re, im))?;
        let r0 = p.radius();
        for k in 0..=100 {
            let r = r0 + k as f64;
            let m = max_modulus(&p, r);
            if !(m > r && m - r >= (r - 1.0).exp() - r) {
                growth_failures += 1;
            }
        }
        let it = m_iterates(&p, 6);
        if it.windows(2).any(|w| w[0] >= w[1]) {
            monotone_failures += 1;
        }
    }
    Ok(vec![
        Check::new(
            "oracle-grid",
            worst < 1e-6,
            format!("max rel err {worst:.3e}"),
        ),
        Check::new(
            "oracle-random",
            worst_random < 1e-6,
            format!("max rel err {worst_random:.3e}"),
        ),
        Check::new(
            "growth",
            growth_failures == 0,
            format!("{growth_failures} radii violate M(r) - r >= e^(r-1) - r"),
        ),
        Check::new(
            "iterates-increase",
            monotone_failures == 0,
            format!("{monotone_failures} parameters"),
        ),
    ])
}

fn lemma7_checks(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let p = Params::new(c(-2.0, 0.0))?;
    let s = c(10.0, 0.0);
    let fp = match classify_param(&p, 1, 1000)? {
        ParamClass::Attracting(cycle) => cycle.points[0],
        other => return Err(Error::Domain(format!("a=-2 classified as {other}"))),
    };
    let n = |kappa: f64| find_domination_index(&p, s, fp, kappa, 20);
    let n1000 = n(1000.0)?;
    let n30000 = n(30000.0)?;
    let sweep: Vec<Option<usize>> = [1e2, 1e3, 1e4, 1e5]
        .iter()
        .map(|&k| n(k))
        .collect::<Result<_>>()?;
    let monotone = sweep.windows(2).all(|w| w[0] <= w[1]) && sweep.iter().all(Option::is_some);

    let cfg = SeparationConfig::new(3.0, 2.0 * PI + 1.0, 1.0)?;
    let lambda = compute_lambda(&p, &cfg);
    let mut below = 0;
    for _ in 0..100 {
        let a = c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let q = Params::new(a)?;
        let cfg = SeparationConfig::new(
            rng.gen_range(1.0..20.0),
            rng.gen_range(2.0 * PI..50.0),
            rng.gen_range(0.1..100.0),
        )?;
        if compute_lambda(&q, &cfg) < q.radius() + 6.0 {
            below += 1;
        }
    }
    Ok(vec![
        Check::new("kappa-1000", n1000 == Some(1), format!("n = {n1000:?}")),
        Check::new("kappa-30000", n30000 == Some(2), format!("n = {n30000:?}")),
        Check::new(
            "monotone-in-kappa",
            monotone,
            format!("n = {sweep:?} for kappa = 1e2..1e5"),
        ),
        Check::new(
            "lambda-example",
            lambda == 13.0,
            format!("lambda = {lambda}"),
        ),
        Check::new(
            "lambda-above-r-plus-6",
            below == 0,
            format!("{below} of 100 configs below R + 6"),
        ),
    ])
}

fn semiconj_checks(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let z = c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let scale = (-fatou_eval(z)?).exp().norm().max(1.0);
        worst = worst.max(semiconj_residual(z)? / scale);
    }
    let shift = c(0.0, 2.0 * PI);
    let mut worst_period = 0.0f64;
    for _ in 0..1000 {
        let z = c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let rhs = fatou_eval(z)? + shift;
        worst_period =
            worst_period.max((fatou_eval(z + shift)? - rhs).norm() / rhs.norm().max(1.0));
    }
    let worst_fixed = (-2..=2)
        .map(|k| {
            let z = c(0.0, (2 * k + 1) as f64 * PI);
            fatou_eval(z).map(|w| (w - z).norm())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(vec![
        Check::new(
            "semiconjugacy",
            worst < 1e-12,
            format!("max scaled residual {worst:.3e}"),
        ),
        Check::new(
            "periodicity",
            worst_period < 1e-12,
            format!("max defect {worst_period:.3e}"),
        ),
        Check::new(
            "fixed-points",
            worst_fixed < 1e-12,
            format!("max |f(z) - z| {worst_fixed:.3e}"),
        ),
    ])
}

/// Forward-iteration horizon at which itineraries of hair endpoints for
/// `a = -2` are still trustworthy in `f64`.
pub const SEPARATION_DEPTH: usize = 8;

fn separation_checks() -> Result<Vec<Check>> {
    let p = Params::new(c(-2.0, 0.0))?;
    let addresses: Vec<ExternalAddress> = ["|0", "|1", "0,1|0", "0,-1|0", "0,0,2|0"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_>>()?;
    let ends = addresses
        .iter()
        .map(|s| endpoint_estimate(&p, s, 1e-10, 400))
        .collect::<Result<Vec<_>>>()?;
    let mut checks = Vec::new();

    let e0 = &ends[0];
    let err0 = (e0.point.z - c(1.146_193_220_620_582_6, 0.0)).norm();
    checks.push(Check::new(
        "endpoint-0",
        e0.converged && err0 < 1e-8,
        format!("z = {} (error {err0:.2e})", e0.point.z),
    ));
    let z1 = ends[1].point.z;
    let defect = (z1.exp() - 2.0 - z1).norm();
    checks.push(Check::new(
        "endpoint-1-fixed",
        defect < 1e-7,
        format!("|f(z) - z| = {defect:.2e}"),
    ));

    let mut bad_itinerary = Vec::new();
    for s in &addresses {
        for depth in [5usize, 10, 16] {
            let h = trace_hair(&p, s, depth, 10.0)?;
            let k = depth.min(SEPARATION_DEPTH);
            if itinerary(&p, h.z, k)? != s.entries(k) {
                bad_itinerary.push(format!("{s}@{depth}"));
            }
        }
    }
    checks.push(Check::new(
        "itineraries",
        bad_itinerary.is_empty(),
        format!("{} mismatches {:?}", bad_itinerary.len(), bad_itinerary),
    ));

    let mut bad_pairs = Vec::new();
    for i in 0..addresses.len() {
        for j in i + 1..addresses.len() {
            let got = separation_index(&p, ends[i].point.z, ends[j].point.z, SEPARATION_DEPTH)?;
            let want = addresses[i].first_mismatch(&addresses[j]);
            if got.is_none() || got != want {
                bad_pairs.push(format!(
                    "{}/{}: {got:?} vs {want:?}",
                    addresses[i], addresses[j]
                ));
            }
        }
    }
    checks.push(Check::new(
        "separation-index",
        bad_pairs.is_empty(),
        format!("{} of 10 pairs wrong {:?}", bad_pairs.len(), bad_pairs),
    ));
    Ok(checks)
}

/// Number of fast escaping pixels in the right three quarters of the image
/// with no basin pixel within Chebyshev distance `radius`.
pub fn interleaving_violations(
    classes: &[PointClass],
    width: usize,
    height: usize,
    radius: usize,
) -> usize {
    let is = |i: usize, j: usize, f: fn(&PointClass) -> bool| f(&classes[j * width + i]);
    let fast: fn(&PointClass) -> bool = |c| matches!(c, PointClass::FastEscaping { .. });
    let basin: fn(&PointClass) -> bool = |c| matches!(c, PointClass::Basin { .. });
    let mut bad = 0;
    for j in 0..height {
        for i in width / 4..width {
            if !is(i, j, fast) {
                continue;
            }
            let found = (j.saturating_sub(radius)..(j + radius + 1).min(height)).any(|jj| {
                (i.saturating_sub(radius)..(i + radius + 1).min(width)).any(|ii| is(ii, jj, basin))
            });
            if !found {
                bad += 1;
            }
        }
    }
    bad
}

fn figure_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (re, im) in FIGURE_PARAMS {
        let p = Params::new(c(re, im))?;
        let class = classify_param(&p, 64, 10_000)?;
        let ok = matches!(
            class,
            ParamClass::Attracting(_) | ParamClass::ParabolicSuspect(_)
        );
        checks.push(Check::new(
            &format!("param-{re}+{im}i"),
            ok,
            class.to_string(),
        ));
    }
    let threads = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .max(2);
    for (re, im) in FIGURE_PARAMS {
        let map = MapKind::Exponential(c(re, im));
        let big = RenderSpec::new(map, 800, 800);
        let started = std::time::Instant::now();
        let classes = classify_pixels(&big, threads)?;
        let secs = started.elapsed().as_secs_f64();
        let small = classify_pixels(&RenderSpec::new(map, 400, 400), threads)?;
        let (f800, f400) = (fraction_escaping(&classes), fraction_escaping(&small));
        checks.push(Check::new(
            &format!("fraction-{re}+{im}i"),
            (f800 - f400).abs() < 0.02,
            format!("800^2 {f800:.4} vs 400^2 {f400:.4} ({secs:.1}s)"),
        ));
        if (re, im) == (-2.0, 0.0) {
            let bad = interleaving_violations(&classes, 800, 800, 8);
            checks.push(Check::new(
                "interleaving",
                bad == 0,
                format!("{bad} fast pixels without basin within 8"),
            ));
        }
    }
    let det = RenderSpec::new(MapKind::Exponential(c(-2.0, 0.0)), 200, 200);
    let same = render_with_threads(&det, 1)? == render_with_threads(&det, threads)?;
    checks.push(Check::new(
        "deterministic",
        same,
        format!("1 vs {threads} workers"),
    ));
    Ok(checks)
}
