//! Command-line front end: `render`, `classify-point`, `classify-param`,
//! `trace-hair` and `verify <suite>`.
//!
//! Every option can also come from a `--config` file of `key = value` lines
//! using the flag names without dashes; flags given on the command line win.
//! Exit codes: 0 success, 2 bad arguments, 1 runtime failure.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::classify::{
    classify_param, format_cycle_points, PointClassifier, DEFAULT_BAILOUT, DEFAULT_MAX_PERIOD,
};
use crate::error::{Error, Result};
use crate::expmap::{orbit, write_orbit_csv, Params};
use crate::fatou::{fatou_classify, fatou_orbit};
use crate::fmt::{format_complex, parse_complex, sig17};
use crate::render::{
    fraction_escaping, render_detailed, write_pgm, write_pixel_csv, Coloring, MapKind, RenderSpec,
    Viewport, DEFAULT_MAX_ITER,
};
use crate::symbolic::{default_anchor, endpoint_estimate, trace_hair, ExternalAddress};
use crate::verify::{run_suite, seed_from_env, Suite};

#[derive(Parser, Debug)]
#[command(
    name = "expbouquet",
    version,
    about = "Dynamics of e^z + a and Fatou's function"
)]
struct Cli {
    /// File of `key = value` lines supplying defaults for the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Render a classification or escape-count image as binary PGM.
    Render(RenderArgs),
    /// Classify one seed.
    ClassifyPoint(PointArgs),
    /// Classify a parameter through its singular orbit.
    ClassifyParam(ParamArgs),
    /// Trace a hair by inverse branches, or estimate its endpoint.
    TraceHair(HairArgs),
    /// Run a self-check suite: tower, maxmod, lemma7, semiconj, separation, figures.
    Verify { suite: String },
}

#[derive(Args, Debug)]
struct RenderArgs {
    /// `exp` or `fatou`.
    #[arg(long)]
    map: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// `x_min,x_max,y_min,y_max`.
    #[arg(long, allow_hyphen_values = true)]
    viewport: Option<String>,
    #[arg(long)]
    width: Option<String>,
    #[arg(long)]
    height: Option<String>,
    #[arg(long = "max-iter")]
    max_iter: Option<String>,
    #[arg(long)]
    bailout: Option<String>,
    /// `classification` or `escape-count`.
    #[arg(long)]
    coloring: Option<String>,
    #[arg(long)]
    threads: Option<String>,
    #[arg(long)]
    out: Option<String>,
    /// Per-pixel dump `x,y,tag,exit`.
    #[arg(long)]
    csv: Option<String>,
}

#[derive(Args, Debug)]
struct PointArgs {
    /// `exp` or `fatou`.
    #[arg(long)]
    map: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long)]
    depth: Option<String>,
    #[arg(long)]
    bailout: Option<String>,
    #[arg(long = "max-period")]
    max_period: Option<String>,
    /// Orbit dump `n,re,im,log_level,log_mantissa,status`.
    #[arg(long = "orbit-csv")]
    orbit_csv: Option<String>,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long = "max-period")]
    max_period: Option<String>,
    #[arg(long)]
    depth: Option<String>,
    /// Also print the cycle points.
    #[arg(long)]
    points: bool,
}

#[derive(Args, Debug)]
struct HairArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// `p1,p2,...|t1,t2,...`
    #[arg(long, allow_hyphen_values = true)]
    address: Option<String>,
    #[arg(long)]
    depth: Option<String>,
    #[arg(long)]
    anchor: Option<String>,
    /// Deepen until successive pullbacks agree to `--tol`.
    #[arg(long)]
    endpoint: bool,
    #[arg(long)]
    tol: Option<String>,
}

/// Flag values merged with the config file.
struct Options<'a> {
    file: &'a HashMap<String, String>,
}

impl Options<'_> {
    fn raw<'s>(&'s self, flag: &'s Option<String>, key: &str) -> Option<&'s str> {
        flag.as_deref()
            .or_else(|| self.file.get(key).map(String::as_str))
    }

    fn get<T: FromStr>(&self, flag: &Option<String>, key: &str) -> Result<Option<T>> {
        self.raw(flag, key)
            .map(|v| {
                v.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid value {v:?} for --{key}")))
            })
            .transpose()
    }

    fn complex(&self, flag: &Option<String>, key: &str) -> Result<Option<Complex64>> {
        self.raw(flag, key).map(parse_complex).transpose()
    }

    fn require_complex(&self, flag: &Option<String>, key: &str) -> Result<Complex64> {
        self.complex(flag, key)?
            .ok_or_else(|| Error::Parse(format!("missing --{key}")))
    }
}

fn read_config(path: &Path) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!(
                "config {} line {}: expected key = value",
                path.display(),
                k + 1
            ))
        })?;
        map.insert(key.trim().replace('_', "-"), value.trim().to_string());
    }
    Ok(map)
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_) | Error::Precondition(_) | Error::InvalidParams(_) | Error::Domain(_)
    )
}

/// Runs the command line (without the program name) and returns the exit
/// code.
pub fn run<S: AsRef<str>>(args: &[S]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv = std::iter::once("expbouquet").chain(args.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{}", first.trim_start_matches("error: "));
            return 2;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            if is_usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let file = match &cli.config {
        Some(path) => read_config(path)?,
        None => HashMap::new(),
    };
    let opts = Options { file: &file };
    match cli.command {
        Command::Render(args) => render_cmd(&opts, &args, out),
        Command::ClassifyPoint(args) => classify_point_cmd(&opts, &args, out),
        Command::ClassifyParam(args) => classify_param_cmd(&opts, &args, out),
        Command::TraceHair(args) => trace_hair_cmd(&opts, &args, out),
        Command::Verify { suite } => verify_cmd(&suite, out),
    }
}

fn parse_map(opts: &Options, map: &Option<String>, a: &Option<String>) -> Result<MapKind> {
    match opts.raw(map, "map").unwrap_or("exp") {
        "exp" => Ok(MapKind::Exponential(opts.require_complex(a, "a")?)),
        "fatou" => Ok(MapKind::Fatou),
        other => Err(Error::Parse(format!(
            "unknown map {other:?}; use exp or fatou"
        ))),
    }
}

fn parse_viewport(s: &str) -> Result<Viewport> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("viewport {s:?} is not four numbers")))?;
    match v[..] {
        [x0, x1, y0, y1] => Viewport::new(x0, x1, y0, y1),
        _ => Err(Error::Parse(format!("viewport {s:?} is not four numbers"))),
    }
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn render_cmd(opts: &Options, args: &RenderArgs, out: &mut dyn Write) -> Result<i32> {
    let map = parse_map(opts, &args.map, &args.a)?;
    let width = opts.get(&args.width, "width")?.unwrap_or(800);
    let height = opts.get(&args.height, "height")?.unwrap_or(width);
    let mut spec = RenderSpec::new(map, width, height)
        .with_max_iter(
            opts.get(&args.max_iter, "max-iter")?
                .unwrap_or(DEFAULT_MAX_ITER),
        )
        .with_bailout(
            opts.get(&args.bailout, "bailout")?
                .unwrap_or(DEFAULT_BAILOUT),
        );
    if let Some(v) = opts.raw(&args.viewport, "viewport") {
        spec = spec.with_viewport(parse_viewport(v)?);
    }
    spec = spec.with_coloring(
        match opts
            .raw(&args.coloring, "coloring")
            .unwrap_or("classification")
        {
            "classification" => Coloring::Classification,
            "escape-count" => Coloring::EscapeCount,
            other => return Err(Error::Parse(format!("unknown coloring {other:?}"))),
        },
    );
    let threads: usize = opts
        .get(&args.threads, "threads")?
        .unwrap_or_else(default_threads);
    if threads == 0 {
        return Err(Error::Parse("--threads must be positive".into()));
    }
    let out_path: String = opts
        .get(&args.out, "out")?
        .ok_or_else(|| Error::Parse("missing --out".into()))?;
    spec.validate()?;

    let (grid, classes) = render_detailed(&spec, threads)?;
    write_pgm(&grid, &out_path)?;
    if let Some(csv) = opts.raw(&args.csv, "csv") {
        write_pixel_csv(BufWriter::new(File::create(csv)?), &spec, &classes)?;
    }
    writeln!(
        out,
        "wrote {out_path} {}x{} escape_fraction={}",
        grid.width,
        grid.height,
        sig17(fraction_escaping(&classes))
    )?;
    Ok(0)
}

fn classify_point_cmd(opts: &Options, args: &PointArgs, out: &mut dyn Write) -> Result<i32> {
    let map = parse_map(opts, &args.map, &args.a)?;
    let z = opts.require_complex(&args.z, "z")?;
    let depth: usize = opts.get(&args.depth, "depth")?.unwrap_or(100);
    let bailout: f64 = opts
        .get(&args.bailout, "bailout")?
        .unwrap_or(DEFAULT_BAILOUT);
    let max_period: usize = opts
        .get(&args.max_period, "max-period")?
        .unwrap_or(DEFAULT_MAX_PERIOD);
    let csv = opts.raw(&args.orbit_csv, "orbit-csv");
    let (class, samples) = match map {
        MapKind::Exponential(a) => {
            let p = Params::new(a)?;
            let class = PointClassifier::new(p)
                .with_max_period(max_period)
                .classify(z, depth, bailout)?;
            let samples = match csv {
                Some(_) => orbit(&p, z, depth, bailout)?,
                None => Vec::new(),
            };
            (class, samples)
        }
        MapKind::Fatou => (fatou_classify(z, depth)?, fatou_orbit(z, depth)),
    };
    if let Some(path) = csv {
        write_orbit_csv(BufWriter::new(File::create(path)?), &samples)?;
    }
    writeln!(out, "{class}")?;
    Ok(0)
}

fn classify_param_cmd(opts: &Options, args: &ParamArgs, out: &mut dyn Write) -> Result<i32> {
    let a = opts.require_complex(&args.a, "a")?;
    let max_period: usize = opts
        .get(&args.max_period, "max-period")?
        .unwrap_or(DEFAULT_MAX_PERIOD);
    let depth: usize = opts.get(&args.depth, "depth")?.unwrap_or(10_000);
    let p = Params::new(a)?;
    let class = classify_param(&p, max_period, depth)?;
    writeln!(out, "{class}")?;
    if args.points {
        if let Some(cycle) = class.cycle() {
            writeln!(out, "points={}", format_cycle_points(cycle))?;
        }
    }
    Ok(0)
}

fn trace_hair_cmd(opts: &Options, args: &HairArgs, out: &mut dyn Write) -> Result<i32> {
    let a = opts.require_complex(&args.a, "a")?;
    let p = Params::new(a)?;
    let address: ExternalAddress = opts
        .raw(&args.address, "address")
        .ok_or_else(|| Error::Parse("missing --address".into()))?
        .parse()?;
    let endpoint = args.endpoint || opts.get::<bool>(&None, "endpoint")?.unwrap_or(false);
    if endpoint {
        let tol: f64 = opts.get(&args.tol, "tol")?.unwrap_or(1e-8);
        let max_depth: usize = opts.get(&args.depth, "depth")?.unwrap_or(200);
        let est = endpoint_estimate(&p, &address, tol, max_depth)?;
        writeln!(
            out,
            "endpoint={} residual={} depth={} converged={}",
            format_complex(est.point.z),
            sig17(est.point.residual),
            est.point.depth,
            est.converged
        )?;
    } else {
        let depth: usize = opts.get(&args.depth, "depth")?.unwrap_or(40);
        let anchor: f64 = opts
            .get(&args.anchor, "anchor")?
            .unwrap_or_else(|| default_anchor(&p));
        let h = trace_hair(&p, &address, depth, anchor)?;
        writeln!(
            out,
            "z={} residual={} depth={}",
            format_complex(h.z),
            sig17(h.residual),
            h.depth
        )?;
    }
    Ok(0)
}

fn verify_cmd(suite: &str, out: &mut dyn Write) -> Result<i32> {
    let suites = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let seed = seed_from_env();
    let mut all_passed = true;
    for s in suites {
        for check in run_suite(s, seed)? {
            all_passed &= check.passed;
            writeln!(out, "{}/{check}", s.name())?;
        }
    }
    Ok(if all_passed { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(args, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn classify_param_line() {
        let (code, out, _) = run_capture(&["classify-param", "--a", "-2+0i"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "class=Attracting period=1 multiplier=0.158594,0.000000\n"
        );
    }

    #[test]
    fn bad_literal_is_a_usage_error() {
        let (code, _, err) = run_capture(&["classify-point", "--a", "bogus", "--z", "0"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
        let (code, _, _) = run_capture(&["classify-point", "--a", "bogus"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_capture(&["no-such-command"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn classify_point_lines() {
        let (code, out, _) =
            run_capture(&["classify-point", "--a", "-2", "--z", "1.2", "--depth", "20"]);
        assert_eq!(code, 0);
        assert_eq!(out, "class=FastEscaping ell=4 exit=5\n");
        let (_, out, _) = run_capture(&[
            "classify-point",
            "--map",
            "fatou",
            "--z",
            "10",
            "--depth",
            "100",
        ]);
        assert_eq!(out, "class=EscapingSlow exit=40\n");
        let (code, _, _) =
            run_capture(&["classify-point", "--a", "-2", "--z", "0", "--depth", "5"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn hair_lines() {
        let (code, out, _) =
            run_capture(&["trace-hair", "--a", "-2", "--address", "|0", "--endpoint"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("endpoint=1.14619322"), "{out}");
        assert!(out.trim_end().ends_with("converged=true"));
        let (code, out, _) = run_capture(&[
            "trace-hair",
            "--a",
            "-2",
            "--address",
            "0,1|0",
            "--depth",
            "4",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("z="));
    }

    #[test]
    fn config_file_supplies_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.cfg");
        std::fs::write(&cfg, "# parameter\na = -2+0i\nz = 10\ndepth = 10\n").unwrap();
        let cfg = cfg.to_str().unwrap();
        let (code, out, _) = run_capture(&["classify-point", "--config", cfg]);
        assert_eq!(code, 0);
        assert_eq!(out, "class=FastEscaping ell=0 exit=2\n");
        // flag wins over file
        let (_, out, _) = run_capture(&["classify-point", "--config", cfg, "--z", "1.2"]);
        assert_eq!(out, "class=FastEscaping ell=4 exit=5\n");
    }

    #[test]
    fn render_writes_pgm() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tiny.pgm");
        let path = path.to_str().unwrap();
        let (code, out, _) = run_capture(&[
            "render", "--map", "exp", "--a", "-2+0i", "--width", "16", "--height", "12", "--out",
            path,
        ]);
        assert_eq!(code, 0, "{out}");
        let bytes = std::fs::read(path).unwrap();
        assert!(bytes.starts_with(b"P5\n16 12\n255\n"));
        assert_eq!(bytes.len(), 13 + 16 * 12);
        let (code, _, _) = run_capture(&[
            "render",
            "--a",
            "-2",
            "--viewport",
            "1,0,0,1",
            "--out",
            path,
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn unwritable_output_is_a_runtime_error() {
        let (code, _, err) = run_capture(&[
            "render",
            "--a",
            "-2",
            "--width",
            "4",
            "--height",
            "4",
            "--out",
            "/nonexistent/dir/x.pgm",
        ]);
        assert_eq!(code, 1);
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn verify_unknown_suite() {
        let (code, _, _) = run_capture(&["verify", "nope"]);
        assert_eq!(code, 2);
        let (code, out, _) = run_capture(&["verify", "lemma7"]);
        assert_eq!(code, 0);
        assert!(out.lines().all(|l| l.starts_with("lemma7/PASS")));
    }
}
