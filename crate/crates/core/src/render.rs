//! Deterministic escape-time and classification rasterizer.
//!
//! Every pixel is classified from the centre of its cell, independently of
//! all others, so the image depends only on the [`RenderSpec`]: not on the
//! number of worker threads or on how rows are scheduled.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::classify::{
    classify_param, ParamClass, PointClass, PointClassifier, DEFAULT_BAILOUT, DEFAULT_MAX_PERIOD,
};
use crate::error::{Error, Result};
use crate::expmap::{Params, BAILOUT_GUARD};
use crate::fatou::fatou_classify;
use crate::fmt::sig17;

pub const DEFAULT_MAX_ITER: usize = 60;
pub const MAX_PIXELS: usize = 100_000_000;
/// Singular-orbit depth used to find the attracting cycle before rendering.
pub const ATTRACTOR_SEARCH_DEPTH: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MapKind {
    /// `e^z + a`.
    Exponential(Complex64),
    /// `z + 1 + e^{-z}`.
    Fatou,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Coloring {
    #[default]
    Classification,
    EscapeCount,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Viewport {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let v = Viewport {
            x_min,
            x_max,
            y_min,
            y_max,
        };
        v.validate()?;
        Ok(v)
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(Error::InvalidParams(format!(
                "viewport ({}, {}, {}, {}) needs x_min < x_max and y_min < y_max",
                self.x_min, self.x_max, self.y_min, self.y_max
            )));
        }
        Ok(())
    }

    /// Default figure window: `a = -2` gets `(-4, 8, -8, 8)`, every other
    /// exponential parameter `(-4, 10, -12, 12)`, Fatou's function
    /// `(-6, 10, -8, 8)`.
    pub fn default_for(map: MapKind) -> Self {
        let (x_min, x_max, y_min, y_max) = match map {
            MapKind::Exponential(a) if a == Complex64::new(-2.0, 0.0) => (-4.0, 8.0, -8.0, 8.0),
            MapKind::Exponential(_) => (-4.0, 10.0, -12.0, 12.0),
            MapKind::Fatou => (-6.0, 10.0, -8.0, 8.0),
        };
        Viewport {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderSpec {
    pub map: MapKind,
    pub viewport: Viewport,
    pub width: usize,
    pub height: usize,
    /// Classification depth; at least 10.
    pub max_iter: usize,
    pub bailout: f64,
    pub coloring: Coloring,
}

impl RenderSpec {
    /// Spec with the default viewport, `max_iter = 60`, `bailout = 1e10` and
    /// classification colouring.
    pub fn new(map: MapKind, width: usize, height: usize) -> Self {
        RenderSpec {
            map,
            viewport: Viewport::default_for(map),
            width,
            height,
            max_iter: DEFAULT_MAX_ITER,
            bailout: DEFAULT_BAILOUT,
            coloring: Coloring::Classification,
        }
    }

    pub fn with_viewport(mut self, viewport: Viewport) -> Self {
        self.viewport = viewport;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_bailout(mut self, bailout: f64) -> Self {
        self.bailout = bailout;
        self
    }

    pub fn with_coloring(mut self, coloring: Coloring) -> Self {
        self.coloring = coloring;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.viewport.validate()?;
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidParams(
                "width and height must be positive".into(),
            ));
        }
        if self
            .width
            .checked_mul(self.height)
            .is_none_or(|n| n > MAX_PIXELS)
        {
            return Err(Error::InvalidParams(format!(
                "{}x{} exceeds {MAX_PIXELS} pixels",
                self.width, self.height
            )));
        }
        if self.max_iter < 10 {
            return Err(Error::InvalidParams(format!(
                "max_iter {} below 10",
                self.max_iter
            )));
        }
        if !(self.bailout > 0.0 && self.bailout <= BAILOUT_GUARD) {
            return Err(Error::InvalidParams(format!(
                "bailout {} outside (0, {BAILOUT_GUARD}]",
                self.bailout
            )));
        }
        if let MapKind::Exponential(a) = self.map {
            Params::new(a)?;
        }
        Ok(())
    }

    fn dx(&self) -> f64 {
        (self.viewport.x_max - self.viewport.x_min) / self.width as f64
    }

    fn dy(&self) -> f64 {
        (self.viewport.y_max - self.viewport.y_min) / self.height as f64
    }

    /// Centre of pixel `(i, j)`, column `i` from the left, row `j` from the top.
    pub fn pixel_center(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(
            self.viewport.x_min + (i as f64 + 0.5) * self.dx(),
            self.viewport.y_max - (j as f64 + 0.5) * self.dy(),
        )
    }
}

/// Row-major greyscale image, top row first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageGrid {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl ImageGrid {
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.pixels[j * self.width + i]
    }
}

pub fn class_shade(class: &PointClass) -> u8 {
    match class {
        PointClass::Basin { .. } => 255,
        PointClass::NonEscapingBounded { .. } => 192,
        PointClass::EscapingSlow { .. } => 96,
        PointClass::FastEscaping { .. } => 0,
        PointClass::Undecided => 128,
    }
}

/// `255 n / max_iter` rounded half to even; non-escaping pixels use
/// `n = max_iter`.
pub fn escape_shade(class: &PointClass, max_iter: usize) -> u8 {
    let n = class.first_exit_step().unwrap_or(max_iter).min(max_iter);
    (255.0 * n as f64 / max_iter as f64).round_ties_even() as u8
}

enum Evaluator {
    Exponential(PointClassifier),
    Fatou,
}

impl Evaluator {
    fn new(spec: &RenderSpec) -> Result<Self> {
        Ok(match spec.map {
            MapKind::Fatou => Evaluator::Fatou,
            MapKind::Exponential(a) => {
                let p = Params::new(a)?;
                let classifier = PointClassifier::new(p);
                match classify_param(&p, DEFAULT_MAX_PERIOD, ATTRACTOR_SEARCH_DEPTH) {
                    Ok(ParamClass::Attracting(cycle)) => {
                        Evaluator::Exponential(classifier.with_attractor(cycle))
                    }
                    _ => Evaluator::Exponential(classifier),
                }
            }
        })
    }

    fn classify(&self, z: Complex64, spec: &RenderSpec) -> PointClass {
        let class = match self {
            Evaluator::Exponential(c) => c.classify(z, spec.max_iter, spec.bailout),
            Evaluator::Fatou => fatou_classify(z, spec.max_iter),
        };
        class.unwrap_or(PointClass::Undecided)
    }
}

fn thread_pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))
}

/// Classifies every pixel centre, row-major, on `threads` workers.
pub fn classify_pixels(spec: &RenderSpec, threads: usize) -> Result<Vec<PointClass>> {
    spec.validate()?;
    let eval = Evaluator::new(spec)?;
    let mut classes = vec![PointClass::Undecided; spec.width * spec.height];
    thread_pool(threads)?.install(|| {
        classes
            .par_chunks_mut(spec.width)
            .enumerate()
            .for_each(|(j, row)| {
                for (i, out) in row.iter_mut().enumerate() {
                    *out = eval.classify(spec.pixel_center(i, j), spec);
                }
            });
    });
    Ok(classes)
}

fn shade_all(spec: &RenderSpec, classes: &[PointClass]) -> ImageGrid {
    let pixels = classes
        .iter()
        .map(|c| match spec.coloring {
            Coloring::Classification => class_shade(c),
            Coloring::EscapeCount => escape_shade(c, spec.max_iter),
        })
        .collect();
    ImageGrid {
        width: spec.width,
        height: spec.height,
        pixels,
    }
}

/// Renders on all available cores.
pub fn render(spec: &RenderSpec) -> Result<ImageGrid> {
    render_with_threads(spec, rayon::current_num_threads())
}

pub fn render_with_threads(spec: &RenderSpec, threads: usize) -> Result<ImageGrid> {
    let classes = classify_pixels(spec, threads)?;
    Ok(shade_all(spec, &classes))
}

/// Image plus per-pixel classes, for callers that also want the CSV dump.
pub fn render_detailed(spec: &RenderSpec, threads: usize) -> Result<(ImageGrid, Vec<PointClass>)> {
    let classes = classify_pixels(spec, threads)?;
    Ok((shade_all(spec, &classes), classes))
}

/// Fraction of pixels classified as escaping, slow or fast.
pub fn escape_fraction(spec: &RenderSpec) -> Result<f64> {
    let classes = classify_pixels(spec, rayon::current_num_threads())?;
    Ok(fraction_escaping(&classes))
}

pub fn fraction_escaping(classes: &[PointClass]) -> f64 {
    classes.iter().filter(|c| c.is_escaping()).count() as f64 / classes.len() as f64
}

/// Binary PGM: `P5\n<w> <h>\n255\n` then the raw bytes.
pub fn write_pgm_to<W: Write>(mut out: W, grid: &ImageGrid) -> std::io::Result<()> {
    write!(out, "P5\n{} {}\n255\n", grid.width, grid.height)?;
    out.write_all(&grid.pixels)?;
    out.flush()
}

pub fn write_pgm(grid: &ImageGrid, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path)?;
    write_pgm_to(BufWriter::new(file), grid)?;
    Ok(())
}

/// CSV `x,y,tag,exit` with `x`, `y` the pixel centre; `exit` is empty for
/// non-escaping pixels.
pub fn write_pixel_csv<W: Write>(
    mut out: W,
    spec: &RenderSpec,
    classes: &[PointClass],
) -> std::io::Result<()> {
    writeln!(out, "x,y,tag,exit")?;
    for (k, class) in classes.iter().enumerate() {
        let z = spec.pixel_center(k % spec.width, k / spec.width);
        let exit = class
            .first_exit_step()
            .map(|n| n.to_string())
            .unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{}",
            sig17(z.re),
            sig17(z.im),
            class.tag(),
            exit
        )?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn small_spec() -> RenderSpec {
        RenderSpec::new(MapKind::Exponential(c(-2.0, 0.0)), 8, 6)
            .with_viewport(Viewport::new(-4.0, 4.0, -3.0, 3.0).unwrap())
            .with_max_iter(50)
    }

    #[test]
    fn pixel_centres() {
        let s = small_spec();
        assert_eq!(s.pixel_center(0, 0), c(-3.5, 2.5));
        assert_eq!(s.pixel_center(7, 5), c(3.5, -2.5));
    }

    #[test]
    fn small_grid_example() {
        let g = render_with_threads(&small_spec(), 1).unwrap();
        // -2 and 3 sit on cell corners here, and every cell centre of this
        // grid lies in the basin: e.g. 2.5 + 0.5i reaches Im ~ -2548.25
        // with cos < 0 and drops onto a.
        assert!(g.pixels.iter().all(|&v| v == 255));
    }

    fn centred_spec() -> RenderSpec {
        // cell centres on the integer lattice, so -2 and 3 are centres
        RenderSpec::new(MapKind::Exponential(c(-2.0, 0.0)), 8, 7)
            .with_viewport(Viewport::new(-4.5, 3.5, -3.5, 3.5).unwrap())
            .with_max_iter(50)
    }

    #[test]
    fn centred_grid_example() {
        let s = centred_spec();
        assert_eq!(s.pixel_center(2, 3), c(-2.0, 0.0));
        assert_eq!(s.pixel_center(7, 3), c(3.0, 0.0));
        let g = render_with_threads(&s, 1).unwrap();
        assert_eq!(g.get(2, 3), 255);
        assert_eq!(g.get(7, 3), 0);
    }

    #[test]
    fn single_pixel_on_the_fixed_point() {
        let x = -1.841_405_660_436_960_6;
        let spec = RenderSpec::new(MapKind::Exponential(c(-2.0, 0.0)), 1, 1)
            .with_viewport(Viewport::new(x - 0.5, x + 0.5, -0.5, 0.5).unwrap());
        assert_eq!(render_with_threads(&spec, 1).unwrap().pixels, vec![255]);
        assert_eq!(escape_fraction(&spec).unwrap(), 0.0);
        let escaping = spec.with_viewport(Viewport::new(9.5, 10.5, -0.5, 0.5).unwrap());
        assert_eq!(escape_fraction(&escaping).unwrap(), 1.0);
    }

    #[test]
    fn left_half_plane_never_escapes() {
        let spec = RenderSpec::new(MapKind::Exponential(c(-2.0, 0.0)), 16, 16)
            .with_viewport(Viewport::new(-12.0, -4.0, -4.0, 4.0).unwrap());
        assert_eq!(escape_fraction(&spec).unwrap(), 0.0);
    }

    #[test]
    fn thread_count_does_not_change_bytes() {
        let spec = RenderSpec::new(MapKind::Exponential(c(-2.0, 0.0)), 64, 48);
        let one = render_with_threads(&spec, 1).unwrap();
        for t in [2, 3, 8] {
            assert_eq!(render_with_threads(&spec, t).unwrap(), one);
        }
    }

    #[test]
    fn sub_viewport_reproduces_sub_grid() {
        // dyadic window and pixel size keep every centre exact
        let spec = RenderSpec::new(MapKind::Exponential(c(-2.0, 0.0)), 64, 64)
            .with_viewport(Viewport::new(-4.0, 4.0, -4.0, 4.0).unwrap());
        let full = render_with_threads(&spec, 2).unwrap();
        // columns 16..48, rows 8..40
        let sub = spec.with_viewport(Viewport::new(-2.0, 2.0, -1.0, 3.0).unwrap());
        let sub = RenderSpec {
            width: 32,
            height: 32,
            ..sub
        };
        let part = render_with_threads(&sub, 2).unwrap();
        for j in 0..32 {
            for i in 0..32 {
                assert_eq!(part.get(i, j), full.get(i + 16, j + 8));
            }
        }
    }

    #[test]
    fn escape_count_shades() {
        assert_eq!(
            escape_shade(&PointClass::EscapingSlow { first_exit_step: 3 }, 60),
            13
        );
        // 255 * 2 / 4 = 127.5 rounds to even
        assert_eq!(
            escape_shade(&PointClass::EscapingSlow { first_exit_step: 2 }, 4),
            128
        );
        assert_eq!(escape_shade(&PointClass::Basin { period: 1 }, 60), 255);
        let spec = centred_spec().with_coloring(Coloring::EscapeCount);
        let g = render_with_threads(&spec, 1).unwrap();
        assert_eq!(g.get(2, 3), 255);
        // 3 exits at step 3: 255 * 3 / 50 = 15.3
        assert_eq!(g.get(7, 3), 15);
    }

    #[test]
    fn fatou_render_runs() {
        let spec = RenderSpec::new(MapKind::Fatou, 32, 32);
        let (g, classes) = render_detailed(&spec, 2).unwrap();
        assert_eq!(g.pixels.len(), 1024);
        assert!(classes.iter().any(|c| c.is_escaping()));
        assert!(classes
            .iter()
            .all(|c| !matches!(c, PointClass::FastEscaping { .. })));
    }

    #[test]
    fn invalid_specs() {
        let s = small_spec();
        assert!(RenderSpec { width: 0, ..s }.validate().is_err());
        assert!(s.with_max_iter(5).validate().is_err());
        assert!(s.with_bailout(1e20).validate().is_err());
        assert!(Viewport::new(1.0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn pgm_layout() {
        let grid = ImageGrid {
            width: 1,
            height: 1,
            pixels: vec![0],
        };
        let mut buf = Vec::new();
        write_pgm_to(&mut buf, &grid).unwrap();
        assert_eq!(buf, b"P5\n1 1\n255\n\0");
        let g = render_with_threads(&small_spec(), 1).unwrap();
        let mut buf = Vec::new();
        write_pgm_to(&mut buf, &g).unwrap();
        assert!(buf.starts_with(b"P5\n8 6\n255\n"));
        assert_eq!(buf.len(), 11 + 48);
    }

    #[test]
    fn csv_rows() {
        let spec = small_spec();
        let classes = classify_pixels(&spec, 1).unwrap();
        let mut buf = Vec::new();
        write_pixel_csv(&mut buf, &spec, &classes).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,y,tag,exit");
        assert_eq!(lines.len(), 49);
        assert!(lines[1].starts_with("-3.5,2.5,"));
    }
}
