//! Renders the four exponential-family figures and Fatou's function as PGM
//! files into the directory given as the first argument (default `.`).

#![allow(clippy::approx_constant)]
use std::path::PathBuf;
use std::time::Instant;

use expbouquet::render::{
    fraction_escaping, render_detailed, write_pgm, Coloring, MapKind, RenderSpec,
};
use expbouquet::Complex64;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let size = 800;
    let maps = [
        ("exp_a-2", MapKind::Exponential(Complex64::new(-2.0, 0.0))),
        (
            "exp_a5+3.14i",
            MapKind::Exponential(Complex64::new(5.0, 3.14)),
        ),
        (
            "exp_a2.06+1.57i",
            MapKind::Exponential(Complex64::new(2.06, 1.57)),
        ),
        (
            "exp_a1.004+2.9i",
            MapKind::Exponential(Complex64::new(1.004, 2.9)),
        ),
        ("fatou", MapKind::Fatou),
    ];
    for (name, map) in maps {
        for (suffix, coloring) in [
            ("", Coloring::Classification),
            ("_count", Coloring::EscapeCount),
        ] {
            let spec = RenderSpec::new(map, size, size).with_coloring(coloring);
            let t = Instant::now();
            let (grid, classes) = render_detailed(&spec, 4).unwrap();
            let path = dir.join(format!("{name}{suffix}.pgm"));
            write_pgm(&grid, &path).unwrap();
            println!(
                "{} escape fraction {:.4} in {:.2}s",
                path.display(),
                fraction_escaping(&classes),
                t.elapsed().as_secs_f64()
            );
        }
    }
}
