//! Parameter classification through the orbit of the singular value `a`.

#![allow(clippy::approx_constant)]
use std::f64::consts::PI;

use expbouquet::classify::format_cycle_points;
use expbouquet::{classify_param, Complex64, Params};

fn main() {
    let params = [
        ("a = -2", Complex64::new(-2.0, 0.0)),
        ("a = -1", Complex64::new(-1.0, 0.0)),
        ("a = ln pi + i pi/2", Complex64::new(PI.ln(), PI / 2.0)),
        ("a = 5 + 3.14i", Complex64::new(5.0, 3.14)),
        ("a = 2.06 + 1.57i", Complex64::new(2.06, 1.57)),
        ("a = 1.004 + 2.9i", Complex64::new(1.004, 2.9)),
        ("a = 1", Complex64::new(1.0, 0.0)),
    ];
    for (label, a) in params {
        let class = classify_param(&Params::new(a).unwrap(), 64, 10_000).unwrap();
        println!("{label:<20} {class}");
        if let Some(cycle) = class.cycle().filter(|c| c.period() <= 3) {
            println!("{:<20} points={}", "", format_cycle_points(cycle));
        }
    }
}
