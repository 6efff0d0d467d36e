//! Maximum modulus of `e^z + a` and the iterates `M^n(R)` used as the
//! fast-escape yardstick.

#![allow(clippy::approx_constant)]
use std::f64::consts::PI;

use expbouquet::{m_iterates, max_modulus, Complex64, Params};

fn main() {
    for a in [Complex64::new(-2.0, 0.0), Complex64::new(5.0, 3.14)] {
        let p = Params::new(a).unwrap();
        println!("a = {a}, R = {}", p.radius());
        for r in [PI, 4.0, 7.0, 12.0] {
            println!("  M({r:.4}) = {:.6}", max_modulus(&p, r));
        }
        let it: Vec<String> = m_iterates(&p, 4).iter().map(|t| t.to_string()).collect();
        println!("  M^n(R), n = 0..4: {}", it.join(", "));
    }
}
