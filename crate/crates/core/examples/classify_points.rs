//! Orbits, escape and fast-escape certification for single seeds.
use expbouquet::{classify_point, fast_escape_test, orbit, Complex64, Params};

fn main() {
    let p = Params::new(Complex64::new(-2.0, 0.0)).unwrap();

    println!("orbit of 1.2:");
    for s in orbit(&p, Complex64::new(1.2, 0.0), 8, 1e10).unwrap() {
        match s.z {
            Some(z) => println!("  z_{} = {z:.6}", s.n),
            None => println!("  |z_{}| = {} ({})", s.n, s.magnitude, s.status.as_str()),
        }
    }

    for z in [
        Complex64::new(10.0, 0.0),
        Complex64::new(1.2, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(3.0, 2.0),
        Complex64::new(2.5, 0.5),
    ] {
        let class = classify_point(&p, z, 60, 1e10).unwrap();
        println!("{z:>10}  {class}");
    }

    if let Some(fe) = fast_escape_test(&p, Complex64::new(1.2, 0.0), 12) {
        println!(
            "1.2 dominates M^n(R) from step {} ({} comparisons)",
            fe.offset, fe.verified_depth
        );
    }
}
