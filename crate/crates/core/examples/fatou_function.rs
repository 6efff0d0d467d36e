//! Fatou's function `z + 1 + e^{-z}`: the semiconjugacy to
//! `h(w) = e^{-1} w e^{-w}` and orbit classification.
use std::f64::consts::PI;

use expbouquet::fatou::{fatou_classify, fatou_eval, h_eval, semiconj_residual};
use expbouquet::Complex64;

fn main() {
    let z = Complex64::new(1.0, 0.0);
    println!(
        "f(1) = {}, h(1) = {}",
        fatou_eval(z).unwrap(),
        h_eval(z).unwrap()
    );
    println!(
        "semiconjugacy residual at 0.3-2i: {:e}",
        semiconj_residual(Complex64::new(0.3, -2.0)).unwrap()
    );
    let fixed = Complex64::new(0.0, PI);
    println!("f(i pi) - i pi = {}", fatou_eval(fixed).unwrap() - fixed);

    for z in [
        Complex64::new(10.0, 0.0),
        Complex64::new(0.0, PI),
        Complex64::new(-10.0, 0.0),
        Complex64::new(0.5, 1.0),
    ] {
        println!("{z:>8}  {}", fatou_classify(z, 100).unwrap());
    }
}
