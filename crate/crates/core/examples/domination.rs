//! Quantitative lemmas: when a fast orbit dominates a slow one, the
//! separation constant, and the pullback regions near the singular value.
use std::f64::consts::PI;

use expbouquet::symbolic::{
    compute_lambda, find_domination_index, prop4_membership, Polyline, SeparationConfig,
};
use expbouquet::{classify_param, Complex64, ParamClass, Params};

fn main() {
    let p = Params::new(Complex64::new(-2.0, 0.0)).unwrap();
    let fixed = match classify_param(&p, 1, 1000).unwrap() {
        ParamClass::Attracting(c) => c.points[0],
        other => panic!("unexpected {other}"),
    };
    let s = Complex64::new(10.0, 0.0);
    for kappa in [1e2, 1e3, 3e4, 1e5, 1e8] {
        let n = find_domination_index(&p, s, fixed, kappa, 20).unwrap();
        println!("kappa = {kappa:e}: |f^n(10)| > 2|f^n(fixed)| + kappa from n = {n:?}");
    }

    let cfg = SeparationConfig::new(3.0, 2.0 * PI + 1.0, 1.0).unwrap();
    println!("lambda(c=3, delta=2pi+1) = {}", compute_lambda(&p, &cfg));

    let arc = Polyline::new(vec![Complex64::new(-2.0, 0.0), Complex64::new(-1.0, 0.5)]).unwrap();
    // preimage of the arc midpoint -1.5+0.25i
    let on_arc = (Complex64::new(-1.5, 0.25) - p.a()).ln();
    for z in [
        Complex64::new(-4.0, 1.0),
        on_arc,
        Complex64::new(-0.5, 0.0),
        Complex64::new(2.0, 0.0),
    ] {
        println!("{z}: {:?}", prop4_membership(&p, &cfg, Some(&arc), z));
    }
}
