//! Magnitudes far beyond `f64`: iterated exponentials and their ordering.
use expbouquet::TowerReal;

fn main() {
    let mut t = TowerReal::from_real(2.0);
    for n in 0..6 {
        println!("exp^{n}(2) = {t}");
        t = t.exp();
    }

    // Ordering is decided level by level, even where f64 would be infinite.
    let x = TowerReal::from_real(700.0).exp().exp();
    let y = TowerReal::from_real(701.0).exp().exp();
    println!("{x} < {y}: {}", x < y);
    println!("2 * {x} + 5 = {}", x.affine(2.0, 5.0));

    let parsed: TowerReal = "T(2;22026.465794806718)".parse().unwrap();
    println!("parsed {parsed}, ln = {}", parsed.ln().unwrap());
}
