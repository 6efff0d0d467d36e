use std::cmp::Ordering;

use expbouquet::TowerReal;
use proptest::prelude::*;

fn tower() -> impl Strategy<Value = TowerReal> {
    (0u32..6, 0.0f64..1.0).prop_map(|(level, u)| {
        // spread mantissas over the whole window of the level
        let lo = if level == 0 { 0.0 } else { 1e15f64.ln() };
        TowerReal::from_parts(level, lo + u * (1e15 - lo)).unwrap()
    })
}

proptest! {
    #[test]
    fn exp_then_ln_is_identity(t in tower()) {
        let back = t.exp().ln().unwrap();
        prop_assert_eq!(back.level(), t.level());
        prop_assert!((back.mantissa() - t.mantissa()).abs() <= 1e-12 * t.mantissa().max(1.0));
    }

    #[test]
    fn exp_is_monotone(s in tower(), t in tower()) {
        let before = s.cmp_tower(&t);
        let after = s.exp().cmp_tower(&t.exp());
        prop_assert!(before == Ordering::Equal || after == before || after == Ordering::Equal);
    }

    #[test]
    fn affine_never_decreases(t in tower(), scale in 1.0f64..10.0, offset in 0.0f64..1e6) {
        prop_assert!(t.affine(scale, offset) >= t);
    }

    #[test]
    fn text_form_round_trips(t in tower()) {
        prop_assert_eq!(t.to_string().parse::<TowerReal>().unwrap(), t);
    }

    #[test]
    fn ordinary_values_agree_with_f64(x in 0.0f64..700.0) {
        let e = TowerReal::from_real(x).exp().to_f64();
        prop_assert!((e - x.exp()).abs() <= 1e-12 * x.exp());
    }
}
