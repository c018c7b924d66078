//! Property tests: algebraic invariants that must hold for arbitrary smooth
//! fields, exercised over seeded random trigonometric data.

use proptest::prelude::*;
use whitham_field::testing::smooth_field;
use whitham_field::{Grid1D, RealField};

fn grid() -> Grid1D {
    Grid1D::new(64, 2.0 * std::f64::consts::PI).unwrap()
}

fn arb_field() -> impl Strategy<Value = RealField> {
    (any::<u64>(), 0.1f64..3.0).prop_map(|(seed, amp)| smooth_field(grid(), seed, amp, 12))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sobolev_norm_is_monotone_in_s(f in arb_field()) {
        let norms: Vec<f64> = (0..=8).map(|s| f.sobolev_norm(s).unwrap()).collect();
        for w in norms.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-12, "H^s norms must not decrease: {norms:?}");
        }
    }

    #[test]
    fn inner_product_is_symmetric_and_bilinear(
        f in arb_field(),
        g in arb_field(),
        h in arb_field(),
        a in -2.0f64..2.0,
        b in -2.0f64..2.0,
    ) {
        let scale = f.sup_norm().max(g.sup_norm()).max(h.sup_norm()).max(1.0);
        let sym = (f.l2_inner(&g).unwrap() - g.l2_inner(&f).unwrap()).abs();
        prop_assert!(sym < 1e-12 * scale * scale);

        let combo = &f.scale(a) + &g.scale(b);
        let lhs = combo.l2_inner(&h).unwrap();
        let rhs = a * f.l2_inner(&h).unwrap() + b * g.l2_inner(&h).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-11 * scale * scale, "lhs {lhs} rhs {rhs}");
    }

    #[test]
    fn parseval_holds_for_random_smooth_fields(f in arb_field()) {
        let physical = f.l2_inner(&f).unwrap();
        let spectral: f64 = f.grid().length()
            * f.spectrum().iter().map(|c| c.norm_sqr()).sum::<f64>();
        let denom = physical.max(1e-300);
        prop_assert!(((physical - spectral) / denom).abs() < 1e-10);
    }

    #[test]
    fn derivative_commutes_with_itself(f in arb_field()) {
        let twice = f.derivative(1).unwrap().derivative(1).unwrap();
        let second = f.derivative(2).unwrap();
        let scale = second.sup_norm().max(1e-300);
        let err = twice.values().iter().zip(second.values())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        prop_assert!(err / scale < 1e-10);
    }
}
