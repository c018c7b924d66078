//! Oracle tests for truncated ε²-jet arithmetic and the perturbed
//! shallow-water defect.

use whitham_field::testing::{smooth_field, smooth_zero_mean_field};
use whitham_field::{Grid1D, RealField};
use whitham_jets::reference::{first_level_forcing, first_level_residual};
use whitham_jets::{jet_defect_swe, JetError, JetField, MAX_ORDER};

/// Tolerances used below, with the reasoning that fixes them.
mod tol {
    /// Identities that hold by construction, up to a handful of ulps of
    /// floating-point evaluation order on fields of modest amplitude.
    pub const EXACT: f64 = 1e-12;
    /// Agreement between independently coded formula routes. Third spectral
    /// derivatives on a 128-point grid amplify roundoff by κ³ ≈ 3·10⁵, so
    /// the roundoff band is wider than for plain arithmetic.
    pub const FORMULA_MATCH: f64 = 1e-10;
}

fn grid() -> Grid1D {
    Grid1D::new(128, 2.0 * std::f64::consts::PI).unwrap()
}

fn sup_diff(a: &RealField, b: &RealField) -> f64 {
    (a - b).sup_norm()
}

#[test]
fn jet_construction_rejects_bad_shapes() {
    let g = grid();
    assert!(matches!(JetField::new(vec![]), Err(JetError::Empty)));
    assert!(matches!(
        JetField::zeros(g, MAX_ORDER + 1),
        Err(JetError::OrderTooHigh { .. })
    ));

    let other = Grid1D::new(64, 1.0).unwrap();
    let mixed = JetField::new(vec![RealField::zeros(g), RealField::zeros(other)]);
    assert!(matches!(mixed, Err(JetError::GridMismatch { .. })));

    let a = JetField::zeros(g, 1).unwrap();
    let b = JetField::zeros(g, 2).unwrap();
    assert!(matches!(a.add(&b), Err(JetError::OrderMismatch { .. })));
    assert!(matches!(a.mul(&b), Err(JetError::OrderMismatch { .. })));
}

#[test]
fn base_embedding_behaves_like_the_field() {
    let g = grid();
    let f = RealField::from_fn(g, |x| (2.0 * x).sin());
    let h = RealField::from_fn(g, |x| 0.5 * x.cos());

    let fj = JetField::from_base(f.clone(), 2).unwrap();
    let hj = JetField::from_base(h.clone(), 2).unwrap();

    // Evaluation ignores ε because every correction slot is zero.
    assert_eq!(sup_diff(&fj.evaluate(0.37), &f), 0.0);

    let sum = fj.add(&hj).unwrap();
    assert_eq!(sup_diff(sum.coeff(0), &(&f + &h)), 0.0);

    let prod = fj.mul(&hj).unwrap();
    let direct = f.mul_dealiased(&h);
    println!(
        "base-jet product vs field product: sup diff = {:.3e}",
        sup_diff(prod.coeff(0), &direct)
    );
    assert!(sup_diff(prod.coeff(0), &direct) <= tol::EXACT);
    assert!(prod.coeff(1).sup_norm() == 0.0 && prod.coeff(2).sup_norm() == 0.0);
}

#[test]
fn product_of_pure_corrections_truncates_to_zero() {
    let g = grid();
    let f = RealField::from_fn(g, |x| x.sin());
    let h = RealField::from_fn(g, |x| (3.0 * x).cos());
    let fj = JetField::new(vec![RealField::zeros(g), f]).unwrap();
    let hj = JetField::new(vec![RealField::zeros(g), h]).unwrap();

    // (ε²f)(ε²h) = ε⁴fh lies beyond order 1 and must be dropped entirely.
    let prod = fj.mul(&hj).unwrap();
    assert_eq!(prod.coeff(0).sup_norm(), 0.0);
    assert_eq!(prod.coeff(1).sup_norm(), 0.0);
}

#[test]
fn cauchy_product_coefficients_match_the_hand_expansion() {
    let g = grid();
    let a: Vec<RealField> = (0..3)
        .map(|j| smooth_field(g, 10 + j as u64, 0.8, 5))
        .collect();
    let b: Vec<RealField> = (0..3)
        .map(|j| smooth_field(g, 20 + j as u64, 0.8, 5))
        .collect();
    let aj = JetField::new(a.clone()).unwrap();
    let bj = JetField::new(b.clone()).unwrap();

    let prod = aj.mul(&bj).unwrap();
    for l in 0..=2 {
        let mut hand = RealField::zeros(g);
        for j in 0..=l {
            hand = &hand + &a[j].mul_dealiased(&b[l - j]);
        }
        let d = sup_diff(prod.coeff(l), &hand);
        println!("Cauchy slot {l}: sup diff vs hand expansion = {d:.3e}");
        assert!(d <= tol::EXACT);
    }
}

#[test]
fn exp_of_base_jet_is_the_pointwise_exponential() {
    let g = grid();
    let r = smooth_field(g, 3, 0.5, 4);
    let jet = JetField::from_base(r.clone(), 2).unwrap().exp_scaled(2.0);
    assert_eq!(sup_diff(jet.coeff(0), &r.exp_pointwise(2.0)), 0.0);
    assert_eq!(jet.coeff(1).sup_norm(), 0.0);
    assert_eq!(jet.coeff(2).sup_norm(), 0.0);
}

#[test]
fn exp_jet_matches_the_analytic_series() {
    let g = grid();
    let r = RealField::from_fn(g, |x| 0.3 * x.sin());
    let r1 = RealField::from_fn(g, |x| 0.25 * x.cos());

    // exp(2(r + ε²r₁)) = e^{2r} (1 + 2ε²r₁ + 2ε⁴r₁²).
    let jet = JetField::new(vec![r.clone(), r1.clone(), RealField::zeros(g)])
        .unwrap()
        .exp_scaled(2.0);

    let e2r = r.exp_pointwise(2.0);
    let slot1 = e2r.mul_dealiased(&r1).scale(2.0);
    let slot2 = e2r.mul_dealiased(&r1.mul_dealiased(&r1)).scale(2.0);

    assert_eq!(sup_diff(jet.coeff(0), &e2r), 0.0);
    let d1 = sup_diff(jet.coeff(1), &slot1);
    let d2 = sup_diff(jet.coeff(2), &slot2);
    println!("exp jet series slots: diffs = {d1:.3e}, {d2:.3e}");
    assert!(d1 <= tol::EXACT && d2 <= tol::EXACT);
}

#[test]
fn exp_jet_truncation_error_is_sixth_order_with_computed_constant() {
    let g = grid();
    let r = RealField::from_fn(g, |x| 0.3 * x.sin());
    let r1 = RealField::from_fn(g, |x| 0.25 * x.cos());
    let jet = JetField::new(vec![r.clone(), r1.clone(), RealField::zeros(g)])
        .unwrap()
        .exp_scaled(1.0);

    // Remainder of exp(r + ε²r₁) after the ε⁴ term: e^r Σ_{j≥3}(ε²r₁)^j/j!,
    // so sup|diff| ≤ C ε⁶ with C = sup(e^r |r₁|³) e^{ε²sup|r₁|} / 6, and the
    // leading term makes diff ≥ sup(e^r |r₁|³) ε⁶/6 · (1 − small) as well.
    let eps: f64 = 0.1;
    let truth = RealField::from_fn(g, |x| (0.3 * x.sin() + eps * eps * 0.25 * x.cos()).exp());
    let diff = sup_diff(&jet.evaluate(eps), &truth);

    let lead = r
        .exp_pointwise(1.0)
        .mul_pointwise(&r1.map(|v| v.abs().powi(3)))
        .sup_norm()
        / 6.0;
    let upper = lead * (eps * eps * 0.25f64).exp() * eps.powi(6);
    let lower = 0.5 * lead * eps.powi(6);
    println!("exp truncation at ε={eps}: diff = {diff:.3e}, bounds = [{lower:.3e}, {upper:.3e}]");
    assert!(diff <= upper * 1.000001);
    assert!(diff >= lower);
}

#[test]
fn exp_jets_of_opposite_signs_multiply_to_one() {
    let g = grid();
    let coeffs: Vec<RealField> = (0..3).map(|j| smooth_field(g, 40 + j, 0.5, 4)).collect();
    let a = JetField::new(coeffs).unwrap();

    let prod = a.exp_scaled(1.0).mul(&a.exp_scaled(-1.0)).unwrap();
    let d0 = sup_diff(prod.coeff(0), &RealField::constant(g, 1.0));
    println!(
        "exp(a)·exp(−a): slot diffs from (1,0,0) = {:.3e}, {:.3e}, {:.3e}",
        d0,
        prod.coeff(1).sup_norm(),
        prod.coeff(2).sup_norm()
    );
    assert!(d0 <= tol::EXACT);
    assert!(prod.coeff(1).sup_norm() <= tol::EXACT);
    assert!(prod.coeff(2).sup_norm() <= tol::EXACT);
}

#[test]
fn shift_up_moves_slots_and_drops_the_top() {
    let g = grid();
    let coeffs: Vec<RealField> = (0..3).map(|j| smooth_field(g, 60 + j, 1.0, 4)).collect();
    let a = JetField::new(coeffs.clone()).unwrap();

    let shifted = a.shift_up();
    assert_eq!(shifted.order(), 2);
    assert_eq!(shifted.coeff(0).sup_norm(), 0.0);
    assert_eq!(sup_diff(shifted.coeff(1), &coeffs[0]), 0.0);
    assert_eq!(sup_diff(shifted.coeff(2), &coeffs[1]), 0.0);
}

#[test]
fn evaluation_is_a_ring_homomorphism_up_to_truncation_order() {
    let g = grid();

    // Truncation drops O(ε^{2(n+1)}) Cauchy terms, so the pointwise product
    // of evaluations and the evaluation of the jet product differ at order
    // ε⁴ for n = 1 and ε⁶ for n = 2. Coefficients are band-limited well
    // below the dealiasing threshold, so no aliasing enters the comparison.
    for (order, expected) in [(1usize, 4.0f64), (2, 6.0)] {
        let a = JetField::new((0..=order).map(|j| smooth_field(g, 70 + j as u64, 0.5, 4)).collect())
            .unwrap();
        let b = JetField::new((0..=order).map(|j| smooth_field(g, 90 + j as u64, 0.5, 4)).collect())
            .unwrap();
        let prod = a.mul(&b).unwrap();

        let diff_at = |eps: f64| {
            let pointwise = a.evaluate(eps).mul_dealiased(&b.evaluate(eps));
            sup_diff(&pointwise, &prod.evaluate(eps))
        };
        let (e1, e2) = (0.3, 0.1);
        let (d1, d2) = (diff_at(e1), diff_at(e2));
        let observed = (d1 / d2).ln() / (e1 / e2).ln();
        println!(
            "evaluation homomorphism at order {order}: diffs ({d1:.3e}, {d2:.3e}), \
             observed order {observed:.3} (expected {expected})"
        );
        assert!(d2 > 1e-14, "difference fell below roundoff; test is vacuous");
        assert!((observed - expected).abs() <= 0.2);
    }
}

#[test]
fn defect_vanishes_on_frozen_wavetrains() {
    let g = grid();
    let zero = JetField::zeros(g, 2).unwrap();
    let (d_r, d_u) = jet_defect_swe(&zero, &zero, 0.7, -1.0, &zero, &zero).unwrap();
    for l in 0..=2 {
        assert!(d_r.coeff(l).sup_norm() <= tol::EXACT);
        assert!(d_u.coeff(l).sup_norm() <= tol::EXACT);
    }
}

#[test]
fn defect_matches_closed_form_for_a_sine_profile() {
    let g = grid();
    let r = RealField::from_fn(g, |x| x.sin());
    let rj = JetField::from_base(r, 1).unwrap();
    let zero = JetField::zeros(g, 1).unwrap();

    // With r̂ = sin X, û = 0, k = 0, γ = −1 and frozen time:
    //   D_r ≡ 0,
    //   D_u = ∂_X e^{2 sin X} − ε² [∂³_X sin X + ∂_X cos²X]
    //       = 2 cos X e^{2 sin X} + ε² (cos X + sin 2X).
    let (d_r, d_u) = jet_defect_swe(&rj, &zero, 0.0, -1.0, &zero, &zero).unwrap();

    let base = RealField::from_fn(g, |x| 2.0 * x.cos() * (2.0 * x.sin()).exp());
    let correction = RealField::from_fn(g, |x| x.cos() + (2.0 * x).sin());
    let d0 = sup_diff(d_u.coeff(0), &base);
    let d1 = sup_diff(d_u.coeff(1), &correction);
    println!("sine-profile defect: slot diffs = {d0:.3e}, {d1:.3e}");
    assert!(d_r.coeff(0).sup_norm() <= tol::EXACT && d_r.coeff(1).sup_norm() <= tol::EXACT);
    assert!(d0 <= tol::FORMULA_MATCH);
    assert!(d1 <= tol::FORMULA_MATCH);
}

#[test]
fn machine_defect_reproduces_the_transcribed_first_level_forcing() {
    let g = grid();
    let r = smooth_field(g, 101, 0.4, 5);
    let u = smooth_zero_mean_field(g, 102, 0.4, 5);
    let k = 1.0;

    // Base-only jets with frozen time: slot 1 of the u-defect is minus the
    // forcing that drives the first correction level.
    let rj = JetField::from_base(r.clone(), 1).unwrap();
    let uj = JetField::from_base(u, 1).unwrap();
    let zero = JetField::zeros(g, 1).unwrap();
    let (d_r, d_u) = jet_defect_swe(&rj, &uj, k, -1.0, &zero, &zero).unwrap();

    let (f_r, f_u) = first_level_forcing(&r).unwrap();
    assert_eq!(f_r.sup_norm(), 0.0);
    let d = sup_diff(&d_u.coeff(1).scale(-1.0), &f_u);
    println!("machine vs transcribed first-level forcing: sup diff = {d:.3e}");
    assert!(d_r.coeff(1).sup_norm() <= tol::EXACT);
    assert!(d <= tol::FORMULA_MATCH);
}

#[test]
fn machine_defect_reproduces_the_transcribed_first_level_residual() {
    let g = grid();
    let r = smooth_field(g, 111, 0.4, 5);
    let u = smooth_zero_mean_field(g, 112, 0.4, 5);
    let r1 = smooth_field(g, 113, 0.6, 5);
    let u1 = smooth_zero_mean_field(g, 114, 0.6, 5);
    let gamma = -1.0;

    // Order-2 jets carrying the first correction, zero in the top slot and
    // frozen in time: slot 2 of the defect is the residual the first
    // correction leaves behind.
    let rj = JetField::new(vec![r.clone(), r1.clone(), RealField::zeros(g)]).unwrap();
    let uj = JetField::new(vec![u, u1.clone(), RealField::zeros(g)]).unwrap();
    let zero = JetField::zeros(g, 2).unwrap();
    let (d_r, d_u) = jet_defect_swe(&rj, &uj, 0.8, gamma, &zero, &zero).unwrap();

    let (res_r, res_u) = first_level_residual(&r, &r1, &u1, gamma).unwrap();
    let dr = sup_diff(d_r.coeff(2), &res_r);
    let du = sup_diff(d_u.coeff(2), &res_u);
    println!("machine vs transcribed first-level residual: sup diffs = {dr:.3e}, {du:.3e}");
    assert!(dr <= tol::FORMULA_MATCH);
    assert!(du <= tol::FORMULA_MATCH);
}

#[test]
fn time_jets_enter_the_defect_linearly() {
    let g = grid();
    let rj = JetField::new((0..2).map(|j| smooth_field(g, 120 + j, 0.3, 4)).collect()).unwrap();
    let uj = JetField::new((0..2).map(|j| smooth_field(g, 130 + j, 0.3, 4)).collect()).unwrap();
    let rt = JetField::new((0..2).map(|j| smooth_field(g, 140 + j, 0.7, 4)).collect()).unwrap();
    let ut = JetField::new((0..2).map(|j| smooth_field(g, 150 + j, 0.7, 4)).collect()).unwrap();
    let zero = JetField::zeros(g, 1).unwrap();

    let (dr_full, du_full) = jet_defect_swe(&rj, &uj, 0.8, -1.0, &rt, &ut).unwrap();
    let (dr_frozen, du_frozen) = jet_defect_swe(&rj, &uj, 0.8, -1.0, &zero, &zero).unwrap();

    for l in 0..=1 {
        let dr = sup_diff(dr_full.coeff(l), &(dr_frozen.coeff(l) + rt.coeff(l)));
        let du = sup_diff(du_full.coeff(l), &(du_frozen.coeff(l) + ut.coeff(l)));
        assert!(
            dr <= tol::EXACT && du <= tol::EXACT,
            "time jets must pass through additively (diffs {dr:.3e}, {du:.3e})"
        );
    }
}
