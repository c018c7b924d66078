use num_complex::Complex64;
use whitham_field::{ComplexField, RealField};

use crate::{DeviationState, NlsError, GAMMA};

/// Slow-grid background fields entering the deviation equation at one
/// instant: the assembled log-amplitude r̂, the phase-gradient ∂_Xφ̂ of the
/// lifted phase, and the two modulation residuals that force the equation.
#[derive(Debug, Clone, Copy)]
pub struct SlowBackground<'a> {
    pub r_hat: &'a RealField,
    pub phi_x: &'a RealField,
    pub res_phi: &'a RealField,
    pub res_a: &'a RealField,
}

/// Size of the defect left when a deviation trajectory is substituted into
/// the evolution equation that V = 1 + W satisfies exactly in the modulated
/// frame, against the size of the largest participating term.
#[derive(Debug, Clone, Copy)]
pub struct DefectReport {
    /// ‖defect‖_{L²} of the substituted equation.
    pub defect_l2: f64,
    /// Largest ‖·‖_{L²} among the equation's individual terms.
    pub scale_l2: f64,
    /// ‖·‖_{L²} of the individual terms in equation order: time
    /// derivative, dispersive, advective, cubic, residual coupling.
    pub term_l2: [f64; 5],
}

impl DefectReport {
    /// Defect relative to the largest term — the cancellation actually
    /// achieved by the substituted trajectory.
    pub fn relative(&self) -> f64 {
        self.defect_l2 / self.scale_l2.max(f64::MIN_POSITIVE)
    }
}

fn real_times(c: &ComplexField, r: &RealField) -> ComplexField {
    ComplexField::from_values(
        c.grid(),
        c.values()
            .iter()
            .zip(r.values())
            .map(|(c, r)| c * r)
            .collect(),
    )
    .expect("product of finite fields is finite")
}

/// Substitutes three consecutive deviation snapshots into the exact
/// equation for V = 1 + W in the modulated frame,
///
///   V_T = iε(V_XX + 2r̂_X·V_X) − 2(k + φ̂_X)·V_X
///         + iγε⁻¹e^{2r̂}·V(|V|² − 1) − (e^{−r̂}Res_A + iε⁻¹Res_φ)·V,
///
/// with V_T approximated by the centered difference of the outer snapshots
/// and every other term evaluated on the middle one. The report compares
/// the defect against the largest term; a trajectory extracted from a
/// convergent wave solve must cancel the equation far below the size of
/// its terms.
///
/// This is a diagnostic, not a solver: the deviation system is stiff (the
/// ε⁻¹ terms), so it is never integrated here — the wave field is solved
/// directly and the extracted W is checked against the equation after the
/// fact. Products are taken pointwise.
pub fn deviation_equation_defect(
    prev: &DeviationState,
    mid: &DeviationState,
    next: &DeviationState,
    background: &SlowBackground,
    k: f64,
    eps: f64,
) -> Result<DefectReport, NlsError> {
    let grid = mid.w1.grid();
    let dt_back = mid.t_slow - prev.t_slow;
    let dt_fore = next.t_slow - mid.t_slow;
    if !(dt_back > 0.0 && dt_fore > 0.0) || (dt_fore - dt_back).abs() > 1e-9 * dt_back {
        return Err(NlsError::InvalidArgument {
            reason: format!(
                "snapshots must be equispaced in slow time, got gaps {dt_back} and {dt_fore}"
            ),
        });
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(NlsError::InvalidArgument {
            reason: format!("ε must be positive and finite, got {eps}"),
        });
    }

    let one_plus = |d: &DeviationState| ComplexField::from_re_im(&d.w1.map(|w| w + 1.0), &d.w2);
    let v = one_plus(mid);
    let v_t = (&one_plus(next) - &one_plus(prev)).scale(Complex64::new(0.5 / dt_back, 0.0));
    let v_x = v.derivative(1)?;
    let v_xx = v.derivative(2)?;

    let r_x = background.r_hat.derivative(1)?;
    let dispersive = (&v_xx + &real_times(&v_x, &r_x.scale(2.0))).scale(Complex64::new(0.0, eps));
    let advective = real_times(&v_x, &background.phi_x.map(|p| 2.0 * (k + p)));
    let cubic_weight = RealField::from_values(
        grid,
        v.values()
            .iter()
            .zip(background.r_hat.exp_pointwise(2.0).values())
            .map(|(v, w)| w * (v.norm_sqr() - 1.0))
            .collect(),
    )?;
    let cubic = real_times(&v, &cubic_weight).scale(Complex64::new(0.0, GAMMA / eps));
    let coupling = ComplexField::from_re_im(
        &background
            .r_hat
            .exp_pointwise(-1.0)
            .mul_pointwise(background.res_a),
        &background.res_phi.scale(1.0 / eps),
    )
    .mul_pointwise(&v);

    let defect = &(&(&v_t - &dispersive) + &advective) - &(&cubic - &coupling);
    let term_l2 = [&v_t, &dispersive, &advective, &cubic, &coupling].map(|f| f.l2_norm());
    let scale_l2 = term_l2.iter().fold(0.0f64, |a, &b| a.max(b));
    Ok(DefectReport {
        defect_l2: defect.l2_norm(),
        scale_l2,
        term_l2,
    })
}
