//! Hand-transcribed forcing and residual formulas for the first two
//! correction levels. These duplicate, by independent term-by-term
//! transcription, what [`crate::jet_defect_swe`] produces by machine jet
//! substitution; the two routes are held against each other in tests and in
//! the acceptance gate.

use whitham_field::{FieldError, RealField};

/// Forcing that drives the first correction level:
///
///   (0, ∂³_X r + ∂_X (∂_X r)²)
///
/// evaluated on the leading-order state. Only the u-component is forced.
pub fn first_level_forcing(r: &RealField) -> Result<(RealField, RealField), FieldError> {
    let r_x = r.derivative(1)?;
    let forcing_u = &r_x.derivative(2)? + &r_x.mul_dealiased(&r_x).derivative(1)?;
    Ok((RealField::zeros(r.grid()), forcing_u))
}

/// Residual left at the next order by the first correction (r₁, u₁) over the
/// leading-order state (r, ·):
///
///   R_r = 2 u₁ ∂_X r₁
///   R_u = ∂_X(u₁²) − 2γ ∂_X(e^{2r} r₁²) − ∂³_X r₁ − 2 ∂_X(∂_X r · ∂_X r₁)
///
/// Its negation is the forcing of the second correction level.
pub fn first_level_residual(
    r: &RealField,
    r1: &RealField,
    u1: &RealField,
    gamma: f64,
) -> Result<(RealField, RealField), FieldError> {
    let r_x = r.derivative(1)?;
    let r1_x = r1.derivative(1)?;

    let res_r = u1.mul_dealiased(&r1_x).scale(2.0);

    let quadratic = u1.mul_dealiased(u1).derivative(1)?;
    let pressure = r
        .exp_pointwise(2.0)
        .mul_dealiased(&r1.mul_dealiased(r1))
        .derivative(1)?
        .scale(2.0 * gamma);
    let dispersive = &r1_x.derivative(2)? + &r_x.mul_dealiased(&r1_x).derivative(1)?.scale(2.0);
    let res_u = &(&quadratic - &pressure) - &dispersive;

    Ok((res_r, res_u))
}
