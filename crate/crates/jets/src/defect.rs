use crate::{JetError, JetField};

/// Substitutes jets `(r̂, û)` and their time-derivative jets into the
/// perturbed shallow-water system and returns the defect jets `(D_r, D_u)`:
///
///   D_r = r̂_T + ∂_X û + 2(k + û) ∂_X r̂
///   D_u = û_T + ∂_X (k + û)² − γ ∂_X e^{2r̂} − ε² [ ∂³_X r̂ + ∂_X (∂_X r̂)² ]
///
/// The dispersive bracket carries an explicit ε² factor, so its
/// contributions land one jet slot above their coefficients (`shift_up`);
/// everything else is jet arithmetic at the shared order. A jet pair solves
/// the hierarchy through order n exactly when the defect coefficients
/// 0..n vanish.
pub fn jet_defect_swe(
    rj: &JetField,
    uj: &JetField,
    k: f64,
    gamma: f64,
    rj_t: &JetField,
    uj_t: &JetField,
) -> Result<(JetField, JetField), JetError> {
    let r_x = rj.derivative(1)?;
    let u_plus_k = uj.add_to_base(k);

    let d_r = rj_t
        .add(&uj.derivative(1)?)?
        .add(&u_plus_k.mul(&r_x)?.scale(2.0))?;

    let flux = u_plus_k.mul(&u_plus_k)?;
    let pressure = rj.exp_scaled(2.0);
    let dispersive = r_x
        .derivative(2)?
        .add(&r_x.mul(&r_x)?.derivative(1)?)?
        .shift_up();

    let d_u = uj_t
        .add(&flux.derivative(1)?)?
        .sub(&pressure.derivative(1)?.scale(gamma))?
        .sub(&dispersive)?;

    Ok((d_r, d_u))
}
