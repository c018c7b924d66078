use whitham_field::RealField;

/// Sign of the cubic nonlinearity. The laboratory is pinned to the
/// defocusing branch, where the modulation system below is hyperbolic and
/// the wavetrain is modulationally stable.
pub const GAMMA: f64 = -1.0;

/// Tendency of the leading-order modulation system
///
///   ∂_T r = −∂_X u − 2(u + k) ∂_X r
///   ∂_T u = −∂_X [ (u + k)² + e^{2r} ]
///
/// about a carrier of wavenumber k (the e^{2r} sign already carries γ = −1).
/// The u-tendency is the exact spectral derivative of a single flux field,
/// so its mean vanishes to roundoff and the spatial mean of u is conserved.
pub fn wme_rhs(r: &RealField, u: &RealField, k: f64) -> (RealField, RealField) {
    let r_x = r.derivative(1).expect("first derivative is always available");
    let u_plus_k = u.map(|v| v + k);

    let r_t = &u
        .derivative(1)
        .expect("first derivative is always available")
        .scale(-1.0)
        - &u_plus_k.mul_dealiased(&r_x).scale(2.0);

    let flux = &u_plus_k.mul_dealiased(&u_plus_k) + &r.exp_pointwise(2.0);
    let u_t = flux
        .derivative(1)
        .expect("first derivative is always available")
        .scale(-1.0);

    (r_t, u_t)
}

/// Tendency of the system linearized along a state (r, u):
///
///   ∂_T R = −∂_X U − 2 U ∂_X r − 2 (u + k) ∂_X R + H_r
///   ∂_T U = −2 ∂_X [ (u + k) U ] − 2 ∂_X [ e^{2r} R ] + H_u
///
/// with an inhomogeneous forcing (H_r, H_u).
#[allow(clippy::too_many_arguments)]
pub fn linearized_rhs(
    big_r: &RealField,
    big_u: &RealField,
    r: &RealField,
    u: &RealField,
    k: f64,
    forcing_r: &RealField,
    forcing_u: &RealField,
) -> (RealField, RealField) {
    let d1 = |f: &RealField| f.derivative(1).expect("first derivative is always available");

    let r_x = d1(r);
    let u_plus_k = u.map(|v| v + k);
    let big_r_x = d1(big_r);

    let r_t = RealField::linear_combination(&[
        (-1.0, &d1(big_u)),
        (-2.0, &big_u.mul_dealiased(&r_x)),
        (-2.0, &u_plus_k.mul_dealiased(&big_r_x)),
        (1.0, forcing_r),
    ]);

    let advective = d1(&u_plus_k.mul_dealiased(big_u));
    let pressure = d1(&r.exp_pointwise(2.0).mul_dealiased(big_r));
    let u_t = RealField::linear_combination(&[
        (-2.0, &advective),
        (-2.0, &pressure),
        (1.0, forcing_u),
    ]);

    (r_t, u_t)
}

/// Characteristic speeds 2(u + k) ± √2 e^r of the modulation system.
pub fn characteristic_speeds(r: &RealField, u: &RealField, k: f64) -> (RealField, RealField) {
    let sound = r.exp_pointwise(1.0).scale(std::f64::consts::SQRT_2);
    let advect = u.map(|v| 2.0 * (v + k));
    (&advect + &sound, &advect - &sound)
}

/// Hard stability cap on the RK4 time step.
///
/// Fourth-order Runge-Kutta tolerates purely imaginary symbols up to
/// |λ| dt ≤ 2√2; with spectral wavenumbers reaching π/h the admissible step
/// is 2√2/π · h / max|speed| ≈ 0.9 h / max|speed|. The speed bound uses the
/// slightly generous 2 sup|u + k| + 2 e^{sup r} ≥ sup|2(u + k) ± √2 e^r|.
pub fn cfl_max_dt(r: &RealField, u: &RealField, k: f64) -> f64 {
    let h = r.grid().spacing();
    let advect = u.map(|v| (v + k).abs()).sup_norm();
    let sound = r.sup_norm().exp();
    0.9 * h / (2.0 * advect + 2.0 * sound)
}
