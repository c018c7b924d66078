use crate::state::{BaseTrajectory, LinTrajectory};
use whitham_field::RealField;

/// Conserved energy of the base modulation system,
///
///   E = ∫ e^{2r} u² + ½ (e^{2r} − 1)² dX.
///
/// Smooth solutions keep E constant; the integrator should preserve it to
/// its own order in dt.
pub fn wme_energy(r: &RealField, u: &RealField) -> f64 {
    assert!(r.grid().same_as(&u.grid()), "energy needs a shared grid");
    let sum: f64 = r
        .values()
        .iter()
        .zip(u.values())
        .map(|(&rv, &uv)| {
            let e = (2.0 * rv).exp();
            e * uv * uv + 0.5 * (e - 1.0) * (e - 1.0)
        })
        .sum();
    sum / r.grid().points() as f64 * r.grid().length()
}

/// Weighted energy of the linearized system riding a background log
/// amplitude r:
///
///   Ê = ∫ e^{2r} U² + 2 e^{4r} R² dX.
pub fn linearized_energy(r_bg: &RealField, big_r: &RealField, big_u: &RealField) -> f64 {
    assert!(
        r_bg.grid().same_as(&big_r.grid()) && r_bg.grid().same_as(&big_u.grid()),
        "energy needs a shared grid"
    );
    let sum: f64 = r_bg
        .values()
        .iter()
        .zip(big_r.values())
        .zip(big_u.values())
        .map(|((&rv, &rr), &uu)| {
            let e = (2.0 * rv).exp();
            e * uu * uu + 2.0 * e * e * rr * rr
        })
        .sum();
    sum / r_bg.grid().points() as f64 * r_bg.grid().length()
}

/// Outcome of the energy-inequality audit of a linearized run.
#[derive(Debug, Clone, Copy)]
pub struct GronwallReport {
    /// Largest observed (ΔÊ/Δt) / (K Ê + F) over all steps.
    pub max_ratio: f64,
    /// Largest growth constant K = 4 sup|∂_X u| + 2 seen along the run.
    pub growth_constant: f64,
    /// True when every step obeys ΔÊ/Δt ≤ 1.1 (K Ê + F) + 10⁻¹².
    pub ok: bool,
}

/// Audits a linearized trajectory against the a-priori energy inequality
///
///   dÊ/dT ≤ K(T) Ê + F(T),
///   K = 4 sup|∂_X u| + 2,
///   F = e^{2 sup|r|} ‖H_u‖²_{L²} + 2 e^{4 sup|r|} ‖H_r‖²_{L²},
///
/// which integration by parts yields for the continuous system. Forward
/// differences of the stored energies are compared against the larger of
/// the two endpoint bounds, with 10% slack for time discretization and an
/// absolute floor of 10⁻¹² for roundoff near zero energy.
pub fn gronwall_check(bg: &BaseTrajectory, lin: &LinTrajectory) -> GronwallReport {
    let n = lin.len();
    let dt = lin.dt();

    let mut energies = Vec::with_capacity(n);
    let mut bounds = Vec::with_capacity(n);
    let mut growth_constant: f64 = 0.0;
    for i in 0..n {
        let ls = lin.state(i);
        let bs = bg.state_at(ls.t);
        let e = linearized_energy(&bs.r, &ls.r, &ls.u);

        let u_x_sup = bs
            .u
            .derivative(1)
            .expect("first derivative is always available")
            .sup_norm();
        let k_const = 4.0 * u_x_sup + 2.0;
        growth_constant = growth_constant.max(k_const);

        let r_sup = bs.r.sup_norm();
        let (h_r, h_u) = lin.forcing(i);
        let f_const = (2.0 * r_sup).exp() * h_u.l2_norm().powi(2)
            + 2.0 * (4.0 * r_sup).exp() * h_r.l2_norm().powi(2);

        energies.push(e);
        bounds.push(k_const * e + f_const);
    }

    let mut max_ratio = f64::NEG_INFINITY;
    let mut ok = true;
    for i in 0..n - 1 {
        let rate = (energies[i + 1] - energies[i]) / dt;
        let bound = bounds[i].max(bounds[i + 1]);
        if rate > 1.1 * bound + 1e-12 {
            ok = false;
        }
        if bound > 0.0 {
            max_ratio = max_ratio.max(rate / bound);
        }
    }

    GronwallReport {
        max_ratio,
        growth_constant,
        ok,
    }
}
