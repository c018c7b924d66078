use crate::error::WmeError;
use crate::state::{BaseTrajectory, LinTrajectory, LinearizedState, ModulationState};
use crate::system::{cfl_max_dt, linearized_rhs, wme_rhs};
use whitham_field::{FieldError, RealField};

/// Integrates the base modulation system with classical RK4, storing every
/// step. The requested dt is an upper bound: the actual step divides the
/// window exactly, so stored times are i·dt and the final state sits at
/// t_final.
///
/// Three monitors guard the run: the advective CFL cap (checked against the
/// evolving state), finiteness, and an H² doubling threshold that aborts
/// once the solution steepens out of the smooth modulation regime.
pub fn wme_integrate(
    r0: &RealField,
    u0: &RealField,
    k: f64,
    t_final: f64,
    dt: f64,
) -> Result<BaseTrajectory, WmeError> {
    if !r0.grid().same_as(&u0.grid()) {
        return Err(FieldError::GridMismatch {
            left: r0.grid(),
            right: u0.grid(),
        }
        .into());
    }
    if !(t_final.is_finite() && t_final > 0.0) {
        return Err(WmeError::InvalidWindow {
            reason: format!("t_final must be positive and finite, got {t_final}"),
        });
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(WmeError::InvalidWindow {
            reason: format!("dt must be positive and finite, got {dt}"),
        });
    }

    let steps = ((t_final / dt - 1e-9).ceil().max(1.0)) as usize;
    let dt = t_final / steps as f64;

    let h2_size = |r: &RealField, u: &RealField| {
        r.h2_norm() + u.h2_norm()
    };
    let threshold = 2.0 * h2_size(r0, u0) + 1e-12;

    let mut states = Vec::with_capacity(steps + 1);
    states.push(ModulationState {
        t: 0.0,
        r: r0.clone(),
        u: u0.clone(),
    });

    for step in 0..steps {
        let (r, u) = {
            let s = &states[step];
            (s.r.clone(), s.u.clone())
        };

        let cap = cfl_max_dt(&r, &u, k);
        if dt > cap {
            return Err(WmeError::TimeStepExceedsCfl { dt, cap, step });
        }

        let (r_next, u_next) = rk4_step(&r, &u, dt, |r, u| wme_rhs(r, u, k));
        let t_next = (step + 1) as f64 * dt;

        if !(r_next.is_finite() && u_next.is_finite()) {
            return Err(WmeError::SolutionBlowUp {
                step: step + 1,
                time: t_next,
            });
        }
        let norm = h2_size(&r_next, &u_next);
        if norm > threshold {
            return Err(WmeError::SmoothnessLost {
                step: step + 1,
                time: t_next,
                norm,
                threshold,
            });
        }

        states.push(ModulationState {
            t: t_next,
            r: r_next,
            u: u_next,
        });
    }

    Ok(BaseTrajectory { states, dt, k })
}

/// Integrates the linearized system along a stored background with RK4 on
/// the background's own time grid (same dt; midpoints sampled by cubic
/// interpolation). The forcing closure is evaluated at every stage time;
/// its samples at stored instants are kept on the trajectory for reuse.
pub fn linearized_solve<F>(
    r0: &RealField,
    u0: &RealField,
    bg: &BaseTrajectory,
    forcing: F,
    t_final: f64,
) -> Result<LinTrajectory, WmeError>
where
    F: Fn(f64) -> (RealField, RealField),
{
    if !r0.grid().same_as(&bg.grid()) || !u0.grid().same_as(&bg.grid()) {
        return Err(FieldError::GridMismatch {
            left: r0.grid(),
            right: bg.grid(),
        }
        .into());
    }
    let dt = bg.dt();
    if t_final > bg.t_final() * (1.0 + 1e-12) + 1e-12 {
        return Err(WmeError::TimeGridMismatch {
            reason: format!(
                "window [0, {t_final}] extends past the stored background (t ≤ {})",
                bg.t_final()
            ),
        });
    }
    let steps_f = t_final / dt;
    let steps = steps_f.round();
    if steps < 1.0 || (steps_f - steps).abs() > 1e-9 {
        return Err(WmeError::TimeGridMismatch {
            reason: format!(
                "t_final = {t_final} is not a whole number of background steps (dt = {dt})"
            ),
        });
    }
    let steps = steps as usize;
    let k = bg.k();

    let mut states = Vec::with_capacity(steps + 1);
    let mut forcings = Vec::with_capacity(steps + 1);
    states.push(LinearizedState {
        t: 0.0,
        r: r0.clone(),
        u: u0.clone(),
    });
    let mut forcing_here = forcing(0.0);

    for step in 0..steps {
        let t = step as f64 * dt;
        let t_mid = t + 0.5 * dt;
        let t_next = (step + 1) as f64 * dt;

        let bg_here = bg.state(step);
        let bg_mid = bg.state_at(t_mid);
        let bg_next = bg.state(step + 1);
        let f_mid = forcing(t_mid);
        let f_next = forcing(t_next);

        let rhs = |r: &RealField,
                   u: &RealField,
                   bg_state: &ModulationState,
                   f: &(RealField, RealField)| {
            linearized_rhs(r, u, &bg_state.r, &bg_state.u, k, &f.0, &f.1)
        };

        let (r, u) = {
            let s = &states[step];
            (s.r.clone(), s.u.clone())
        };
        let (k1r, k1u) = rhs(&r, &u, bg_here, &forcing_here);
        let (r2, u2) = advance(&r, &u, 0.5 * dt, &k1r, &k1u);
        let (k2r, k2u) = rhs(&r2, &u2, &bg_mid, &f_mid);
        let (r3, u3) = advance(&r, &u, 0.5 * dt, &k2r, &k2u);
        let (k3r, k3u) = rhs(&r3, &u3, &bg_mid, &f_mid);
        let (r4, u4) = advance(&r, &u, dt, &k3r, &k3u);
        let (k4r, k4u) = rhs(&r4, &u4, bg_next, &f_next);

        let r_next = combine(&r, dt, &k1r, &k2r, &k3r, &k4r);
        let u_next = combine(&u, dt, &k1u, &k2u, &k3u, &k4u);

        if !(r_next.is_finite() && u_next.is_finite()) {
            return Err(WmeError::SolutionBlowUp {
                step: step + 1,
                time: t_next,
            });
        }

        forcings.push(std::mem::replace(&mut forcing_here, f_next));
        states.push(LinearizedState {
            t: t_next,
            r: r_next,
            u: u_next,
        });
    }
    forcings.push(forcing_here);

    Ok(LinTrajectory {
        states,
        forcings,
        dt,
    })
}

/// One classical RK4 step of an autonomous two-component system.
fn rk4_step<F>(r: &RealField, u: &RealField, dt: f64, rhs: F) -> (RealField, RealField)
where
    F: Fn(&RealField, &RealField) -> (RealField, RealField),
{
    let (k1r, k1u) = rhs(r, u);
    let (r2, u2) = advance(r, u, 0.5 * dt, &k1r, &k1u);
    let (k2r, k2u) = rhs(&r2, &u2);
    let (r3, u3) = advance(r, u, 0.5 * dt, &k2r, &k2u);
    let (k3r, k3u) = rhs(&r3, &u3);
    let (r4, u4) = advance(r, u, dt, &k3r, &k3u);
    let (k4r, k4u) = rhs(&r4, &u4);
    (
        combine(r, dt, &k1r, &k2r, &k3r, &k4r),
        combine(u, dt, &k1u, &k2u, &k3u, &k4u),
    )
}

fn advance(
    r: &RealField,
    u: &RealField,
    h: f64,
    dr: &RealField,
    du: &RealField,
) -> (RealField, RealField) {
    (
        RealField::linear_combination(&[(1.0, r), (h, dr)]),
        RealField::linear_combination(&[(1.0, u), (h, du)]),
    )
}

fn combine(
    y: &RealField,
    dt: f64,
    k1: &RealField,
    k2: &RealField,
    k3: &RealField,
    k4: &RealField,
) -> RealField {
    RealField::linear_combination(&[
        (1.0, y),
        (dt / 6.0, k1),
        (dt / 3.0, k2),
        (dt / 3.0, k3),
        (dt / 6.0, k4),
    ])
}
