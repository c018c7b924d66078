//! Self-convergence under step halving for the two time integrators, the
//! oracle-free check that both discretizations converge at their design
//! orders.

use serde::{Deserialize, Serialize};
use whitham_field::RealField;
use whitham_nls::{NlsSolver, NlsState};
use whitham_wme::wme_integrate;

use crate::error::HarnessError;

/// Errors between successively halved steps and the observed order
/// log₂(coarse/fine).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderEstimate {
    pub coarse_error: f64,
    pub fine_error: f64,
    pub order: f64,
}

fn order_from(coarse_error: f64, fine_error: f64) -> Result<OrderEstimate, HarnessError> {
    if fine_error < 1e-14 {
        return Err(HarnessError::InvalidArgument {
            reason: format!(
                "step-halving errors fell to roundoff ({fine_error:.3e}); \
                 start from a larger dt to observe the order"
            ),
        });
    }
    Ok(OrderEstimate {
        coarse_error,
        fine_error,
        order: (coarse_error / fine_error).log2(),
    })
}

/// Runs the modulation integrator at dt, dt/2, dt/4 and measures the order
/// from the H² distance between successive final states.
pub fn rk4_self_order(
    r0: &RealField,
    u0: &RealField,
    k: f64,
    t_final: f64,
    dt: f64,
) -> Result<OrderEstimate, HarnessError> {
    let solve = |dt: f64| wme_integrate(r0, u0, k, t_final, dt);
    let (a, b, c) = (solve(dt)?, solve(dt / 2.0)?, solve(dt / 4.0)?);
    let diff = |x: &whitham_wme::BaseTrajectory, y: &whitham_wme::BaseTrajectory| {
        let (sx, sy) = (x.state(x.len() - 1), y.state(y.len() - 1));
        (&sx.r - &sy.r).h2_norm() + (&sx.u - &sy.u).h2_norm()
    };
    order_from(diff(&a, &b), diff(&b, &c))
}

/// Runs the split-step wave solver at dt, dt/2, dt/4 from the same initial
/// state and measures the order from the L² distance between final fields.
pub fn strang_self_order(
    initial: &NlsState,
    t_final: f64,
    dt: f64,
) -> Result<OrderEstimate, HarnessError> {
    let steps = t_final / dt;
    if !(t_final > 0.0 && dt > 0.0) || (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
        return Err(HarnessError::InvalidArgument {
            reason: format!("dt = {dt} must divide t_final = {t_final} into whole steps"),
        });
    }
    let steps = steps.round() as usize;
    let solve = |dt: f64, steps: usize| -> Result<_, HarnessError> {
        let solver = NlsSolver::new(initial.psi.grid(), dt)?;
        Ok(solver.advance(initial.clone(), steps)?.psi)
    };
    let a = solve(dt, steps)?;
    let b = solve(dt / 2.0, 2 * steps)?;
    let c = solve(dt / 4.0, 4 * steps)?;
    order_from((&a - &b).l2_norm(), (&b - &c).l2_norm())
}
