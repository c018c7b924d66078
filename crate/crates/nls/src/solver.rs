use num_complex::Complex64;
use whitham_field::{ComplexField, Grid1D};

use crate::{NlsError, NlsState, GAMMA};

/// Strang split-step integrator for i∂_tΨ + ∂²_xΨ + γ|Ψ|²Ψ = 0 on a
/// periodic fast grid, with the linear propagator table cached for a fixed
/// step size.
///
/// One step is: half nonlinear rotation Ψ ← Ψ·e^{iγ|Ψ|²·dt/2} (exact, since
/// the rotation leaves |Ψ| invariant), full linear step by the Fourier
/// multiplier e^{−iκ²·dt} (the exact propagator of i∂_tΨ = −∂²_xΨ), half
/// nonlinear rotation. Both substeps are unitary, so the scheme conserves
/// mass and is unconditionally stable; the step size only limits accuracy
/// (second order in dt).
#[derive(Debug, Clone)]
pub struct NlsSolver {
    grid: Grid1D,
    dt: f64,
    propagator: Vec<Complex64>,
}

impl NlsSolver {
    pub fn new(grid: Grid1D, dt: f64) -> Result<Self, NlsError> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(NlsError::InvalidArgument {
                reason: format!("time step must be positive and finite, got {dt}"),
            });
        }
        let propagator = (0..grid.points())
            .map(|m| {
                let kappa = grid.wavenumber(m);
                Complex64::cis(-kappa * kappa * dt)
            })
            .collect();
        Ok(Self {
            grid,
            dt,
            propagator,
        })
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Half-step nonlinear rotation e^{iγ|Ψ|²·dt/2}.
    fn rotate_half(&self, psi: &ComplexField) -> ComplexField {
        let half = 0.5 * GAMMA * self.dt;
        psi.map(|v| v * Complex64::cis(half * v.norm_sqr()))
    }

    pub fn step(&self, s: &NlsState) -> Result<NlsState, NlsError> {
        if !s.psi.grid().same_as(&self.grid) {
            return Err(NlsError::InvalidArgument {
                reason: "state grid does not match the solver grid".to_string(),
            });
        }
        let mut spec = self.rotate_half(&s.psi).spectrum();
        for (c, p) in spec.iter_mut().zip(&self.propagator) {
            *c *= p;
        }
        let linear = ComplexField::from_spectrum(self.grid, &spec);
        let psi = self.rotate_half(&linear);
        let t = s.t + self.dt;
        if !psi.is_finite() {
            return Err(NlsError::BlowUp { t });
        }
        Ok(NlsState { t, psi })
    }

    /// Advance by `steps` split steps.
    pub fn advance(&self, s: NlsState, steps: usize) -> Result<NlsState, NlsError> {
        let mut state = s;
        for _ in 0..steps {
            state = self.step(&state)?;
        }
        Ok(state)
    }
}
