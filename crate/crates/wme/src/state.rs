use whitham_field::{Grid1D, RealField};

/// Modulation state (r, u) at one instant, with r the log-amplitude and u
/// the zero-mean part of the local wavenumber shift.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulationState {
    pub t: f64,
    pub r: RealField,
    pub u: RealField,
}

/// Linearized perturbation (R, U) riding a background trajectory, together
/// with the forcing that was applied at this instant.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearizedState {
    pub t: f64,
    pub r: RealField,
    pub u: RealField,
}

/// Densely stored solution of the base modulation system: one state per
/// time step, uniformly spaced, plus the carrier wavenumber.
#[derive(Debug, Clone)]
pub struct BaseTrajectory {
    pub(crate) states: Vec<ModulationState>,
    pub(crate) dt: f64,
    pub(crate) k: f64,
}

/// Densely stored solution of the linearized system on the background time
/// grid. `forcings[i]` is the forcing sampled at `states[i].t`.
#[derive(Debug, Clone)]
pub struct LinTrajectory {
    pub(crate) states: Vec<LinearizedState>,
    pub(crate) forcings: Vec<(RealField, RealField)>,
    pub(crate) dt: f64,
}

impl BaseTrajectory {
    pub fn states(&self) -> &[ModulationState] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &ModulationState {
        &self.states[i]
    }

    /// Number of stored instants (steps + 1).
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn grid(&self) -> Grid1D {
        self.states[0].r.grid()
    }

    pub fn t_final(&self) -> f64 {
        self.states[self.states.len() - 1].t
    }

    /// State at an arbitrary time inside the stored window, by four-point
    /// cubic Lagrange interpolation in time (stencils clamp at the ends).
    /// Stored instants are returned verbatim, so sampling on the time grid
    /// is exact. Accuracy off the grid is O(dt⁴), matching the integrator.
    pub fn state_at(&self, t: f64) -> ModulationState {
        match SamplePlan::for_time(t, self.dt, self.states.len()) {
            SamplePlan::Node(i) => self.states[i].clone(),
            SamplePlan::Stencil { weights, start } => {
                let pick =
                    |f: fn(&ModulationState) -> &RealField| -> Vec<(f64, &RealField)> {
                        weights
                            .iter()
                            .enumerate()
                            .map(|(j, &w)| (w, f(&self.states[start + j])))
                            .collect()
                    };
                ModulationState {
                    t,
                    r: RealField::linear_combination(&pick(|s| &s.r)),
                    u: RealField::linear_combination(&pick(|s| &s.u)),
                }
            }
        }
    }
}

impl LinTrajectory {
    pub fn states(&self) -> &[LinearizedState] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &LinearizedState {
        &self.states[i]
    }

    pub fn forcing(&self, i: usize) -> &(RealField, RealField) {
        &self.forcings[i]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Cubic-in-time sample, mirroring [`BaseTrajectory::state_at`].
    pub fn state_at(&self, t: f64) -> LinearizedState {
        match SamplePlan::for_time(t, self.dt, self.states.len()) {
            SamplePlan::Node(i) => self.states[i].clone(),
            SamplePlan::Stencil { weights, start } => {
                let pick =
                    |f: fn(&LinearizedState) -> &RealField| -> Vec<(f64, &RealField)> {
                        weights
                            .iter()
                            .enumerate()
                            .map(|(j, &w)| (w, f(&self.states[start + j])))
                            .collect()
                    };
                LinearizedState {
                    t,
                    r: RealField::linear_combination(&pick(|s| &s.r)),
                    u: RealField::linear_combination(&pick(|s| &s.u)),
                }
            }
        }
    }
}

/// How to realize a time sample on a uniform grid of n stored instants:
/// either a stored node hit or a four-point Lagrange stencil.
enum SamplePlan {
    Node(usize),
    Stencil { weights: [f64; 4], start: usize },
}

impl SamplePlan {
    fn for_time(t: f64, dt: f64, n: usize) -> Self {
        assert!(n >= 4, "trajectories store at least four instants");
        let s = t / dt;
        let nearest = s.round();
        // Times within a relative sliver of a node are the node; this keeps
        // node sampling exact even when t was reassembled as i·dt.
        if (s - nearest).abs() < 1e-9 && nearest >= 0.0 && (nearest as usize) < n {
            return SamplePlan::Node(nearest as usize);
        }
        let i = (s.floor() as isize).clamp(0, n as isize - 2) as usize;
        let start = i.saturating_sub(1).min(n - 4);
        let theta = s - start as f64;
        let mut weights = [0.0; 4];
        for (j, w) in weights.iter_mut().enumerate() {
            let mut prod = 1.0;
            for m in 0..4 {
                if m != j {
                    prod *= (theta - m as f64) / (j as f64 - m as f64);
                }
            }
            *w = prod;
        }
        SamplePlan::Stencil { weights, start }
    }
}
