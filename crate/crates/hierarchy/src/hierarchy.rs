use crate::error::HierarchyError;
use whitham_field::{Grid1D, RealField};
use whitham_jets::{jet_defect_swe, JetField};
use whitham_wme::{
    linearized_rhs, linearized_solve, wme_integrate, wme_rhs, BaseTrajectory, LinTrajectory,
    LinearizedState, ModulationState, GAMMA,
};

/// Largest number of correction levels (bounded by the jet order needed to
/// extract the next forcing).
pub const MAX_LEVELS: usize = 3;

/// A base modulation trajectory with n correction levels riding it. Level
/// l starts from zero data and solves the linearized system forced by the
/// defect the levels below leave at order ε^{2l}.
#[derive(Debug, Clone)]
pub struct Hierarchy {
    base: BaseTrajectory,
    levels: Vec<LinTrajectory>,
}

/// Solves the base system and then each correction level in turn.
///
/// The modulation ansatz keeps the mean wavenumber shift inside k, so u₀
/// must be zero-mean. The forcing of level l is extracted by substituting
/// jets that carry the base and levels 1..l−1 (slot l zeroed, time slots
/// zeroed) into the perturbed shallow-water defect and negating coefficient
/// l; time derivatives of lower levels cannot reach that coefficient, so
/// the extraction is exact level by level.
pub fn build_hierarchy(
    r0: &RealField,
    u0: &RealField,
    k: f64,
    t_final: f64,
    dt: f64,
    n: usize,
) -> Result<Hierarchy, HierarchyError> {
    if n > MAX_LEVELS {
        return Err(HierarchyError::UnsupportedOrder { n });
    }
    let mean = u0.mean();
    if mean.abs() > 1e-10 {
        return Err(HierarchyError::InvalidArgument {
            reason: format!(
                "u₀ must be zero-mean (its mean belongs to the carrier wavenumber k); got {mean:.3e}"
            ),
        });
    }

    let base = wme_integrate(r0, u0, k, t_final, dt)?;
    let mut levels: Vec<LinTrajectory> = Vec::with_capacity(n);
    let zero = RealField::zeros(base.grid());

    for level in 1..=n {
        let forcing = |t: f64| {
            let base_state = base.state_at(t);
            let lower: Vec<LinearizedState> =
                levels.iter().map(|lv| lv.state_at(t)).collect();
            extract_forcing(&base_state, &lower, k, level)
        };
        let traj = linearized_solve(&zero, &zero, &base, forcing, t_final)?;
        levels.push(traj);
    }

    Ok(Hierarchy { base, levels })
}

/// Machine extraction of the forcing that drives correction level `level`.
///
/// Builds order-`level` jets holding the base state in slot 0 and the
/// computed corrections in slots 1..level−1 (slot `level` zero, time jets
/// zero), substitutes them into the perturbed shallow-water defect, and
/// returns minus its coefficient `level`.
fn extract_forcing(
    base: &ModulationState,
    lower: &[LinearizedState],
    k: f64,
    level: usize,
) -> (RealField, RealField) {
    debug_assert_eq!(lower.len(), level - 1);
    let grid = base.r.grid();

    let mut r_coeffs = Vec::with_capacity(level + 1);
    let mut u_coeffs = Vec::with_capacity(level + 1);
    r_coeffs.push(base.r.clone());
    u_coeffs.push(base.u.clone());
    for s in lower {
        r_coeffs.push(s.r.clone());
        u_coeffs.push(s.u.clone());
    }
    r_coeffs.push(RealField::zeros(grid));
    u_coeffs.push(RealField::zeros(grid));

    let rj = JetField::new(r_coeffs).expect("jet slots are consistent by construction");
    let uj = JetField::new(u_coeffs).expect("jet slots are consistent by construction");
    let zero_t = JetField::zeros(grid, level).expect("level is within the jet order");

    let (d_r, d_u) =
        jet_defect_swe(&rj, &uj, k, GAMMA, &zero_t, &zero_t).expect("jets share grid and order");
    (
        d_r.coeff(level).scale(-1.0),
        d_u.coeff(level).scale(-1.0),
    )
}

impl Hierarchy {
    pub fn base(&self) -> &BaseTrajectory {
        &self.base
    }

    pub fn levels(&self) -> &[LinTrajectory] {
        &self.levels
    }

    /// Number of correction levels n.
    pub fn order(&self) -> usize {
        self.levels.len()
    }

    pub fn k(&self) -> f64 {
        self.base.k()
    }

    pub fn grid(&self) -> Grid1D {
        self.base.grid()
    }

    pub fn dt(&self) -> f64 {
        self.base.dt()
    }

    /// Number of time steps (stored instants minus one).
    pub fn steps(&self) -> usize {
        self.base.len() - 1
    }

    pub fn t_final(&self) -> f64 {
        self.base.t_final()
    }

    /// Assembled state (r̂, û) = Σ_l ε^{2l} (r_l, u_l) at stored instant i,
    /// combined by Horner's rule in ε². At ε = 0 this is the base state,
    /// bit for bit.
    pub fn assemble(&self, eps: f64, i: usize) -> (RealField, RealField) {
        let base = self.base.state(i);
        let r_slots: Vec<&RealField> = std::iter::once(&base.r)
            .chain(self.levels.iter().map(|l| &l.state(i).r))
            .collect();
        let u_slots: Vec<&RealField> = std::iter::once(&base.u)
            .chain(self.levels.iter().map(|l| &l.state(i).u))
            .collect();
        (horner(&r_slots, eps), horner(&u_slots, eps))
    }

    /// Instantaneous tendency (r̂_T, û_T) of the assembled state at stored
    /// instant i, rebuilt from the semi-discrete right-hand sides of the
    /// stored states (base tendency plus forced linearized tendencies with
    /// their stored forcings), combined exactly like [`Self::assemble`].
    ///
    /// Every consumer of a time derivative of the hierarchy must use this
    /// definition so that residual identities cancel to roundoff.
    pub fn assemble_tendency(&self, eps: f64, i: usize) -> (RealField, RealField) {
        let base = self.base.state(i);
        let k = self.base.k();
        let (r_t, u_t) = wme_rhs(&base.r, &base.u, k);

        let mut r_slots_owned = vec![r_t];
        let mut u_slots_owned = vec![u_t];
        for level in &self.levels {
            let s = level.state(i);
            let (h_r, h_u) = level.forcing(i);
            let (rt, ut) = linearized_rhs(&s.r, &s.u, &base.r, &base.u, k, h_r, h_u);
            r_slots_owned.push(rt);
            u_slots_owned.push(ut);
        }
        let r_slots: Vec<&RealField> = r_slots_owned.iter().collect();
        let u_slots: Vec<&RealField> = u_slots_owned.iter().collect();
        (horner(&r_slots, eps), horner(&u_slots, eps))
    }
}

/// Horner evaluation of ε²-slot coefficients: c₀ + ε²(c₁ + ε²(…)).
fn horner(slots: &[&RealField], eps: f64) -> RealField {
    let eps2 = eps * eps;
    let mut acc = slots[slots.len() - 1].clone();
    for c in slots[..slots.len() - 1].iter().rev() {
        acc = *c + &acc.scale(eps2);
    }
    acc
}
