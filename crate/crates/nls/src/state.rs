use whitham_field::{ComplexField, RealField};

/// Wave field Ψ on the fast grid at one instant of fast time t.
#[derive(Debug, Clone, PartialEq)]
pub struct NlsState {
    pub t: f64,
    pub psi: ComplexField,
}

/// Relative deviation W = W₁ + iW₂ of the wave field from the modulated
/// wavetrain, V = Ψ̃·e^{−iε⁻¹Θ̂}/Â = 1 + W, sampled on the slow grid at one
/// instant of slow time T = εt.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationState {
    pub t_slow: f64,
    pub w1: RealField,
    pub w2: RealField,
}

impl DeviationState {
    /// The deviation as one complex field W₁ + iW₂.
    pub fn as_complex(&self) -> ComplexField {
        ComplexField::from_re_im(&self.w1, &self.w2)
    }

    /// ‖W‖_{H¹} on the slow grid, the norm the validity estimate controls.
    pub fn h1_norm(&self) -> f64 {
        self.as_complex().h1_norm()
    }

    /// ‖W‖_{L²} on the slow grid.
    pub fn l2_norm(&self) -> f64 {
        self.as_complex().l2_norm()
    }
}
