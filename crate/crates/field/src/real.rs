use crate::error::FieldError;
use crate::grid::Grid1D;
use crate::spectral;
use num_complex::Complex64;

/// Real-valued sampled periodic function on a [`Grid1D`].
///
/// Fields are immutable values: every operation returns a new field. All
/// nonlinear right-hand sides built from fields use [`RealField::mul_dealiased`],
/// the exactly projected product (see `spectral`), so spectral derivatives and
/// products obey the product rule to roundoff.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    grid: Grid1D,
    values: Vec<f64>,
}

impl RealField {
    pub fn zeros(grid: Grid1D) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.points()],
        }
    }

    pub fn constant(grid: Grid1D, c: f64) -> Self {
        assert!(c.is_finite(), "constant field value must be finite");
        Self {
            grid,
            values: vec![c; grid.points()],
        }
    }

    /// Sample `f` at the grid points. Panics if `f` produces a non-finite
    /// value (a programming error in the closure, not a data error).
    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Self {
        let values: Vec<f64> = (0..grid.points()).map(|j| f(grid.x(j))).collect();
        assert!(
            values.iter().all(|v| v.is_finite()),
            "from_fn produced a non-finite sample"
        );
        Self { grid, values }
    }

    /// Wrap raw samples; rejects wrong length or non-finite entries.
    pub fn from_values(grid: Grid1D, values: Vec<f64>) -> Result<Self, FieldError> {
        if values.len() != grid.points() {
            return Err(FieldError::InvalidGrid {
                points: values.len(),
                length: grid.length(),
                reason: "sample count does not match grid",
            });
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(FieldError::InvalidGrid {
                points: grid.points(),
                length: grid.length(),
                reason: "samples contain NaN or Inf",
            });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, j: usize) -> f64 {
        self.values[j]
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    fn assert_same_grid(&self, other: &Self, op: &str) {
        assert!(
            self.grid.same_as(&other.grid),
            "{op}: grid mismatch ({:?} vs {:?})",
            self.grid,
            other.grid
        );
    }

    /// Normalized complex spectrum (`c_m`, see `spectral` conventions).
    pub fn spectrum(&self) -> Vec<Complex64> {
        let buf: Vec<Complex64> = self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        spectral::spectrum_of(&buf)
    }

    /// Rebuild a real field from a normalized spectrum (imaginary residue of
    /// the inverse transform, which is pure roundoff for Hermitian spectra,
    /// is dropped).
    pub fn from_spectrum(grid: Grid1D, spectrum: &[Complex64]) -> Self {
        assert_eq!(spectrum.len(), grid.points(), "spectrum length mismatch");
        let vals = spectral::values_of(spectrum);
        Self {
            grid,
            values: vals.iter().map(|c| c.re).collect(),
        }
    }

    /// Fourier-multiplier derivative `∂_X^order`, exact for band-limited
    /// fields. Orders 1..=4 are supported; the deepest derivative any model
    /// term needs is ∂³_X, plus one extra for diagnostics.
    pub fn derivative(&self, order: usize) -> Result<Self, FieldError> {
        if order == 0 || order > 4 {
            return Err(FieldError::UnsupportedDerivativeOrder { order });
        }
        let mut spec = self.spectrum();
        spectral::derivative_multipliers(&mut spec, order, |m| self.grid.wavenumber(m));
        Ok(Self::from_spectrum(self.grid, &spec))
    }

    /// Zero-mean spectral antiderivative of the zero-mean part of the field:
    /// bin `m ≠ 0` is divided by `iκ_m`, bin 0 is set to zero. Satisfies
    /// `∂_X(antiderivative(f)) = f − mean(f)` to roundoff.
    pub fn antiderivative_zero_mean(&self) -> Self {
        let mut spec = self.spectrum();
        let nyq = self.grid.nyquist_bin();
        for (m, c) in spec.iter_mut().enumerate() {
            if m == 0 || m == nyq {
                *c = Complex64::new(0.0, 0.0);
            } else {
                *c /= Complex64::new(0.0, self.grid.wavenumber(m));
            }
        }
        Self::from_spectrum(self.grid, &spec)
    }

    /// Exactly projected product `Π_N(f·g)` (alias-free).
    pub fn mul_dealiased(&self, other: &Self) -> Self {
        self.assert_same_grid(other, "mul_dealiased");
        let a: Vec<Complex64> = self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let b: Vec<Complex64> = other.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let prod = spectral::dealiased_product(&a, &b);
        Self {
            grid: self.grid,
            values: prod.iter().map(|c| c.re).collect(),
        }
    }

    /// Collocation (pointwise) product; used only in diagnostics where the
    /// pointwise evaluation is the defining formula.
    pub fn mul_pointwise(&self, other: &Self) -> Self {
        self.assert_same_grid(other, "mul_pointwise");
        Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Pointwise division; the caller guarantees the denominator is bounded
    /// away from zero (e.g. `Â = e^{r̂}`).
    pub fn div_pointwise(&self, other: &Self) -> Self {
        self.assert_same_grid(other, "div_pointwise");
        let values: Vec<f64> = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a / b)
            .collect();
        assert!(
            values.iter().all(|v| v.is_finite()),
            "div_pointwise produced a non-finite sample"
        );
        Self {
            grid: self.grid,
            values,
        }
    }

    /// Pointwise exponential `e^{scale·f}`.
    pub fn exp_pointwise(&self, scale: f64) -> Self {
        self.map(|v| (scale * v).exp())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        let values: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        debug_assert!(
            values.iter().all(|v| v.is_finite()),
            "map produced a non-finite sample"
        );
        Self {
            grid: self.grid,
            values,
        }
    }

    pub fn scale(&self, a: f64) -> Self {
        self.map(|v| a * v)
    }

    /// `Σ_i c_i·f_i` in one pass. Panics on an empty list or mixed grids.
    pub fn linear_combination(terms: &[(f64, &RealField)]) -> Self {
        let (_, first) = terms.first().expect("linear_combination of nothing");
        let grid = first.grid;
        let mut values = vec![0.0; grid.points()];
        for (c, f) in terms {
            assert!(
                f.grid.same_as(&grid),
                "linear_combination: grid mismatch ({:?} vs {:?})",
                f.grid,
                grid
            );
            for (acc, v) in values.iter_mut().zip(f.values.iter()) {
                *acc += c * v;
            }
        }
        Self { grid, values }
    }

    /// Rectangle-rule inner product `Σ_j f_j·g_j·spacing`, exact for periodic
    /// sampling of band-limited products.
    pub fn l2_inner(&self, other: &Self) -> Result<f64, FieldError> {
        if !self.grid.same_as(&other.grid) {
            return Err(FieldError::GridMismatch {
                left: self.grid,
                right: other.grid,
            });
        }
        let h = self.grid.spacing();
        Ok(self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a * b)
            .sum::<f64>()
            * h)
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_inner(self).expect("same grid").max(0.0).sqrt()
    }

    /// Sobolev norm `‖f‖_{H^s} = (Σ_{j≤s} ‖∂^j f‖²_{L²})^{1/2}`, computed
    /// spectrally as `(L·Σ_m |c_m|²·Σ_{j≤s} κ_m^{2j})^{1/2}` with the same
    /// Nyquist convention as [`RealField::derivative`] (odd powers drop the
    /// Nyquist bin).
    pub fn sobolev_norm(&self, s: usize) -> Result<f64, FieldError> {
        if s > 8 {
            return Err(FieldError::UnsupportedSobolevIndex { s });
        }
        let spec = self.spectrum();
        Ok(sobolev_from_spectrum(&spec, s, self.grid))
    }

    pub fn h1_norm(&self) -> f64 {
        self.sobolev_norm(1).expect("s = 1 is supported")
    }

    pub fn h2_norm(&self) -> f64 {
        self.sobolev_norm(2).expect("s = 2 is supported")
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn subtract_mean(&self) -> Self {
        let m = self.mean();
        self.map(|v| v - m)
    }

    /// Ratio of the largest coefficient magnitude in the top octave of the
    /// spectrum (`|frequency| > N/4`) to the overall largest. A smooth,
    /// resolved field keeps this far below 1; the solvers use it to monitor
    /// that the deepest derivatives in use remain spectrally resolved.
    pub fn spectral_tail_ratio(&self) -> f64 {
        let spec = self.spectrum();
        let n = self.grid.points() as i64;
        let mut peak = 0.0f64;
        let mut tail = 0.0f64;
        for (m, c) in spec.iter().enumerate() {
            let f = self.grid.frequency(m).abs();
            let mag = c.norm();
            peak = peak.max(mag);
            if f > n / 4 {
                tail = tail.max(mag);
            }
        }
        if peak > 0.0 {
            tail / peak
        } else {
            0.0
        }
    }

    /// Trigonometric interpolation onto a finer grid with the same length
    /// (exact: the spectrum is zero-padded).
    pub fn interpolate_to(&self, points: usize) -> Result<Self, FieldError> {
        let from = self.grid.points();
        if points < from {
            return Err(FieldError::IncompatibleResolution {
                from,
                to: points,
                reason: "interpolation target must be at least the source resolution",
            });
        }
        let grid = self.grid.with_points(points)?;
        let spec = spectral::pad_spectrum(&self.spectrum(), points);
        Ok(Self::from_spectrum(grid, &spec))
    }

    /// Spectral low-pass restriction onto a coarser grid with the same
    /// length. Returns the restricted field and the discarded fraction of
    /// squared-coefficient mass (the aliasing indicator).
    pub fn restrict_to(&self, points: usize) -> Result<(Self, f64), FieldError> {
        let from = self.grid.points();
        if points > from {
            return Err(FieldError::IncompatibleResolution {
                from,
                to: points,
                reason: "restriction target must be at most the source resolution",
            });
        }
        let grid = self.grid.with_points(points)?;
        let (spec, tail) = spectral::truncate_spectrum(&self.spectrum(), points);
        Ok((Self::from_spectrum(grid, &spec), tail))
    }
}

pub(crate) fn sobolev_from_spectrum(spec: &[Complex64], s: usize, grid: Grid1D) -> f64 {
    let nyq = grid.points() / 2;
    let mut sum = 0.0;
    for (m, c) in spec.iter().enumerate() {
        let k2 = grid.wavenumber(m).powi(2);
        let mut weight = 0.0;
        let mut pow = 1.0;
        for j in 0..=s {
            // Odd derivatives zero the Nyquist bin; mirror that here so the
            // norm matches Σ‖∂^j f‖² exactly.
            if !(m == nyq && j % 2 == 1) {
                weight += pow;
            }
            pow *= k2;
        }
        sum += c.norm_sqr() * weight;
    }
    (grid.length() * sum).max(0.0).sqrt()
}

impl std::ops::Add for &RealField {
    type Output = RealField;
    fn add(self, rhs: Self) -> RealField {
        self.assert_same_grid(rhs, "add");
        RealField {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(rhs.values.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &RealField {
    type Output = RealField;
    fn sub(self, rhs: Self) -> RealField {
        self.assert_same_grid(rhs, "sub");
        RealField {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(rhs.values.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Neg for &RealField {
    type Output = RealField;
    fn neg(self) -> RealField {
        self.scale(-1.0)
    }
}
