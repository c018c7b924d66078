use crate::error::FieldError;
use crate::grid::Grid1D;
use crate::real::{sobolev_from_spectrum, RealField};
use crate::spectral;
use num_complex::Complex64;

/// Complex-valued sampled periodic function on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl ComplexField {
    pub fn zeros(grid: Grid1D) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.points()],
        }
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        let values: Vec<Complex64> = (0..grid.points()).map(|j| f(grid.x(j))).collect();
        assert!(
            values.iter().all(|v| v.re.is_finite() && v.im.is_finite()),
            "from_fn produced a non-finite sample"
        );
        Self { grid, values }
    }

    pub fn from_values(grid: Grid1D, values: Vec<Complex64>) -> Result<Self, FieldError> {
        if values.len() != grid.points() {
            return Err(FieldError::InvalidGrid {
                points: values.len(),
                length: grid.length(),
                reason: "sample count does not match grid",
            });
        }
        if !values.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
            return Err(FieldError::InvalidGrid {
                points: grid.points(),
                length: grid.length(),
                reason: "samples contain NaN or Inf",
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_re_im(re: &RealField, im: &RealField) -> Self {
        assert!(
            re.grid().same_as(&im.grid()),
            "from_re_im: grid mismatch ({:?} vs {:?})",
            re.grid(),
            im.grid()
        );
        Self {
            grid: re.grid(),
            values: re
                .values()
                .iter()
                .zip(im.values().iter())
                .map(|(&a, &b)| Complex64::new(a, b))
                .collect(),
        }
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn re(&self) -> RealField {
        RealField::from_values(self.grid, self.values.iter().map(|v| v.re).collect())
            .expect("real part of finite field")
    }

    pub fn im(&self) -> RealField {
        RealField::from_values(self.grid, self.values.iter().map(|v| v.im).collect())
            .expect("imaginary part of finite field")
    }

    pub fn modulus(&self) -> RealField {
        RealField::from_values(self.grid, self.values.iter().map(|v| v.norm()).collect())
            .expect("modulus of finite field")
    }

    pub fn conj(&self) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, a: Complex64) -> Self {
        self.map(|v| a * v)
    }

    fn assert_same_grid(&self, other: &Self, op: &str) {
        assert!(
            self.grid.same_as(&other.grid),
            "{op}: grid mismatch ({:?} vs {:?})",
            self.grid,
            other.grid
        );
    }

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

    pub fn mul_dealiased(&self, other: &Self) -> Self {
        self.assert_same_grid(other, "mul_dealiased");
        Self {
            grid: self.grid,
            values: spectral::dealiased_product(&self.values, &other.values),
        }
    }

    pub fn spectrum(&self) -> Vec<Complex64> {
        spectral::spectrum_of(&self.values)
    }

    pub fn from_spectrum(grid: Grid1D, spectrum: &[Complex64]) -> Self {
        assert_eq!(spectrum.len(), grid.points(), "spectrum length mismatch");
        Self {
            grid,
            values: spectral::values_of(spectrum),
        }
    }

    /// Fourier-multiplier derivative, same conventions as the real case.
    pub fn derivative(&self, order: usize) -> Result<Self, FieldError> {
        if order == 0 || order > 4 {
            return Err(FieldError::UnsupportedDerivativeOrder { order });
        }
        let mut spec = self.spectrum();
        spectral::derivative_multipliers(&mut spec, order, |m| self.grid.wavenumber(m));
        Ok(Self::from_spectrum(self.grid, &spec))
    }

    /// Apply a spectral multiplier `c_m ← g(κ_m)·c_m` (e.g. a propagator
    /// `e^{−iκ²·dt}`).
    pub fn apply_multiplier(&self, g: impl Fn(f64) -> Complex64) -> Self {
        let mut spec = self.spectrum();
        for (m, c) in spec.iter_mut().enumerate() {
            *c *= g(self.grid.wavenumber(m));
        }
        Self::from_spectrum(self.grid, &spec)
    }

    pub fn l2_norm(&self) -> f64 {
        let h = self.grid.spacing();
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * h)
            .max(0.0)
            .sqrt()
    }

    pub fn sobolev_norm(&self, s: usize) -> Result<f64, FieldError> {
        if s > 8 {
            return Err(FieldError::UnsupportedSobolevIndex { s });
        }
        Ok(sobolev_from_spectrum(&self.spectrum(), s, self.grid))
    }

    pub fn h1_norm(&self) -> f64 {
        self.sobolev_norm(1).expect("s = 1 is supported")
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.norm()))
    }

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

impl std::ops::Add for &ComplexField {
    type Output = ComplexField;
    fn add(self, rhs: Self) -> ComplexField {
        self.assert_same_grid(rhs, "add");
        ComplexField {
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

impl std::ops::Sub for &ComplexField {
    type Output = ComplexField;
    fn sub(self, rhs: Self) -> ComplexField {
        self.assert_same_grid(rhs, "sub");
        ComplexField {
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
