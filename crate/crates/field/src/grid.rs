use crate::error::FieldError;

/// Uniform periodic grid on `[0, length)` with `points` samples.
///
/// The grid represents the torus of circumference `length`; sample `j` sits
/// at `x_j = j·length/points`. `points` must be a power of two (for the FFT)
/// and at least 8 so that the symmetric wavenumber range is nontrivial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    points: usize,
    length: f64,
}

impl Grid1D {
    pub fn new(points: usize, length: f64) -> Result<Self, FieldError> {
        if points < 8 || !points.is_power_of_two() {
            return Err(FieldError::InvalidGrid {
                points,
                length,
                reason: "points must be a power of two and at least 8",
            });
        }
        if length <= 0.0 || !length.is_finite() {
            return Err(FieldError::InvalidGrid {
                points,
                length,
                reason: "length must be positive and finite",
            });
        }
        Ok(Self { points, length })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Sample spacing `length / points`.
    pub fn spacing(&self) -> f64 {
        self.length / self.points as f64
    }

    /// Coordinate of sample `j`.
    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.spacing()
    }

    /// All sample coordinates.
    pub fn xs(&self) -> Vec<f64> {
        (0..self.points).map(|j| self.x(j)).collect()
    }

    /// Signed integer frequency of FFT bin `m`: `0, 1, …, N/2, −N/2+1, …, −1`.
    ///
    /// The Nyquist bin `m = N/2` carries the positive frequency `+N/2`.
    pub fn frequency(&self, m: usize) -> i64 {
        debug_assert!(m < self.points);
        let n = self.points as i64;
        let m = m as i64;
        if m <= n / 2 {
            m
        } else {
            m - n
        }
    }

    /// Wavenumber `κ_m = 2π·frequency(m) / length` of FFT bin `m`.
    pub fn wavenumber(&self, m: usize) -> f64 {
        2.0 * std::f64::consts::PI * self.frequency(m) as f64 / self.length
    }

    /// Index of the Nyquist bin, `N/2`.
    pub fn nyquist_bin(&self) -> usize {
        self.points / 2
    }

    /// Grid with the same length and a different sample count.
    pub fn with_points(&self, points: usize) -> Result<Self, FieldError> {
        Self::new(points, self.length)
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.points == other.points && self.length == other.length
    }
}
