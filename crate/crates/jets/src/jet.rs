use crate::JetError;
use whitham_field::{Grid1D, RealField};

/// Highest supported jet order. Order n stores coefficients of ε⁰..ε^{2n}.
pub const MAX_ORDER: usize = 3;

/// Truncated series `a₀ + ε²a₁ + ⋯ + ε^{2n}a_n` with field coefficients.
///
/// All operations stay at the order of their operands; contributions beyond
/// it are discarded. Coefficient products are dealiased, so the ring axioms
/// hold to roundoff on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct JetField {
    coeffs: Vec<RealField>,
}

impl JetField {
    /// Builds a jet from coefficients `[a₀, a₁, …]` on a shared grid.
    pub fn new(coeffs: Vec<RealField>) -> Result<Self, JetError> {
        let order = coeffs.len().checked_sub(1).ok_or(JetError::Empty)?;
        if order > MAX_ORDER {
            return Err(JetError::OrderTooHigh { order });
        }
        let grid = coeffs[0].grid();
        for c in &coeffs[1..] {
            if !c.grid().same_as(&grid) {
                return Err(JetError::GridMismatch {
                    left: grid,
                    right: c.grid(),
                });
            }
        }
        Ok(Self { coeffs })
    }

    /// The zero jet of the given order.
    pub fn zeros(grid: Grid1D, order: usize) -> Result<Self, JetError> {
        if order > MAX_ORDER {
            return Err(JetError::OrderTooHigh { order });
        }
        let coeffs = (0..=order).map(|_| RealField::zeros(grid)).collect();
        Ok(Self { coeffs })
    }

    /// Embeds a plain field as the ε⁰ coefficient of an order-`order` jet.
    pub fn from_base(base: RealField, order: usize) -> Result<Self, JetError> {
        let mut jet = Self::zeros(base.grid(), order)?;
        jet.coeffs[0] = base;
        Ok(jet)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn grid(&self) -> Grid1D {
        self.coeffs[0].grid()
    }

    /// The coefficient of ε^{2l}.
    pub fn coeff(&self, l: usize) -> &RealField {
        &self.coeffs[l]
    }

    pub fn coeffs(&self) -> &[RealField] {
        &self.coeffs
    }

    fn check_compatible(&self, other: &Self) -> Result<(), JetError> {
        if self.order() != other.order() {
            return Err(JetError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        if !self.grid().same_as(&other.grid()) {
            return Err(JetError::GridMismatch {
                left: self.grid(),
                right: other.grid(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, JetError> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, JetError> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { coeffs })
    }

    /// Cauchy product truncated at the shared order, with dealiased
    /// coefficient products.
    pub fn mul(&self, other: &Self) -> Result<Self, JetError> {
        self.check_compatible(other)?;
        let order = self.order();
        let grid = self.grid();
        let mut coeffs = vec![RealField::zeros(grid); order + 1];
        for (l, out) in coeffs.iter_mut().enumerate() {
            for j in 0..=l {
                let term = self.coeffs[j].mul_dealiased(&other.coeffs[l - j]);
                *out = &*out + &term;
            }
        }
        Ok(Self { coeffs })
    }

    /// Scales every coefficient by `factor`.
    pub fn scale(&self, factor: f64) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.scale(factor)).collect();
        Self { coeffs }
    }

    /// Adds a constant to the ε⁰ coefficient.
    pub fn add_to_base(&self, value: f64) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = coeffs[0].map(|v| v + value);
        Self { coeffs }
    }

    /// `exp(scale · self)`, truncated at the stored order.
    ///
    /// The base part exponentiates pointwise; the ε²-part `b` enters through
    /// the finite series Σ_{j≤n} (scale·b)^j / j!, which is exact at order n
    /// because b has no ε⁰ coefficient.
    pub fn exp_scaled(&self, scale: f64) -> Self {
        let order = self.order();
        let grid = self.grid();

        let base_exp = self.coeffs[0].exp_pointwise(scale);

        // b = scale · (self − base): its powers raise the leading jet slot,
        // so the series below terminates exactly at the stored order.
        let mut b = self.scale(scale);
        b.coeffs[0] = RealField::zeros(grid);

        let mut series = Self::zeros(grid, order).expect("order already validated");
        series.coeffs[0] = RealField::constant(grid, 1.0);
        let mut power = series.clone();
        let mut factorial = 1.0;
        for j in 1..=order {
            power = power.mul(&b).expect("compatible by construction");
            factorial *= j as f64;
            series = series
                .add(&power.scale(1.0 / factorial))
                .expect("compatible by construction");
        }

        // The series has an exactly-one base slot, so the product with the
        // pointwise exponential reduces to scaling the correction slots.
        let mut coeffs = Vec::with_capacity(order + 1);
        for l in 1..=order {
            coeffs.push(base_exp.mul_dealiased(&series.coeffs[l]));
        }
        coeffs.insert(0, base_exp);
        Self { coeffs }
    }

    /// Spatial derivative of the given order, applied coefficient-wise.
    pub fn derivative(&self, order: usize) -> Result<Self, JetError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.derivative(order))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { coeffs })
    }

    /// Multiplies by ε²: slots move up one, the top input slot is dropped,
    /// and the stored order is unchanged.
    pub fn shift_up(&self) -> Self {
        let grid = self.grid();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(RealField::zeros(grid));
        coeffs.extend(self.coeffs[..self.coeffs.len() - 1].iter().cloned());
        Self { coeffs }
    }

    /// Evaluates the series at a concrete ε by Horner's rule in ε².
    pub fn evaluate(&self, eps: f64) -> RealField {
        let eps2 = eps * eps;
        let mut acc = self.coeffs[self.order()].clone();
        for c in self.coeffs[..self.order()].iter().rev() {
            acc = c + &acc.scale(eps2);
        }
        acc
    }
}
