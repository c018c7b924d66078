//! Numerical substrate for a spectral modulation-theory laboratory: uniform
//! periodic grids, Fourier differentiation, exactly projected (dealiased)
//! products, inner products and Sobolev norms, trigonometric resampling
//! between grids, and CSV serialization.
//!
//! Design notes:
//!
//! - The physical problems of interest live on ℝ with decaying data; we work
//!   on a periodic domain large enough that initial profiles and their
//!   derivatives are below 1e-12 at the domain edge. Helpers report edge
//!   amplitudes so runs can document how well that holds.
//! - Every nonlinear product in a right-hand side goes through
//!   [`RealField::mul_dealiased`], which computes the exact Galerkin
//!   projection `Π_N(f·g)` by zero-padded convolution (alias-free for
//!   quadratic products; cubic terms are chains of projected binary
//!   products).
//! - Fields are immutable values; all operations are pure and safe to share
//!   across parallel workers.

mod complex;
mod error;
mod grid;
mod io;
mod real;
pub mod spectral;
#[cfg(feature = "testing")]
pub mod testing;

pub use complex::ComplexField;
pub use error::FieldError;
pub use grid::Grid1D;
pub use num_complex::Complex64;
pub use real::RealField;
