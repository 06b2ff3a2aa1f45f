//! Adomian polynomials for nonlinear decomposition methods.
//!
//! * [`expr`]: parsing, normalization, differentiation and evaluation of
//!   nonlinearities, with conjugated variables (grammar in `GRAMMAR.md`);
//! * [`series`]: truncated power series over a generic coefficient ring,
//!   plus partition and weak-composition enumeration;
//! * [`poly`]: canonical symbolic Adomian polynomials;
//! * [`generators`]: the partition formula, the recursive `T` operator,
//!   direct and nested Fourier quadrature, and the sum, product, quotient,
//!   power and composition rules;
//! * [`multivar`]: the quadrature methods for several variables;
//! * [`solver`]: fractional calculus on monomials and the decomposition
//!   solve of the time-fractional cubic Schrödinger problem.
//!
//! Numeric code is generic over [`scalar::Real`] (`f32`, `f64`); symbolic
//! coefficients are exact rationals.

pub mod error;
pub mod expr;
pub mod generators;
pub mod multivar;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod solver;

pub use error::{Error, Result};
pub use expr::{parse, Expr};
pub use generators::{ComponentSet, Mode, QuadratureConfig};
pub use poly::AdomianPoly;
pub use series::SeriesVec;

/// Double-precision complex scalar used throughout the numeric backends.
pub type C64 = num_complex::Complex<f64>;
/// Single-precision complex scalar.
pub type C32 = num_complex::Complex<f32>;
/// Series with exact rational coefficients.
pub type RationalSeries = SeriesVec<num_rational::BigRational>;
/// Series with double-precision complex coefficients.
pub type ComplexSeries = SeriesVec<C64>;
/// Series whose coefficients are Adomian polynomials.
pub type PolySeries = SeriesVec<AdomianPoly>;
pub type ComponentSet64 = ComponentSet<f64>;
pub type ComponentSet32 = ComponentSet<f32>;
pub type MultiComponentSet64 = multivar::MultiComponentSet<f64>;
