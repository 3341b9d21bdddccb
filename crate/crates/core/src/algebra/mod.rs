//! Exact scalars, truncated multivariate series and the graded trace
//! generating functions of tensor, symmetric and exterior algebras.

mod coefficient;
mod cyclotomic;
mod graded;
mod series;
mod traces;

pub use coefficient::{Coefficient, ScalarKind};
pub use cyclotomic::{euler_phi, CyclotomicNumber, RootOfUnity};
pub use graded::{EigenLabel, GradedEigenvalues};
pub use series::{TruncatedSeries, Var, DEFAULT_Q, DEFAULT_T, DEFAULT_X, DEFAULT_Y};
pub use traces::{ext_trace_series, graded_trace, sym_trace_series, tensor_trace_series};

pub use num_complex::Complex64;

/// Exact rational numbers, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num / den` in lowest terms.
///
/// # Panics
///
/// Panics if `den` is zero.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub(crate) fn rational_int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}
