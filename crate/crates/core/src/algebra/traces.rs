//! Degree-twisted trace generating functions of `T(E)`, `S(E)` and `Λ(E)`.
//!
//! For a diagonalizable graded endomorphism with eigenvalues `λ_{i,j}` in
//! degree `i`, the bigraded traces (weight in `q`, degree in `t`) are
//!
//! ```text
//! T: 1 / (1 − Σ λ_{i,j} t^i · q)
//! S: ∏ (1 − λ_{i,j} t^i q)^{-1}
//! Λ: ∏ (1 + λ_{i,j} t^i q)
//! ```

use super::{Coefficient, GradedEigenvalues, TruncatedSeries, Var};
use crate::error::Result;

fn shape<C: Coefficient>(e: &GradedEigenvalues<C>, nmax: u32) -> [(Var, u32); 2] {
    [(Var::Q, nmax), (Var::T, e.top_degree() * nmax)]
}

/// `Σ_i tr(f_i) t^i`, the degree-twisted trace on `E` itself.
pub fn graded_trace<C: Coefficient>(e: &GradedEigenvalues<C>, tmax: u32) -> Result<TruncatedSeries<C>> {
    let mut s = TruncatedSeries::<C>::zero(&[(Var::T, tmax)])?;
    for (label, v) in e.iter() {
        let cur = s.coeff(&[label.degree]);
        s.set_coeff(&[label.degree], cur.plus(v));
    }
    Ok(s)
}

pub fn tensor_trace_series<C: Coefficient>(e: &GradedEigenvalues<C>, nmax: u32) -> Result<TruncatedSeries<C>> {
    let shape = shape(e, nmax);
    let mut denom = TruncatedSeries::<C>::one(&shape)?;
    for (label, v) in e.iter() {
        let cur = denom.coeff(&[1, label.degree]);
        denom.set_coeff(&[1, label.degree], cur.minus(v));
    }
    denom.inverse()
}

pub fn sym_trace_series<C: Coefficient>(e: &GradedEigenvalues<C>, nmax: u32) -> Result<TruncatedSeries<C>> {
    let mut s = TruncatedSeries::one(&shape(e, nmax))?;
    for (label, v) in e.iter() {
        s.div_binomial(v, &[1, label.degree])?;
    }
    Ok(s)
}

pub fn ext_trace_series<C: Coefficient>(e: &GradedEigenvalues<C>, nmax: u32) -> Result<TruncatedSeries<C>> {
    let mut s = TruncatedSeries::one(&shape(e, nmax))?;
    for (label, v) in e.iter() {
        s.mul_binomial(v, &[1, label.degree]);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rational_int, CyclotomicNumber, Rational};

    fn ints(degrees: &[&[i64]]) -> GradedEigenvalues<Rational> {
        GradedEigenvalues::new(
            degrees
                .iter()
                .map(|d| d.iter().map(|&v| rational_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn tensor_examples() {
        let one = ints(&[&[1]]);
        let s = tensor_trace_series(&one, 5).unwrap();
        for n in 0..=5 {
            assert_eq!(s.coeff(&[n, 0]), rational_int(1));
        }
        let two_three = ints(&[&[2, 3]]);
        assert_eq!(tensor_trace_series(&two_three, 3).unwrap().coeff(&[2, 0]), rational_int(25));
        let lam = GradedEigenvalues::new(vec![vec![], vec![CyclotomicNumber::root_of_unity(1, 5)]]);
        let s = tensor_trace_series(&lam, 4).unwrap();
        for n in 0..=4u32 {
            assert_eq!(s.coeff(&[n, n]), CyclotomicNumber::root_of_unity(n as i64, 5));
        }
    }

    #[test]
    fn sym_examples() {
        assert_eq!(sym_trace_series(&ints(&[&[2, 3]]), 3).unwrap().coeff(&[2, 0]), rational_int(19));
        let s = sym_trace_series(&ints(&[&[1]]), 4).unwrap();
        assert!((0..=4).all(|n| s.coeff(&[n, 0]) == rational_int(1)));
        let s = sym_trace_series(&ints(&[&[], &[], &[-1]]), 2).unwrap();
        assert_eq!(s.coeff(&[2, 4]), rational_int(1));
    }

    #[test]
    fn ext_examples() {
        assert_eq!(ext_trace_series(&ints(&[&[2, 3]]), 3).unwrap().coeff(&[2, 0]), rational_int(6));
        let s = ext_trace_series(&ints(&[&[], &[-1, -1]]), 3).unwrap();
        assert_eq!(s.coeff(&[0, 0]), rational_int(1));
        assert_eq!(s.coeff(&[1, 1]), rational_int(-2));
        assert_eq!(s.coeff(&[2, 2]), rational_int(1));
        assert_eq!(s.terms().count(), 3);
    }
}
