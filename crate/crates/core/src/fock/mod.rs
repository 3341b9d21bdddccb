//! Traces of the operator induced by `f` on `⊕_n H*(S^[n])`.
//!
//! The Fock space over `A = H*(S)` has a basis of products
//! `q_{n_1}(u_1) ⋯ q_{n_k}(u_k)|0⟩` of creation operators applied to the vacuum,
//! with `u_i` running over an eigenbasis of `f*`. Weight `Σ n_i` picks out
//! `H*(S^[Σ n_i])` and `q_m(u)` raises the degree by `2(m − 1) + deg u`.
//! Operators attached to odd classes anticommute, so their trace series is
//!
//! ```text
//! ∏_{m ≥ 1} ∏_{i,j} (1 + λ_{ij} T q^m)^{[i odd]} (1 − λ_{ij} T q^m)^{−[i even]}
//! ```
//!
//! where `T = t^{2(m−1)+i}` ([`DegreeMode::Shifted`]) or `T = t^i`
//! ([`DegreeMode::Literal`]). The modes agree at `t = ±1`.

mod basis;

use serde::{Deserialize, Serialize};

use crate::algebra::{rational_int, Coefficient, GradedEigenvalues, Rational, TruncatedSeries, Var};
use crate::error::{Error, Result};
use crate::surface::{AutomorphismSpec, Order, SurfaceSpec};

pub use basis::{
    basis_counts, enumerate_basis, entropy, induced_spectral_radius, BasisCounts, BasisEntry,
    NakajimaBasisVector, DEFAULT_BASIS_BOUND,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeMode {
    /// `q_m(u)` contributes `t^{deg u}`.
    Literal,
    /// `q_m(u)` contributes `t^{2(m−1)+deg u}`, the cohomological degree.
    #[default]
    Shifted,
}

impl DegreeMode {
    pub fn t_exponent(self, weight: u32, degree: u32) -> u32 {
        match self {
            DegreeMode::Literal => degree,
            DegreeMode::Shifted => 2 * (weight - 1) + degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockTraceOptions {
    pub max_weight: u32,
    pub degree_mode: DegreeMode,
    /// Substitute this integer for `t`; the series is then in `q` alone.
    pub evaluate_t: Option<i64>,
    /// Override for the `t` truncation. By default it is the largest
    /// degree that can occur up to `max_weight`, so nothing is dropped.
    pub t_bound: Option<u32>,
}

impl FockTraceOptions {
    pub fn new(max_weight: u32) -> Self {
        FockTraceOptions {
            max_weight,
            degree_mode: DegreeMode::Shifted,
            evaluate_t: None,
            t_bound: None,
        }
    }

    pub fn mode(mut self, mode: DegreeMode) -> Self {
        self.degree_mode = mode;
        self
    }

    pub fn at_t(mut self, t: i64) -> Self {
        self.evaluate_t = Some(t);
        self
    }
}

/// Largest `t`-exponent reachable at weights `≤ w`.
pub fn max_t_degree(top_degree: u32, w: u32, mode: DegreeMode) -> u32 {
    match mode {
        DegreeMode::Literal => top_degree * w,
        DegreeMode::Shifted => top_degree.max(2) * w,
    }
}

/// The bigraded trace series, in `(q, t)` or in `q` alone when
/// `opt.evaluate_t` is set.
pub fn fock_trace_series<C: Coefficient>(
    e: &GradedEigenvalues<C>,
    opt: &FockTraceOptions,
) -> Result<TruncatedSeries<C>> {
    let w = opt.max_weight;
    let grouped = e.grouped();
    match opt.evaluate_t {
        Some(tv) => {
            let tv = C::from_i64(tv);
            let mut s = TruncatedSeries::one(&[(Var::Q, w)])?;
            for m in 1..=w {
                for (deg, lam, mult) in &grouped {
                    let c = lam.times(&tv.powi(opt.degree_mode.t_exponent(m, *deg)));
                    apply_factor(&mut s, *deg, &c, &[m], *mult)?;
                }
            }
            Ok(s)
        }
        None => {
            let tb = opt
                .t_bound
                .unwrap_or_else(|| max_t_degree(e.top_degree(), w, opt.degree_mode));
            let mut s = TruncatedSeries::one(&[(Var::Q, w), (Var::T, tb)])?;
            for m in 1..=w {
                for (deg, lam, mult) in &grouped {
                    let mono = [m, opt.degree_mode.t_exponent(m, *deg)];
                    apply_factor(&mut s, *deg, lam, &mono, *mult)?;
                }
            }
            Ok(s)
        }
    }
}

fn apply_factor<C: Coefficient>(
    s: &mut TruncatedSeries<C>,
    degree: u32,
    c: &C,
    mono: &[u32],
    mult: u32,
) -> Result<()> {
    for _ in 0..mult {
        if degree % 2 == 1 {
            s.mul_binomial(c, mono);
        } else {
            s.div_binomial(c, mono)?;
        }
    }
    Ok(())
}

/// The `q^n` coefficient of a trace series built with `max_weight`.
pub fn weight_coefficient<C: Coefficient>(s: &TruncatedSeries<C>, n: u32) -> Result<TruncatedSeries<C>> {
    let w = s.bound(Var::Q).unwrap_or(0);
    if n > w {
        return Err(Error::TruncationTooSmall {
            max_weight: w,
            requested: n,
        });
    }
    s.coefficient_of(Var::Q, n)
}

/// `L(f^[n]) = Σ_i (−1)^i tr(f^[n]* | H^i(S^[n]))`, certified integral.
pub fn lefschetz_number(spec: &AutomorphismSpec, n: u32) -> Result<i64> {
    if spec.order == Order::Infinite {
        return Err(Error::InfiniteOrder("lefschetz_number"));
    }
    let e = spec
        .exact_spectrum()
        .ok_or(Error::InfiniteOrder("lefschetz_number"))?;
    let s = fock_trace_series(e, &FockTraceOptions::new(n).at_t(-1))?;
    let c = s.coeff(&[n]);
    c.as_i64().ok_or_else(|| Error::NotIntegral(c.to_string()))
}

/// Poincaré polynomials of `S^[n]` for `n ≤ nmax`, as a series in `(q, t)`.
pub fn poincare_series(surface: &SurfaceSpec, nmax: u32) -> Result<TruncatedSeries<Rational>> {
    let e = GradedEigenvalues::new(
        surface
            .betti
            .iter()
            .map(|&b| vec![rational_int(1); b as usize])
            .collect(),
    );
    fock_trace_series(&e, &FockTraceOptions::new(nmax))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CyclotomicNumber;
    use crate::surface::preset;

    fn t_poly(s: &TruncatedSeries<Rational>) -> Vec<i64> {
        s.univariate_coeffs()
            .unwrap()
            .iter()
            .map(|c| c.to_integer().try_into().unwrap())
            .collect()
    }

    #[test]
    fn k3_hilbert_square_betti() {
        let (spec, _) = preset("k3-identity").unwrap();
        let p = poincare_series(&spec.surface, 2).unwrap();
        let q2 = weight_coefficient(&p, 2).unwrap();
        assert_eq!(t_poly(&q2), [1, 0, 23, 0, 276, 0, 23, 0, 1]);
        let q1 = weight_coefficient(&p, 1).unwrap();
        assert_eq!(&t_poly(&q1)[..5], [1, 0, 22, 0, 1]);
        assert_eq!(t_poly(&weight_coefficient(&p, 0).unwrap())[0], 1);
        assert!(weight_coefficient(&p, 3).is_err());
    }

    #[test]
    fn weight_one_is_graded_trace() {
        let (spec, _) = preset("torus-involution").unwrap();
        let e = spec.exact_spectrum().unwrap();
        let s = fock_trace_series(e, &FockTraceOptions::new(2)).unwrap();
        let q1 = s.coefficient_of(Var::Q, 1).unwrap();
        let want = [1, 4, 6, 4, 1];
        for (i, w) in want.iter().enumerate() {
            let sign = if i % 2 == 1 { -1 } else { 1 };
            assert_eq!(q1.coeff(&[i as u32]), CyclotomicNumber::from_integer(sign * w));
        }
    }

    #[test]
    fn lefschetz_values() {
        for (name, n, want) in [
            ("k3-symplectic-3", 2, 27),
            ("k3-symplectic-5", 2, 14),
            ("k3-symplectic-7", 2, 9),
            ("k3-symplectic-7", 1, 3),
            ("torus-involution", 2, 144),
            ("k3-identity", 2, 324),
        ] {
            let (spec, _) = preset(name).unwrap();
            assert_eq!(lefschetz_number(&spec, n).unwrap(), want, "{name} n={n}");
        }
    }

    #[test]
    fn literal_mode_evaluates_the_same() {
        let (spec, _) = preset("k3-symplectic-3").unwrap();
        let e = spec.exact_spectrum().unwrap();
        for t in [-1, 1] {
            let a = fock_trace_series(e, &FockTraceOptions::new(4).at_t(t)).unwrap();
            let b = fock_trace_series(e, &FockTraceOptions::new(4).at_t(t).mode(DegreeMode::Literal)).unwrap();
            assert_eq!(a, b);
        }
    }
}
