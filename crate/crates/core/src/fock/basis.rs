use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{Coefficient, EigenLabel, GradedEigenvalues};
use crate::error::{Error, Result};

/// Default cap on the number of basis vectors [`enumerate_basis`] produces.
pub const DEFAULT_BASIS_BOUND: u64 = 10_000_000;

/// `q_{n_1}(u_1) ⋯ q_{n_k}(u_k)|0⟩`, parts sorted by weight then label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NakajimaBasisVector {
    pub parts: Vec<(u32, EigenLabel)>,
}

impl NakajimaBasisVector {
    pub fn weight(&self) -> u32 {
        self.parts.iter().map(|(m, _)| m).sum()
    }
}

impl fmt::Display for NakajimaBasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, l) in &self.parts {
            write!(f, "q{m}(e{}.{}) ", l.degree, l.index)?;
        }
        f.write_str("|0>")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisEntry<C> {
    pub vector: NakajimaBasisVector,
    pub eigenvalue: C,
    pub degree: u32,
}

/// Numbers of weight-`n` creation monomials: `nonzero` ones form a basis,
/// `excluded` ones repeat an odd class at one weight and vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisCounts {
    pub nonzero: BigUint,
    pub excluded: BigUint,
}

/// Multiplies the polynomial `p` (truncated at `p.len()`) by
/// `(1 − q^m)^{−1}` or `(1 + q^m)`.
fn mul_factor(p: &mut [BigUint], m: usize, geometric: bool) {
    if geometric {
        for w in m..p.len() {
            let add = p[w - m].clone();
            p[w] += add;
        }
    } else {
        for w in (m..p.len()).rev() {
            let add = p[w - m].clone();
            p[w] += add;
        }
    }
}

/// Counts creation monomials of weight `n` for a space with `even_dim`
/// even and `odd_dim` odd basis classes.
pub fn basis_counts(even_dim: usize, odd_dim: usize, n: u32) -> BasisCounts {
    let len = n as usize + 1;
    let mut nonzero = vec![BigUint::zero(); len];
    let mut all = vec![BigUint::zero(); len];
    nonzero[0] = BigUint::from(1u32);
    all[0] = BigUint::from(1u32);
    for m in 1..len {
        for _ in 0..even_dim {
            mul_factor(&mut nonzero, m, true);
        }
        for _ in 0..odd_dim {
            mul_factor(&mut nonzero, m, false);
        }
        for _ in 0..even_dim + odd_dim {
            mul_factor(&mut all, m, true);
        }
    }
    let nz = nonzero.pop().unwrap_or_default();
    let al = all.pop().unwrap_or_default();
    BasisCounts {
        excluded: al - &nz,
        nonzero: nz,
    }
}

struct Slot<'a, C> {
    weight: u32,
    label: EigenLabel,
    value: &'a C,
}

/// All nonzero basis vectors of weight `n` with their eigenvalues and
/// cohomological degrees `Σ 2(n_i − 1) + deg u_i`.
///
/// Entries are sorted by their vectors. Fails when the basis would have
/// more than `bound` vectors.
pub fn enumerate_basis<C: Coefficient>(
    e: &GradedEigenvalues<C>,
    n: u32,
    bound: u64,
) -> Result<Vec<BasisEntry<C>>> {
    let counts = basis_counts(e.even_dim(), e.odd_dim(), n);
    if counts.nonzero > BigUint::from(bound) {
        return Err(Error::BoundExceeded {
            what: "basis size",
            value: counts.nonzero.to_u128().unwrap_or(u128::MAX),
            limit: bound as u128,
        });
    }
    let slots: Vec<Slot<C>> = (1..=n)
        .flat_map(|m| {
            e.iter().map(move |(label, value)| Slot {
                weight: m,
                label,
                value,
            })
        })
        .collect();
    let mut out = Vec::with_capacity(counts.nonzero.to_usize().unwrap_or(0));
    let mut parts = Vec::new();
    fill(&slots, 0, n, &mut parts, C::one(), 0, &mut out);
    out.sort_unstable_by(|a, b| a.vector.cmp(&b.vector));
    Ok(out)
}

fn fill<C: Coefficient>(
    slots: &[Slot<C>],
    i: usize,
    remaining: u32,
    parts: &mut Vec<(u32, EigenLabel)>,
    value: C,
    degree: u32,
    out: &mut Vec<BasisEntry<C>>,
) {
    if remaining == 0 {
        out.push(BasisEntry {
            vector: NakajimaBasisVector { parts: parts.clone() },
            eigenvalue: value,
            degree,
        });
        return;
    }
    let Some(slot) = slots.get(i) else {
        return;
    };
    if slot.weight > remaining {
        return;
    }
    let max = if slot.label.is_odd() {
        1
    } else {
        remaining / slot.weight
    };
    let step = 2 * (slot.weight - 1) + slot.label.degree;
    let mut v = value;
    for c in 0..=max {
        if c > 0 {
            parts.push((slot.weight, slot.label));
            v = v.times(slot.value);
        }
        fill(slots, i + 1, remaining - c * slot.weight, parts, v.clone(), degree + c * step, out);
    }
    parts.truncate(parts.len() - max as usize);
}

/// Spectral radius of `f^[n]*` on `H*(S^[n])`, the largest `∏ |λ|` over
/// nonzero basis vectors of weight `n`.
pub fn induced_spectral_radius(e: &GradedEigenvalues<Complex64>, n: u32) -> Result<f64> {
    if e.total_dim() == 0 {
        return Err(Error::EmptySpectrum);
    }
    let len = n as usize + 1;
    // best[w]: largest product at weight w, negative when unreachable
    let mut best = vec![-1.0f64; len];
    best[0] = 1.0;
    for m in 1..len {
        for (label, v) in e.iter() {
            let a = v.norm();
            if label.is_odd() {
                for w in (m..len).rev() {
                    if best[w - m] >= 0.0 {
                        best[w] = best[w].max(best[w - m] * a);
                    }
                }
            } else {
                for w in m..len {
                    if best[w - m] >= 0.0 {
                        best[w] = best[w].max(best[w - m] * a);
                    }
                }
            }
        }
    }
    Ok(best[n as usize].max(0.0))
}

/// `log` of [`induced_spectral_radius`].
pub fn entropy(e: &GradedEigenvalues<Complex64>, n: u32) -> Result<f64> {
    Ok(induced_spectral_radius(e, n)?.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rational_int, Rational};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn k3_square_has_324_vectors() {
        let e: GradedEigenvalues<Rational> = GradedEigenvalues::identity(&[1, 0, 22, 0, 1]);
        assert_eq!(enumerate_basis(&e, 2, DEFAULT_BASIS_BOUND).unwrap().len(), 324);
    }

    #[test]
    fn product_over_parts() {
        let e = GradedEigenvalues::new(vec![vec![], vec![], vec![rational_int(2)]]);
        let b = enumerate_basis(&e, 3, DEFAULT_BASIS_BOUND).unwrap();
        // (1,1,1), (2,1), (3)
        let vals: Vec<_> = b.iter().map(|x| x.eigenvalue.clone()).collect();
        assert_eq!(vals, [rational_int(8), rational_int(4), rational_int(2)]);
        assert!(b.iter().all(|x| x.degree == 6));
    }

    #[test]
    fn weight_one_is_the_spectrum() {
        let e = GradedEigenvalues::new(vec![vec![rational_int(1)], vec![rational_int(-3)], vec![rational_int(5)]]);
        let b = enumerate_basis(&e, 1, DEFAULT_BASIS_BOUND).unwrap();
        let vals: Vec<_> = b.iter().map(|x| x.eigenvalue.clone()).collect();
        assert_eq!(vals, [rational_int(1), rational_int(-3), rational_int(5)]);
    }

    #[test]
    fn bound_is_enforced() {
        let e: GradedEigenvalues<Rational> = GradedEigenvalues::identity(&[1, 0, 22, 0, 1]);
        assert!(matches!(enumerate_basis(&e, 2, 100), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn excluded_counts() {
        // one odd class: q1(a)q1(a) is the only excluded vector of weight 2
        let k = basis_counts(0, 1, 2);
        assert_eq!(k.nonzero, BigUint::from(1u32));
        assert_eq!(k.excluded, BigUint::from(1u32));
    }

    #[test]
    fn radius_examples() {
        let e = GradedEigenvalues::new(vec![vec![c(1.0)], vec![], vec![c(2.0), c(0.5)], vec![], vec![c(1.0)]]);
        assert_eq!(induced_spectral_radius(&e, 3).unwrap(), 8.0);
        assert!((entropy(&e, 3).unwrap() - 3.0 * 2f64.ln()).abs() < 1e-12);
        assert!(induced_spectral_radius(&GradedEigenvalues::new(vec![]), 1).is_err());
    }
}
