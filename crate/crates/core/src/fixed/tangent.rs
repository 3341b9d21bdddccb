//! Tangent spaces `Hom(I_λ, A/I_λ)` at monomial ideals, `A = C[x, y]`.
//!
//! A homomorphism `φ` is fixed by its values `φ(x^a y^b) = Σ α_{(a,b),(u,v)} x^u y^v`
//! on the minimal generators, subject to the syzygies
//! `y^{b'−b} φ(x^a y^b) = x^{a−a'} φ(x^{a'} y^{b'})` between consecutive ones.
//! The action `(x, y) ↦ (ε_1 x, ε_2 y)` scales `α_{(a,b),(u,v)}` by
//! `ε_1^{a−u} ε_2^{b−v}` and the constraints never mix different exponent
//! differences `(a − u, b − v)`, so the tangent space splits into pieces
//! indexed by these differences. Their dimensions are found by exact
//! Gaussian elimination.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{rational_int, RootOfUnity};
use crate::error::Result;

use super::partition::{diagram, PartitionDiagram};

/// Rank of a small matrix over `Q`.
fn rank(mut rows: Vec<Vec<crate::algebra::Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..cols {
                    let sub = &f * &rows[r][k];
                    rows[i][k] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// Dimensions of the pieces of `Hom(I_λ, A/I_λ)` indexed by exponent
/// difference `d = generator − cell`. The weight of piece `d` under
/// `(ε_1, ε_2)` is `ε_1^{d_0} ε_2^{d_1}`.
pub fn hom_exponents(d: &PartitionDiagram) -> BTreeMap<(i64, i64), usize> {
    // unknowns grouped by exponent difference
    let mut groups: BTreeMap<(i64, i64), Vec<(usize, (u32, u32))>> = BTreeMap::new();
    for (k, &g) in d.generators.iter().enumerate() {
        for &c in &d.cells {
            let key = (g.0 as i64 - c.0 as i64, g.1 as i64 - c.1 as i64);
            groups.entry(key).or_default().push((k, c));
        }
    }
    let mut out = BTreeMap::new();
    for (key, unknowns) in groups {
        let index: BTreeMap<(usize, (u32, u32)), usize> =
            unknowns.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let mut rows = Vec::new();
        for k in 0..d.generators.len() - 1 {
            let (a0, b0) = d.generators[k];
            let (a1, b1) = d.generators[k + 1];
            let (da, db) = (a0 - a1, b1 - b0);
            for &target in &d.cells {
                let mut row = vec![rational_int(0); unknowns.len()];
                let mut any = false;
                if target.1 >= db {
                    if let Some(&i) = index.get(&(k, (target.0, target.1 - db))) {
                        row[i] += rational_int(1);
                        any = true;
                    }
                }
                if target.0 >= da {
                    if let Some(&i) = index.get(&(k + 1, (target.0 - da, target.1))) {
                        row[i] -= rational_int(1);
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
        let dim = unknowns.len() - rank(rows);
        if dim > 0 {
            out.insert(key, dim);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentWeightReport {
    pub partition: Vec<u32>,
    pub eps: [RootOfUnity; 2],
    /// Exponent differences with their multiplicities.
    pub exponents: Vec<((i64, i64), usize)>,
    /// The `2n` weights, sorted.
    pub weights: Vec<RootOfUnity>,
    pub degenerate: bool,
    /// Multiplicity of the weight `1`.
    pub fixed_subspace_dim: usize,
}

pub(crate) fn weight_of(eps: &[RootOfUnity; 2], (d0, d1): (i64, i64)) -> RootOfUnity {
    eps[0].pow(d0).mul(&eps[1].pow(d1))
}

pub(crate) fn report_from_exponents(
    parts: &[u32],
    eps: [RootOfUnity; 2],
    exponents: &BTreeMap<(i64, i64), usize>,
) -> TangentWeightReport {
    let mut weights: Vec<RootOfUnity> = exponents
        .iter()
        .flat_map(|(&d, &m)| std::iter::repeat_n(weight_of(&eps, d), m))
        .collect();
    weights.sort();
    let fixed_subspace_dim = weights.iter().filter(|w| w.is_one()).count();
    TangentWeightReport {
        partition: parts.to_vec(),
        eps,
        exponents: exponents.iter().map(|(&d, &m)| (d, m)).collect(),
        weights,
        degenerate: fixed_subspace_dim > 0,
        fixed_subspace_dim,
    }
}

/// Eigenvalues of the differential of `f^[n]` at the monomial point `I_λ`
/// over a fixed point with local eigenvalues `eps`.
pub fn monomial_tangent_weights(parts: &[u32], eps: [RootOfUnity; 2]) -> Result<TangentWeightReport> {
    let d = diagram(parts)?;
    Ok(report_from_exponents(parts, eps, &hom_exponents(&d)))
}

/// Sufficient criterion for nondegeneracy: no generator `(i, j)` and cell
/// `(u, v)` with `ε_1^{i−u} ε_2^{j−v} = 1`.
pub fn grid_criterion_nondegenerate(d: &PartitionDiagram, eps: [RootOfUnity; 2]) -> bool {
    d.generators.iter().all(|&(i, j)| {
        d.cells
            .iter()
            .all(|&(u, v)| !weight_of(&eps, (i as i64 - u as i64, j as i64 - v as i64)).is_one())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64, m: u32) -> RootOfUnity {
        RootOfUnity::new(k, m)
    }

    #[test]
    fn single_point() {
        let eps = [z(1, 7), z(3, 7)];
        let r = monomial_tangent_weights(&[1], eps).unwrap();
        let mut want = vec![z(1, 7), z(3, 7)];
        want.sort();
        assert_eq!(r.weights, want);
        assert!(!r.degenerate);
    }

    #[test]
    fn line_of_length_three() {
        let e = [z(1, 5), z(4, 5)];
        let r = monomial_tangent_weights(&[3], e).unwrap();
        let mut want = vec![z(3, 5), z(2, 5), z(1, 5), z(4, 5), z(3, 5), z(2, 5)];
        want.sort();
        assert_eq!(r.weights, want);
        assert!(!r.degenerate);
    }

    #[test]
    fn torus_double_point_is_degenerate() {
        let r = monomial_tangent_weights(&[1, 1], [z(1, 2), z(1, 2)]).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.weights.len(), 4);
        assert_eq!(r.fixed_subspace_dim, 2);
    }

    #[test]
    fn hooks_have_2n_weights() {
        for parts in [vec![2, 1], vec![3, 1], vec![2, 2], vec![3, 2, 1], vec![4, 2, 2, 1]] {
            let d = diagram(&parts).unwrap();
            let total: usize = hom_exponents(&d).values().sum();
            assert_eq!(total as u32, 2 * d.size(), "{parts:?}");
        }
    }

    #[test]
    fn rank_small() {
        let r = |v: &[&[i64]]| rank(v.iter().map(|row| row.iter().map(|&x| rational_int(x)).collect()).collect());
        assert_eq!(r(&[&[1, -1], &[-1, 1]]), 1);
        assert_eq!(r(&[&[1, 0], &[0, 1], &[1, 1]]), 2);
        assert_eq!(r(&[]), 0);
    }
}
