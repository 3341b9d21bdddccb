use serde::{Deserialize, Serialize};

use super::Coefficient;

/// Identifies one eigenvector of a graded endomorphism: its cohomological
/// degree and its position in that degree's eigenvalue list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EigenLabel {
    pub degree: u32,
    pub index: u32,
}

impl EigenLabel {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Eigenvalue multisets of a diagonalizable graded endomorphism
/// `f = (f_i)` of `A = ⊕ A^i`, indexed by degree.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedEigenvalues<C> {
    degrees: Vec<Vec<C>>,
}

impl<C: Coefficient> GradedEigenvalues<C> {
    pub fn new(degrees: Vec<Vec<C>>) -> Self {
        GradedEigenvalues { degrees }
    }

    /// The identity on a space with the given dimensions per degree.
    pub fn identity(dims: &[usize]) -> Self {
        Self::new(dims.iter().map(|&d| vec![C::one(); d]).collect())
    }

    pub fn degree(&self, i: usize) -> &[C] {
        self.degrees.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn num_degrees(&self) -> usize {
        self.degrees.len()
    }

    /// Highest degree carrying at least one eigenvalue.
    pub fn top_degree(&self) -> u32 {
        self.degrees
            .iter()
            .rposition(|d| !d.is_empty())
            .unwrap_or(0) as u32
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.iter().map(Vec::len).sum()
    }

    pub fn even_dim(&self) -> usize {
        self.degrees.iter().step_by(2).map(Vec::len).sum()
    }

    pub fn odd_dim(&self) -> usize {
        self.degrees.iter().skip(1).step_by(2).map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EigenLabel, &C)> {
        self.degrees.iter().enumerate().flat_map(|(d, vals)| {
            vals.iter().enumerate().map(move |(i, v)| {
                (
                    EigenLabel {
                        degree: d as u32,
                        index: i as u32,
                    },
                    v,
                )
            })
        })
    }

    pub fn get(&self, label: EigenLabel) -> Option<&C> {
        self.degrees.get(label.degree as usize)?.get(label.index as usize)
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> GradedEigenvalues<D> {
        GradedEigenvalues::new(self.degrees.iter().map(|d| d.iter().map(&f).collect()).collect())
    }

    /// Distinct eigenvalues per degree with multiplicities, in first-seen order.
    pub fn grouped(&self) -> Vec<(u32, C, u32)> {
        let mut out: Vec<(u32, C, u32)> = Vec::new();
        for (label, v) in self.iter() {
            match out.iter_mut().find(|(d, w, _)| *d == label.degree && w == v) {
                Some(entry) => entry.2 += 1,
                None => out.push((label.degree, v.clone(), 1)),
            }
        }
        out
    }
}
