use serde::Serialize;

use crate::error::{Error, Result};

/// A partition `λ_1 ≥ … ≥ λ_k ≥ 1` with its Young diagram
/// `D(λ) = {(i, j) : i < λ_{j+1}}` and the minimal generators `G(λ)` of the
/// monomial ideal `I_λ = ⟨x^i y^j : (i, j) ∉ D(λ)⟩`.
///
/// Generators are sorted by increasing `y`-exponent, hence decreasing
/// `x`-exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PartitionDiagram {
    pub parts: Vec<u32>,
    pub cells: Vec<(u32, u32)>,
    pub generators: Vec<(u32, u32)>,
}

impl PartitionDiagram {
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn contains(&self, (i, j): (u32, u32)) -> bool {
        self.parts.get(j as usize).is_some_and(|&l| i < l)
    }

    pub fn transpose(&self) -> PartitionDiagram {
        diagram(&transpose(&self.parts)).expect("transpose of a partition is a partition")
    }
}

/// Builds `D(λ)` and `G(λ)`.
pub fn diagram(parts: &[u32]) -> Result<PartitionDiagram> {
    if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(parts.to_vec()));
    }
    let cells = parts
        .iter()
        .enumerate()
        .flat_map(|(j, &l)| (0..l).map(move |i| (i, j as u32)))
        .collect();
    let mut generators = Vec::with_capacity(parts.len() + 1);
    for (j, &l) in parts.iter().enumerate() {
        if j == 0 || l < parts[j - 1] {
            generators.push((l, j as u32));
        }
    }
    generators.push((0, parts.len() as u32));
    Ok(PartitionDiagram {
        parts: parts.to_vec(),
        cells,
        generators,
    })
}

pub fn transpose(parts: &[u32]) -> Vec<u32> {
    let width = parts.first().copied().unwrap_or(0);
    (0..width)
        .map(|i| parts.iter().filter(|&&l| l > i).count() as u32)
        .collect()
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The monomial ideals of colength `n`, one per partition of `n`. Each is
/// fixed by every diagonal action.
pub fn monomial_fixed_points(n: u32) -> Vec<PartitionDiagram> {
    partitions(n)
        .iter()
        .map(|p| diagram(p).expect("generated partitions are valid"))
        .collect()
}
