use serde::Serialize;

use crate::algebra::RootOfUnity;

/// Which coordinate is solved for: `Xy` is `⟨y + Σ α_i x^i, x^n⟩`, `Yx` the
/// same with `x` and `y` exchanged, `Pencil` the whole `P¹` of length-two
/// subschemes at the point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axis {
    Xy,
    Yx,
    Pencil,
}

/// A family of fixed curvilinear subschemes at one fixed point: all
/// `α` supported on `exponents`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CurvilinearFamily {
    pub axis: Axis,
    pub exponents: Vec<u32>,
    pub dimension: u32,
}

/// `(axis, i)` with `ε_2 = ε_1^i` (`Xy`) or `ε_1 = ε_2^i` (`Yx`), `1 ≤ i < n`.
/// For `n = 2` the answer is the full pencil exactly when `ε_1 = ε_2`.
pub fn curvilinear_fixed_directions(n: u32, eps: [RootOfUnity; 2]) -> Vec<(Axis, u32)> {
    if n < 2 {
        return Vec::new();
    }
    if n == 2 {
        return if eps[0] == eps[1] {
            vec![(Axis::Pencil, 1)]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for i in 1..n {
        if eps[1] == eps[0].pow(i as i64) {
            out.push((Axis::Xy, i));
        }
    }
    for i in 1..n {
        if eps[0] == eps[1].pow(i as i64) {
            out.push((Axis::Yx, i));
        }
    }
    out
}

/// The fixed curvilinear families of length `n`, one per axis with hits.
pub fn curvilinear_families(n: u32, eps: [RootOfUnity; 2]) -> Vec<CurvilinearFamily> {
    let dirs = curvilinear_fixed_directions(n, eps);
    [Axis::Pencil, Axis::Xy, Axis::Yx]
        .into_iter()
        .filter_map(|axis| {
            let exponents: Vec<u32> = dirs.iter().filter(|(a, _)| *a == axis).map(|&(_, i)| i).collect();
            (!exponents.is_empty()).then_some(CurvilinearFamily {
                axis,
                dimension: exponents.len() as u32,
                exponents,
            })
        })
        .collect()
}
