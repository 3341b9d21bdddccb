//! Twisted Hodge numbers of `S^[n]`.
//!
//! For a line bundle `L` on `S` with its natural descent `L_n` to `S^[n]`,
//!
//! ```text
//! Σ_{n,p} h^{p,0}(S^[n], L_n) x^p t^n = (1 + x t)^{h^{1,0}} / ((1 − t)^{h^{0,0}} (1 − x² t)^{h^{2,0}})
//! ```
//!
//! with `h^{p,0} = h^{p,0}(S, L)`. [`conjectural_hodge_series`] extends this to
//! all `(p, q)`; it is a conjecture except at `y = 0` and for trivial `L`.

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::algebra::{rational_int, Rational, TruncatedSeries, Var};
use crate::error::{Error, Result};

/// `(h^{0,0}, h^{1,0}, h^{2,0})(S, L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[u64; 3]", into = "[u64; 3]")]
pub struct HodgeRow {
    pub h00: u64,
    pub h10: u64,
    pub h20: u64,
}

impl HodgeRow {
    pub const fn new(h00: u64, h10: u64, h20: u64) -> Self {
        HodgeRow { h00, h10, h20 }
    }

    pub fn to_array(self) -> [u64; 3] {
        [self.h00, self.h10, self.h20]
    }
}

impl From<[u64; 3]> for HodgeRow {
    fn from(a: [u64; 3]) -> Self {
        HodgeRow::new(a[0], a[1], a[2])
    }
}

impl From<HodgeRow> for [u64; 3] {
    fn from(r: HodgeRow) -> Self {
        r.to_array()
    }
}

/// `h^{p,q}(S, L)` for `p, q ∈ {0, 1, 2}`, indexed `[p][q]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HodgeTable(pub [[u64; 3]; 3]);

impl HodgeTable {
    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.0[p][q]
    }

    /// The `q = 0` column `(h^{0,0}, h^{1,0}, h^{2,0})`.
    pub fn p0_row(&self) -> HodgeRow {
        HodgeRow::new(self.0[0][0], self.0[1][0], self.0[2][0])
    }
}

/// Expansion of the `h^{p,0}(S^[n], L_n)` generating function in `x` (up to
/// `pmax`) and `t` (up to `nmax`).
pub fn hodge_p0_series(row: HodgeRow, nmax: u32, pmax: u32) -> Result<TruncatedSeries<Rational>> {
    let one = rational_int(1);
    let mut s = TruncatedSeries::one(&[(Var::X, pmax), (Var::T, nmax)])?;
    for _ in 0..row.h10 {
        s.mul_binomial(&one, &[1, 1]);
    }
    for _ in 0..row.h00 {
        s.div_binomial(&one, &[0, 1])?;
    }
    for _ in 0..row.h20 {
        s.div_binomial(&one, &[2, 1])?;
    }
    Ok(s)
}

/// `C(a, b)` extended by `C(−1, 0) = 1`.
fn binom_ext(a: i64, b: u64) -> u64 {
    match (a, b) {
        (_, 0) => 1,
        (a, _) if a < 0 => 0,
        (a, b) if (a as u64) < b => 0,
        (a, b) => binomial(a as u64, b),
    }
}

/// `h^{2n−1,0}(S^[n], L_n) = h^{1,0} · C(h^{2,0} + n − 2, n − 1)`, checked
/// against the generating function.
pub fn h_top_minus_one(row: HodgeRow, n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let closed = row.h10 * binom_ext(row.h20 as i64 + n as i64 - 2, (n - 1) as u64);
    let series = hodge_p0_series(row, n, 2 * n - 1)?;
    let coeff = series.coeff(&[2 * n - 1, n]);
    if coeff != rational_int(closed as i64) {
        return Err(Error::HodgeMismatch {
            closed,
            series: coeff.to_string(),
            row: row.to_array(),
            n,
        });
    }
    Ok(closed)
}

/// `dim Aut(S^[n])` computed as `h^{2n−1,0}(S^[n], ω^∨)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutDimension {
    pub value: u64,
    /// Set when `h^{2,0}(S, ω_S^∨) ≠ 1`, in which case `value` is not
    /// expected to equal `h^0(S, T_S)`.
    pub warning: Option<String>,
}

/// `dim Aut(S^[n])` from the Hodge row of `(S, ω_S^∨)`.
pub fn aut_dimension(canonical_dual_row: HodgeRow, n: u32) -> Result<AutDimension> {
    let value = h_top_minus_one(canonical_dual_row, n)?;
    let warning = (canonical_dual_row.h20 != 1).then(|| {
        format!(
            "h^{{2,0}}(S, ω^∨) = {} but a compact surface has h^{{2,0}}(S, ω^∨) = h^{{2,2}}(S) = 1",
            canonical_dual_row.h20
        )
    });
    Ok(AutDimension { value, warning })
}

/// Expansion of
/// `∏_{k ≥ 1} ∏_{p,q} (1 − s x^{p+k−1} y^{q+k−1} t^k)^{−s h^{p,q}}`, `s = (−1)^{p+q}`,
/// conjecturally the generating function of `h^{p,q}(S^[n], L_n)`.
pub fn conjectural_hodge_series(
    table: &HodgeTable,
    nmax: u32,
    pmax: u32,
    qmax: u32,
) -> Result<TruncatedSeries<Rational>> {
    let one = rational_int(1);
    let mut s = TruncatedSeries::one(&[(Var::X, pmax), (Var::Y, qmax), (Var::T, nmax)])?;
    for k in 1..=nmax {
        for p in 0..3u32 {
            for q in 0..3u32 {
                let mono = [p + k - 1, q + k - 1, k];
                for _ in 0..table.get(p as usize, q as usize) {
                    if (p + q) % 2 == 0 {
                        s.div_binomial(&one, &mono)?;
                    } else {
                        s.mul_binomial(&one, &mono);
                    }
                }
            }
        }
    }
    Ok(s)
}
