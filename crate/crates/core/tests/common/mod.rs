//! Brute-force oracles shared by the integration tests. None of them call
//! into the library's series or tangent-space code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hilbaut::algebra::{rational, GradedEigenvalues, Rational};
use num_traits::{One, Zero};

pub fn q(v: i64) -> Rational {
    rational(v, 1)
}

/// Graded eigenvalues as a flat list of `(degree, value)`.
pub fn flatten(e: &GradedEigenvalues<Rational>) -> Vec<(u32, Rational)> {
    e.iter().map(|(l, v)| (l.degree, v.clone())).collect()
}

/// Adds `coeff · t^deg` into a polynomial stored densely.
fn bump(poly: &mut Vec<Rational>, deg: usize, coeff: Rational) {
    if poly.len() <= deg {
        poly.resize(deg + 1, Rational::zero());
    }
    poly[deg] += coeff;
}

fn product(e: &[(u32, Rational)], idx: &[usize]) -> (usize, Rational) {
    idx.iter().fold((0, Rational::one()), |(d, p), &i| {
        (d + e[i].0 as usize, p * &e[i].1)
    })
}

/// Index sequences of length `n` over `0..d`, filtered by `keep`.
fn sequences(d: usize, n: usize, keep: &dyn Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    if d == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    loop {
        if keep(&cur) {
            out.push(cur.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < d {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Trace of `f^{⊗n}` on the basis `e_{i_1} ⊗ ⋯ ⊗ e_{i_n}`, as a polynomial in `t`.
pub fn brute_tensor(e: &[(u32, Rational)], n: usize) -> Vec<Rational> {
    let mut poly = Vec::new();
    for idx in sequences(e.len(), n, &|_| true) {
        let (d, v) = product(e, &idx);
        bump(&mut poly, d, v);
    }
    poly
}

/// Trace on the monomial basis `e_{i_1} ⋯ e_{i_n}`, `i_1 ≤ ⋯ ≤ i_n`.
pub fn brute_sym(e: &[(u32, Rational)], n: usize) -> Vec<Rational> {
    let mut poly = Vec::new();
    for idx in sequences(e.len(), n, &|s| s.windows(2).all(|w| w[0] <= w[1])) {
        let (d, v) = product(e, &idx);
        bump(&mut poly, d, v);
    }
    poly
}

/// Trace on the basis `e_{i_1} ∧ ⋯ ∧ e_{i_n}`, `i_1 < ⋯ < i_n`.
pub fn brute_ext(e: &[(u32, Rational)], n: usize) -> Vec<Rational> {
    let mut poly = Vec::new();
    for idx in sequences(e.len(), n, &|s| s.windows(2).all(|w| w[0] < w[1])) {
        let (d, v) = product(e, &idx);
        bump(&mut poly, d, v);
    }
    poly
}

/// Rank over `Q` by plain elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if !rows[i][c].is_zero() {
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

/// Null space basis of `m` (rows × cols), in reduced form: each basis
/// vector has a 1 at its own free column and 0 at the other free columns.
/// Returns `(free columns, basis)`.
pub fn null_space(m: &[Vec<Rational>], cols: usize) -> (Vec<usize>, Vec<Vec<Rational>>) {
    let mut rows: Vec<Vec<Rational>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for k in 0..cols {
            rows[r][k] = &rows[r][k] * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..cols {
                    let sub = &f * &rows[r][k];
                    rows[i][k] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][f].clone();
            }
            v
        })
        .collect();
    (free, basis)
}

pub fn cells(parts: &[u32]) -> Vec<(u32, u32)> {
    parts
        .iter()
        .enumerate()
        .flat_map(|(j, &l)| (0..l).map(move |i| (i, j as u32)))
        .collect()
}

/// `Hom(I_λ, A/I_λ)` computed from all monomials of `I_λ` of total degree
/// at most `n + 2`, with constraints `φ(x m) = x φ(m)`, `φ(y m) = y φ(m)`.
/// Returns the dimension of each exponent-difference piece.
pub fn monomial_hom_oracle(parts: &[u32]) -> BTreeMap<(i64, i64), usize> {
    let cs = cells(parts);
    let cellset: BTreeSet<(u32, u32)> = cs.iter().copied().collect();
    let n: u32 = parts.iter().sum();
    let deg = n + 2;
    let ideal: Vec<(u32, u32)> = (0..=deg)
        .flat_map(|a| (0..=deg - a).map(move |b| (a, b)))
        .filter(|m| !cellset.contains(m))
        .collect();
    let diff = |m: (u32, u32), c: (u32, u32)| (m.0 as i64 - c.0 as i64, m.1 as i64 - c.1 as i64);
    let mut unknowns: BTreeMap<(i64, i64), Vec<((u32, u32), (u32, u32))>> = BTreeMap::new();
    for &m in &ideal {
        for &c in &cs {
            unknowns.entry(diff(m, c)).or_default().push((m, c));
        }
    }
    let mut out = BTreeMap::new();
    for (d, vars) in unknowns {
        let index: BTreeMap<_, _> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut rows = Vec::new();
        for &m in &ideal {
            if m.0 + m.1 >= deg {
                continue;
            }
            for step in [(1u32, 0u32), (0, 1)] {
                let mm = (m.0 + step.0, m.1 + step.1);
                for &c in &cs {
                    // coefficient of cell c in φ(mm) − step · φ(m)
                    let mut row = vec![Rational::zero(); vars.len()];
                    let mut any = false;
                    if let Some(&i) = index.get(&(mm, c)) {
                        row[i] += q(1);
                        any = true;
                    }
                    if c.0 >= step.0 && c.1 >= step.1 {
                        let src = (c.0 - step.0, c.1 - step.1);
                        if let Some(&i) = index.get(&(m, src)) {
                            row[i] -= q(1);
                            any = true;
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
        let dim = vars.len() - rank(rows);
        if dim > 0 {
            out.insert(d, dim);
        }
    }
    out
}

/// Polynomials of total degree `≤ deg` in `x, y`, indexed by exponent.
struct PolySpace {
    monos: Vec<(u32, u32)>,
    index: BTreeMap<(u32, u32), usize>,
}

impl PolySpace {
    fn new(deg: u32) -> Self {
        let monos: Vec<(u32, u32)> = (0..=deg).flat_map(|a| (0..=deg - a).map(move |b| (a, b))).collect();
        let index = monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        PolySpace { monos, index }
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// For `I = I_λ ∩ τ(I_μ)`, with `I_λ` at the origin and `I_μ` at `(1, 0)`,
/// and the involution `g(x, y) = (x, −y)` that fixes both points,
/// returns `(dim Hom(I, A/I), dim of its g-invariant part, dim of its
/// g-anti-invariant part)`. Computed on `I ∩ A_{≤D}` with plain linear
/// algebra; `A/I` is identified with `A/I_λ × A/I_μ` by Taylor expansion
/// at the two points.
pub fn two_point_hom_oracle(lambda: &[u32], mu: &[u32]) -> (usize, usize, usize) {
    let cl = cells(lambda);
    let cm = cells(mu);
    let n = cl.len() + cm.len();
    let deg = n as u32 + 3;
    let space = PolySpace::new(deg);
    let lower = PolySpace::new(deg - 1);

    // π: A_{≤D} → Q^n, coefficients at the cells of each point
    let pi = |space: &PolySpace| -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); space.monos.len()]; n];
        for (col, &(a, b)) in space.monos.iter().enumerate() {
            for (r, &c) in cl.iter().enumerate() {
                if c == (a, b) {
                    m[r][col] = q(1);
                }
            }
            // x^a y^b = (x' + 1)^a y^b, coefficient of x'^u y^b is C(a, u)
            for (r, &(u, v)) in cm.iter().enumerate() {
                if v == b && u <= a {
                    m[cl.len() + r][col] = q(binomial(a, u));
                }
            }
        }
        m
    };
    let (free, basis) = null_space(&pi(&space), space.monos.len());
    let (_, low_basis) = null_space(&pi(&lower), lower.monos.len());
    let dim_v = free.len();

    // multiplication by x and y on A/I, as n × n matrices acting on columns
    let mut xm = vec![vec![Rational::zero(); n]; n];
    let mut ym = vec![vec![Rational::zero(); n]; n];
    let pos_l: BTreeMap<(u32, u32), usize> = cl.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let pos_m: BTreeMap<(u32, u32), usize> = cm.iter().enumerate().map(|(i, &c)| (c, i + cl.len())).collect();
    for (&(u, v), &j) in &pos_l {
        if let Some(&i) = pos_l.get(&(u + 1, v)) {
            xm[i][j] += q(1);
        }
        if let Some(&i) = pos_l.get(&(u, v + 1)) {
            ym[i][j] += q(1);
        }
    }
    for (&(u, v), &j) in &pos_m {
        xm[j][j] += q(1);
        if let Some(&i) = pos_m.get(&(u + 1, v)) {
            xm[i][j] += q(1);
        }
        if let Some(&i) = pos_m.get(&(u, v + 1)) {
            ym[i][j] += q(1);
        }
    }
    let sign: Vec<Rational> = cl
        .iter()
        .chain(&cm)
        .map(|&(_, v)| if v % 2 == 0 { q(1) } else { q(-1) })
        .collect();

    // unknown Φ[i][f] at index i * dim_v + f; coordinates of w ∈ V are w|_free
    let coords = |w: &[Rational]| -> Vec<Rational> { free.iter().map(|&f| w[f].clone()).collect() };
    let lift = |w: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); space.monos.len()];
        for (k, &m) in lower.monos.iter().enumerate() {
            out[space.index[&m]] = w[k].clone();
        }
        out
    };
    let shift = |w: &[Rational], step: (u32, u32)| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); space.monos.len()];
        for (k, &(a, b)) in space.monos.iter().enumerate() {
            if !w[k].is_zero() {
                out[space.index[&(a + step.0, b + step.1)]] = w[k].clone();
            }
        }
        out
    };
    let unknowns = n * dim_v;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for b in &low_basis {
        let b = lift(b);
        let cb = coords(&b);
        for (step, mat) in [((1, 0), &xm), ((0, 1), &ym)] {
            let cs = coords(&shift(&b, step));
            for i in 0..n {
                let mut row = vec![Rational::zero(); unknowns];
                for f in 0..dim_v {
                    row[i * dim_v + f] += &cs[f];
                    for k in 0..n {
                        let sub = &mat[i][k] * &cb[f];
                        row[k * dim_v + f] -= sub;
                    }
                }
                rows.push(row);
            }
        }
    }
    let hom_dim = unknowns - rank(rows.clone());

    let fixed_dim = |s: i64| -> usize {
        let mut all = rows.clone();
        for (fi, bv) in basis.iter().enumerate() {
            let gb: Vec<Rational> = space
                .monos
                .iter()
                .zip(bv)
                .map(|(&(_, y), c)| if y % 2 == 0 { c.clone() } else { -c.clone() })
                .collect();
            let cg = coords(&gb);
            // Φ(g b) − s · G Φ(b) = 0
            for i in 0..n {
                let mut row = vec![Rational::zero(); unknowns];
                for f in 0..dim_v {
                    row[i * dim_v + f] += &cg[f];
                }
                row[i * dim_v + fi] -= &sign[i] * q(s);
                all.push(row);
            }
        }
        unknowns - rank(all)
    };
    (hom_dim, fixed_dim(1), fixed_dim(-1))
}
