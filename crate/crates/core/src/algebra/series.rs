//! Truncated multivariate power series in the variables `q, t, x, y`.
//!
//! Coefficients are stored densely over the box `0..=bound` per variable,
//! the first variable being the most significant digit. Index order is then
//! the lexicographic order on exponent tuples, which is what the in-place
//! geometric updates in [`TruncatedSeries::div_binomial`] rely on.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Coefficient;
use crate::error::{Error, Result};

pub const DEFAULT_Q: u32 = 8;
pub const DEFAULT_T: u32 = 40;
pub const DEFAULT_X: u32 = 16;
pub const DEFAULT_Y: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Q,
    T,
    X,
    Y,
}

impl Var {
    pub fn default_bound(self) -> u32 {
        match self {
            Var::Q => DEFAULT_Q,
            Var::T => DEFAULT_T,
            Var::X => DEFAULT_X,
            Var::Y => DEFAULT_Y,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::T => "t",
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    vars: Vec<Var>,
    bounds: Vec<u32>,
    strides: Vec<usize>,
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// The zero series over `vars`, each with its maximal exponent.
    pub fn zero(vars: &[(Var, u32)]) -> Result<Self> {
        for (i, (v, _)) in vars.iter().enumerate() {
            if vars[..i].iter().any(|(w, _)| w == v) {
                return Err(Error::IncompatibleSeries(format!("variable {} repeated", v.name())));
            }
        }
        let bounds: Vec<u32> = vars.iter().map(|&(_, b)| b).collect();
        let mut strides = vec![1usize; bounds.len()];
        for i in (0..bounds.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (bounds[i + 1] as usize + 1);
        }
        let len = bounds.iter().map(|&b| b as usize + 1).product();
        Ok(TruncatedSeries {
            vars: vars.iter().map(|&(v, _)| v).collect(),
            bounds,
            strides,
            coeffs: vec![C::zero(); len],
        })
    }

    pub fn one(vars: &[(Var, u32)]) -> Result<Self> {
        let mut s = Self::zero(vars)?;
        s.coeffs[0] = C::one();
        Ok(s)
    }

    /// `c · ∏ v_i^{e_i}`, dropped to zero when above the truncation.
    pub fn monomial(vars: &[(Var, u32)], exps: &[u32], c: C) -> Result<Self> {
        let mut s = Self::zero(vars)?;
        if let Some(i) = s.index_of(exps) {
            s.coeffs[i] = c;
        }
        Ok(s)
    }

    /// The empty-variable series holding a single scalar.
    pub fn constant(c: C) -> Self {
        let mut s = Self::zero(&[]).expect("no variables");
        s.coeffs[0] = c;
        s
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn shape(&self) -> Vec<(Var, u32)> {
        self.vars.iter().copied().zip(self.bounds.iter().copied()).collect()
    }

    pub fn bound(&self, var: Var) -> Option<u32> {
        self.position(var).map(|i| self.bounds[i])
    }

    fn position(&self, var: Var) -> Option<usize> {
        self.vars.iter().position(|&v| v == var)
    }

    fn index_of(&self, exps: &[u32]) -> Option<usize> {
        assert_eq!(exps.len(), self.vars.len(), "exponent tuple has wrong arity");
        let mut idx = 0;
        for ((&e, &b), &s) in exps.iter().zip(&self.bounds).zip(&self.strides) {
            if e > b {
                return None;
            }
            idx += e as usize * s;
        }
        Some(idx)
    }

    fn exps_of(&self, mut idx: usize) -> Vec<u32> {
        self.strides
            .iter()
            .map(|&s| {
                let e = idx / s;
                idx %= s;
                e as u32
            })
            .collect()
    }

    /// Coefficient of the monomial with exponents `exps` (in variable order);
    /// zero above the truncation.
    pub fn coeff(&self, exps: &[u32]) -> C {
        self.index_of(exps)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_else(C::zero)
    }

    /// Coefficient addressed by variable name; unnamed variables get exponent 0.
    pub fn coeff_at(&self, exps: &[(Var, u32)]) -> C {
        let mut tuple = vec![0; self.vars.len()];
        for &(v, e) in exps {
            match self.position(v) {
                Some(i) => tuple[i] = e,
                None if e == 0 => {}
                None => return C::zero(),
            }
        }
        self.coeff(&tuple)
    }

    pub fn set_coeff(&mut self, exps: &[u32], c: C) {
        if let Some(i) = self.index_of(exps) {
            self.coeffs[i] = c;
        }
    }

    /// Non-zero terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exps_of(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coefficient::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars || self.bounds != other.bounds {
            return Err(Error::IncompatibleSeries(format!(
                "{:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = a.plus(b);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            if !c.is_zero() {
                *c = c.negated();
            }
        }
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            if !c.is_zero() {
                *c = c.times(k);
            }
        }
        out
    }

    /// Exponent-wise sum of two indices, or `None` when it leaves the box.
    fn add_index(&self, a: usize, b: usize) -> Option<usize> {
        let mut idx = 0;
        let (mut ra, mut rb) = (a, b);
        for (&s, &bound) in self.strides.iter().zip(&self.bounds) {
            let e = ra / s + rb / s;
            if e > bound as usize {
                return None;
            }
            idx += e * s;
            ra %= s;
            rb %= s;
        }
        Some(idx)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self {
            coeffs: vec![C::zero(); self.coeffs.len()],
            ..self.clone()
        };
        let rhs: Vec<(usize, &C)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs {
                if let Some(k) = self.add_index(i, j) {
                    out.coeffs[k] = out.coeffs[k].plus(&a.times(b));
                }
            }
        }
        Ok(out)
    }

    /// Multiplies in place by `1 + c·mono`.
    pub fn mul_binomial(&mut self, c: &C, mono: &[u32]) {
        let Some(shift) = self.index_of(mono) else {
            return;
        };
        if shift == 0 {
            let k = C::one().plus(c);
            *self = self.scale(&k);
            return;
        }
        for idx in (shift..self.coeffs.len()).rev() {
            let Some(src) = self.sub_index(idx, mono) else {
                continue;
            };
            if self.coeffs[src].is_zero() {
                continue;
            }
            let add = self.coeffs[src].times(c);
            self.coeffs[idx] = self.coeffs[idx].plus(&add);
        }
    }

    /// Multiplies in place by `(1 − c·mono)^{-1}`; `mono` must be non-constant
    /// unless `1 − c` is invertible.
    pub fn div_binomial(&mut self, c: &C, mono: &[u32]) -> Result<()> {
        let Some(shift) = self.index_of(mono) else {
            return Ok(());
        };
        if shift == 0 {
            let k = C::one().minus(c).inverse().ok_or(Error::NotAUnit)?;
            *self = self.scale(&k);
            return Ok(());
        }
        for idx in shift..self.coeffs.len() {
            let Some(src) = self.sub_index(idx, mono) else {
                continue;
            };
            if self.coeffs[src].is_zero() {
                continue;
            }
            let add = self.coeffs[src].times(c);
            self.coeffs[idx] = self.coeffs[idx].plus(&add);
        }
        Ok(())
    }

    /// Index of `exps(idx) − mono`, if non-negative in every variable.
    fn sub_index(&self, idx: usize, mono: &[u32]) -> Option<usize> {
        let mut out = 0;
        let mut rem = idx;
        for ((&s, &m), _) in self.strides.iter().zip(mono).zip(&self.bounds) {
            let e = rem / s;
            rem %= s;
            if e < m as usize {
                return None;
            }
            out += (e - m as usize) * s;
        }
        Some(out)
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inverse(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].inverse().ok_or(Error::NotAUnit)?;
        let mut out = Self {
            coeffs: vec![C::zero(); self.coeffs.len()],
            ..self.clone()
        };
        out.coeffs[0] = c0_inv.clone();
        let support: Vec<(usize, Vec<u32>)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| (i, self.exps_of(i)))
            .collect();
        for idx in 1..self.coeffs.len() {
            let mut acc = C::zero();
            for (j, mono) in &support {
                if *j > idx {
                    break;
                }
                if let Some(src) = self.sub_index(idx, mono) {
                    if !out.coeffs[src].is_zero() {
                        acc = acc.plus(&self.coeffs[*j].times(&out.coeffs[src]));
                    }
                }
            }
            if !acc.is_zero() {
                out.coeffs[idx] = acc.times(&c0_inv).negated();
            }
        }
        Ok(out)
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(&self.shape())?;
        let mut b = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Exact product of a sequence of series sharing one shape.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Self>) -> Result<Self> {
        let mut iter = factors.into_iter();
        let Some(first) = iter.next() else {
            return Err(Error::IncompatibleSeries("empty product".into()));
        };
        iter.try_fold(first.clone(), |acc, f| acc.mul(f))
    }

    /// Substitutes `var = value` and drops the variable.
    pub fn evaluate(&self, var: Var, value: &C) -> Result<Self> {
        let pos = self
            .position(var)
            .ok_or_else(|| Error::IncompatibleSeries(format!("no variable {}", var.name())))?;
        let shape: Vec<(Var, u32)> = self
            .shape()
            .into_iter()
            .filter(|&(v, _)| v != var)
            .collect();
        let mut out = Self::zero(&shape)?;
        let powers: Vec<C> = (0..=self.bounds[pos]).map(|e| value.powi(e)).collect();
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exps = self.exps_of(idx);
            let e = exps.remove(pos);
            let target = out.index_of(&exps).expect("same bounds");
            out.coeffs[target] = out.coeffs[target].plus(&c.times(&powers[e as usize]));
        }
        Ok(out)
    }

    /// The coefficient of `var^e`, as a series in the remaining variables.
    pub fn coefficient_of(&self, var: Var, e: u32) -> Result<Self> {
        let pos = self
            .position(var)
            .ok_or_else(|| Error::IncompatibleSeries(format!("no variable {}", var.name())))?;
        let shape: Vec<(Var, u32)> = self
            .shape()
            .into_iter()
            .filter(|&(v, _)| v != var)
            .collect();
        let mut out = Self::zero(&shape)?;
        if e > self.bounds[pos] {
            return Ok(out);
        }
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exps = self.exps_of(idx);
            if exps.remove(pos) == e {
                let target = out.index_of(&exps).expect("same bounds");
                out.coeffs[target] = c.clone();
            }
        }
        Ok(out)
    }

    /// Coefficients of a univariate series as a vector indexed by exponent.
    pub fn univariate_coeffs(&self) -> Option<Vec<C>> {
        (self.vars.len() == 1).then(|| self.coeffs.clone())
    }

    /// Applies `f` to every coefficient, changing the scalar kind.
    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            vars: self.vars.clone(),
            bounds: self.bounds.clone(),
            strides: self.strides.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| if c.is_zero() { D::zero() } else { f(c) })
                .collect(),
        }
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (exps, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(&exps)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.name().to_string() } else { format!("{}^{e}", v.name()) })
                .collect();
            let cs = c.to_string();
            let needs_parens = cs.contains(' ');
            match (mono.is_empty(), needs_parens) {
                (true, _) => write!(f, "{cs}")?,
                (false, true) => write!(f, "({cs})*{}", mono.join("*"))?,
                (false, false) if cs == "1" => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{cs}*{}", mono.join("*"))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries")
            .field("shape", &self.shape())
            .field("terms", &self.terms().collect::<Vec<_>>())
            .finish()
    }
}
