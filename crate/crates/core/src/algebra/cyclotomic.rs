//! Exact arithmetic in cyclotomic fields.
//!
//! An element of `Q(ζ_m)` is stored as the coefficient vector of its residue
//! modulo the cyclotomic polynomial `Φ_m`, so two values at the same
//! conductor are equal iff their coefficients are. After every operation the
//! value is moved to the smallest cyclotomic field containing it, which makes
//! equality across conductors a plain structural comparison.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{rational_int, Rational};
use crate::error::{Error, Result};

thread_local! {
    static PHI_CACHE: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Euler's totient.
pub fn euler_phi(m: u32) -> usize {
    let mut result = m as u64;
    for p in prime_factors(m) {
        result = result / p as u64 * (p as u64 - 1);
    }
    result as usize
}

fn prime_factors(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn poly_mul_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of integer polynomials when `den` is monic up to sign.
fn poly_div_exact_i64(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    debug_assert!(lead == 1 || lead == -1);
    let mut quot = vec![0i64; num.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k] * lead;
        if c == 0 {
            continue;
        }
        quot[k - dd] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k - dd + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn compute_cyclotomic_polynomial(m: u32) -> Vec<i64> {
    // Φ_m = ∏_{d | m} (x^d − 1)^{μ(m/d)}
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for d in 1..=m {
        if !m.is_multiple_of(d) {
            continue;
        }
        let mut factor = vec![0i64; d as usize + 1];
        factor[0] = -1;
        factor[d as usize] = 1;
        match mobius(m / d) {
            1 => num = poly_mul_i64(&num, &factor),
            -1 => den = poly_mul_i64(&den, &factor),
            _ => {}
        }
    }
    poly_div_exact_i64(&num, &den)
}

/// Coefficients of `Φ_m`, lowest degree first.
pub(crate) fn cyclotomic_polynomial(m: u32) -> Rc<Vec<i64>> {
    PHI_CACHE.with(|cache| {
        cache
            .borrow_mut()
            .entry(m)
            .or_insert_with(|| Rc::new(compute_cyclotomic_polynomial(m)))
            .clone()
    })
}

/// Residues of `x^v mod Φ_m` for `v = 0..m`, as small integer vectors.
fn power_residues(m: u32) -> Vec<Vec<i64>> {
    let phi = cyclotomic_polynomial(m);
    let d = phi.len() - 1;
    let mut out = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; d];
    cur[0] = 1;
    for _ in 0..m {
        out.push(cur.clone());
        // multiply by x and reduce
        let carry = cur[d - 1];
        for i in (1..d).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if carry != 0 {
            for i in 0..d {
                cur[i] -= carry * phi[i];
            }
        }
    }
    out
}

fn reduce_mod_phi(mut poly: Vec<Rational>, m: u32) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(m);
    let d = phi.len() - 1;
    if poly.len() > d {
        for k in (d..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[k], Rational::zero());
            for i in 0..d {
                if phi[i] != 0 {
                    poly[k - d + i] -= &c * rational_int(phi[i]);
                }
            }
        }
    }
    poly.resize(d, Rational::zero());
    poly
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Quotient and remainder over `Q[x]`; `den` must be non-zero and trimmed.
fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let lead_inv = den[dd].recip();
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = &rem[k] * &lead_inv;
        for (i, di) in den.iter().enumerate() {
            rem[k - dd + i] -= &c * di;
        }
        quot[k - dd] = c;
    }
    rem.truncate(dd);
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// An exact element of the cyclotomic field `Q(ζ_m)`, `ζ_m = e^{2πi/m}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicNumber {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        CyclotomicNumber {
            conductor: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(rational_int(v))
    }

    pub fn from_rational(r: Rational) -> Self {
        CyclotomicNumber {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn root_of_unity(k: i64, m: u32) -> Self {
        RootOfUnity::new(k, m).to_cyclotomic()
    }

    /// Canonical form of `Σ raw[j] ζ_m^j`; `raw` may have any length.
    pub fn normalize(m: u32, raw: &[Rational]) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("conductor must be at least 1".into()));
        }
        let mut folded = vec![Rational::zero(); m as usize];
        for (j, c) in raw.iter().enumerate() {
            if !c.is_zero() {
                folded[j % m as usize] += c;
            }
        }
        Ok(Self::from_reduced(m, reduce_mod_phi(folded, m)))
    }

    /// Conductor of the smallest cyclotomic field containing the value.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients on `1, ζ_m, …, ζ_m^{φ(m)−1}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.conductor == 1).then(|| &self.coeffs[0])
    }

    /// The integer this value equals, if any.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        let m = self.conductor;
        let residues = power_residues(m);
        for (j, res) in residues.iter().enumerate() {
            let plus = self.coeffs.iter().zip(res).all(|(c, &r)| *c == rational_int(r));
            if plus {
                return Some(RootOfUnity::new(j as i64, m));
            }
            let minus = self.coeffs.iter().zip(res).all(|(c, &r)| *c == rational_int(-r));
            if minus {
                return Some(RootOfUnity::new(2 * j as i64 + m as i64, 2 * m));
            }
        }
        None
    }

    pub fn to_complex(&self) -> Complex64 {
        let m = self.conductor as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = TAU * j as f64 / m;
            acc += Complex64::from_polar(1.0, angle) * c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    fn lift(&self, target: u32) -> Vec<Rational> {
        if target == self.conductor {
            return self.coeffs.clone();
        }
        let step = (target / self.conductor) as usize;
        let mut raw = vec![Rational::zero(); target as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(j * step) % target as usize] += c;
            }
        }
        reduce_mod_phi(raw, target)
    }

    fn common_conductor(&self, other: &Self) -> u32 {
        self.conductor.lcm(&other.conductor)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.conductor == other.conductor {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return Self::from_reduced(self.conductor, coeffs);
        }
        let m = self.common_conductor(other);
        let coeffs = self.lift(m).into_iter().zip(other.lift(m)).map(|(a, b)| a + b).collect();
        Self::from_reduced(m, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.conductor == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.conductor == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let m = self.common_conductor(other);
        let a = self.lift(m);
        let b = other.lift(m);
        Self::from_reduced(m, reduce_mod_phi(poly_mul(&a, &b), m))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.conductor == 1 {
            return Some(Self::from_rational(self.coeffs[0].recip()));
        }
        let m = self.conductor;
        let phi: Vec<Rational> = cyclotomic_polynomial(m).iter().map(|&c| rational_int(c)).collect();
        let mut a = self.coeffs.clone();
        trim(&mut a);
        // extended Euclid: s0·a ≡ r0 (mod Φ_m)
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (vec![], vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let qs = poly_mul(&q, &s1);
            let mut next = s0.clone();
            if next.len() < qs.len() {
                next.resize(qs.len(), Rational::zero());
            }
            for (i, v) in qs.iter().enumerate() {
                next[i] -= v;
            }
            trim(&mut next);
            s0 = std::mem::replace(&mut s1, next);
            r0 = std::mem::replace(&mut r1, r);
        }
        debug_assert_eq!(r0.len(), 1, "Φ_m is irreducible so the gcd is a constant");
        let g = r0[0].recip();
        let inv: Vec<Rational> = s0.iter().map(|c| c * &g).collect();
        Some(Self::from_reduced(m, reduce_mod_phi(inv, m)))
    }

    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Some(acc)
    }

    /// Complex conjugate (the Galois automorphism `ζ ↦ ζ^{-1}`).
    pub fn conj(&self) -> Self {
        let m = self.conductor as usize;
        let mut raw = vec![Rational::zero(); m];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(m - j) % m] += c;
            }
        }
        Self::from_reduced(self.conductor, reduce_mod_phi(raw, self.conductor))
    }

    /// Builds the canonical form from coefficients already reduced mod `Φ_m`.
    fn from_reduced(m: u32, coeffs: Vec<Rational>) -> Self {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Self::zero();
        }
        let mut m = m;
        let mut coeffs = coeffs;
        'descend: loop {
            for p in prime_factors(m) {
                if let Some(smaller) = descend(m, &coeffs, p) {
                    m /= p;
                    coeffs = smaller;
                    continue 'descend;
                }
            }
            break;
        }
        CyclotomicNumber { conductor: m, coeffs }
    }
}

/// Rewrites an element of `Q(ζ_m)` in `Q(ζ_{m/p})` when it lies there.
fn descend(m: u32, coeffs: &[Rational], p: u32) -> Option<Vec<Rational>> {
    let sub = m / p;
    if sub.is_multiple_of(p) {
        // Φ_m(x) = Φ_{m/p}(x^p): the subfield is spanned by powers of x^p
        if coeffs.iter().enumerate().any(|(j, c)| !(j as u32).is_multiple_of(p) && !c.is_zero()) {
            return None;
        }
        return Some(coeffs.iter().step_by(p as usize).cloned().collect());
    }
    // Q(ζ_m) = Q(ζ_p) ⊗ Q(ζ_sub) with ζ_m = ζ_p^a ζ_sub^b, a·sub + b·p = 1
    let a = (1..p).find(|a| (a * sub) % p == 1 % p).unwrap_or(0) as i64;
    let b = (1 - a * sub as i64) / p as i64;
    let b = b.rem_euclid(sub as i64);
    let sub_res = power_residues(sub);
    let width = euler_phi(sub);
    let mut tensor = vec![vec![Rational::zero(); width]; p as usize - 1];
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let u = (a * j as i64).rem_euclid(p as i64) as usize;
        let v = (b * j as i64).rem_euclid(sub as i64) as usize;
        let res = &sub_res[v];
        if u < p as usize - 1 {
            for (w, &r) in res.iter().enumerate() {
                if r != 0 {
                    tensor[u][w] += c * rational_int(r);
                }
            }
        } else {
            // ζ_p^{p−1} = −(1 + ζ_p + … + ζ_p^{p−2})
            for row in tensor.iter_mut() {
                for (w, &r) in res.iter().enumerate() {
                    if r != 0 {
                        row[w] -= c * rational_int(r);
                    }
                }
            }
        }
    }
    if tensor[1..].iter().flatten().any(|c| !c.is_zero()) {
        return None;
    }
    Some(tensor.swap_remove(0))
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

/// Exact rendering: integers and rationals as themselves, roots of unity as
/// `[k,m]` (meaning `e^{2πik/m}`), anything else as a combination of powers.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        if let Some(root) = self.as_root_of_unity() {
            return write!(f, "{root}");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if j == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "[{j},{}]", self.conductor)?;
            } else {
                write!(f, "{mag}*[{j},{}]", self.conductor)?;
            }
        }
        Ok(())
    }
}

/// A root of unity `e^{2πik/m}` kept as the reduced fraction `k/m ∈ [0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(i64, u32)", into = "(i64, u32)")]
pub struct RootOfUnity {
    k: u32,
    m: u32,
}

impl RootOfUnity {
    /// # Panics
    ///
    /// Panics if `m == 0`.
    pub fn new(k: i64, m: u32) -> Self {
        assert!(m > 0, "root of unity needs a positive order");
        let k = k.rem_euclid(m as i64) as u32;
        let g = k.gcd(&m);
        RootOfUnity { k: k / g, m: m / g }
    }

    pub fn one() -> Self {
        RootOfUnity { k: 0, m: 1 }
    }

    pub fn numerator(&self) -> u32 {
        self.k
    }

    /// The exact multiplicative order.
    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    pub fn pow(&self, e: i64) -> Self {
        RootOfUnity::new(self.k as i64 * e, self.m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.m.lcm(&other.m);
        let k = self.k as i64 * (m / self.m) as i64 + other.k as i64 * (m / other.m) as i64;
        RootOfUnity::new(k, m)
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn to_cyclotomic(&self) -> CyclotomicNumber {
        let mut raw = vec![Rational::zero(); self.k as usize + 1];
        raw[self.k as usize] = Rational::one();
        CyclotomicNumber::normalize(self.m, &raw).expect("order is positive")
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, TAU * self.k as f64 / self.m as f64)
    }

    /// Recovers a root of unity from an exact value, failing for anything
    /// that is not of finite order.
    pub fn from_cyclotomic(c: &CyclotomicNumber) -> Result<Self> {
        c.as_root_of_unity()
            .ok_or_else(|| Error::NotFiniteOrder(c.to_string()))
    }
}

impl TryFrom<(i64, u32)> for RootOfUnity {
    type Error = String;
    fn try_from((k, m): (i64, u32)) -> std::result::Result<Self, String> {
        if m == 0 {
            return Err("root of unity [k, m] needs m >= 1".into());
        }
        Ok(RootOfUnity::new(k, m))
    }
}

impl From<RootOfUnity> for (i64, u32) {
    fn from(r: RootOfUnity) -> Self {
        (r.k as i64, r.m)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            f.write_str("1")
        } else if self.m == 2 {
            f.write_str("-1")
        } else {
            write!(f, "[{},{}]", self.k, self.m)
        }
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.k, self.m)
    }
}
