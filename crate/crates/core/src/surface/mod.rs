//! Declarative descriptions of a surface, an automorphism's action on its
//! cohomology, and the automorphism's local fixed-point data.

mod document;
mod presets;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Coefficient, CyclotomicNumber, GradedEigenvalues, RootOfUnity, ScalarKind};
use crate::hodge::{HodgeRow, HodgeTable};

pub use document::{parse_document, parse_value, to_document, InputDocument};
pub use presets::{preset, PRESET_NAMES};

/// Tolerance used when checking float eigenvalues against a finite order.
const FLOAT_ORDER_TOL: f64 = 1e-9;

/// Betti numbers and optional twisted Hodge data of a compact complex surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSpec {
    pub name: String,
    pub betti: [u32; 5],
    /// `(h^{0,0}, h^{1,0}, h^{2,0})(S, L)` keyed by a label for `L`, e.g.
    /// `trivial` or `canonical-dual`.
    pub hodge_rows: BTreeMap<String, HodgeRow>,
    /// Full `h^{p,q}(S, L)` tables keyed the same way.
    pub hodge_tables: BTreeMap<String, HodgeTable>,
}

impl SurfaceSpec {
    pub fn new(name: impl Into<String>, betti: [u32; 5]) -> Self {
        SurfaceSpec {
            name: name.into(),
            betti,
            hodge_rows: BTreeMap::new(),
            hodge_tables: BTreeMap::new(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(*m),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

/// Eigenvalues of `f*` on `H^0 … H^4`, exact or floating.
#[derive(Debug, Clone, PartialEq)]
pub enum Spectrum {
    Exact(GradedEigenvalues<CyclotomicNumber>),
    Float(GradedEigenvalues<Complex64>),
}

impl Spectrum {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Spectrum::Exact(_) => ScalarKind::Cyclotomic,
            Spectrum::Float(_) => ScalarKind::ComplexFloat,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        match self {
            Spectrum::Exact(e) => e.dims(),
            Spectrum::Float(e) => e.dims(),
        }
    }

    /// The spectrum as floating eigenvalues, converting exact ones.
    pub fn to_float(&self) -> GradedEigenvalues<Complex64> {
        match self {
            Spectrum::Exact(e) => e.map(|c| c.to_complex()),
            Spectrum::Float(e) => e.clone(),
        }
    }
}

/// An exact or floating scalar result.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(CyclotomicNumber),
    Float(Complex64),
}

impl Scalar {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(c) => c.to_complex(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Exact(c) => c.as_i64(),
            Scalar::Float(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(c) => write!(f, "{c}"),
            Scalar::Float(z) => write!(f, "{z}"),
        }
    }
}

/// The action of an automorphism `f` on `H*(S)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AutomorphismSpec {
    pub surface: SurfaceSpec,
    pub order: Order,
    pub spectrum: Spectrum,
    /// Whether `f` preserves a holomorphic symplectic form; enables the
    /// `ε_1 ε_2 = 1` sanity check on local data.
    pub symplectic: bool,
}

impl AutomorphismSpec {
    /// The identity of `surface`.
    pub fn identity(surface: SurfaceSpec) -> Self {
        let dims: Vec<usize> = surface.betti.iter().map(|&b| b as usize).collect();
        AutomorphismSpec {
            surface,
            order: Order::Finite(1),
            spectrum: Spectrum::Exact(GradedEigenvalues::identity(&dims)),
            symplectic: false,
        }
    }

    pub fn exact_spectrum(&self) -> Option<&GradedEigenvalues<CyclotomicNumber>> {
        match &self.spectrum {
            Spectrum::Exact(e) => Some(e),
            Spectrum::Float(_) => None,
        }
    }
}

/// An isolated fixed point of `f` with the eigenvalues `ε_1, ε_2` of its
/// linearization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub label: String,
    pub eps: [RootOfUnity; 2],
}

impl FixedPoint {
    pub fn eps_cyclotomic(&self) -> [CyclotomicNumber; 2] {
        [self.eps[0].to_cyclotomic(), self.eps[1].to_cyclotomic()]
    }
}

/// A periodic orbit of exact period `period ≥ 2`. `isolated: false` stands for
/// a continuous family of such orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicOrbit {
    pub label: String,
    pub period: u32,
    pub isolated: bool,
}

/// A positive-dimensional fixed component of `f`, known only through its
/// Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedCurve {
    pub label: String,
    pub euler: i64,
    pub dimension: u32,
}

/// An externally quoted count for `f^[n]`, compared against computed
/// values in fixed-locus reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotedCount {
    pub n: u32,
    pub value: i64,
    pub what: String,
}

/// Inventory of the fixed and periodic points of `f`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LocalFixedDatum {
    pub isolated_points: Vec<FixedPoint>,
    pub periodic_orbits: Vec<PeriodicOrbit>,
    pub fixed_curves: Vec<FixedCurve>,
    pub quoted: Vec<QuotedCount>,
    /// Free-form provenance remarks surfaced in reports.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    ConnectedBetti,
    PoincareDuality,
    MultisetSize,
    EigenvalueOrder,
    LocalOrder,
    OrbitPeriod,
}

/// A failed invariant; `degree` names the cohomological degree when the
/// rule is per-degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub degree: Option<u32>,
    pub rule: Rule,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            Some(d) => write!(f, "H^{d}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

/// Checks the invariants of a surface and automorphism specification.
pub fn validate(spec: &AutomorphismSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    let b = spec.surface.betti;
    if b[0] != 1 || b[4] != 1 {
        out.push(Violation {
            degree: None,
            rule: Rule::ConnectedBetti,
            message: format!("b_0 = {} and b_4 = {} must both be 1", b[0], b[4]),
        });
    }
    if b[1] != b[3] {
        out.push(Violation {
            degree: None,
            rule: Rule::PoincareDuality,
            message: format!("b_1 = {} differs from b_3 = {}", b[1], b[3]),
        });
    }
    let dims = spec.spectrum.dims();
    for i in 0..dims.len().max(5) {
        let have = dims.get(i).copied().unwrap_or(0);
        let want = b.get(i).copied().unwrap_or(0) as usize;
        if have != want {
            out.push(Violation {
                degree: Some(i as u32),
                rule: Rule::MultisetSize,
                message: format!("{have} eigenvalues but b_{i} = {want}"),
            });
        }
    }
    if let Order::Finite(m) = spec.order {
        match &spec.spectrum {
            Spectrum::Exact(e) => {
                for (label, v) in e.iter() {
                    let ok = v
                        .as_root_of_unity()
                        .is_some_and(|r| m % r.order() == 0);
                    if !ok {
                        out.push(Violation {
                            degree: Some(label.degree),
                            rule: Rule::EigenvalueOrder,
                            message: format!("eigenvalue {v} is not a root of unity of order dividing {m}"),
                        });
                    }
                }
            }
            Spectrum::Float(e) => {
                for (label, v) in e.iter() {
                    if (v.powu(m) - Complex64::new(1.0, 0.0)).norm() > FLOAT_ORDER_TOL {
                        out.push(Violation {
                            degree: Some(label.degree),
                            rule: Rule::EigenvalueOrder,
                            message: format!("eigenvalue {v} does not satisfy λ^{m} = 1"),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Checks local data against the automorphism: local eigenvalue orders must
/// divide the order of `f`, orbit periods must be at least 2.
pub fn validate_datum(datum: &LocalFixedDatum, spec: &AutomorphismSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    for p in &datum.isolated_points {
        for (k, e) in p.eps.iter().enumerate() {
            let bad = match spec.order {
                Order::Finite(m) => m % e.order() != 0,
                Order::Infinite => false,
            };
            if bad {
                out.push(Violation {
                    degree: None,
                    rule: Rule::LocalOrder,
                    message: format!(
                        "fixed point `{}`: ε_{} = {e} has order {} not dividing the order {}",
                        p.label,
                        k + 1,
                        e.order(),
                        spec.order
                    ),
                });
            }
        }
    }
    for o in &datum.periodic_orbits {
        let bad_period = o.period < 2
            || matches!(spec.order, Order::Finite(m) if m % o.period != 0);
        if bad_period {
            out.push(Violation {
                degree: None,
                rule: Rule::OrbitPeriod,
                message: format!(
                    "orbit `{}`: period {} must be at least 2 and divide the order {}",
                    o.label, o.period, spec.order
                ),
            });
        }
    }
    out
}

/// Non-fatal consistency remarks about local data.
pub fn datum_warnings(datum: &LocalFixedDatum, spec: &AutomorphismSpec) -> Vec<String> {
    let mut out = Vec::new();
    if spec.symplectic {
        for p in &datum.isolated_points {
            if !p.eps[0].mul(&p.eps[1]).is_one() {
                out.push(format!(
                    "fixed point `{}`: ε_1·ε_2 = {} ≠ 1 for a symplectic automorphism",
                    p.label,
                    p.eps[0].mul(&p.eps[1])
                ));
            }
        }
    }
    if let Scalar::Exact(l) = lefschetz_on_surface(spec) {
        let declared = datum.isolated_points.len() as i64
            + datum.fixed_curves.iter().map(|c| c.euler).sum::<i64>();
        if l.as_i64() != Some(declared) {
            out.push(format!(
                "surface Lefschetz number {l} differs from the declared fixed locus Euler characteristic {declared}"
            ));
        }
    }
    out
}

fn alternating_sum<C: Coefficient>(e: &GradedEigenvalues<C>) -> C {
    e.iter().fold(C::zero(), |acc, (label, v)| {
        if label.is_odd() {
            acc.minus(v)
        } else {
            acc.plus(v)
        }
    })
}

/// `Σ_i (−1)^i tr(f* | H^i(S))`.
pub fn lefschetz_on_surface(spec: &AutomorphismSpec) -> Scalar {
    match &spec.spectrum {
        Spectrum::Exact(e) => Scalar::Exact(alternating_sum(e)),
        Spectrum::Float(e) => Scalar::Float(alternating_sum(e)),
    }
}

/// Lefschetz number of the iterate `f^d`, from the spectrum raised to `d`.
pub fn lefschetz_of_iterate(spec: &AutomorphismSpec, d: u32) -> Scalar {
    match &spec.spectrum {
        Spectrum::Exact(e) => Scalar::Exact(alternating_sum(&e.map(|v| Coefficient::powi(v, d)))),
        Spectrum::Float(e) => Scalar::Float(alternating_sum(&e.map(|v| Coefficient::powi(v, d)))),
    }
}
