//! Fixed loci of `f^[n]` for a finite-order automorphism `f`.
//!
//! A fixed subscheme of length `n` is a disjoint union of pieces: reduced
//! or thick points at fixed points of `f`, and orbits of reduced or thick
//! points under `f`. Thick points at a fixed point are either monomial in
//! the linearizing coordinates (always fixed, isolated, with tangent
//! weights from [`monomial_tangent_weights`]) or curvilinear (fixed only in
//! positive-dimensional families, see [`curvilinear_fixed_directions`]).
//! For lengths up to 3 these two types exhaust the thick points.
//!
//! [`enumerate_fixed_components`] lists every assembly of such pieces and
//! cross-checks the result against the Lefschetz number of `f^[n]` through
//! an independent Euler characteristic count: a fixed-point stratum whose
//! support is a union of orbits of period `k` contributes through
//! `∏_k P(q^k)^{χ(O_k)}`, where `P` is the partition generating function and
//! `O_k` the space of orbits of exact period `k`.

mod curvilinear;
mod partition;
mod tangent;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::{rational_int, RootOfUnity, TruncatedSeries, Var};
use crate::error::{Error, Result};
use crate::fock::lefschetz_number;
use crate::surface::{lefschetz_of_iterate, validate_datum, AutomorphismSpec, LocalFixedDatum, Order};

pub use curvilinear::{curvilinear_families, curvilinear_fixed_directions, Axis, CurvilinearFamily};
pub use partition::{diagram, monomial_fixed_points, partitions, transpose, PartitionDiagram};
pub use tangent::{grid_criterion_nondegenerate, hom_exponents, monomial_tangent_weights, TangentWeightReport};

/// Default largest `n` accepted by [`enumerate_fixed_components`].
pub const DEFAULT_MAX_N: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    ReducedAssembly,
    MonomialThick,
    CurvilinearFamily,
    PeriodicOrbitFamily,
    ThickOrbitFamily,
    FixedLocusFamily,
}

impl ComponentKind {
    pub fn name(self) -> &'static str {
        match self {
            ComponentKind::ReducedAssembly => "reduced-assembly",
            ComponentKind::MonomialThick => "monomial-thick",
            ComponentKind::CurvilinearFamily => "curvilinear-family",
            ComponentKind::PeriodicOrbitFamily => "periodic-orbit-family",
            ComponentKind::ThickOrbitFamily => "thick-orbit-family",
            ComponentKind::FixedLocusFamily => "fixed-locus-family",
        }
    }
}

/// One piece of a fixed subscheme, supported on a single fixed point,
/// orbit, or fixed component of `f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Piece {
    Reduced {
        point: String,
    },
    Monomial {
        point: String,
        partition: Vec<u32>,
    },
    Curvilinear {
        point: String,
        length: u32,
        family: CurvilinearFamily,
    },
    /// `orbits` distinct orbits of period `period`, each carrying a thick
    /// point of length `thickness` (1 = reduced). `moving` orbits vary in
    /// a family over `S`.
    Orbit {
        orbit: String,
        period: u32,
        thickness: u32,
        moving: bool,
    },
    /// A length-`length` subscheme of a pointwise fixed component.
    FixedLocus {
        label: String,
        length: u32,
        component_dimension: u32,
    },
}

impl Piece {
    pub fn length(&self) -> u32 {
        match self {
            Piece::Reduced { .. } => 1,
            Piece::Monomial { partition, .. } => partition.iter().sum(),
            Piece::Curvilinear { length, .. } => *length,
            Piece::Orbit { period, thickness, .. } => period * thickness,
            Piece::FixedLocus { length, .. } => *length,
        }
    }

    pub fn dimension(&self) -> u32 {
        match self {
            Piece::Reduced { .. } | Piece::Monomial { .. } => 0,
            Piece::Curvilinear { family, .. } => family.dimension,
            Piece::Orbit {
                thickness, moving, ..
            } => {
                if *moving {
                    thickness + 1
                } else {
                    thickness - 1
                }
            }
            Piece::FixedLocus {
                length,
                component_dimension,
                ..
            } => length * component_dimension,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedComponent {
    pub kind: ComponentKind,
    pub pieces: Vec<Piece>,
    pub length: u32,
    /// Dimension of the stratum; 0 for isolated points.
    pub dimension: u32,
    /// For 0-dimensional components: whether `1` is a tangent weight.
    pub degenerate: Option<bool>,
    /// For 0-dimensional components: `dim ker(T f^[n] − id)`.
    pub fixed_subspace_dim: Option<usize>,
    /// Tangent weights, when every piece has known local data.
    pub weights: Option<Vec<RootOfUnity>>,
    /// Euler characteristic of the stratum when determined by the pieces.
    pub stratum_euler: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitEuler {
    pub period: u32,
    pub euler: i64,
}

/// Independent Euler characteristic of `Fix(f^[n])` and its comparison
/// with the Lefschetz number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerReconciliation {
    /// `χ(O_k)` for `k ≤ n`; `k = 1` comes from the local datum, `k ≥ 2`
    /// from Lefschetz numbers of iterates of `f` on `S`.
    pub orbit_spaces: Vec<OrbitEuler>,
    pub total: i64,
    /// `total − isolated_nondegenerate_count`: the share carried by
    /// degenerate and positive-dimensional components.
    pub remainder: i64,
    pub agrees_with_lefschetz: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotedComparison {
    pub value: i64,
    pub what: String,
    pub computed_isolated: u64,
    pub computed_lefschetz: i64,
    pub discrepancy: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedLocusReport {
    pub n: u32,
    pub components: Vec<FixedComponent>,
    pub counts: BTreeMap<&'static str, usize>,
    pub isolated_nondegenerate_count: u64,
    pub isolated_degenerate_count: u64,
    pub positive_dimensional_count: u64,
    pub lefschetz: i64,
    pub euler: EulerReconciliation,
    /// `isolated_nondegenerate_count == lefschetz` and every component is
    /// isolated and nondegenerate.
    pub only_isolated_nondegenerate: bool,
    pub quoted: Vec<QuotedComparison>,
    pub notes: Vec<String>,
}

/// Choice made at one support site.
#[derive(Clone)]
struct Choice {
    pieces: Vec<Piece>,
    length: u32,
    /// Tangent weights, `None` when unknown.
    weights: Option<Vec<RootOfUnity>>,
    /// Known part of the fixed subspace when weights are unknown.
    extra_fixed: usize,
}

fn site_choices(
    datum: &LocalFixedDatum,
    n: u32,
    cache: &mut HashMap<Vec<u32>, BTreeMap<(i64, i64), usize>>,
) -> Vec<Vec<Choice>> {
    let mut sites = Vec::new();
    for p in &datum.isolated_points {
        let mut opts = vec![Choice {
            pieces: vec![Piece::Reduced {
                point: p.label.clone(),
            }],
            length: 1,
            weights: Some(vec![p.eps[0], p.eps[1]]),
            extra_fixed: 0,
        }];
        for l in 2..=n {
            for parts in partitions(l) {
                let exps = cache
                    .entry(parts.clone())
                    .or_insert_with(|| hom_exponents(&diagram(&parts).expect("valid partition")));
                let w = tangent::report_from_exponents(&parts, p.eps, exps).weights;
                opts.push(Choice {
                    pieces: vec![Piece::Monomial {
                        point: p.label.clone(),
                        partition: parts,
                    }],
                    length: l,
                    weights: Some(w),
                    extra_fixed: 0,
                });
            }
            for family in curvilinear_families(l, p.eps) {
                opts.push(Choice {
                    pieces: vec![Piece::Curvilinear {
                        point: p.label.clone(),
                        length: l,
                        family,
                    }],
                    length: l,
                    weights: None,
                    extra_fixed: 0,
                });
            }
        }
        sites.push(opts);
    }
    for o in &datum.periodic_orbits {
        let k = o.period;
        let mut opts = Vec::new();
        if o.isolated {
            for l in 1..=n / k {
                opts.push(Choice {
                    pieces: vec![Piece::Orbit {
                        orbit: o.label.clone(),
                        period: k,
                        thickness: l,
                        moving: false,
                    }],
                    length: k * l,
                    weights: None,
                    extra_fixed: 2,
                });
            }
        } else {
            for s in 1..=n / k {
                for thick in partitions(s) {
                    opts.push(Choice {
                        pieces: thick
                            .iter()
                            .map(|&l| Piece::Orbit {
                                orbit: o.label.clone(),
                                period: k,
                                thickness: l,
                                moving: true,
                            })
                            .collect(),
                        length: k * s,
                        weights: None,
                        extra_fixed: 0,
                    });
                }
            }
        }
        sites.push(opts);
    }
    for c in &datum.fixed_curves {
        sites.push(
            (1..=n)
                .map(|l| Choice {
                    pieces: vec![Piece::FixedLocus {
                        label: c.label.clone(),
                        length: l,
                        component_dimension: c.dimension,
                    }],
                    length: l,
                    weights: None,
                    extra_fixed: 0,
                })
                .collect(),
        );
    }
    sites
}

fn assemble(sites: &[Vec<Choice>], n: u32) -> Vec<Vec<&Choice>> {
    fn go<'a>(
        sites: &'a [Vec<Choice>],
        i: usize,
        remaining: u32,
        cur: &mut Vec<&'a Choice>,
        out: &mut Vec<Vec<&'a Choice>>,
    ) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        if i == sites.len() {
            return;
        }
        go(sites, i + 1, remaining, cur, out);
        for c in &sites[i] {
            if c.length <= remaining {
                cur.push(c);
                go(sites, i + 1, remaining - c.length, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(sites, 0, n, &mut Vec::new(), &mut out);
    out
}

fn classify(pieces: &[Piece]) -> ComponentKind {
    let any = |f: fn(&Piece) -> bool| pieces.iter().any(f);
    if any(|p| matches!(p, Piece::FixedLocus { .. })) {
        ComponentKind::FixedLocusFamily
    } else if any(|p| matches!(p, Piece::Orbit { thickness, .. } if *thickness >= 2)) {
        ComponentKind::ThickOrbitFamily
    } else if any(|p| matches!(p, Piece::Orbit { .. })) {
        ComponentKind::PeriodicOrbitFamily
    } else if any(|p| matches!(p, Piece::Curvilinear { .. })) {
        ComponentKind::CurvilinearFamily
    } else if any(|p| matches!(p, Piece::Monomial { .. })) {
        ComponentKind::MonomialThick
    } else {
        ComponentKind::ReducedAssembly
    }
}

fn build_component(choices: &[&Choice]) -> FixedComponent {
    let pieces: Vec<Piece> = choices.iter().flat_map(|c| c.pieces.iter().cloned()).collect();
    let length = choices.iter().map(|c| c.length).sum();
    let dimension = pieces.iter().map(Piece::dimension).sum();
    let kind = classify(&pieces);
    let mut component = FixedComponent {
        kind,
        pieces,
        length,
        dimension,
        degenerate: None,
        fixed_subspace_dim: None,
        weights: None,
        stratum_euler: None,
    };
    if dimension == 0 {
        let known: Option<Vec<RootOfUnity>> = choices
            .iter()
            .try_fold(Vec::new(), |mut acc, c| {
                acc.extend(c.weights.as_ref()?);
                Some(acc)
            })
            .map(|mut w| {
                w.sort();
                w
            });
        let fixed = choices
            .iter()
            .map(|c| match &c.weights {
                Some(w) => w.iter().filter(|x| x.is_one()).count(),
                None => c.extra_fixed,
            })
            .sum::<usize>();
        component.degenerate = Some(fixed > 0);
        component.fixed_subspace_dim = Some(fixed);
        component.weights = known;
        component.stratum_euler = Some(1);
    } else if kind == ComponentKind::CurvilinearFamily {
        // the open curvilinear locus is swept out by free C*-actions
        component.stratum_euler = Some(0);
    }
    component
}

fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn euler_reconciliation(
    spec: &AutomorphismSpec,
    datum: &LocalFixedDatum,
    n: u32,
) -> Result<(Vec<OrbitEuler>, i64)> {
    let mut orbit_spaces = Vec::new();
    let one_fixed =
        datum.isolated_points.len() as i64 + datum.fixed_curves.iter().map(|c| c.euler).sum::<i64>();
    orbit_spaces.push(OrbitEuler {
        period: 1,
        euler: one_fixed,
    });
    for k in 2..=n {
        let mut sum = 0i64;
        for d in (1..=k).filter(|d| k % d == 0) {
            let l = lefschetz_of_iterate(spec, d);
            let l = l
                .as_i64()
                .ok_or_else(|| Error::NotIntegral(format!("L(f^{d}) = {l}")))?;
            sum += mobius(k / d) * l;
        }
        if sum % k as i64 != 0 {
            return Err(Error::NotIntegral(format!(
                "Euler characteristic of points of exact period {k} is {sum}, not divisible by {k}"
            )));
        }
        orbit_spaces.push(OrbitEuler {
            period: k,
            euler: sum / k as i64,
        });
    }
    let mut s = TruncatedSeries::one(&[(Var::Q, n)])?;
    let minus_one = rational_int(-1);
    let one = rational_int(1);
    for o in &orbit_spaces {
        for m in 1..=n / o.period {
            let mono = [o.period * m];
            for _ in 0..o.euler.unsigned_abs() {
                if o.euler > 0 {
                    s.div_binomial(&one, &mono)?;
                } else {
                    s.mul_binomial(&minus_one, &mono);
                }
            }
        }
    }
    let total = s.coeff(&[n]);
    let total = total
        .to_integer()
        .try_into()
        .map_err(|_| Error::NotIntegral(total.to_string()))?;
    Ok((orbit_spaces, total))
}

/// Enumerates the fixed components of `f^[n]` with `n ≤ DEFAULT_MAX_N`.
pub fn enumerate_fixed_components(
    datum: &LocalFixedDatum,
    spec: &AutomorphismSpec,
    n: u32,
) -> Result<FixedLocusReport> {
    enumerate_fixed_components_bounded(datum, spec, n, DEFAULT_MAX_N)
}

pub fn enumerate_fixed_components_bounded(
    datum: &LocalFixedDatum,
    spec: &AutomorphismSpec,
    n: u32,
    max_n: u32,
) -> Result<FixedLocusReport> {
    if n > max_n {
        return Err(Error::BoundExceeded {
            what: "n",
            value: n as u128,
            limit: max_n as u128,
        });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if spec.order == Order::Infinite {
        return Err(Error::InfiniteOrder("fixed-point enumeration"));
    }
    let violations = validate_datum(datum, spec);
    if !violations.is_empty() {
        let msg = violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
        return Err(Error::OrderMismatch(msg));
    }

    let mut cache = HashMap::new();
    let sites = site_choices(datum, n, &mut cache);
    let mut components: Vec<FixedComponent> = assemble(&sites, n).iter().map(|a| build_component(a)).collect();
    for c in &mut components {
        c.pieces.sort();
    }
    components.sort_by(|a, b| (a.kind, &a.pieces).cmp(&(b.kind, &b.pieces)));

    let mut counts = BTreeMap::new();
    for c in &components {
        *counts.entry(c.kind.name()).or_insert(0) += 1;
    }
    let isolated_nondegenerate_count =
        components.iter().filter(|c| c.dimension == 0 && c.degenerate == Some(false)).count() as u64;
    let isolated_degenerate_count =
        components.iter().filter(|c| c.dimension == 0 && c.degenerate == Some(true)).count() as u64;
    let positive_dimensional_count = components.iter().filter(|c| c.dimension > 0).count() as u64;

    let lefschetz = lefschetz_number(spec, n)?;
    let (orbit_spaces, total) = euler_reconciliation(spec, datum, n)?;
    let euler = EulerReconciliation {
        orbit_spaces,
        total,
        remainder: total - isolated_nondegenerate_count as i64,
        agrees_with_lefschetz: total == lefschetz,
    };
    let only_isolated_nondegenerate = isolated_degenerate_count == 0 && positive_dimensional_count == 0;

    let quoted = datum
        .quoted
        .iter()
        .filter(|q| q.n == n)
        .map(|q| QuotedComparison {
            value: q.value,
            what: q.what.clone(),
            computed_isolated: isolated_nondegenerate_count,
            computed_lefschetz: lefschetz,
            discrepancy: q.value != isolated_nondegenerate_count as i64,
        })
        .collect();

    let mut notes = datum.notes.clone();
    if n >= 4 && !datum.isolated_points.is_empty() {
        notes.push(
            "thick points of length ≥ 4 at a fixed point can be neither monomial nor curvilinear; such strata are not listed"
                .into(),
        );
    }
    if isolated_degenerate_count > 0 {
        notes.push("degenerate 0-dimensional components may lie on positive-dimensional fixed components; this is not decided here".into());
    }
    if components.iter().any(|c| {
        c.pieces
            .iter()
            .any(|p| matches!(p, Piece::Curvilinear { family, .. } if family.axis == Axis::Pencil))
    }) {
        notes.push("a pencil family is the P¹ of length-two subschemes at a point minus its two monomial endpoints, which are listed separately".into());
    }

    Ok(FixedLocusReport {
        n,
        components,
        counts,
        isolated_nondegenerate_count,
        isolated_degenerate_count,
        positive_dimensional_count,
        lefschetz,
        euler,
        only_isolated_nondegenerate,
        quoted,
        notes,
    })
}
