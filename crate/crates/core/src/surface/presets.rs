use crate::algebra::{CyclotomicNumber, GradedEigenvalues, RootOfUnity};
use crate::error::{Error, Result};
use crate::hodge::{HodgeRow, HodgeTable};

use super::{
    AutomorphismSpec, FixedCurve, FixedPoint, LocalFixedDatum, Order, PeriodicOrbit, QuotedCount, Spectrum, SurfaceSpec,
};

pub const PRESET_NAMES: [&str; 6] = [
    "k3-identity",
    "k3-symplectic-3",
    "k3-symplectic-5",
    "k3-symplectic-7",
    "torus-involution",
    "torus-identity",
];

fn k3() -> SurfaceSpec {
    let mut s = SurfaceSpec::new("K3", [1, 0, 22, 0, 1]);
    s.hodge_rows.insert("trivial".into(), HodgeRow::new(1, 0, 1));
    s.hodge_rows.insert("canonical-dual".into(), HodgeRow::new(1, 0, 1));
    s.hodge_tables.insert("trivial".into(), HodgeTable([[1, 0, 1], [0, 20, 0], [1, 0, 1]]));
    s
}

fn torus() -> SurfaceSpec {
    let mut s = SurfaceSpec::new("complex torus", [1, 4, 6, 4, 1]);
    s.hodge_rows.insert("trivial".into(), HodgeRow::new(1, 2, 1));
    s.hodge_rows.insert("canonical-dual".into(), HodgeRow::new(1, 2, 1));
    s.hodge_tables.insert("trivial".into(), HodgeTable([[1, 2, 1], [2, 4, 2], [1, 2, 1]]));
    s
}

fn whole_surface(surface: &SurfaceSpec) -> LocalFixedDatum {
    LocalFixedDatum {
        fixed_curves: vec![FixedCurve {
            label: "S".into(),
            euler: surface.euler_characteristic(),
            dimension: 2,
        }],
        ..LocalFixedDatum::default()
    }
}

/// `(a_p, b_p, m_p)`: multiplicity of `1` and of each primitive `ζ_p^i` on
/// `H²`, and the number of fixed points.
fn symplectic_data(p: u32) -> (usize, usize, usize) {
    match p {
        3 => (10, 6, 6),
        5 => (6, 4, 4),
        7 => (4, 3, 3),
        _ => unreachable!("only p = 3, 5, 7 are shipped"),
    }
}

fn quoted(n: u32, value: i64) -> QuotedCount {
    QuotedCount {
        n,
        value,
        what: "isolated fixed points".into(),
    }
}

fn k3_symplectic(p: u32) -> (AutomorphismSpec, LocalFixedDatum) {
    let (a, b, m) = symplectic_data(p);
    let one = CyclotomicNumber::one();
    let mut h2 = vec![one.clone(); a];
    for i in 1..p {
        h2.extend(std::iter::repeat_n(CyclotomicNumber::root_of_unity(i as i64, p), b));
    }
    let spec = AutomorphismSpec {
        surface: k3(),
        order: Order::Finite(p),
        spectrum: Spectrum::Exact(GradedEigenvalues::new(vec![vec![one.clone()], vec![], h2, vec![], vec![one]])),
        symplectic: true,
    };
    let zeta = RootOfUnity::new(1, p);
    let datum = LocalFixedDatum {
        isolated_points: (1..=m)
            .map(|i| FixedPoint {
                label: format!("P{i}"),
                eps: [zeta, zeta.inv()],
            })
            .collect(),
        periodic_orbits: vec![PeriodicOrbit {
            label: "free orbits".into(),
            period: p,
            isolated: false,
        }],
        quoted: match p {
            3 => vec![quoted(2, 27)],
            5 => vec![quoted(2, 14), quoted(3, 36)],
            _ => vec![quoted(2, 9)],
        },
        notes: vec![format!(
            "every fixed point is assigned the local pair (ζ_{p}, ζ_{p}^-1); the actual distribution of local types is not known"
        )],
        ..LocalFixedDatum::default()
    };
    (spec, datum)
}

fn torus_involution() -> (AutomorphismSpec, LocalFixedDatum) {
    let one = CyclotomicNumber::one;
    let minus = || CyclotomicNumber::from_integer(-1);
    let spec = AutomorphismSpec {
        surface: torus(),
        order: Order::Finite(2),
        spectrum: Spectrum::Exact(GradedEigenvalues::new(vec![
            vec![one()],
            vec![minus(); 4],
            vec![one(); 6],
            vec![minus(); 4],
            vec![one()],
        ])),
        symplectic: true,
    };
    let m1 = RootOfUnity::new(1, 2);
    let datum = LocalFixedDatum {
        isolated_points: (1..=16)
            .map(|i| FixedPoint {
                label: format!("T{i}"),
                eps: [m1, m1],
            })
            .collect(),
        periodic_orbits: vec![PeriodicOrbit {
            label: "{x, -x}".into(),
            period: 2,
            isolated: false,
        }],
        quoted: vec![quoted(2, 120)],
        ..LocalFixedDatum::default()
    };
    (spec, datum)
}

/// One of the shipped example automorphisms, see [`PRESET_NAMES`].
pub fn preset(name: &str) -> Result<(AutomorphismSpec, LocalFixedDatum)> {
    match name {
        "k3-identity" => {
            let spec = AutomorphismSpec::identity(k3());
            let datum = whole_surface(&spec.surface);
            Ok((spec, datum))
        }
        "torus-identity" => {
            let spec = AutomorphismSpec::identity(torus());
            let datum = whole_surface(&spec.surface);
            Ok((spec, datum))
        }
        "k3-symplectic-3" => Ok(k3_symplectic(3)),
        "k3-symplectic-5" => Ok(k3_symplectic(5)),
        "k3-symplectic-7" => Ok(k3_symplectic(7)),
        "torus-involution" => Ok(torus_involution()),
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}
