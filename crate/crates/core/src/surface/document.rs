//! JSON input documents.
//!
//! ```json
//! {
//!   "surface": { "name": "K3", "betti": [1, 0, 22, 0, 1],
//!                "hodge_row": { "trivial": [1, 0, 1] } },
//!   "automorphism": { "order": 3,
//!                     "spectrum": { "0": [[0, 1]], "2": [{ "root": [1, 3], "mult": 6 }, ...] } },
//!   "fixed_data": { "isolated": [{ "eps1": [1, 3], "eps2": [2, 3] }],
//!                   "orbits": [{ "period": 2, "isolated": false }] }
//! }
//! ```
//!
//! or `{ "preset": "k3-symplectic-3" }`, optionally with a `fixed_data`
//! override. A spectrum entry `[k, m]` made of two JSON integers is
//! `e^{2πik/m}`; any other pair of numbers is a complex float `[re, im]`.
//! A document carrying a top-level `request` object is read through its
//! `request.input` field, so CLI output can be fed back as input.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::algebra::{CyclotomicNumber, GradedEigenvalues, Rational, RootOfUnity};
use crate::error::{Error, Result};
use crate::hodge::{HodgeRow, HodgeTable};

use super::{
    preset, AutomorphismSpec, FixedCurve, FixedPoint, LocalFixedDatum, Order, PeriodicOrbit, Spectrum,
    SurfaceSpec,
};

/// A parsed input document.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDocument {
    pub preset: Option<String>,
    pub spec: AutomorphismSpec,
    pub datum: LocalFixedDatum,
}

fn err(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        message: message.into(),
    }
}

fn as_object<'a>(v: &'a Value, field: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(field, "expected an object"))
}

fn as_array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(field, "expected an array"))
}

fn as_u64(v: &Value, field: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| err(field, "expected a non-negative integer"))
}

fn as_u32(v: &Value, field: &str) -> Result<u32> {
    u32::try_from(as_u64(v, field)?).map_err(|_| err(field, "integer out of range"))
}

fn root_pair(v: &Value, field: &str) -> Result<RootOfUnity> {
    let a = as_array(v, field)?;
    match a.as_slice() {
        [k, m] => {
            let k = k.as_i64().ok_or_else(|| err(field, "k must be an integer"))?;
            let m = as_u32(m, field)?;
            if m == 0 {
                return Err(err(field, "m must be positive"));
            }
            Ok(RootOfUnity::new(k, m))
        }
        _ => Err(err(field, "expected [k, m]")),
    }
}

fn opt_label(obj: &Map<String, Value>, field: &str, default: String) -> Result<String> {
    match obj.get("label") {
        None => Ok(default),
        Some(Value::String(s)) => Ok(s.clone()),
        Some(_) => Err(err(format!("{field}.label"), "expected a string")),
    }
}

/// Parses a JSON input document.
pub fn parse_document(text: &str) -> Result<InputDocument> {
    let v: Value = serde_json::from_str(text).map_err(|e| err("<document>", e.to_string()))?;
    parse_value(&v)
}

/// Parses an already-decoded JSON input document.
pub fn parse_value(v: &Value) -> Result<InputDocument> {
    let top = as_object(v, "<document>")?;
    if let Some(req) = top.get("request") {
        let input = as_object(req, "request")?
            .get("input")
            .ok_or_else(|| err("request.input", "missing"))?;
        return parse_value(input);
    }
    if let Some(name) = top.get("preset") {
        let name = name.as_str().ok_or_else(|| err("preset", "expected a string"))?;
        for key in ["surface", "automorphism"] {
            if top.contains_key(key) {
                return Err(err(key, "cannot be combined with `preset`"));
            }
        }
        let (spec, mut datum) = preset(name).map_err(|e| err("preset", e.to_string()))?;
        if let Some(fd) = top.get("fixed_data") {
            datum = parse_fixed_data(fd)?;
        }
        return Ok(InputDocument {
            preset: Some(name.to_string()),
            spec,
            datum,
        });
    }
    let surface = parse_surface(top.get("surface").ok_or_else(|| err("surface", "missing"))?)?;
    let spec = parse_automorphism(
        top.get("automorphism").ok_or_else(|| err("automorphism", "missing"))?,
        surface,
    )?;
    let datum = match top.get("fixed_data") {
        Some(fd) => parse_fixed_data(fd)?,
        None => LocalFixedDatum::default(),
    };
    Ok(InputDocument {
        preset: None,
        spec,
        datum,
    })
}

fn parse_surface(v: &Value) -> Result<SurfaceSpec> {
    let obj = as_object(v, "surface")?;
    let name = match obj.get("name") {
        None => "S".to_string(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(err("surface.name", "expected a string")),
    };
    let betti_v = as_array(obj.get("betti").ok_or_else(|| err("surface.betti", "missing"))?, "surface.betti")?;
    if betti_v.len() != 5 {
        return Err(err("surface.betti", format!("expected 5 entries, found {}", betti_v.len())));
    }
    let mut betti = [0u32; 5];
    for (i, b) in betti_v.iter().enumerate() {
        betti[i] = as_u32(b, &format!("surface.betti[{i}]"))?;
    }
    let mut s = SurfaceSpec::new(name, betti);
    if let Some(rows) = obj.get("hodge_row") {
        for (label, r) in as_object(rows, "surface.hodge_row")? {
            let field = format!("surface.hodge_row.{label}");
            let a = as_array(r, &field)?;
            if a.len() != 3 {
                return Err(err(field, "expected [h00, h10, h20]"));
            }
            let row = HodgeRow::new(as_u64(&a[0], &field)?, as_u64(&a[1], &field)?, as_u64(&a[2], &field)?);
            s.hodge_rows.insert(label.clone(), row);
        }
    }
    if let Some(tables) = obj.get("hodge_table") {
        for (label, t) in as_object(tables, "surface.hodge_table")? {
            let field = format!("surface.hodge_table.{label}");
            let table: [[u64; 3]; 3] =
                serde_json::from_value(t.clone()).map_err(|e| err(&field, e.to_string()))?;
            s.hodge_tables.insert(label.clone(), HodgeTable(table));
        }
    }
    Ok(s)
}

enum Entry {
    Exact(CyclotomicNumber),
    Float(Complex64),
}

fn parse_cyclotomic(v: &Value, field: &str) -> Result<CyclotomicNumber> {
    let obj = as_object(v, field)?;
    let m = as_u32(obj.get("conductor").ok_or_else(|| err(field, "missing conductor"))?, field)?;
    if m == 0 {
        return Err(err(field, "conductor must be positive"));
    }
    let coeffs = as_array(obj.get("coeffs").ok_or_else(|| err(field, "missing coeffs"))?, field)?;
    let raw: Vec<Rational> = coeffs
        .iter()
        .map(|c| {
            c.as_str()
                .and_then(|s| s.parse::<Rational>().ok())
                .or_else(|| c.as_i64().map(|i| Rational::from_integer(i.into())))
                .ok_or_else(|| err(field, "coefficients must be integers or \"p/q\" strings"))
        })
        .collect::<Result<_>>()?;
    CyclotomicNumber::normalize(m, &raw).map_err(|e| err(field, e.to_string()))
}

fn parse_entry(v: &Value, field: &str) -> Result<(Entry, usize)> {
    match v {
        Value::Array(a) if a.len() == 2 => {
            if a.iter().all(|x| x.is_i64() || x.is_u64()) {
                Ok((Entry::Exact(root_pair(v, field)?.to_cyclotomic()), 1))
            } else {
                let re = a[0].as_f64().ok_or_else(|| err(field, "expected numbers"))?;
                let im = a[1].as_f64().ok_or_else(|| err(field, "expected numbers"))?;
                Ok((Entry::Float(Complex64::new(re, im)), 1))
            }
        }
        Value::Object(obj) => {
            let mult = match obj.get("mult") {
                Some(m) => as_u64(m, &format!("{field}.mult"))? as usize,
                None => 1,
            };
            let entry = if let Some(r) = obj.get("root") {
                Entry::Exact(root_pair(r, &format!("{field}.root"))?.to_cyclotomic())
            } else if let Some(c) = obj.get("cyclotomic") {
                Entry::Exact(parse_cyclotomic(c, &format!("{field}.cyclotomic"))?)
            } else if let Some(z) = obj.get("complex") {
                let pair: [f64; 2] =
                    serde_json::from_value(z.clone()).map_err(|e| err(format!("{field}.complex"), e.to_string()))?;
                Entry::Float(Complex64::new(pair[0], pair[1]))
            } else {
                return Err(err(field, "expected one of `root`, `cyclotomic`, `complex`"));
            };
            Ok((entry, mult))
        }
        _ => Err(err(field, "expected [k, m], [re, im] or an object")),
    }
}

fn parse_automorphism(v: &Value, surface: SurfaceSpec) -> Result<AutomorphismSpec> {
    let obj = as_object(v, "automorphism")?;
    let order = match obj.get("order") {
        Some(Value::String(s)) if s == "infinite" => Order::Infinite,
        Some(Value::Null) => Order::Infinite,
        Some(o) => {
            let m = as_u32(o, "automorphism.order")?;
            if m == 0 {
                return Err(err("automorphism.order", "must be positive"));
            }
            Order::Finite(m)
        }
        None => return Err(err("automorphism.order", "missing (use an integer or \"infinite\")")),
    };
    let symplectic = match obj.get("symplectic") {
        None => false,
        Some(b) => b.as_bool().ok_or_else(|| err("automorphism.symplectic", "expected a boolean"))?,
    };
    let spec_obj = as_object(
        obj.get("spectrum").ok_or_else(|| err("automorphism.spectrum", "missing"))?,
        "automorphism.spectrum",
    )?;
    let mut exact: Vec<Vec<CyclotomicNumber>> = vec![Vec::new(); 5];
    let mut float: Vec<Vec<Complex64>> = vec![Vec::new(); 5];
    let mut kinds = (false, false);
    for (key, list) in spec_obj {
        let field = format!("automorphism.spectrum.{key}");
        let degree: usize = key
            .parse()
            .ok()
            .filter(|d| *d <= 4)
            .ok_or_else(|| err(&field, "degree must be 0..4"))?;
        for (i, e) in as_array(list, &field)?.iter().enumerate() {
            let f = format!("{field}[{i}]");
            match parse_entry(e, &f)? {
                (Entry::Exact(c), mult) => {
                    kinds.0 = true;
                    exact[degree].extend(std::iter::repeat_n(c, mult));
                }
                (Entry::Float(z), mult) => {
                    kinds.1 = true;
                    float[degree].extend(std::iter::repeat_n(z, mult));
                }
            }
            if kinds.0 && kinds.1 {
                return Err(err(f, "exact and floating eigenvalues cannot be mixed"));
            }
        }
    }
    let spectrum = if kinds.1 {
        Spectrum::Float(GradedEigenvalues::new(float))
    } else {
        Spectrum::Exact(GradedEigenvalues::new(exact))
    };
    Ok(AutomorphismSpec {
        surface,
        order,
        spectrum,
        symplectic,
    })
}

fn parse_fixed_data(v: &Value) -> Result<LocalFixedDatum> {
    let obj = as_object(v, "fixed_data")?;
    let mut datum = LocalFixedDatum::default();
    if let Some(list) = obj.get("isolated") {
        for (i, p) in as_array(list, "fixed_data.isolated")?.iter().enumerate() {
            let field = format!("fixed_data.isolated[{i}]");
            let o = as_object(p, &field)?;
            let eps1 = root_pair(o.get("eps1").ok_or_else(|| err(&field, "missing eps1"))?, &format!("{field}.eps1"))?;
            let eps2 = root_pair(o.get("eps2").ok_or_else(|| err(&field, "missing eps2"))?, &format!("{field}.eps2"))?;
            datum.isolated_points.push(FixedPoint {
                label: opt_label(o, &field, format!("P{}", i + 1))?,
                eps: [eps1, eps2],
            });
        }
    }
    if let Some(list) = obj.get("orbits") {
        for (i, p) in as_array(list, "fixed_data.orbits")?.iter().enumerate() {
            let field = format!("fixed_data.orbits[{i}]");
            let o = as_object(p, &field)?;
            let period = as_u32(o.get("period").ok_or_else(|| err(&field, "missing period"))?, &format!("{field}.period"))?;
            let isolated = match o.get("isolated") {
                None => false,
                Some(b) => b.as_bool().ok_or_else(|| err(format!("{field}.isolated"), "expected a boolean"))?,
            };
            datum.periodic_orbits.push(PeriodicOrbit {
                label: opt_label(o, &field, format!("O{}", i + 1))?,
                period,
                isolated,
            });
        }
    }
    if let Some(list) = obj.get("curves") {
        for (i, p) in as_array(list, "fixed_data.curves")?.iter().enumerate() {
            let field = format!("fixed_data.curves[{i}]");
            let o = as_object(p, &field)?;
            let euler = o
                .get("euler")
                .and_then(Value::as_i64)
                .ok_or_else(|| err(format!("{field}.euler"), "expected an integer"))?;
            let dimension = match o.get("dimension") {
                None => 1,
                Some(d) => as_u32(d, &format!("{field}.dimension"))?,
            };
            datum.fixed_curves.push(FixedCurve {
                label: opt_label(o, &field, format!("C{}", i + 1))?,
                euler,
                dimension,
            });
        }
    }
    if let Some(list) = obj.get("quoted") {
        datum.quoted = serde_json::from_value(list.clone()).map_err(|e| err("fixed_data.quoted", e.to_string()))?;
    }
    if let Some(list) = obj.get("notes") {
        for (i, n) in as_array(list, "fixed_data.notes")?.iter().enumerate() {
            let s = n.as_str().ok_or_else(|| err(format!("fixed_data.notes[{i}]"), "expected a string"))?;
            datum.notes.push(s.to_string());
        }
    }
    Ok(datum)
}

fn cyclotomic_json(c: &CyclotomicNumber) -> Value {
    match c.as_root_of_unity() {
        Some(r) => json!({ "root": [r.numerator(), r.order()] }),
        None => json!({
            "cyclotomic": {
                "conductor": c.conductor(),
                "coeffs": c.coeffs().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            }
        }),
    }
}

fn with_mult(mut v: Value, mult: u32) -> Value {
    v["mult"] = json!(mult);
    v
}

/// Serializes a specification back into the explicit input format.
pub fn to_document(spec: &AutomorphismSpec, datum: &LocalFixedDatum) -> Value {
    let s = &spec.surface;
    let mut surface = json!({ "name": s.name, "betti": s.betti });
    if !s.hodge_rows.is_empty() {
        surface["hodge_row"] = json!(s.hodge_rows);
    }
    if !s.hodge_tables.is_empty() {
        surface["hodge_table"] = json!(s.hodge_tables);
    }
    let mut spectrum: BTreeMap<String, Vec<Value>> = BTreeMap::new();
    match &spec.spectrum {
        Spectrum::Exact(e) => {
            for (d, v, mult) in e.grouped() {
                spectrum.entry(d.to_string()).or_default().push(with_mult(cyclotomic_json(&v), mult));
            }
        }
        Spectrum::Float(e) => {
            for (d, v, mult) in e.grouped() {
                spectrum
                    .entry(d.to_string())
                    .or_default()
                    .push(json!({ "complex": [v.re, v.im], "mult": mult }));
            }
        }
    }
    let order = match spec.order {
        Order::Finite(m) => json!(m),
        Order::Infinite => json!("infinite"),
    };
    let isolated: Vec<Value> = datum
        .isolated_points
        .iter()
        .map(|p| {
            json!({
                "label": p.label,
                "eps1": [p.eps[0].numerator(), p.eps[0].order()],
                "eps2": [p.eps[1].numerator(), p.eps[1].order()],
            })
        })
        .collect();
    json!({
        "surface": surface,
        "automorphism": { "order": order, "symplectic": spec.symplectic, "spectrum": spectrum },
        "fixed_data": {
            "isolated": isolated,
            "orbits": datum.periodic_orbits,
            "curves": datum.fixed_curves,
            "quoted": datum.quoted,
            "notes": datum.notes,
        },
    })
}
