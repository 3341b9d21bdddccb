use std::fmt::{Display, Write as _};

use hilbaut::algebra::{Coefficient, GradedEigenvalues, ScalarKind, TruncatedSeries, Var};
use hilbaut::fixed::{enumerate_fixed_components_bounded, FixedComponent};
use hilbaut::fock::{
    enumerate_basis, entropy, fock_trace_series, induced_spectral_radius, lefschetz_number, poincare_series,
    DegreeMode, FockTraceOptions,
};
use hilbaut::hodge::{aut_dimension, conjectural_hodge_series, h_top_minus_one, hodge_p0_series, HodgeRow};
use hilbaut::surface::{datum_warnings, InputDocument, Spectrum};
use hilbaut::Error;
use serde_json::{json, Value};

use crate::{Command, Failure, Options};

pub const DEFAULT_MAX_WEIGHT: u32 = 4;
pub const DEFAULT_SPECTRUM_BOUND: u64 = 200_000;
/// Largest `n` enumerated by `fixed-points` without `--bound`; the torus
/// involution already has over 10^5 components at `n = 6`.
pub const DEFAULT_FIXED_MAX_N: u32 = 4;

/// What a subcommand produced, before formatting.
pub struct Output {
    pub results: Value,
    pub text: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub provenance: Vec<String>,
    pub warnings: Vec<String>,
}

impl Output {
    fn new(results: Value, text: String, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Output {
            results,
            text,
            header,
            rows,
            provenance: Vec::new(),
            warnings: Vec::new(),
        }
    }
}

pub fn split(c: &Command) -> (&'static str, &Options) {
    match c {
        Command::Lefschetz(o) => ("lefschetz", o),
        Command::TraceSeries(o) => ("trace-series", o),
        Command::Poincare(o) => ("poincare", o),
        Command::Hodge(o) => ("hodge", o),
        Command::AutDim(o) => ("aut-dim", o),
        Command::Conjecture(o) => ("conjecture", o),
        Command::FixedPoints(o) => ("fixed-points", o),
        Command::Spectrum(o) => ("spectrum", o),
        Command::Entropy(o) => ("entropy", o),
    }
}

/// Flags each subcommand reads besides `--preset`, `--input` and `--format`.
fn accepted(name: &str) -> &'static [&'static str] {
    match name {
        "trace-series" => &["n", "max-weight", "degree-mode", "t"],
        "hodge" | "aut-dim" => &["n", "row"],
        "conjecture" => &["n", "table"],
        "fixed-points" | "spectrum" => &["n", "bound"],
        _ => &["n"],
    }
}

pub fn check_flags(name: &str, o: &Options) -> Result<(), Failure> {
    let given = [
        ("n", o.n.is_some()),
        ("max-weight", o.max_weight.is_some()),
        ("degree-mode", o.degree_mode.is_some()),
        ("t", o.t.is_some()),
        ("row", o.row.is_some()),
        ("table", o.table.is_some()),
        ("bound", o.bound.is_some()),
    ];
    let ok = accepted(name);
    for (flag, set) in given {
        if set && !ok.contains(&flag) {
            return Err(Failure::usage(format!("--{flag} does not apply to `{name}`")));
        }
    }
    if name != "trace-series" && o.n.is_none() {
        return Err(Failure::usage(format!("--n is required for `{name}`")));
    }
    Ok(())
}

pub fn degree_mode(o: &Options) -> DegreeMode {
    o.degree_mode.map(Into::into).unwrap_or_default()
}

pub fn max_weight(o: &Options) -> u32 {
    o.max_weight.unwrap_or_else(|| o.n.unwrap_or(DEFAULT_MAX_WEIGHT).max(DEFAULT_MAX_WEIGHT))
}

/// `{exact, float: [re, im]}`; `exact` is null for floating input.
pub fn scalar_json<C: Coefficient + Display>(c: &C) -> Value {
    let z = c.to_complex();
    json!({ "exact": exact(c), "float": [z.re, z.im] })
}

fn exact<C: Coefficient + Display>(c: &C) -> Option<String> {
    (C::KIND != ScalarKind::ComplexFloat).then(|| c.to_string())
}

fn scalar_cells<C: Coefficient + Display>(c: &C) -> [String; 3] {
    let z = c.to_complex();
    [exact(c).unwrap_or_default(), z.re.to_string(), z.im.to_string()]
}

fn int(c: &impl Display) -> String {
    c.to_string()
}

pub fn dispatch(name: &str, o: &Options, input: &InputDocument) -> Result<Output, Failure> {
    let mut out = match name {
        "lefschetz" => lefschetz(o, input)?,
        "trace-series" => match &input.spec.spectrum {
            Spectrum::Exact(e) => trace_series(e, o)?,
            Spectrum::Float(e) => trace_series(e, o)?,
        },
        "poincare" => poincare(o, input)?,
        "hodge" => hodge(o, input)?,
        "aut-dim" => aut_dim(o, input)?,
        "conjecture" => conjecture(o, input)?,
        "fixed-points" => fixed_points(o, input)?,
        "spectrum" => match &input.spec.spectrum {
            Spectrum::Exact(e) => spectrum(e, o)?,
            Spectrum::Float(e) => spectrum(e, o)?,
        },
        "entropy" => entropy_cmd(o, input)?,
        _ => unreachable!("clap restricts subcommands"),
    };
    if name == "fixed-points" {
        out.warnings.extend(datum_warnings(&input.datum, &input.spec));
    } else {
        out.provenance.extend(input.datum.notes.iter().cloned());
    }
    Ok(out)
}

fn lefschetz(o: &Options, input: &InputDocument) -> Result<Output, Error> {
    let n = o.n.unwrap_or_default();
    let v = lefschetz_number(&input.spec, n)?;
    Ok(Output::new(
        json!({ "n": n, "lefschetz": v }),
        format!("{v}\n"),
        vec!["n", "lefschetz"],
        vec![vec![n.to_string(), v.to_string()]],
    ))
}

fn t_poly<C: Coefficient + Display>(s: &TruncatedSeries<C>) -> String {
    let terms: Vec<String> = s
        .terms()
        .map(|(e, c)| match e[0] {
            0 => format!("({c})"),
            1 => format!("({c}) t"),
            d => format!("({c}) t^{d}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn trace_series<C: Coefficient + Display>(e: &GradedEigenvalues<C>, o: &Options) -> Result<Output, Error> {
    let w = max_weight(o);
    let mode = degree_mode(o);
    let mut opt = FockTraceOptions::new(w).mode(mode);
    if let Some(t) = o.t {
        opt = opt.at_t(t);
    }
    let s = fock_trace_series(e, &opt)?;
    let weights: Vec<u32> = match o.n {
        Some(n) if n > w => {
            return Err(Error::TruncationTooSmall {
                max_weight: w,
                requested: n,
            })
        }
        Some(n) => vec![n],
        None => (0..=w).collect(),
    };
    let mut terms = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    for &k in &weights {
        let c = s.coefficient_of(Var::Q, k)?;
        if o.t.is_some() {
            let v = c.coeff(&[]);
            terms.push(json!({ "weight": k, "value": scalar_json(&v) }));
            let [ex, re, im] = scalar_cells(&v);
            rows.push(vec![k.to_string(), String::new(), ex, re, im]);
            let _ = writeln!(text, "q^{k}: {v}");
        } else {
            for (exps, v) in c.terms() {
                terms.push(json!({ "weight": k, "t_degree": exps[0], "value": scalar_json(v) }));
                let [ex, re, im] = scalar_cells(v);
                rows.push(vec![k.to_string(), exps[0].to_string(), ex, re, im]);
            }
            let _ = writeln!(text, "q^{k}: {}", t_poly(&c));
        }
    }
    let mut out = Output::new(
        json!({ "max_weight": w, "degree_mode": mode, "evaluate_t": o.t, "terms": terms }),
        text,
        vec!["weight", "t_degree", "exact", "re", "im"],
        rows,
    );
    if mode == DegreeMode::Literal {
        out.provenance
            .push("literal degree mode: t records only the surface degree of each class; values at t = ±1 match the shifted mode".into());
    }
    Ok(out)
}

fn integer(c: &hilbaut::algebra::Rational) -> Result<i64, Error> {
    c.to_integer()
        .try_into()
        .ok()
        .filter(|_| c.is_integer())
        .ok_or_else(|| Error::NotIntegral(c.to_string()))
}

fn poincare(o: &Options, input: &InputDocument) -> Result<Output, Error> {
    let n = o.n.unwrap_or_default();
    let s = poincare_series(&input.spec.surface, n)?;
    let mut table = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    for k in 0..=n {
        let c = s.coefficient_of(Var::Q, k)?;
        let top = 4 * k;
        let betti = (0..=top).map(|d| integer(&c.coeff(&[d]))).collect::<Result<Vec<_>, _>>()?;
        for (d, b) in betti.iter().enumerate() {
            rows.push(vec![k.to_string(), d.to_string(), b.to_string()]);
        }
        let _ = writeln!(text, "n = {k}: {}", betti.iter().map(int).collect::<Vec<_>>().join(" "));
        table.push(json!({ "n": k, "betti": betti }));
    }
    Ok(Output::new(json!({ "betti": table }), text, vec!["n", "degree", "betti"], rows))
}

fn row(o: &Options, input: &InputDocument, default: &str) -> Result<HodgeRow, Failure> {
    let label = o.row.as_deref().unwrap_or(default);
    let rows = &input.spec.surface.hodge_rows;
    rows.get(label).copied().ok_or_else(|| {
        let known: Vec<&str> = rows.keys().map(String::as_str).collect();
        Error::InvalidArgument(format!("--row: surface has no Hodge row `{label}` (available: {})", known.join(", ")))
            .into()
    })
}

fn hodge(o: &Options, input: &InputDocument) -> Result<Output, Failure> {
    let n = o.n.unwrap_or_default();
    let r = row(o, input, "trivial")?;
    let s = hodge_p0_series(r, n, 2 * n)?;
    let mut table = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    for k in 0..=n {
        let h = (0..=2 * k).map(|p| integer(&s.coeff(&[p, k]))).collect::<Result<Vec<_>, _>>()?;
        for (p, v) in h.iter().enumerate() {
            rows.push(vec![k.to_string(), p.to_string(), v.to_string()]);
        }
        let _ = writeln!(text, "n = {k}: {}", h.iter().map(int).collect::<Vec<_>>().join(" "));
        table.push(json!({ "n": k, "h_p0": h }));
    }
    let top = if n >= 1 {
        let v = h_top_minus_one(r, n)?;
        let _ = writeln!(text, "h^{{{},0}} = {v}", 2 * n - 1);
        Some(v)
    } else {
        None
    };
    Ok(Output::new(
        json!({ "row": r, "h_p0": table, "h_top_minus_one": top }),
        text,
        vec!["n", "p", "h_p0"],
        rows,
    ))
}

fn aut_dim(o: &Options, input: &InputDocument) -> Result<Output, Failure> {
    let n = o.n.unwrap_or_default();
    let r = row(o, input, "canonical-dual")?;
    let a = aut_dimension(r, n)?;
    let mut out = Output::new(
        json!({ "n": n, "row": r, "dimension": a.value }),
        format!("{}\n", a.value),
        vec!["n", "dimension"],
        vec![vec![n.to_string(), a.value.to_string()]],
    );
    out.warnings.extend(a.warning);
    Ok(out)
}

fn conjecture(o: &Options, input: &InputDocument) -> Result<Output, Failure> {
    let n = o.n.unwrap_or_default();
    let label = o.table.as_deref().unwrap_or("trivial");
    let tables = &input.spec.surface.hodge_tables;
    let table = tables.get(label).ok_or_else(|| {
        let known: Vec<&str> = tables.keys().map(String::as_str).collect();
        Failure::from(Error::InvalidArgument(format!(
            "--table: surface has no Hodge table `{label}` (available: {})",
            known.join(", ")
        )))
    })?;
    let untwisted = label == "trivial";
    let s = conjectural_hodge_series(table, n, 2 * n, 2 * n)?;
    let mut blocks = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    for k in 0..=n {
        let _ = writeln!(text, "n = {k}");
        let mut grid = Vec::new();
        for p in 0..=2 * k {
            let line = (0..=2 * k).map(|q| integer(&s.coeff(&[p, q, k]))).collect::<Result<Vec<_>, _>>()?;
            for (q, v) in line.iter().enumerate() {
                let status = if untwisted || q == 0 { "proved" } else { "conjectural" };
                rows.push(vec![k.to_string(), p.to_string(), q.to_string(), v.to_string(), status.into()]);
            }
            let _ = writeln!(text, "  {}", line.iter().map(int).collect::<Vec<_>>().join(" "));
            grid.push(line);
        }
        blocks.push(json!({ "n": k, "h": grid }));
    }
    let status = if untwisted { "proved" } else { "conjectural" };
    let mut out = Output::new(
        json!({ "table": label, "status": status, "hodge": blocks }),
        text,
        vec!["n", "p", "q", "h", "status"],
        rows,
    );
    out.provenance.push(if untwisted {
        "untwisted table: the product formula gives the Hodge numbers of S^[n]".into()
    } else {
        "twisted table: entries with q > 0 are conjectural; the q = 0 column is proved".into()
    });
    Ok(out)
}

fn component_row(c: &FixedComponent) -> Vec<String> {
    let opt = |v: Option<String>| v.unwrap_or_default();
    let pieces = serde_json::to_string(&c.pieces).unwrap_or_default();
    let weights = c
        .weights
        .as_ref()
        .map(|w| w.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    vec![
        c.kind.name().into(),
        c.length.to_string(),
        c.dimension.to_string(),
        opt(c.degenerate.map(|d| d.to_string())),
        opt(c.fixed_subspace_dim.map(|d| d.to_string())),
        opt(c.stratum_euler.map(|d| d.to_string())),
        pieces,
        opt(weights),
    ]
}

fn fixed_points(o: &Options, input: &InputDocument) -> Result<Output, Error> {
    let n = o.n.unwrap_or_default();
    let max_n = match o.bound {
        Some(b) => u32::try_from(b).map_err(|_| Error::InvalidArgument("--bound: out of range".into()))?,
        None => DEFAULT_FIXED_MAX_N,
    };
    let r = enumerate_fixed_components_bounded(&input.datum, &input.spec, n, max_n)?;
    let mut text = String::new();
    let _ = writeln!(text, "n = {n}");
    let _ = writeln!(text, "isolated nondegenerate: {}", r.isolated_nondegenerate_count);
    let _ = writeln!(text, "isolated degenerate: {}", r.isolated_degenerate_count);
    let _ = writeln!(text, "positive-dimensional: {}", r.positive_dimensional_count);
    for (kind, count) in &r.counts {
        let _ = writeln!(text, "  {kind}: {count}");
    }
    let _ = writeln!(text, "lefschetz: {}", r.lefschetz);
    let _ = writeln!(
        text,
        "euler: {} (remainder {}, {})",
        r.euler.total,
        r.euler.remainder,
        if r.euler.agrees_with_lefschetz { "agrees" } else { "DISAGREES" }
    );
    for q in &r.quoted {
        let _ = writeln!(
            text,
            "quoted {}: {} (computed {}{})",
            q.what,
            q.value,
            q.computed_isolated,
            if q.discrepancy { ", discrepancy" } else { "" }
        );
    }
    let rows: Vec<_> = r.components.iter().map(component_row).collect();
    for row in &rows {
        let _ = writeln!(text, "{}", row[..3].iter().chain(&row[6..7]).cloned().collect::<Vec<_>>().join("\t"));
    }
    let mut out = Output::new(
        serde_json::to_value(&r).expect("report serializes"),
        text,
        vec![
            "kind",
            "length",
            "dimension",
            "degenerate",
            "fixed_subspace_dim",
            "stratum_euler",
            "pieces",
            "weights",
        ],
        rows,
    );
    out.provenance = r.notes.clone();
    for q in r.quoted.iter().filter(|q| q.discrepancy) {
        out.warnings.push(format!(
            "quoted {} = {} differs from the computed isolated count {}",
            q.what, q.value, q.computed_isolated
        ));
    }
    if !r.euler.agrees_with_lefschetz {
        out.warnings
            .push(format!("Euler total {} differs from the Lefschetz number {}", r.euler.total, r.lefschetz));
    }
    Ok(out)
}

fn spectrum<C: Coefficient + Display>(e: &GradedEigenvalues<C>, o: &Options) -> Result<Output, Error> {
    let n = o.n.unwrap_or_default();
    let bound = o.bound.unwrap_or(DEFAULT_SPECTRUM_BOUND);
    let mut entries = enumerate_basis(e, n, bound)?;
    entries.sort_by(|a, b| (a.degree, &a.vector).cmp(&(b.degree, &b.vector)));
    let mut list = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    for b in &entries {
        let v = b.vector.to_string();
        list.push(json!({ "vector": v, "degree": b.degree, "eigenvalue": scalar_json(&b.eigenvalue) }));
        let [ex, re, im] = scalar_cells(&b.eigenvalue);
        let shown = if ex.is_empty() { b.eigenvalue.to_string() } else { ex.clone() };
        let _ = writeln!(text, "{}\t{}\t{}", b.degree, shown, v);
        rows.push(vec![v, b.degree.to_string(), ex, re, im]);
    }
    Ok(Output::new(
        json!({ "n": n, "size": entries.len(), "entries": list }),
        text,
        vec!["vector", "degree", "exact", "re", "im"],
        rows,
    ))
}

fn entropy_cmd(o: &Options, input: &InputDocument) -> Result<Output, Error> {
    let n = o.n.unwrap_or_default();
    let e = input.spec.spectrum.to_float();
    let radius = induced_spectral_radius(&e, n)?;
    let ent = entropy(&e, n)?;
    let base = entropy(&e, 1)?;
    let text = format!("spectral radius: {radius}\nentropy: {ent}\nn * entropy(f): {}\n", f64::from(n) * base);
    Ok(Output::new(
        json!({ "n": n, "spectral_radius": radius, "entropy": ent, "surface_entropy": base }),
        text,
        vec!["n", "spectral_radius", "entropy"],
        vec![vec![n.to_string(), radius.to_string(), ent.to_string()]],
    ))
}
