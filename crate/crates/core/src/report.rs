//! Result reporting and serialization.
//!
//! * [`Report`]: one computed quantity with its reference value (when the
//!   catalog has one), absolute/relative discrepancies, runtime, and an echo
//!   of the numerical spec used. Serializes to JSON and CSV; floats are
//!   printed with 15 significant digits, exact rationals as `p/q`.
//! * Polytope JSON schema `{name, dim, vertices: [[num, den]...],
//!   generators: [[perm]...]}` with field-path diagnostics on rejection.
//! * Named verify suites: pure functions of (catalog, quadrature spec, seed),
//!   so repeated runs are byte-identical.

use std::fmt::Write as _;
use std::time::Instant;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::catalog::{self, CatalogEntry};
use crate::moments::{ball_moment, even_moment, ClosedFormValue};
use crate::montecarlo::mc_moment;
use crate::polytope::Polytope;
use crate::quadrature::QuadratureSpec;
use crate::rat::Rat;
use crate::section::odd_moment;
use crate::symmetry::{Perm, SymmetryGroup};
use crate::{Error, Result};

/// Format a float with 15 significant digits.
pub fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

/// Render a value for a report: exact rationals as `p/q`, closed forms with
/// π-terms symbolically, floats with 15 significant digits.
pub fn render_value(v: &ClosedFormValue) -> String {
    match v {
        ClosedFormValue::Approx(x) => sig15(*x),
        _ => v.to_string(),
    }
}

/// One verified quantity. Discrepancy fields are present iff a reference
/// value exists.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// Solid or quantity owner (e.g. `T3`).
    pub name: String,
    /// Quantity key (e.g. `v1`, `v2`, `v1[II]`).
    pub key: String,
    /// Computed value, rendered (`p/q` or 15-significant-digit float).
    pub computed: String,
    /// Computed value as a float.
    pub computed_f64: f64,
    /// Reference value, rendered, when the registry has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_f64: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_discrepancy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_discrepancy: Option<f64>,
    /// Wall-clock runtime of the computation, seconds.
    pub runtime_secs: f64,
    /// Echo of the numerical spec (quadrature rule, node count, seed, …).
    pub spec: String,
}

impl Report {
    /// Build a report, filling discrepancies from the reference when present.
    pub fn new(
        name: &str,
        key: &str,
        computed: &ClosedFormValue,
        reference: Option<&ClosedFormValue>,
        runtime_secs: f64,
        spec: &str,
    ) -> Self {
        let computed_f64 = computed.to_f64();
        let reference_f64 = reference.map(ClosedFormValue::to_f64);
        let abs = reference_f64.map(|r| (computed_f64 - r).abs());
        let rel = reference_f64.and_then(|r| {
            abs.map(|a| if r == 0.0 { a } else { a / r.abs() })
        });
        Report {
            name: name.into(),
            key: key.into(),
            computed: render_value(computed),
            computed_f64,
            reference: reference.map(render_value),
            reference_f64,
            abs_discrepancy: abs,
            rel_discrepancy: rel,
            runtime_secs,
            spec: spec.into(),
        }
    }

    /// True when a reference exists and the relative discrepancy exceeds
    /// the tolerance.
    pub fn breaches(&self, rel_tol: f64) -> bool {
        self.rel_discrepancy.is_some_and(|r| r > rel_tol)
    }
}

/// Serialize reports as a JSON array.
pub fn reports_to_json(reports: &[Report]) -> String {
    serde_json::to_string_pretty(reports).expect("report serialization")
}

const CSV_HEADER: &str =
    "name,key,computed,reference,abs_discrepancy,rel_discrepancy,runtime_secs,spec";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Serialize reports as CSV (header plus one row per report).
pub fn reports_to_csv(reports: &[Report]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            csv_field(&r.name),
            csv_field(&r.key),
            csv_field(&r.computed),
            csv_field(r.reference.as_deref().unwrap_or("")),
            r.abs_discrepancy.map(sig15).unwrap_or_default(),
            r.rel_discrepancy.map(sig15).unwrap_or_default(),
            sig15(r.runtime_secs),
            csv_field(&r.spec),
        );
    }
    out
}

// ---------------------------------------------------------------------------
// Polytope JSON schema
// ---------------------------------------------------------------------------

/// Serialize a named polytope (with symmetry generators) to the JSON schema
/// `{name, dim, vertices: [[[num, den], ...], ...], generators: [[perm], ...]}`.
pub fn polytope_to_json(name: &str, p: &Polytope, generators: &[Perm]) -> Result<String> {
    let mut verts = Vec::new();
    for (vi, v) in p.vertices().iter().enumerate() {
        let mut coords = Vec::new();
        for (ci, c) in v.iter().enumerate() {
            let num = c.numer().to_i64().ok_or_else(|| {
                Error::Invalid(format!("vertices[{vi}][{ci}]: numerator exceeds i64"))
            })?;
            let den = c.denom().to_i64().ok_or_else(|| {
                Error::Invalid(format!("vertices[{vi}][{ci}]: denominator exceeds i64"))
            })?;
            coords.push(serde_json::json!([num, den]));
        }
        verts.push(serde_json::Value::Array(coords));
    }
    let doc = serde_json::json!({
        "name": name,
        "dim": p.dim(),
        "vertices": verts,
        "generators": generators,
    });
    Ok(serde_json::to_string_pretty(&doc).expect("polytope serialization"))
}

fn schema_err(path: &str, what: &str) -> Error {
    Error::Invalid(format!("{path}: {what}"))
}

/// Parse the polytope JSON schema, reporting violations with field paths.
/// Returns the name, the polytope (rebuilt from vertices), and the symmetry
/// group closed over the listed generators.
pub fn polytope_from_json(text: &str) -> Result<(String, Polytope, SymmetryGroup)> {
    let doc: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::Invalid(format!("invalid JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| schema_err("$", "expected an object"))?;
    let name = obj
        .get("name")
        .ok_or_else(|| schema_err("name", "missing field"))?
        .as_str()
        .ok_or_else(|| schema_err("name", "expected a string"))?
        .to_string();
    let dim = obj
        .get("dim")
        .ok_or_else(|| schema_err("dim", "missing field"))?
        .as_u64()
        .ok_or_else(|| schema_err("dim", "expected a non-negative integer"))?
        as usize;
    let verts_val = obj
        .get("vertices")
        .ok_or_else(|| schema_err("vertices", "missing field"))?
        .as_array()
        .ok_or_else(|| schema_err("vertices", "expected an array"))?;
    let mut vertices: Vec<Vec<Rat>> = Vec::with_capacity(verts_val.len());
    for (vi, v) in verts_val.iter().enumerate() {
        let coords = v
            .as_array()
            .ok_or_else(|| schema_err(&format!("vertices[{vi}]"), "expected an array"))?;
        if coords.len() != dim {
            return Err(schema_err(
                &format!("vertices[{vi}]"),
                &format!("expected {dim} coordinates, got {}", coords.len()),
            ));
        }
        let mut vertex = Vec::with_capacity(dim);
        for (ci, c) in coords.iter().enumerate() {
            let path = format!("vertices[{vi}][{ci}]");
            let pair = c
                .as_array()
                .ok_or_else(|| schema_err(&path, "expected a [num, den] pair"))?;
            if pair.len() != 2 {
                return Err(schema_err(&path, "expected exactly [num, den]"));
            }
            let num = pair[0]
                .as_i64()
                .ok_or_else(|| schema_err(&format!("{path}[0]"), "expected an integer"))?;
            let den = pair[1]
                .as_i64()
                .ok_or_else(|| schema_err(&format!("{path}[1]"), "expected an integer"))?;
            if den == 0 {
                return Err(schema_err(&format!("{path}[1]"), "denominator is zero"));
            }
            vertex.push(crate::rat::rat(num, den));
        }
        vertices.push(vertex);
    }
    let n = vertices.len();
    let gens_val = obj
        .get("generators")
        .ok_or_else(|| schema_err("generators", "missing field"))?
        .as_array()
        .ok_or_else(|| schema_err("generators", "expected an array"))?;
    let mut generators: Vec<Perm> = Vec::with_capacity(gens_val.len());
    for (gi, g) in gens_val.iter().enumerate() {
        let perm = g
            .as_array()
            .ok_or_else(|| schema_err(&format!("generators[{gi}]"), "expected an array"))?;
        let mut out = Vec::with_capacity(perm.len());
        for (pi, x) in perm.iter().enumerate() {
            let v = x.as_u64().ok_or_else(|| {
                schema_err(
                    &format!("generators[{gi}][{pi}]"),
                    "expected a non-negative integer",
                )
            })? as usize;
            if v >= n {
                return Err(schema_err(
                    &format!("generators[{gi}][{pi}]"),
                    &format!("vertex index {v} out of range (n = {n})"),
                ));
            }
            out.push(v);
        }
        if out.len() != n {
            return Err(schema_err(
                &format!("generators[{gi}]"),
                &format!("expected a permutation of length {n}, got {}", out.len()),
            ));
        }
        generators.push(out);
    }
    let polytope = Polytope::from_vertices(vertices)?;
    let group = SymmetryGroup::closure(n, &generators)?;
    Ok((name, polytope, group))
}

// ---------------------------------------------------------------------------
// Verify suites
// ---------------------------------------------------------------------------

/// Names of the built-in verify suites, in stable order.
pub fn suite_names() -> Vec<&'static str> {
    vec!["even-exact", "d2-odd-first", "d3-odd-first", "ball", "mc-seeded"]
}

/// Run a named verify suite. Pure function of (catalog, spec, seed): repeated
/// runs produce byte-identical reports.
pub fn run_suite(name: &str, spec: &QuadratureSpec, seed: u64) -> Result<Vec<Report>> {
    match name {
        "even-exact" => suite_even_exact(),
        "d2-odd-first" => suite_d2_odd(spec),
        "d3-odd-first" => suite_d3_odd(spec),
        "ball" => suite_ball(),
        "mc-seeded" => suite_mc(seed),
        other => Err(Error::Invalid(format!(
            "unknown verify suite '{other}'; available: {}",
            suite_names().join(", ")
        ))),
    }
}

fn even_reference_keys(e: &CatalogEntry) -> Vec<(usize, &ClosedFormValue)> {
    [2usize, 4, 6]
        .iter()
        .filter_map(|&k| e.reference(&format!("v{k}")).map(|r| (k, &r.value)))
        .collect()
}

/// Exact even moments against every registered even reference with d ≤ 4.
fn suite_even_exact() -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for e in catalog::catalog() {
        if e.polytope.dim() > 4 {
            continue; // d = 5, 6 even moments are covered by slow opt-in tests
        }
        for (k, reference) in even_reference_keys(&e) {
            if e.polytope.dim() * k > 12 {
                continue; // keep the suite within the expansion capacity
            }
            let t = Instant::now();
            let v = even_moment(&e.polytope, k)?;
            out.push(Report::new(
                e.name,
                &format!("v{k}"),
                &ClosedFormValue::rational(v),
                Some(reference),
                t.elapsed().as_secs_f64(),
                "exact rational expansion",
            ));
        }
    }
    Ok(out)
}

fn spec_echo(spec: &QuadratureSpec) -> String {
    format!("{spec:?}")
}

fn odd_report(name: &str, k: usize, spec: &QuadratureSpec) -> Result<Report> {
    let e = catalog::find(name)?;
    let configs = e.configurations()?;
    let t = Instant::now();
    let est = odd_moment(&e.polytope, &configs, k, spec)?;
    let key = format!("v{k}");
    Ok(Report::new(
        e.name,
        &key,
        &ClosedFormValue::Approx(est.total),
        e.reference(&key).map(|r| &r.value),
        t.elapsed().as_secs_f64(),
        &spec_echo(spec),
    ))
}

/// First odd moment of the triangle and square via the section integral.
fn suite_d2_odd(spec: &QuadratureSpec) -> Result<Vec<Report>> {
    Ok(vec![odd_report("T2", 1, spec)?, odd_report("C2", 1, spec)?])
}

/// First odd moment of the tetrahedron via the section integral.
fn suite_d3_odd(spec: &QuadratureSpec) -> Result<Vec<Report>> {
    Ok(vec![odd_report("T3", 1, spec)?])
}

/// Ball moments against their closed forms (self-check plus spot values).
fn suite_ball() -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let spot = [
        ((3usize, 1usize), ClosedFormValue::rational(crate::rat::rat(9, 715))),
    ];
    for ((d, k), reference) in spot {
        let t = Instant::now();
        let v = ball_moment(d, k);
        out.push(Report::new(
            &format!("B{d}"),
            &format!("v{k}"),
            &v,
            Some(&reference),
            t.elapsed().as_secs_f64(),
            "closed form",
        ));
    }
    Ok(out)
}

/// Seeded Monte Carlo estimates with small sample counts; deterministic for a
/// fixed seed.
fn suite_mc(seed: u64) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for (name, k) in [("T2", 1usize), ("T3", 2usize)] {
        let e = catalog::find(name)?;
        let d = e.polytope.dim();
        let t = Instant::now();
        let est = mc_moment(&e.polytope, d, k, 200_000, seed)?;
        out.push(Report::new(
            e.name,
            &format!("v{k}"),
            &ClosedFormValue::Approx(est.mean),
            e.reference(&format!("v{k}")).map(|r| &r.value),
            t.elapsed().as_secs_f64(),
            &format!("mc seed={seed} samples=200000"),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn report_discrepancy_iff_reference() {
        let v = ClosedFormValue::rational(rat(1, 72));
        let with = Report::new("T2", "v2", &v, Some(&v), 0.0, "exact");
        assert_eq!(with.abs_discrepancy, Some(0.0));
        assert_eq!(with.rel_discrepancy, Some(0.0));
        let without = Report::new("T2", "v2", &v, None, 0.0, "exact");
        assert!(without.abs_discrepancy.is_none());
        assert!(without.rel_discrepancy.is_none());
        assert_eq!(with.computed, "1/72");
    }

    #[test]
    fn csv_row_count_matches_suite_size() {
        let reports = suite_ball().unwrap();
        let csv = reports_to_csv(&reports);
        assert_eq!(csv.lines().count(), reports.len() + 1);
        assert!(csv.lines().next().unwrap().contains("rel_discrepancy"));
    }

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(sig15(0.002129529435644580), "2.12952943564458e-3");
    }

    #[test]
    fn tetrahedron_round_trips_through_json() {
        let e = catalog::find("T3").unwrap();
        let gens: Vec<Perm> = e.group.elements().to_vec();
        let text = polytope_to_json("T3", &e.polytope, &gens).unwrap();
        let (name, p, group) = polytope_from_json(&text).unwrap();
        assert_eq!(name, "T3");
        assert_eq!(p.vertices(), e.polytope.vertices());
        assert_eq!(group.order(), 24);
    }

    #[test]
    fn schema_violations_carry_field_paths() {
        let bad = r#"{"name":"x","dim":2,"vertices":[[[1,2],[1]]],"generators":[]}"#;
        let err = polytope_from_json(bad).unwrap_err().to_string();
        assert!(err.contains("vertices[0][1]"), "{err}");
        let bad = r#"{"name":"x","dim":1,"vertices":[[[0,1]],[[1,1]]],"generators":[[0]]}"#;
        let err = polytope_from_json(bad).unwrap_err().to_string();
        assert!(err.contains("generators[0]"), "{err}");
        let bad = r#"{"name":"x","dim":1,"vertices":[[[1,0]]],"generators":[]}"#;
        let err = polytope_from_json(bad).unwrap_err().to_string();
        assert!(err.contains("vertices[0][0][1]"), "{err}");
    }

    #[test]
    fn ball_spot_value() {
        let r = &suite_ball().unwrap()[0];
        assert_eq!(r.computed, "9/715");
        assert_eq!(r.rel_discrepancy, Some(0.0));
    }

    #[test]
    fn even_suite_is_exact() {
        let reports = suite_even_exact().unwrap();
        assert!(!reports.is_empty());
        for r in &reports {
            assert_eq!(r.abs_discrepancy, Some(0.0), "{} {}: {}", r.name, r.key, r.computed);
        }
    }

    #[test]
    fn unknown_suite_rejected() {
        let err = run_suite("nope", &QuadratureSpec::default(), 0).unwrap_err();
        assert!(err.to_string().contains("unknown verify suite"));
    }

    #[test]
    fn json_report_has_discrepancy_columns() {
        let v = ClosedFormValue::rational(int(1));
        let r = Report::new("x", "v2", &v, Some(&v), 0.1, "s");
        let json = reports_to_json(&[r]);
        assert!(json.contains("abs_discrepancy"));
        assert!(json.contains("rel_discrepancy"));
    }
}
