//! Signal and field files.
//!
//! Signals are either CSV samples with header `x,re,im` on a uniform grid, or
//! JSON: `{"weights": [[re, im], ...], "labels": [[P, Q], ...]}` for a coherent
//! superposition, `{"s": s, "coeffs": [[re, im], ...]}` for a Hermite
//! expansion. Fields are CSV with header `x,p,re,im,gauge,param`, rows x-major.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use holofrft_core::{
    CoherentLabel, Gauge, HermiteCoefficients, LineGrid, LineSamples, PlaneField, PlaneGrid, SampledSignal,
    TransformParameter,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const SIGNAL_HEADER: [&str; 3] = ["x", "re", "im"];
pub const FIELD_HEADER: [&str; 6] = ["x", "p", "re", "im", "gauge", "param"];

/// Malformed input, with the 1-based line it was found on.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: u64,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn parse_err(line: u64, message: impl Into<String>) -> anyhow::Error {
    ParseError { line, message: message.into() }.into()
}

/// 17 significant digits: enough to read back the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn finite(line: u64, name: &str, text: &str) -> Result<f64> {
    let v: f64 = text.trim().parse().map_err(|_| parse_err(line, format!("{name}: not a number: {text:?}")))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("{name}: non-finite value {text:?}")));
    }
    Ok(v)
}

fn csv_reader(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(file))
}

/// Reads all records, checking the header and column count.
fn read_table(path: &Path, header: &[&str]) -> Result<Vec<(u64, csv::StringRecord)>> {
    let mut reader = csv_reader(path)?;
    let mut rows = Vec::new();
    let mut saw_header = false;
    for rec in reader.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if !saw_header {
            let got: Vec<&str> = rec.iter().map(str::trim).collect();
            if got != header {
                return Err(parse_err(
                    line,
                    format!("expected header {:?}, found {:?}", header.join(","), got.join(",")),
                ));
            }
            saw_header = true;
            continue;
        }
        if rec.len() != header.len() {
            return Err(parse_err(line, format!("expected {} columns, found {}", header.len(), rec.len())));
        }
        rows.push((line, rec));
    }
    if !saw_header {
        return Err(parse_err(1, "empty file"));
    }
    if rows.is_empty() {
        return Err(parse_err(2, "no data rows"));
    }
    Ok(rows)
}

/// Checks that `xs` are the nodes of the uniform grid through their ends.
fn uniform_axis(xs: &[(u64, f64)], what: &str) -> Result<LineGrid> {
    if xs.len() < 2 {
        return Err(parse_err(xs.first().map_or(2, |x| x.0), format!("{what} axis needs at least 2 nodes")));
    }
    let grid = LineGrid::new(xs[0].1, xs[xs.len() - 1].1, xs.len())
        .map_err(|e| parse_err(xs[0].0, format!("{what} axis: {e}")))?;
    let tol = 1e-9 * grid.spacing();
    for (i, &(line, x)) in xs.iter().enumerate() {
        if (x - grid.node(i)).abs() > tol {
            return Err(parse_err(line, format!("{what} = {x} breaks the uniform grid (expected {})", grid.node(i))));
        }
    }
    Ok(grid)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoherentJson {
    weights: Vec<[f64; 2]>,
    labels: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HermiteJson {
    s: f64,
    coeffs: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum SignalJson {
    Coherent(CoherentJson),
    Hermite(HermiteJson),
}

fn signal_from_json(text: &str) -> Result<SampledSignal> {
    let parsed: SignalJson = serde_json::from_str(text)
        .map_err(|e| parse_err(e.line() as u64, format!("expected {{weights, labels}} or {{s, coeffs}}: {e}")))?;
    let c = |v: &[f64; 2]| Complex64::new(v[0], v[1]);
    Ok(match parsed {
        SignalJson::Coherent(j) => {
            if j.weights.len() != j.labels.len() {
                bail!(parse_err(1, format!("{} weights for {} labels", j.weights.len(), j.labels.len())));
            }
            let terms = j
                .weights
                .iter()
                .zip(&j.labels)
                .map(|(w, l)| Ok((c(w), CoherentLabel::new(l[0], l[1])?)))
                .collect::<Result<Vec<_>>>()?;
            SampledSignal::coherent_sum(terms)?
        }
        SignalJson::Hermite(j) => {
            SampledSignal::HermiteRep(HermiteCoefficients::new(j.s, j.coeffs.iter().map(c).collect())?)
        }
    })
}

/// Reads a signal; `.json` files hold coherent sums or Hermite expansions,
/// anything else is read as CSV samples.
pub fn read_signal(path: &Path) -> Result<SampledSignal> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        let mut text = String::new();
        File::open(path).with_context(|| format!("opening {}", path.display()))?.read_to_string(&mut text)?;
        if text.trim().is_empty() {
            bail!(parse_err(1, "empty file"));
        }
        return signal_from_json(&text).with_context(|| format!("reading {}", path.display()));
    }
    read_samples(path).map(SampledSignal::Samples)
}

pub fn read_samples(path: &Path) -> Result<LineSamples> {
    let rows = read_table(path, &SIGNAL_HEADER).with_context(|| format!("reading {}", path.display()))?;
    let mut xs = Vec::with_capacity(rows.len());
    let mut values = Vec::with_capacity(rows.len());
    for (line, rec) in &rows {
        xs.push((*line, finite(*line, "x", &rec[0])?));
        values.push(Complex64::new(finite(*line, "re", &rec[1])?, finite(*line, "im", &rec[2])?));
    }
    let grid = uniform_axis(&xs, "x").with_context(|| format!("reading {}", path.display()))?;
    Ok(LineSamples::new(grid, values)?)
}

pub fn write_samples<W: Write>(samples: &LineSamples, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SIGNAL_HEADER)?;
    for (x, v) in samples.grid().nodes().iter().zip(samples.values()) {
        w.write_record([fmt_f64(*x), fmt_f64(v.re), fmt_f64(v.im)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_samples_file(samples: &LineSamples, path: &Path) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write_samples(samples, BufWriter::new(file))
}

pub fn write_field<W: Write>(field: &PlaneField, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(FIELD_HEADER)?;
    let gauge = field.gauge().name();
    let param = field.parameter().to_string();
    for (x, p, v) in field.iter() {
        w.write_record([fmt_f64(x), fmt_f64(p), fmt_f64(v.re), fmt_f64(v.im), gauge.to_string(), param.clone()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_field_file(field: &PlaneField, path: &Path) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write_field(field, BufWriter::new(file))
}

pub fn read_field(path: &Path) -> Result<PlaneField> {
    read_field_inner(path).with_context(|| format!("reading {}", path.display()))
}

fn read_field_inner(path: &Path) -> Result<PlaneField> {
    let rows = read_table(path, &FIELD_HEADER)?;
    let (first_line, first) = &rows[0];
    let gauge_name = first[4].trim().to_string();
    let param_text = first[5].trim().to_string();
    let param: TransformParameter = param_text.parse().map_err(|e| parse_err(*first_line, format!("param: {e}")))?;
    let gauge = match gauge_name.as_str() {
        "weighted" => Gauge::Weighted { t: param.t() },
        "holomorphic" => Gauge::Holomorphic {
            s: param.s().ok_or_else(|| parse_err(*first_line, "holomorphic gauge at the Fourier endpoint"))?,
        },
        other => return Err(parse_err(*first_line, format!("unknown gauge {other:?}"))),
    };

    let mut cells = Vec::with_capacity(rows.len());
    for (line, rec) in &rows {
        if rec[4].trim() != gauge_name || rec[5].trim() != param_text {
            return Err(parse_err(*line, "gauge/param differ from the first row"));
        }
        let x = finite(*line, "x", &rec[0])?;
        let p = finite(*line, "p", &rec[1])?;
        let v = Complex64::new(finite(*line, "re", &rec[2])?, finite(*line, "im", &rec[3])?);
        cells.push((*line, x, p, v));
    }
    let np = cells.iter().take_while(|c| c.1 == cells[0].1).count();
    if np < 2 || cells.len() % np != 0 {
        return Err(parse_err(*first_line, "rows do not form an x-major rectangular grid"));
    }
    let p_axis: Vec<(u64, f64)> = cells[..np].iter().map(|c| (c.0, c.2)).collect();
    let x_axis: Vec<(u64, f64)> = cells.iter().step_by(np).map(|c| (c.0, c.1)).collect();
    let px = uniform_axis(&p_axis, "p")?;
    let xx = uniform_axis(&x_axis, "x")?;
    for (k, c) in cells.iter().enumerate() {
        if c.1 != cells[(k / np) * np].1 || c.2 != cells[k % np].2 {
            return Err(parse_err(c.0, "rows do not form an x-major rectangular grid"));
        }
    }
    let grid = PlaneGrid { x: xx, p: px };
    Ok(PlaneField::new(grid, cells.into_iter().map(|c| c.3).collect(), gauge, param)?)
}

/// JSON text for a coherent superposition.
pub fn coherent_json(terms: &[(Complex64, CoherentLabel)]) -> String {
    let j = CoherentJson {
        weights: terms.iter().map(|(w, _)| [w.re, w.im]).collect(),
        labels: terms.iter().map(|(_, y)| [y.p, y.q]).collect(),
    };
    serde_json::to_string(&j).expect("plain numbers serialize")
}
