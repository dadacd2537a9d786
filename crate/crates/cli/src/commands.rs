use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use holofrft_core::closedform::{coherent_state, hfrft_coherent, hfrft_endpoint_coherent, sb_coherent};
use holofrft_core::engine::kernel::KernelOptions;
use holofrft_core::engine::spectral::build_basis_images_with;
use holofrft_core::engine::transform::endpoint_apply_with;
use holofrft_core::engine::{hfrft_apply_with, sb_apply, sb_inverse, EngineOptions, Method};
use holofrft_core::{
    CoherentImageForm, Error as CoreError, Gauge, LineSamples, Regime, SampledSignal, TransformParameter,
};
use num_complex::Complex64;

use crate::config::{
    BasisArgs, Cli, Command, CompareArgs, EndpointArgs, EngineArgs, InverseArgs, Kind, MethodArg, ParamArgs, SweepArgs,
    TransformArgs, VerifyArgs,
};
use crate::io::{fmt_f64, read_field, read_signal, write_field_file, write_samples_file, ParseError};
use crate::verify::{run_check, Report, Tolerances, CHECKS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Failure = 1,
    Usage = 2,
    Numerical = 3,
}

/// A contradiction in the command line that clap cannot express.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Numerical-support failures map to 3; everything else is a usage or input
/// problem.
pub fn exit_code_for(err: &anyhow::Error) -> ExitStatus {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<CoreError>() {
            return match e {
                CoreError::Support { .. }
                | CoreError::SampleSupport { .. }
                | CoreError::Resolution { .. }
                | CoreError::BoundaryTail { .. }
                | CoreError::IntegrationDomain { .. } => ExitStatus::Numerical,
                _ => ExitStatus::Usage,
            };
        }
        if cause.is::<UsageError>() || cause.is::<ParseError>() {
            return ExitStatus::Usage;
        }
    }
    ExitStatus::Usage
}

pub fn run(cli: Cli) -> Result<ExitStatus> {
    match cli.command {
        Command::Transform(a) => transform(&a),
        Command::Endpoint(a) => endpoint(&a),
        Command::Inverse(a) => inverse(&a),
        Command::Sweep(a) => sweep(&a),
        Command::Verify(a) => verify(&a),
        Command::Basis(a) => basis(&a),
        Command::Compare(a) => compare(&a),
    }
}

fn engine_options(e: &EngineArgs) -> EngineOptions {
    EngineOptions { gh_order: e.gh_order, spectral_order: e.order, basis_scale: e.basis_scale }
}

fn method(m: MethodArg) -> Method {
    match m {
        MethodArg::Kernel => Method::Kernel,
        MethodArg::Spectral => Method::Spectral,
    }
}

fn parameter(p: &ParamArgs) -> Result<TransformParameter> {
    Ok(match (p.t, p.s) {
        (Some(t), None) => TransformParameter::from_t(t)?,
        (None, Some(s)) => TransformParameter::from_s(s)?,
        (None, None) => return Err(usage("one of --t or --s is required")),
        (Some(_), Some(_)) => return Err(usage("--t and --s are mutually exclusive")),
    })
}

fn transform(a: &TransformArgs) -> Result<ExitStatus> {
    nonempty(&[&a.input, &a.output])?;
    let opts = engine_options(&a.engine);
    let grid = a.engine.grid.0;
    let kind = a.kind();
    if kind == Kind::Fourier && (a.param.t.is_some() || a.param.s.is_some()) {
        return Err(usage("--fourier takes no --t/--s"));
    }
    let signal = read_signal(&a.input)?;
    let field = match kind {
        Kind::Fourier => endpoint_apply_with(&signal, &grid, &opts)?,
        Kind::Hfrft => hfrft_apply_with(&parameter(&a.param)?, &signal, &grid, method(a.engine.method), &opts)?,
        Kind::Sb => {
            let param = parameter(&a.param)?;
            let s = match (param.regime(), param.s()) {
                (Regime::Holomorphic, Some(s)) => s,
                _ => return Err(usage(format!("SB_s needs 0 < s < ∞; got {param}"))),
            };
            sb_apply(s, &signal, &grid, method(a.engine.method), &opts)?
        }
    };
    write_field_file(&field, &a.output)?;
    Ok(ExitStatus::Success)
}

fn endpoint(a: &EndpointArgs) -> Result<ExitStatus> {
    nonempty(&[&a.input, &a.output])?;
    let opts = EngineOptions { gh_order: a.gh_order, ..EngineOptions::default() };
    let signal = read_signal(&a.input)?;
    write_field_file(&endpoint_apply_with(&signal, &a.grid.0, &opts)?, &a.output)?;
    Ok(ExitStatus::Success)
}

fn inverse(a: &InverseArgs) -> Result<ExitStatus> {
    nonempty(&[&a.input, &a.output])?;
    let field = read_field(&a.input)?;
    let Gauge::Holomorphic { s } = field.gauge() else {
        return Err(usage("inverse needs a holomorphic-gauge field (transform --sb)"));
    };
    let x_axis = a.x.map_or(field.grid().x, |x| x.0);
    let r = a.r.unwrap_or_else(|| field.grid().p.min().abs().max(field.grid().p.max().abs()));
    let result = sb_inverse(s, &field, &x_axis.nodes(), r)?;
    eprintln!("truncation estimate: {:.3e}", result.truncation_estimate);
    if result.interpolated {
        eprintln!("note: some x fall between field columns; the field was interpolated linearly in x");
    }
    if let Some(w) = &result.warning {
        eprintln!("warning: {w}");
    }
    write_samples_file(&LineSamples::new(x_axis, result.values)?, &a.output)?;
    Ok(ExitStatus::Success)
}

fn sweep(a: &SweepArgs) -> Result<ExitStatus> {
    nonempty(&[&a.input, &a.output_dir])?;
    let opts = engine_options(&a.engine);
    let params = a.t.iter().map(|&t| TransformParameter::from_t(t)).collect::<holofrft_core::Result<Vec<_>>>()?;
    let signal = read_signal(&a.input)?;
    fs::create_dir_all(&a.output_dir).with_context(|| format!("creating {}", a.output_dir.display()))?;
    let mut index = csv::Writer::from_path(a.output_dir.join("index.csv"))?;
    index.write_record(["file", "t", "s"])?;
    for (k, param) in params.iter().enumerate() {
        let name = format!("field_{k:03}.csv");
        let field = hfrft_apply_with(param, &signal, &a.engine.grid.0, method(a.engine.method), &opts)?;
        write_field_file(&field, &a.output_dir.join(&name))?;
        let s = param.s().map_or_else(|| "inf".to_string(), fmt_f64);
        index.write_record([name, fmt_f64(param.t()), s])?;
    }
    index.flush()?;
    Ok(ExitStatus::Success)
}

fn verify(a: &VerifyArgs) -> Result<ExitStatus> {
    let tol = Tolerances::default().with_overrides(&a.tolerances).map_err(|e| usage(e.to_string()))?;
    let ids: Vec<u32> = if a.only.is_empty() { CHECKS.iter().map(|c| c.0).collect() } else { a.only.clone() };
    if let Some(bad) = ids.iter().find(|id| !CHECKS.iter().any(|c| c.0 == **id)) {
        return Err(usage(format!("unknown check id {bad}")));
    }
    let mut checks = Vec::new();
    for id in ids {
        let r = run_check(id, &tol);
        eprintln!("{r}");
        checks.push(r);
    }
    let report = Report { all_pass: checks.iter().all(|c| c.pass), checks };
    let json = serde_json::to_string_pretty(&report)?;
    match &a.report {
        Some(path) => fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => println!("{json}"),
    }
    Ok(if report.all_pass { ExitStatus::Success } else { ExitStatus::Failure })
}

fn basis(a: &BasisArgs) -> Result<ExitStatus> {
    nonempty(&[&a.output])?;
    let grid = a.grid.0;
    let points: Vec<Complex64> = grid.points().iter().map(|&(x, p)| Complex64::new(x, a.s * p)).collect();
    let opts = KernelOptions { gh_order: a.gh_order, ..KernelOptions::default() };
    let cache = build_basis_images_with(a.s, a.s, a.order, &points, None, opts)?;
    let file = File::create(&a.output).with_context(|| format!("creating {}", a.output.display()))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    w.write_record(["n", "x", "p", "re", "im", "provenance"])?;
    for n in 0..=cache.order() {
        let mut tables = vec![(cache.image(n), "kernel-quadrature")];
        if let Some(c) = cache.claimed(n) {
            tables.push((c, "claimed-closed-form"));
        }
        for (values, provenance) in tables {
            for (&(x, p), v) in grid.points().iter().zip(values) {
                w.write_record([
                    n.to_string(),
                    fmt_f64(x),
                    fmt_f64(p),
                    fmt_f64(v.re),
                    fmt_f64(v.im),
                    provenance.into(),
                ])?;
            }
        }
    }
    w.flush()?;
    for (n, d) in cache.deviations().iter().enumerate() {
        eprintln!("n = {n}: claimed vs quadrature, max relative deviation {d:.3e}");
    }
    Ok(ExitStatus::Success)
}

fn compare(a: &CompareArgs) -> Result<ExitStatus> {
    let field = read_field(&a.field)?;
    let SampledSignal::CoherentSum(terms) = read_signal(&a.signal)? else {
        return Err(usage("compare needs a coherent-sum JSON signal"));
    };
    let param = field.parameter();
    let exact = |x: f64, p: f64| -> Result<Complex64> {
        let mut sum = Complex64::new(0.0, 0.0);
        for (w, y) in &terms {
            sum += w * match (field.gauge(), param.regime()) {
                (Gauge::Holomorphic { s }, _) => sb_coherent(s, y, x, p)?,
                (Gauge::Weighted { .. }, Regime::Identity) => coherent_state(y, x),
                (Gauge::Weighted { .. }, Regime::Fourier) => hfrft_endpoint_coherent(y, x, p),
                (Gauge::Weighted { .. }, Regime::Holomorphic) => {
                    hfrft_coherent(&param, y, CoherentImageForm::Beta, x, p)?
                }
            };
        }
        Ok(sum)
    };
    let mut worst: f64 = 0.0;
    for (x, p, v) in field.iter() {
        let e = exact(x, p)?;
        worst = worst.max((v - e).norm() / e.norm().max(1.0));
    }
    let pass = worst <= a.tol;
    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "{} max error {worst:.3e} (tol {:.1e}) over {} points",
        if pass { "PASS" } else { "FAIL" },
        a.tol,
        field.grid().len()
    )?;
    Ok(if pass { ExitStatus::Success } else { ExitStatus::Failure })
}

fn nonempty(paths: &[&Path]) -> Result<()> {
    if paths.iter().any(|p| p.as_os_str().is_empty()) {
        return Err(usage("file paths must be nonempty"));
    }
    Ok(())
}
