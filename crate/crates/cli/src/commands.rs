use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use hypflute::dynamics::{iinj_estimate, inj_profile, orbit_closure_witness, REPORT_VERSION};
use hypflute::flute::{
    below_hypercycle_check, injectivity_lower_bound_check, ray_in_domain_check, select_generators_with,
    verify_pingpong, GroupSpec,
};
use hypflute::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{load_spec, parse_enumeration, svg, write_file, CliError, ConstructArgs, InjArgs, PlotArgs, Status, VerifyArgs, WitnessArgs};

pub(crate) struct Context {
    pub tol: f64,
    pub timestamp: bool,
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    status: &'static str,
    detail: Value,
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    version: &'static str,
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<u64>,
    tolerance: f64,
    #[serde(flatten)]
    body: T,
    verdict: &'static str,
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Internal(e.to_string())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn emit<T: Serialize>(ctx: &Context, command: &'static str, body: T, verdict: &'static str, path: Option<&std::path::Path>) -> Result<(), CliError> {
    let Some(path) = path else {
        return Ok(());
    };
    let generated_at = ctx
        .timestamp
        .then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
    let report = Report { version: REPORT_VERSION, command, generated_at, tolerance: ctx.tol, body, verdict };
    let mut text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Internal(e.to_string()))?;
    text.push('\n');
    write_file(path, &text)
}

pub(crate) fn construct(_ctx: &Context, a: &ConstructArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    if a.count == 0 {
        return Err(CliError::Input("--count must be at least 1".into()));
    }
    let enumeration = parse_enumeration(&a.enumeration)?;
    let spec = select_generators_with(&enumeration, a.count, a.n_max)?;
    for g in &spec.generators {
        writeln!(out, "m = {}: q = {}, n = {}", g.m, g.q(), g.n()).map_err(io_err)?;
    }
    write_file(&a.out, &spec.to_json())?;
    writeln!(out, "wrote {} generators to {}", spec.len(), a.out.display()).map_err(io_err)?;
    Ok(Status::Success)
}

fn hypercycle_check(spec: &GroupSpec) -> Result<Check, CliError> {
    let mut failures = Vec::new();
    for g in &spec.generators {
        if !below_hypercycle_check(&g.element, true)? {
            failures.push(g.label(true));
        }
        // the forward bisectors are only claimed to clear C(-1+i) for q ≥ 2
        if g.q().to_f64() >= 2.0 && !below_hypercycle_check(&g.element, false)? {
            failures.push(g.label(false));
        }
    }
    Ok(Check {
        name: "below-hypercycle",
        status: status(failures.is_empty()),
        detail: json!({ "failures": failures }),
    })
}

pub(crate) fn verify(ctx: &Context, a: &VerifyArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    if a.word_len == 0 {
        return Err(CliError::Input("--word-len must be at least 1".into()));
    }
    if a.samples == 0 {
        return Err(CliError::Input("--samples must be at least 1".into()));
    }
    let spec = load_spec(&a.spec)?;
    if spec.is_empty() {
        return Err(CliError::Input("spec has no generators".into()));
    }
    let mut checks = Vec::new();

    let records = spec.check_conditions();
    checks.push(Check {
        name: "selection-conditions",
        status: status(records.iter().all(|r| r.holds)),
        detail: to_value(&records),
    });

    checks.push(match verify_pingpong(&spec) {
        Ok(cert) => Check { name: "ping-pong", status: "PASS", detail: to_value(&cert) },
        Err(e @ Error::Overlap { .. }) => Check { name: "ping-pong", status: "FAIL", detail: json!({ "error": e.to_string() }) },
        Err(e) => return Err(e.into()),
    });

    let ray = ray_in_domain_check(&spec, a.ray_heights, a.ray_max, ctx.tol);
    checks.push(Check { name: "ray-in-domain", status: status(ray.pass), detail: to_value(&ray) });

    checks.push(hypercycle_check(&spec)?);

    checks.push(match injectivity_lower_bound_check(&spec, a.word_len, a.samples, ctx.tol) {
        Ok(report) => Check { name: "injectivity", status: "PASS", detail: to_value(&report) },
        Err(e @ Error::InjectivityViolation { .. }) => {
            Check { name: "injectivity", status: "FAIL", detail: json!({ "error": e.to_string() }) }
        }
        Err(e) => return Err(e.into()),
    });

    let pass = checks.iter().all(|c| c.status == "PASS");
    for c in &checks {
        writeln!(out, "{}: {}", c.name, c.status).map_err(io_err)?;
    }
    writeln!(out, "verdict: {}", status(pass)).map_err(io_err)?;
    emit(ctx, "verify", json!({ "spec_generators": spec.len(), "checks": checks }), status(pass), a.out.as_deref())?;
    Ok(if pass { Status::Success } else { Status::Failed })
}

pub(crate) fn witness(ctx: &Context, a: &WitnessArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    if !a.q.exceeds_one() {
        return Err(CliError::Input(format!("q must exceed 1, got {}", a.q)));
    }
    let spec = load_spec(&a.spec)?;
    let report = orbit_closure_witness(&spec, a.q, a.count)?;
    let last = report.terms.last().expect("at least one term");
    writeln!(
        out,
        "g_{{ln {}}} u ∈ closure(h_R u): residual {:e} after {} terms (closed form {:e}), |α∞| increasing: {} — {}",
        a.q,
        last.residual,
        report.terms.len(),
        last.closed_form_residual,
        report.boundary_images_increasing,
        status(report.pass)
    )
    .map_err(io_err)?;
    emit(ctx, "witness", &report, status(report.pass), a.out.as_deref())?;
    Ok(if report.pass { Status::Success } else { Status::Failed })
}

pub(crate) fn plot(_ctx: &Context, a: &PlotArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let spec = load_spec(&a.spec)?;
    let scene = svg::Scene::from_spec(&spec, a.what, a.scale);
    write_file(&a.svg, &scene.render())?;
    writeln!(out, "wrote {} ({} curves, {} scale)", a.svg.display(), scene.curves.len(), scene.scale_name())
        .map_err(io_err)?;
    Ok(Status::Success)
}

pub(crate) fn inj(ctx: &Context, a: &InjArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    if !(a.tmin < a.tmax) {
        return Err(CliError::Input(format!("--tmin ({}) must be below --tmax ({})", a.tmin, a.tmax)));
    }
    let spec = load_spec(&a.spec)?;
    let profile = inj_profile(&spec.isometries(), a.tmin, a.tmax, a.points, a.word_len)?;
    let upper = 2.0 * 2f64.acosh() + 1e-6;
    let (estimate, verdict, note) = match iinj_estimate(&profile, a.window) {
        Ok(est) if est < spec.c - ctx.tol => (Some(est), "FAIL", "estimate below C"),
        Ok(est) if est > upper => (Some(est), "INCONCLUSIVE", "estimate above 2·arccosh(2); extend --tmax past more axis crossings"),
        Ok(est) => (Some(est), "PASS", "C <= IInj estimate < ∞"),
        Err(Error::ProfileTooShort { .. }) => (None, "INCONCLUSIVE", "profile too short for a liminf estimate"),
        Err(e) => return Err(e.into()),
    };
    match estimate {
        Some(est) => writeln!(out, "IInj estimate {est} (C = {}, upper reference {upper}): {verdict}", spec.c),
        None => writeln!(out, "{} profile values, no liminf verdict: {verdict}", profile.inj.len()),
    }
    .map_err(io_err)?;
    let body = json!({
        "word_len": a.word_len,
        "upper_bound_note": "values are minima over reduced words up to word_len, hence upper bounds on Inj",
        "window_factor": a.window,
        "C": spec.c,
        "estimate": estimate,
        "note": note,
        "profile": to_value(&profile),
    });
    emit(ctx, "inj", body, verdict, a.out.as_deref())?;
    Ok(if verdict == "FAIL" { Status::Failed } else { Status::Success })
}
