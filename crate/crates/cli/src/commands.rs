use std::collections::BTreeMap;
use std::process::ExitCode;

use serde::Serialize;

use isoperf::isoperimetry::{
    bound_report, certified_table, cheeger, folner_value, laplacian_lambda1, profile_table,
    verify_main_inequality, BoundReport, Family, FolnerOptions, FolnerOutcome, FolnerResult,
    ProfilePoint, Scope, VerifyReport, Violation, EXHAUSTIVE_LIMIT,
};
use isoperf::transform::{u_continuous, u_discrete, GrowthModel, TransformResult};
use isoperf::{Ball, Error, Group, GrowthTable, Result};

use crate::output::{emit, json, opt, opt_real, real, Csv};
use crate::{Command, Format, OutputArgs};

const DEFAULT_LAMBDAS: [f64; 4] = [1.5, 2.0, 3.0, 8.0];

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Growth { group, radius, out } => growth(&group.load()?, radius, &out),
        Command::Bounds {
            group,
            radius,
            max_size,
            lambdas,
            out,
        } => bounds(&group.load()?, radius, max_size, lambdas, &out),
        Command::Transform {
            group,
            model,
            radius,
            max_size,
            ts,
            out,
        } => match (group.load(), model) {
            (Some(g), None) => transform_group(&g?, radius, max_size, &out),
            (None, Some(m)) => transform_model(&parse_model(&m)?, ts, &out),
            _ => Err(Error::InvalidSpec("give a group or --model".into())),
        },
        Command::Profile { group, max_size, out } => profile(&group.load()?, max_size, &out),
        Command::Folner {
            group,
            n,
            max_size,
            radius,
            seed,
            out,
        } => {
            let opts = FolnerOptions {
                max_size,
                ball_radius: radius,
                seed,
                ..FolnerOptions::default()
            };
            folner(&group.load()?, n, &opts, &out)
        }
        Command::Cheeger { group, out } => cheeger_cmd(&group.load()?, &out),
        Command::Verify {
            group,
            max_size,
            samples,
            seed,
            out,
        } => verify(&group.load()?, max_size, samples, seed, &out),
    }
}

fn positive(name: &str, v: usize) -> Result<usize> {
    if v == 0 {
        Err(Error::Domain(format!("--{name} must be positive")))
    } else {
        Ok(v)
    }
}

fn finish(out: &OutputArgs, text: String) -> Result<ExitCode> {
    emit(&text, out.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct GrowthJson<'a> {
    group: String,
    radius: usize,
    gamma: &'a [u64],
    sigma: &'a [u64],
    saturated: bool,
}

fn growth(group: &Group, radius: usize, out: &OutputArgs) -> Result<ExitCode> {
    let table = Ball::census(group, radius)?.growth_table();
    let text = match out.format {
        Format::Csv => {
            let mut buf = Vec::new();
            table.write_csv(&mut buf)?;
            String::from_utf8(buf).expect("csv is ascii")
        }
        Format::Json => json(&GrowthJson {
            group: group.spec().label(),
            radius: table.radius(),
            gamma: table.gamma(),
            sigma: table.sigma(),
            saturated: table.saturated(),
        })?,
    };
    finish(out, text)
}

/// A table on which every transform up to `max_t` is certified and
/// `γ(R) ≥ reach`, unless the group runs out first.
fn table_reaching(group: &Group, max_t: usize, reach: f64) -> Result<GrowthTable> {
    let start = certified_table(group, max_t)?;
    let mut ball = Ball::new(group);
    let mut radius = start.radius();
    loop {
        ball.extend_to(radius)?;
        let table = ball.growth_table();
        if table.saturated() || table.gamma_at(radius) as f64 >= reach {
            return Ok(table);
        }
        radius += 1;
    }
}

#[derive(Serialize)]
struct BoundsJson {
    group: String,
    table_radius: usize,
    rows: Vec<BoundReport>,
}

fn bounds(
    group: &Group,
    radius: Option<usize>,
    max_size: usize,
    lambdas: Vec<f64>,
    out: &OutputArgs,
) -> Result<ExitCode> {
    let max_size = positive("max-size", max_size)?;
    let lambdas = if lambdas.is_empty() { DEFAULT_LAMBDAS.to_vec() } else { lambdas };
    let top = lambdas.iter().cloned().fold(2.0, f64::max);
    let table = match radius {
        Some(r) => Ball::census(group, r)?.growth_table(),
        None => table_reaching(group, max_size, top * max_size as f64)?,
    };
    let rows = (1..=max_size)
        .map(|t| bound_report(&table, group.degree(), t as f64, &lambdas))
        .collect::<Result<Vec<_>>>()?;
    let text = match out.format {
        Format::Json => json(&BoundsJson {
            group: group.spec().label(),
            table_radius: table.radius(),
            rows,
        })?,
        Format::Csv => {
            let mut header = vec![
                "t".to_string(),
                "csc".into(),
                "gromov".into(),
                "u".into(),
                "strong".into(),
            ];
            header.extend(lambdas.iter().map(|l| format!("lambda_{}", real(*l))));
            header.extend(["certified".into(), "folner_floor".into()]);
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let mut csv = Csv::new(&header);
            for r in &rows {
                let mut fields = vec![
                    real(r.t),
                    opt_real(r.csc.value),
                    opt_real(r.gromov.value),
                    opt_real(r.u_discrete.value),
                    opt_real(r.strong.value),
                ];
                fields.extend(r.lambda_bounds.iter().map(|b| opt_real(b.bound.value)));
                fields.push(r.u_discrete.certified.to_string());
                fields.push(opt(r.folner_floor));
                csv.row(fields);
            }
            csv.finish()
        }
    };
    finish(out, text)
}

#[derive(Serialize)]
struct CurvePoint {
    t: f64,
    #[serde(flatten)]
    result: TransformResult,
}

#[derive(Serialize)]
struct CurveJson {
    source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    table_radius: Option<usize>,
    points: Vec<CurvePoint>,
}

fn curve_text(curve: &CurveJson, format: Format) -> Result<String> {
    match format {
        Format::Json => json(curve),
        Format::Csv => {
            let mut csv = Csv::new(&["t", "u_value", "argmax_r", "certified"]);
            for p in &curve.points {
                csv.row([
                    real(p.t),
                    real(p.result.value),
                    real(p.result.argmax),
                    p.result.certified.to_string(),
                ]);
            }
            Ok(csv.finish())
        }
    }
}

fn transform_group(group: &Group, radius: Option<usize>, max_size: usize, out: &OutputArgs) -> Result<ExitCode> {
    let max_size = positive("max-size", max_size)?;
    let table = match radius {
        Some(r) => Ball::census(group, r)?.growth_table(),
        None => certified_table(group, max_size)?,
    };
    let points = (1..=max_size)
        .map(|t| {
            let t = t as f64;
            u_discrete(&table, t).map(|result| CurvePoint { t, result })
        })
        .collect::<Result<Vec<_>>>()?;
    let curve = CurveJson {
        source: group.spec().label(),
        table_radius: Some(table.radius()),
        points,
    };
    finish(out, curve_text(&curve, out.format)?)
}

/// Parses `name` or `name:key=value,...`.
pub fn parse_model(text: &str) -> Result<GrowthModel> {
    let (name, rest) = text.split_once(':').unwrap_or((text, ""));
    let mut params = BTreeMap::new();
    for kv in rest.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::InvalidSpec(format!("model parameter {kv:?} is not k=v")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("model parameter {k} must be a number")))?;
        params.insert(k.trim().to_string(), v);
    }
    let get = |k: &str| {
        params
            .get(k)
            .copied()
            .ok_or_else(|| Error::InvalidSpec(format!("model {name} needs parameter {k}")))
    };
    match name.trim() {
        "polynomial" => GrowthModel::polynomial(get("c")?, get("d")?),
        "stretched_exp" => GrowthModel::stretched_exp(get("c")?, get("b")?, get("alpha")?),
        "exponential" => Ok(GrowthModel::exponential()),
        other => Err(Error::InvalidSpec(format!("unknown growth model {other:?}"))),
    }
}

fn transform_model(model: &GrowthModel, ts: Vec<f64>, out: &OutputArgs) -> Result<ExitCode> {
    let ts = if ts.is_empty() {
        (1..=24).map(|k| 10f64.powf(k as f64 / 4.0)).collect()
    } else {
        ts
    };
    let points = ts
        .into_iter()
        .map(|t| u_continuous(model, t).map(|result| CurvePoint { t, result }))
        .collect::<Result<Vec<_>>>()?;
    let curve = CurveJson {
        source: format!("{model:?}"),
        table_radius: None,
        points,
    };
    finish(out, curve_text(&curve, out.format)?)
}

#[derive(Serialize)]
struct ProfileJson {
    group: String,
    points: Vec<ProfilePoint>,
}

fn scope_name(scope: Scope) -> &'static str {
    match scope {
        Scope::ExactFinite => "exact_finite",
        Scope::ExactConnectedDp => "exact_connected_dp",
        Scope::UpperBoundOnly => "upper_bound_only",
    }
}

fn profile(group: &Group, max_size: usize, out: &OutputArgs) -> Result<ExitCode> {
    let max_size = positive("max-size", max_size)?;
    let points = profile_table(group, max_size)?;
    let text = match out.format {
        Format::Json => json(&ProfileJson {
            group: group.spec().label(),
            points,
        })?,
        Format::Csv => {
            let mut csv = Csv::new(&["m", "boundary_min", "scope"]);
            for p in &points {
                csv.row([p.m.to_string(), p.boundary_min.to_string(), scope_name(p.scope).into()]);
            }
            csv.finish()
        }
    };
    finish(out, text)
}

#[derive(Serialize)]
struct FolnerJson {
    group: String,
    #[serde(flatten)]
    result: FolnerResult,
}

fn folner(group: &Group, n: u64, opts: &FolnerOptions, out: &OutputArgs) -> Result<ExitCode> {
    let result = folner_value(group, n, opts)?;
    let text = match out.format {
        Format::Json => json(&FolnerJson {
            group: group.spec().label(),
            result,
        })?,
        Format::Csv => {
            let mut csv = Csv::new(&["n", "value", "lower", "upper", "status"]);
            let row = match &result.outcome {
                FolnerOutcome::Exact { value, .. } => {
                    [n.to_string(), value.to_string(), value.to_string(), value.to_string(), "exact".into()]
                }
                FolnerOutcome::Infinite { .. } => {
                    [n.to_string(), "inf".into(), "inf".into(), "inf".into(), "infinite".into()]
                }
                FolnerOutcome::Bounds { lower, upper } => [
                    n.to_string(),
                    String::new(),
                    lower.to_string(),
                    upper.map(|u| u.to_string()).unwrap_or_else(|| "inf".into()),
                    "bounds".into(),
                ],
            };
            csv.row(row);
            csv.finish()
        }
    };
    finish(out, text)
}

#[derive(Serialize)]
struct CheegerJson {
    group: String,
    h: String,
    h_value: f64,
    lambda1: f64,
    witness_size: usize,
    witness: isoperf::FiniteSubset,
    evaluated: usize,
}

fn cheeger_cmd(group: &Group, out: &OutputArgs) -> Result<ExitCode> {
    let c = cheeger(group)?;
    let lambda1 = laplacian_lambda1(group)?;
    let h_value = *c.h.numer() as f64 / *c.h.denom() as f64;
    let text = match out.format {
        Format::Json => json(&CheegerJson {
            group: group.spec().label(),
            h: c.h.to_string(),
            h_value,
            lambda1,
            witness_size: c.witness.len(),
            witness: c.witness,
            evaluated: c.evaluated,
        })?,
        Format::Csv => {
            let mut csv = Csv::new(&["h", "h_value", "lambda1", "witness_size", "evaluated"]);
            csv.row([
                c.h.to_string(),
                real(h_value),
                real(lambda1),
                c.witness.len().to_string(),
                c.evaluated.to_string(),
            ]);
            csv.finish()
        }
    };
    finish(out, text)
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    group: String,
    reports: &'a [VerifyReport],
    violations: Vec<&'a Violation>,
}

/// Families swept by `verify`: every subset of a small finite group, or
/// the rooted connected sets otherwise, plus optional random samples.
pub fn verify_families(group: &Group, max_size: usize, samples: usize, seed: u64) -> Vec<Family> {
    let small = group.order().is_some_and(|n| n as usize <= EXHAUSTIVE_LIMIT);
    let mut out = vec![if small {
        Family::AllSubsets
    } else {
        Family::Connected { max_size }
    }];
    if samples > 0 {
        out.push(Family::RandomConnected {
            count: samples,
            max_size,
            seed,
        });
    }
    out
}

fn verify(group: &Group, max_size: usize, samples: usize, seed: u64, out: &OutputArgs) -> Result<ExitCode> {
    let max_size = positive("max-size", max_size)?;
    let reports = verify_families(group, max_size, samples, seed)
        .iter()
        .map(|f| verify_main_inequality(group, f))
        .collect::<Result<Vec<_>>>()?;
    let violations: Vec<&Violation> = reports.iter().flat_map(|r| &r.violations).collect();
    let failed = !violations.is_empty();
    let text = match out.format {
        Format::Json => json(&VerifyJson {
            group: group.spec().label(),
            reports: &reports,
            violations,
        })?,
        Format::Csv => {
            let mut csv = Csv::new(&["family", "subsets_checked", "table_radius", "violations"]);
            for r in &reports {
                csv.row([
                    r.family.to_string(),
                    r.subsets_checked.to_string(),
                    r.table_radius.to_string(),
                    r.violations.len().to_string(),
                ]);
            }
            csv.finish()
        }
    };
    emit(&text, out.out.as_deref())?;
    if failed {
        eprintln!("{} inequality violation(s) found", reports.iter().map(|r| r.violations.len()).sum::<usize>());
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
