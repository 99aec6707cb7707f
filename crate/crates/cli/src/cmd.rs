//! Subcommand implementations.

use serde_json::{json, Value};

use kronecker_hall::exactfield::MatrixFq;
use kronecker_hall::expr::{parse, Expr};
use kronecker_hall::generators::Generators;
use kronecker_hall::hallcore::{HallAlgebra, HallElem};
use kronecker_hall::kronrep::{classify, KronRep, Orientation};
use kronecker_hall::verify::{interpolate_constants, negative_controls, run_with, Checker, SuiteConfig, SUITE_IDS};

use crate::env::{calibration_file, usage, CliError, Env};
use crate::{Cli, Command, Format};

pub fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.cmd {
        Command::Classify { file } => {
            let env = Env::new(&cli.run, &[])?;
            cmd_classify(&env, file)
        }
        Command::Check {
            suite,
            suites,
            n,
            max,
            negative_controls,
        } => {
            let env = Env::new(&cli.run, &[2, 3])?;
            let mut ids: Vec<String> = suites.clone();
            ids.extend(suite.iter().cloned());
            cmd_check(&env, ids, *n, *max, *negative_controls)
        }
        Command::Table { expr } => {
            let env = Env::new(&cli.run, &[2])?;
            cmd_table(&env, &expr.join(" "))
        }
        Command::Calibrate => {
            let env = Env::new(&cli.run, &[2, 3])?;
            cmd_calibrate(&env)
        }
        Command::Interpolate { expr, degree } => {
            let env = Env::new(&cli.run, &[2, 3, 5, 7])?;
            cmd_interpolate(&env, &expr.join(" "), *degree)
        }
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn matrix(q: u32, v: &Value, shape: (usize, usize), name: &str) -> Result<MatrixFq, CliError> {
    let bad = || usage(format!("{name}: expected a {}x{} integer matrix", shape.0, shape.1));
    let rows = v.as_array().ok_or_else(bad)?;
    // a matrix with no rows is written []
    if rows.len() != shape.0 {
        return Err(bad());
    }
    let mut data = Vec::with_capacity(shape.0 * shape.1);
    for row in rows {
        let row = row.as_array().filter(|r| r.len() == shape.1).ok_or_else(bad)?;
        for x in row {
            let x = x.as_i64().ok_or_else(bad)?;
            data.push(x.rem_euclid(q as i64) as u32);
        }
    }
    Ok(MatrixFq::from_flat(q, shape.0, shape.1, data))
}

/// `{"q", "dims": [d0, d1], "x1", "x2", "orientation"?}`; `dims` may be
/// omitted when `x1` has at least one row.
fn read_rep(env: &Env, path: &std::path::Path) -> Result<KronRep, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let q = v["q"].as_u64().ok_or_else(|| usage("missing field q"))? as u32;
    if !kronecker_hall::exactfield::is_supported_prime(q) {
        return Err(usage(format!("unsupported q = {q}")));
    }
    let orientation = match v["orientation"].as_str().unwrap_or("plus") {
        "plus" => Orientation::Plus,
        "minus" => Orientation::Minus,
        o => return Err(usage(format!("unknown orientation {o}"))),
    };
    let dims = match v.get("dims") {
        Some(d) => serde_json::from_value::<(usize, usize)>(d.clone()).map_err(|e| usage(format!("dims: {e}")))?,
        None => {
            let rows = v["x1"].as_array().ok_or_else(|| usage("missing field x1"))?;
            let cols = rows.first().and_then(Value::as_array).map(Vec::len);
            let (r, c) = (rows.len(), cols.ok_or_else(|| usage("x1 has no rows; give dims"))?);
            match orientation {
                Orientation::Plus => (c, r),
                Orientation::Minus => (r, c),
            }
        }
    };
    if dims.0 + dims.1 > env.max_dim {
        return Err(usage(format!("dimension {dims:?} exceeds --max-dim {}", env.max_dim)));
    }
    let shape = match orientation {
        Orientation::Plus => (dims.1, dims.0),
        Orientation::Minus => (dims.0, dims.1),
    };
    let x1 = matrix(q, &v["x1"], shape, "x1")?;
    let x2 = matrix(q, &v["x2"], shape, "x2")?;
    KronRep::new(q, dims, x1, x2, orientation).map_err(|e| usage(e.to_string()))
}

fn cmd_classify(env: &Env, path: &std::path::Path) -> Result<u8, CliError> {
    let x = read_rep(env, path)?;
    let c = classify(&x).map_err(|e| CliError::Failure(e.to_string()))?;
    match env.format {
        Format::Json => print_json(&c.to_json()),
        Format::Table => println!("{c}"),
    }
    Ok(0)
}

fn params_text(r: &kronecker_hall::verify::CheckReport) -> String {
    r.params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_check(env: &Env, ids: Vec<String>, n: Option<u32>, max: u32, controls: bool) -> Result<u8, CliError> {
    if ids.is_empty() {
        return Err(usage("name a check id or `all`"));
    }
    let mut suites = Vec::new();
    for id in ids {
        if id == "all" {
            suites.clear();
            break;
        }
        if !SUITE_IDS.contains(&id.as_str()) {
            return Err(usage(format!(
                "unknown check `{id}`; known: all, {}",
                SUITE_IDS.join(", ")
            )));
        }
        suites.push(id);
    }
    let top = n.map_or(max, |n| max.max(n));
    if 2 * top as usize > env.max_dim {
        return Err(usage(format!("grade ({top},{top}) exceeds --max-dim {}", env.max_dim)));
    }
    let conv = env.convention()?;
    let cfg = SuiteConfig {
        q_list: env.q_list.clone(),
        max_n: max,
        suites,
        convention: conv,
        index: n,
        ..SuiteConfig::default()
    };
    let algs = env.algebras(conv)?;
    let checkers: Vec<Checker> = algs.iter().cloned().map(Checker::from_algebra).collect();
    let summary = run_with(&checkers, &cfg)?;
    env.persist(&algs)?;
    if summary.reports.is_empty() {
        return Err(usage("no check matches the selection"));
    }
    let negative = if controls { Some(negative_controls(&cfg)?) } else { None };
    match env.format {
        Format::Json => {
            let mut v = summary.to_json();
            if let Some(neg) = &negative {
                v["negative_controls"] = neg
                    .iter()
                    .map(|c| {
                        json!({
                            "id": c.original.id,
                            "params": c.original.params,
                            "q": c.original.q,
                            "detected": c.detected(),
                        })
                    })
                    .collect();
            }
            print_json(&v);
        }
        Format::Table => {
            for r in &summary.reports {
                let verdict = match (r.pass, &r.waived) {
                    (true, _) => "PASS",
                    (false, Some(_)) => "WAIVED",
                    (false, None) => "FAIL",
                };
                let unit = r.unit.map(|u| format!(" unit=eps^{u}")).unwrap_or_default();
                println!("{verdict:<6} {:<22} q={} {}{unit}", r.id, r.q, params_text(r));
            }
            if let Some(neg) = &negative {
                for c in neg {
                    let verdict = if c.detected() { "caught" } else { "missed" };
                    println!(
                        "{verdict:<6} {:<22} q={} {} (perturbed twist)",
                        c.original.id,
                        c.original.q,
                        params_text(&c.original)
                    );
                }
            }
            println!("{} checks, {} failed", summary.reports.len(), summary.failures().len());
        }
    }
    Ok(summary.exit_code() as u8)
}

/// Componentwise bound on the grades an expression can reach.
fn grade_bound(e: &Expr) -> (usize, usize) {
    match e {
        Expr::Named(tag) => tag.grade(),
        Expr::Int(_) | Expr::EpsPow(_) => (0, 0),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (x, y) = (grade_bound(a), grade_bound(b));
            (x.0.max(y.0), x.1.max(y.1))
        }
        Expr::Mul(a, b) => {
            let (x, y) = (grade_bound(a), grade_bound(b));
            (x.0 + y.0, x.1 + y.1)
        }
        Expr::Div(a, _) | Expr::Neg(a) => grade_bound(a),
        Expr::Pow(a, k) => {
            let x = grade_bound(a);
            (x.0 * *k as usize, x.1 * *k as usize)
        }
    }
}

fn parse_bounded(env: &Env, text: &str) -> Result<Expr, CliError> {
    let e = parse(text).map_err(|e| usage(format!("`{text}`: {e}")))?;
    let g = grade_bound(&e);
    if g.0 + g.1 > env.max_dim {
        return Err(usage(format!(
            "`{text}` reaches grade {g:?}, beyond --max-dim {}",
            env.max_dim
        )));
    }
    Ok(e)
}

fn evaluate(env: &Env, e: &Expr) -> Result<(Vec<HallAlgebra>, Vec<HallElem>), CliError> {
    let algs = env.algebras(env.convention()?)?;
    let values = algs
        .iter()
        .map(|a| e.eval(&Generators::new(a.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    env.persist(&algs)?;
    Ok((algs, values))
}

fn cmd_table(env: &Env, text: &str) -> Result<u8, CliError> {
    let e = parse_bounded(env, text)?;
    let (algs, values) = evaluate(env, &e)?;
    match env.format {
        Format::Json => {
            let out: Vec<Value> = algs
                .iter()
                .zip(&values)
                .map(|(a, v)| {
                    json!({
                        "expr": text,
                        "q": a.q(),
                        "convention": a.convention().hash(),
                        "element": v.to_json(),
                    })
                })
                .collect();
            print_json(&Value::from(out));
        }
        Format::Table => {
            for (a, v) in algs.iter().zip(&values) {
                println!("# {text} over F_{} ({} classes)", a.q(), v.len());
                for (c, coeff) in v.terms() {
                    println!("{c}\t{coeff}");
                }
            }
        }
    }
    Ok(0)
}

fn cmd_calibrate(env: &Env) -> Result<u8, CliError> {
    let res = env.calibration(&env.q_list)?;
    match env.format {
        Format::Json => print_json(&res.to_json()),
        Format::Table => {
            println!(
                "{} of {} conventions satisfy {} at q = {:?}",
                res.survivors.len(),
                res.searched,
                res.anchors.join(", "),
                res.q_list
            );
            for s in &res.survivors {
                let c = &s.convention;
                println!(
                    "{}  order={:?} t={:?} u={:?} divided={:?}",
                    s.hash, c.factor_order, c.t, c.u, c.divided
                );
                for o in &s.outcomes {
                    println!("  {} q={}: {}", o.anchor, o.q, o.detail);
                }
            }
            if let Some(dir) = &env.cache_dir {
                println!("saved {}", dir.join(calibration_file(&env.q_list)).display());
            }
        }
    }
    Ok(if res.survivors.is_empty() { 1 } else { 0 })
}

fn cmd_interpolate(env: &Env, text: &str, degree: Option<usize>) -> Result<u8, CliError> {
    let e = parse_bounded(env, text)?;
    let degree = degree.unwrap_or(env.q_list.len().saturating_sub(2));
    let (_, values) = evaluate(env, &e)?;
    let fits = interpolate_constants(&values, degree).map_err(|e| CliError::Failure(e.to_string()))?;
    let integral = fits.values().all(|f| f.is_integral());
    match env.format {
        Format::Json => {
            let coeffs: serde_json::Map<String, Value> = fits.iter().map(|(k, f)| (k.clone(), f.to_json())).collect();
            print_json(&json!({
                "expr": text,
                "q_list": env.q_list,
                "degree": degree,
                "integral": integral,
                "coefficients": coeffs,
            }));
        }
        Format::Table => {
            for (k, f) in &fits {
                println!("{k}\t{f}");
            }
            println!("{} coefficient types, integral: {integral}", fits.len());
        }
    }
    Ok(0)
}
