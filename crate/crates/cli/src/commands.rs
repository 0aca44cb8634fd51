use std::fmt::Write as _;

use hkeq::exterior::Label;
use hkeq::moduli::{derive_ranks, fold_once, kappa_generators, ExactShape};
use hkeq::obstructions::{full_report_with, ObstructionReport};
use hkeq::oracle::{
    build_koszul, evaluate_and_check_exactness, extract_degree_data, sample_points, validate_complex,
    GradedFreeComplex,
};
use hkeq::symmetric::{find_splitting_primes, format_series};
use hkeq::transgression::{
    gl_left_differentials, gl_leftright_differentials, obstruction_survival, stiefel_differentials,
    TransgressionTable,
};
use hkeq::{Verdict, WeightVector};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::input::{parse_complex, parse_degree_data, parse_degree_file};
use crate::{Command, Outcome, OutputFormat, RunConfig, Space, EXIT_MALFORMED, EXIT_PASS, EXIT_VIOLATION};

/// Pretty JSON with sorted keys and a trailing newline. Parsing the output
/// and rendering it again gives the same bytes.
pub fn canonical_json(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("Value always serializes");
    out.push('\n');
    out
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
fn int(b: &BigInt) -> Value {
    b.to_i64()
        .map_or_else(|| Value::String(b.to_string()), Value::from)
}

fn ints(bs: &[BigInt]) -> Value {
    Value::Array(bs.iter().map(int).collect())
}

fn emit(config: &RunConfig, exit_code: i32, json: Value, text: String) -> Outcome {
    let stdout = match config.format {
        OutputFormat::Json => canonical_json(&json),
        OutputFormat::Text => text,
    };
    Outcome::report(exit_code, stdout)
}

pub(crate) fn dispatch(config: &RunConfig, contents: &str) -> Outcome {
    match &config.command {
        Command::Check { .. } => check(config, contents),
        Command::Cohomology { .. } => cohomology(config, contents),
        Command::Differentials {
            space,
            u,
            v,
            variables,
        } => differentials(config, *space, u, v, *variables),
        Command::Koszul { m, output } => koszul(config, *m, output.is_some()),
        Command::Verify { .. } => verify(config, contents),
        Command::Fold { times, .. } => fold(config, contents, *times),
        Command::Primes { poly, bound } => primes(config, poly, *bound),
    }
}

fn verdict_code(report: &ObstructionReport) -> i32 {
    match (report.verdict, &report.infeasible) {
        (_, Some(_)) => EXIT_MALFORMED,
        (Verdict::Pass, None) => EXIT_PASS,
        (Verdict::Fail, None) => EXIT_VIOLATION,
    }
}

fn report_json(report: &ObstructionReport) -> Value {
    let classical: Vec<Value> = report
        .classical
        .iter()
        .map(|c| json!({"i": c.i, "lhs": int(&c.lhs), "rhs": int(&c.rhs), "ok": c.ok()}))
        .collect();
    let prefixes: Vec<Value> = report
        .prefixes
        .iter()
        .map(|p| {
            json!({
                "q": p.q,
                "orientation": p.orientation.to_string(),
                "rank": p.rank,
                "u": ints(&p.u),
                "window": [p.checked.0, p.checked.1],
                "vacuous": p.is_vacuous(),
                "violations": p.violations.iter().map(|v| json!({
                    "i": v.i, "lhs": int(&v.lhs), "rhs": int(&v.rhs)
                })).collect::<Vec<_>>(),
                "verdict": p.verdict().to_string(),
            })
        })
        .collect();
    json!({
        "variables": report.data.variables(),
        "terms": report.data.terms(),
        "ranks": report.ranks,
        "classical": classical,
        "prefixes": prefixes,
        "infeasible": report.infeasible.as_ref().map(|e| e.to_string()),
        "verdict": report.verdict.to_string(),
    })
}

fn report_text(report: &ObstructionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "complex {}", report.data);
    if let Some(reason) = &report.infeasible {
        let _ = writeln!(out, "{reason}");
        let _ = writeln!(out, "verdict: {}", report.verdict);
        return out;
    }
    let ranks: Vec<String> = report.ranks.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "prefix ranks r_q: {}", ranks.join(", "));
    let _ = writeln!(out, "classical power sums, B side vs A side:");
    for c in &report.classical {
        let relation = if c.ok() { "=" } else { "!=" };
        let flag = if c.ok() { "" } else { "  VIOLATED" };
        let _ = writeln!(out, "  i={}: {} {relation} {}{flag}", c.i, c.lhs, c.rhs);
    }
    let _ = writeln!(out, "prefix checks:");
    for p in &report.prefixes {
        let status = if p.is_vacuous() {
            "vacuous".to_string()
        } else if p.violations.is_empty() {
            format!("ok for i={}..{}", p.checked.0, p.checked.1)
        } else {
            format!("fails for i in {}..{}", p.checked.0, p.checked.1)
        };
        let _ = writeln!(
            out,
            "  {} q={} r={} u={}: {status}",
            p.orientation,
            p.q,
            p.rank,
            format_series(&p.u)
        );
        for v in &p.violations {
            let _ = writeln!(
                out,
                "    i={}: sigma_i(w) = {} but sum_j sigma_j(v) u_(i-j) = {}  VIOLATED",
                v.i, v.lhs, v.rhs
            );
        }
    }
    let _ = writeln!(out, "verdict: {}", report.verdict);
    out
}

fn check(config: &RunConfig, contents: &str) -> Outcome {
    let data = match parse_degree_data(contents) {
        Ok(data) => data,
        Err(err) => return Outcome::malformed(err),
    };
    let report = full_report_with(&data, config.orientation.into());
    let mut json = report_json(&report);
    json["command"] = json!("check");
    let mut outcome = emit(config, verdict_code(&report), json, report_text(&report));
    if let Some(reason) = &report.infeasible {
        outcome.stderr = format!("error: {reason}\n");
    }
    outcome
}

fn shape_json(shape: &ExactShape) -> Value {
    json!({
        "terms": shape.terms().iter().map(|t| t.entries().to_vec()).collect::<Vec<_>>(),
        "dims": shape.dims(),
        "ranks": shape.ranks()[1..].to_vec(),
    })
}

fn parse_shape(contents: &str) -> Result<ExactShape, Outcome> {
    let file = parse_degree_file(contents).map_err(Outcome::malformed)?;
    derive_ranks(file.terms.into_iter().map(WeightVector::new).collect()).map_err(Outcome::malformed)
}

fn cohomology(config: &RunConfig, contents: &str) -> Outcome {
    let shape = match parse_shape(contents) {
        Ok(shape) => shape,
        Err(outcome) => return outcome,
    };
    let generators = kappa_generators(&shape);
    let rank = shape.cohomology_rank();
    let json = json!({
        "command": "cohomology",
        "shape": shape_json(&shape),
        "generator_count": shape.generator_count(),
        "cohomology_rank": rank.to_u64().map_or_else(|| Value::String(rank.to_string()), Value::from),
        "generators": generators.iter().map(|k| json!({
            "label": k.label().to_string(),
            "i": k.i,
            "j": k.j,
            "degree": k.degree(),
            "support": [k.i, k.end],
        })).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    let _ = writeln!(text, "shape {shape}");
    let _ = writeln!(text, "dims c: {}", join(&shape.dims()));
    let _ = writeln!(text, "ranks t: {}", join(&shape.ranks()[1..]));
    let _ = writeln!(
        text,
        "|N| = {}, Lambda(N) has rank {rank}",
        shape.generator_count()
    );
    for k in &generators {
        let _ = writeln!(
            text,
            "  {:<8} degree {:<3} support {}..{}",
            k.label().to_string(),
            k.degree(),
            k.i,
            k.end
        );
    }
    emit(config, EXIT_PASS, json, text)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn space_name(space: Space) -> &'static str {
    match space {
        Space::Stiefel => "stiefel",
        Space::GlLeft => "gl-left",
        Space::GlLeftRight => "gl-leftright",
    }
}

fn differentials(
    config: &RunConfig,
    space: Space,
    u: &[i64],
    v: &[i64],
    variables: Option<usize>,
) -> Outcome {
    let (u, v) = (WeightVector::from(u), WeightVector::from(v));
    let table: Result<TransgressionTable, String> = match space {
        Space::GlLeft if !v.is_empty() => Err("gl-left takes only --u".into()),
        Space::GlLeft => gl_left_differentials(u.len(), &u).map_err(|e| e.to_string()),
        Space::GlLeftRight => gl_leftright_differentials(u.len(), &u, &v).map_err(|e| e.to_string()),
        Space::Stiefel => stiefel_differentials(u.len(), v.len(), &u, &v).map_err(|e| e.to_string()),
    };
    let table = match table {
        Ok(table) => table,
        Err(err) => return Outcome::malformed(err),
    };
    if variables == Some(0) {
        return Outcome::malformed("--variables must be at least 1");
    }
    let first = table.first_nonzero();
    let survival = variables.map(|m| (m, obstruction_survival(m, first.as_ref().map(|(k, c)| (*k, c)))));

    let json = json!({
        "command": "differentials",
        "space": space_name(space),
        "u": u.entries(),
        "v": v.entries(),
        "records": table.records.iter().map(|r| json!({
            "generator": r.generator,
            "page": r.page(),
            "coefficient": int(&r.coefficient),
            "modulo": ints(&r.modulo),
            "status": r.status.to_string(),
        })).collect::<Vec<_>>(),
        "first_nonzero": first.as_ref().map(|(k, c)| json!({"k": k, "coefficient": int(c)})),
        "survival": survival.map(|(m, verdict)| json!({"variables": m, "verdict": verdict.to_string()})),
    });
    let mut text = String::new();
    let _ = writeln!(text, "{} u={u} v={v}", space_name(space));
    for r in &table.records {
        let _ = writeln!(text, "  {r}");
    }
    match &first {
        Some((k, c)) => {
            let _ = writeln!(text, "first nonzero: k={k}, C={c}");
        }
        None => {
            let _ = writeln!(text, "first nonzero: none");
        }
    }
    if let Some((m, verdict)) = survival {
        let _ = writeln!(text, "survival for m={m}: {verdict}");
    }
    let code = match survival {
        Some((_, Verdict::Fail)) => EXIT_VIOLATION,
        _ => EXIT_PASS,
    };
    emit(config, code, json, text)
}

/// Complex in the file schema.
pub(crate) fn complex_json(c: &GradedFreeComplex) -> Value {
    let matrices: Vec<Value> = c
        .matrices()
        .iter()
        .map(|m| {
            Value::Array(
                (0..m.rows())
                    .map(|r| Value::Array(m.row(r).iter().map(|p| Value::String(p.to_string())).collect()))
                    .collect(),
            )
        })
        .collect();
    json!({
        "variables": c.variables(),
        "shifts": c.shifts(),
        "matrices": matrices,
    })
}

fn koszul(config: &RunConfig, m: usize, to_file: bool) -> Outcome {
    let complex = match build_koszul(m) {
        Ok(c) => c,
        Err(err) => return Outcome::malformed(err),
    };
    let file = canonical_json(&complex_json(&complex));
    if !to_file {
        return Outcome::report(EXIT_PASS, file);
    }
    let dims: Vec<usize> = complex.shifts().iter().map(Vec::len).collect();
    let json = json!({"command": "koszul", "variables": m, "dims": dims});
    let text = format!("Koszul complex on {m} variables, dims {}\n", join(&dims));
    let mut outcome = emit(config, EXIT_PASS, json, text);
    outcome.artifact = Some(file);
    outcome
}

fn verify(config: &RunConfig, contents: &str) -> Outcome {
    let complex = match parse_complex(contents) {
        Ok(c) => c,
        Err(err) => return Outcome::malformed(err),
    };
    let violations = validate_complex(&complex);
    let points = sample_points(complex.variables(), config.points, config.seed);
    let checks: Vec<_> = points
        .iter()
        .map(|p| evaluate_and_check_exactness(&complex, p).expect("sampled points have the right length"))
        .collect();
    let exact = checks.iter().all(|c| c.is_exact());
    let data = extract_degree_data(&complex);
    let report = full_report_with(&data, config.orientation.into());
    let valid = violations.is_empty();

    let code = if report.infeasible.is_some() {
        EXIT_MALFORMED
    } else if valid && exact && report.verdict.is_pass() {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    };
    let verdict = Verdict::from_ok(code == EXIT_PASS);
    let json = json!({
        "command": "verify",
        "seed": config.seed,
        "valid": valid,
        "violations": violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "points": points.iter().zip(&checks).map(|(p, c)| json!({
            "point": p.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "ranks": c.ranks,
            "exact": c.is_exact(),
        })).collect::<Vec<_>>(),
        "exact": exact,
        "obstructions": report_json(&report),
        "verdict": verdict.to_string(),
    });
    let mut text = String::new();
    let _ = writeln!(
        text,
        "complex on {} variables, dims {}",
        complex.variables(),
        join(&complex.shifts().iter().map(Vec::len).collect::<Vec<_>>())
    );
    if valid {
        let _ = writeln!(text, "homogeneous, d^2 = 0");
    }
    for v in &violations {
        let _ = writeln!(text, "  {v}");
    }
    let failing = checks.iter().filter(|c| !c.is_exact()).count();
    let _ = writeln!(
        text,
        "exact at {} of {} points (seed {})",
        checks.len() - failing,
        checks.len(),
        config.seed
    );
    for (p, c) in points.iter().zip(&checks).filter(|(_, c)| !c.is_exact()) {
        let _ = writeln!(text, "  not exact at ({}), ranks {}", join(p), join(&c.ranks));
    }
    text.push_str(&report_text(&report));
    let _ = writeln!(text, "overall: {verdict}");
    emit(config, code, json, text)
}

fn fold(config: &RunConfig, contents: &str, times: usize) -> Outcome {
    let mut shape = match parse_shape(contents) {
        Ok(shape) => shape,
        Err(outcome) => return outcome,
    };
    let mut steps = vec![json!({"shape": shape_json(&shape), "pullback": []})];
    let mut text = format!("start  {shape}\n");
    for step in 1..=times {
        let fold = match fold_once(&shape) {
            Ok(f) => f,
            Err(err) => return Outcome::malformed(format!("fold {step}: {err}")),
        };
        let images: Vec<(Label, String)> = kappa_generators(&fold.shape)
            .iter()
            .map(|k| {
                let label = k.label();
                let image = fold.pullback.image(&label).expect("zero default");
                (label, image.to_string())
            })
            .collect();
        let _ = writeln!(text, "fold {step} {}", fold.shape);
        for (label, image) in &images {
            let _ = writeln!(text, "  {label} -> {image}");
        }
        steps.push(json!({
            "shape": shape_json(&fold.shape),
            "pullback": images.iter().map(|(l, i)| json!({"generator": l.to_string(), "image": i})).collect::<Vec<_>>(),
        }));
        shape = fold.shape;
    }
    let json = json!({"command": "fold", "steps": steps});
    emit(config, EXIT_PASS, json, text)
}

fn format_poly(coefficients: &[i64]) -> String {
    let degree = coefficients.len().saturating_sub(1);
    let mut out = String::new();
    for (idx, &c) in coefficients.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let power = degree - idx;
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        let magnitude = c.unsigned_abs();
        match (power, magnitude) {
            (0, _) => {
                let _ = write!(out, "{magnitude}");
            }
            (_, 1) => {}
            _ => {
                let _ = write!(out, "{magnitude}");
            }
        }
        match power {
            0 => {}
            1 => out.push('x'),
            _ => {
                let _ = write!(out, "x^{power}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn primes(config: &RunConfig, poly: &[i64], bound: u64) -> Outcome {
    let primes = match find_splitting_primes(poly, bound) {
        Ok(p) => p,
        Err(err) => return Outcome::malformed(err),
    };
    let json = json!({
        "command": "primes",
        "poly": poly,
        "bound": bound,
        "primes": primes,
    });
    let text = format!(
        "primes p <= {bound} with {} split mod p: {}\n",
        format_poly(poly),
        join(&primes)
    );
    emit(config, EXIT_PASS, json, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_formatting() {
        assert_eq!(format_poly(&[1, 0, 1]), "x^2 + 1");
        assert_eq!(format_poly(&[1, -3, 0, 2]), "x^3 - 3x^2 + 2");
        assert_eq!(format_poly(&[1, -1]), "x - 1");
        assert_eq!(format_poly(&[0]), "0");
    }

    #[test]
    fn big_integers_become_strings() {
        assert_eq!(int(&BigInt::from(-5)), json!(-5));
        let big = BigInt::from(i64::MAX) * 4;
        assert_eq!(int(&big), json!(big.to_string()));
    }

    #[test]
    fn koszul_file_round_trips() {
        for m in 1..=4 {
            let k = build_koszul(m).unwrap();
            let text = canonical_json(&complex_json(&k));
            assert_eq!(parse_complex(&text).unwrap(), k);
        }
    }
}
