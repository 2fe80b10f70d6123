use betachar::airy::{airy_multivariate, AiryQuadSpec};
use betachar::asymptotics::{verify_case, SaddleCase};
use betachar::constants::{
    coefficient_a_k, coefficient_b_k, coefficient_gamma_m, coefficient_phi, coefficient_psi_even, coefficient_psi_odd,
    coefficient_xi, gamma_beta_n, gaussian_g, laguerre_w, morris_m, selberg_s,
};
use betachar::ensembles::{expect_exact, mc_expect};
use betachar::hyper::{eval_pfq, eval_two_set};
use betachar::jack::jack_expansion;
use betachar::limits::{convergence_report, FiniteMethod};
use betachar::partitions::enumerate_partitions;
use betachar::pde_checks::{pde_residual, FSource};
use betachar::{
    Complex, EnsembleSpec, Error, HyperSeriesSpec, Precision, Regime, Result, ScalingCoefficient, TruncationPolicy, C64,
};
use serde_json::{json, Map, Value};

use crate::args::*;

const DEFAULT_TABLE_WEIGHT: u32 = 4;
const DEFAULT_PDE_WEIGHT: u32 = 30;

pub fn run(cli: &Cli) -> Result<String> {
    let (result, default_format) = match &cli.command {
        Command::Jack(JackCmd::Table { alpha, vars }) => (jack_table(cli, *alpha, *vars)?, Format::Json),
        Command::Hyper(cmd) => (hyper_eval(cli, cmd)?, Format::Json),
        Command::Airy(AiryCmd::Eval { alpha, s, nodes }) => (airy_eval(*alpha, s, *nodes)?, Format::Json),
        Command::Constants(a) => (constants(a)?, Format::Json),
        Command::Expect(a) => (expect(cli, a)?, Format::Json),
        Command::LimitCheck(a) => (limit_check(cli, a)?, Format::Csv),
        Command::PdeCheck(a) => (pde_check(cli, a)?, Format::Json),
        Command::Saddle(SaddleCmd::Verify { case, n_list }) => (saddle_verify(*case, n_list)?, Format::Csv),
    };
    let config = serde_json::to_value(cli).expect("config serializes");
    Ok(match cli.format.unwrap_or(default_format) {
        Format::Json => render_json(config, result),
        Format::Csv => render_csv(config, result),
    })
}

/// A command's output: scalar fields, or a table with an optional summary.
enum Output {
    Record(Value),
    Table { header: Vec<&'static str>, rows: Vec<Vec<f64>>, summary: Option<Value> },
}

fn render_json(config: Value, out: Output) -> String {
    let result = match out {
        Output::Record(v) => v,
        Output::Table { header, rows, summary } => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().zip(r).map(|(h, v)| (h.to_string(), json!(v))).collect()))
                .collect();
            json!({ "rows": rows, "summary": summary })
        }
    };
    let mut s = serde_json::to_string_pretty(&json!({ "config": config, "result": result })).expect("json");
    s.push('\n');
    s
}

fn render_csv(config: Value, out: Output) -> String {
    let mut s = format!("# config: {config}\n");
    match out {
        Output::Record(Value::Object(map)) => {
            let keys: Vec<&String> = map.keys().collect();
            s += &keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(",");
            s.push('\n');
            let vals: Vec<String> = map.values().map(csv_cell).collect();
            s += &vals.join(",");
            s.push('\n');
        }
        Output::Record(v) => {
            s += &csv_cell(&v);
            s.push('\n');
        }
        Output::Table { header, rows, summary } => {
            s += &header.join(",");
            s.push('\n');
            for r in rows {
                s += &r.iter().map(|&v| number(v)).collect::<Vec<_>>().join(",");
                s.push('\n');
            }
            if let Some(sum) = summary {
                s += &format!("# summary: {sum}\n");
            }
        }
    }
    s
}

fn number(v: f64) -> String {
    serde_json::Number::from_f64(v).map(|n| n.to_string()).unwrap_or_else(|| v.to_string())
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(t) => t.clone(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Null => String::new(),
        other => format!("\"{}\"", other.to_string().replace('"', "\"\"")),
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

/// Parses `a`, `a+bi`, `a-bi`, `bi` and `i`.
pub fn parse_complex(text: &str) -> Result<C64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let fail = || bad(format!("cannot parse complex number '{text}'"));
    let num = |v: &str| -> Result<f64> {
        match v {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => v.parse::<f64>().map_err(|_| fail()),
        }
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::new(t.parse::<f64>().map_err(|_| fail())?, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| {
        (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E')
    });
    match split {
        Some(k) => Ok(Complex::new(body[..k].parse::<f64>().map_err(|_| fail())?, num(&body[k..])?)),
        None => Ok(Complex::new(0.0, num(body)?)),
    }
}

fn parse_all(v: &[String]) -> Result<Vec<C64>> {
    v.iter().map(|t| parse_complex(t)).collect()
}

fn cjson(z: C64) -> Value {
    json!([z.re, z.im])
}

fn ensemble(kind: EnsembleArg, n: usize, beta: f64, l1: f64, l2: f64) -> EnsembleSpec {
    match kind {
        EnsembleArg::H => EnsembleSpec::hermite(n, beta),
        EnsembleArg::L => EnsembleSpec::laguerre(n, beta, l1),
        EnsembleArg::J => EnsembleSpec::jacobi(n, beta, l1, l2),
    }
}

fn regime(r: RegimeArg) -> Regime {
    match r {
        RegimeArg::Hard => Regime::Hard,
        RegimeArg::Bulk => Regime::Bulk,
        RegimeArg::Soft => Regime::Soft,
    }
}

fn chunk(flat: &[f64], n: usize, what: &str) -> Result<Vec<Vec<f64>>> {
    if n == 0 || flat.len() % n != 0 {
        return Err(bad(format!("{what} has {} values, not a multiple of n = {n}", flat.len())));
    }
    Ok(flat.chunks(n).map(|c| c.to_vec()).collect())
}

fn jack_table(cli: &Cli, alpha: f64, vars: usize) -> Result<Output> {
    let top = cli.max_weight.unwrap_or(DEFAULT_TABLE_WEIGHT);
    let mut entries = Vec::new();
    for w in 0..=top {
        for kappa in enumerate_partitions(w, vars, None) {
            let e = jack_expansion(&kappa, alpha, vars)?;
            let coeffs: Vec<Value> = e
                .coeffs
                .iter()
                .rev()
                .map(|(mu, c)| json!({ "monomial": mu.parts(), "coefficient": c }))
                .collect();
            entries.push(json!({ "partition": kappa.parts(), "coefficients": coeffs }));
        }
    }
    Ok(Output::Record(Value::Array(entries)))
}

fn hyper_eval(cli: &Cli, cmd: &HyperCmd) -> Result<Output> {
    let HyperCmd::Eval { alpha, upper, lower, x, two_set, y, precision } = cmd;
    let mut truncation = TruncationPolicy::default();
    if let Some(w) = cli.max_weight {
        truncation.max_weight = w;
    }
    if let Some(t) = cli.tol {
        truncation.rel_tol = t;
    }
    let precision = match precision {
        PrecisionArg::Double => Precision::Double,
        PrecisionArg::Extended => Precision::Extended,
        PrecisionArg::Auto => Precision::Auto,
    };
    let spec = HyperSeriesSpec::new(*alpha, &parse_all(upper)?, &parse_all(lower)?)
        .with_truncation(truncation)
        .with_precision(precision);
    let xs = parse_all(x)?;
    let v = if *two_set {
        eval_two_set(&spec, &xs, &parse_all(y)?, xs.len())?
    } else {
        if !y.is_empty() {
            return Err(bad("--y needs --two-set"));
        }
        eval_pfq(&spec, &xs)?
    };
    Ok(Output::Record(json!({
        "value_re": v.value.re,
        "value_im": v.value.im,
        "ln_value_re": v.ln_value.re,
        "ln_value_im": v.ln_value.im,
        "weight_used": v.weight_used,
        "terminated": v.terminated,
        "last_shell": v.last_shell,
    })))
}

fn airy_eval(alpha: f64, s: &[f64], nodes: Option<usize>) -> Result<Output> {
    let mut spec = AiryQuadSpec::new(alpha, s.len());
    if let Some(k) = nodes {
        spec = spec.with_nodes(k);
    }
    let v = airy_multivariate(&spec, s)?;
    Ok(Output::Record(json!({ "value": v.value, "im_residual": v.im_residual, "est_error": v.est_error })))
}

fn need<T: Copy>(v: Option<T>, flag: &str, name: ConstantName) -> Result<T> {
    v.ok_or_else(|| bad(format!("constant {name:?} needs --{flag}")))
}

fn constants(a: &ConstantsArgs) -> Result<Output> {
    use ConstantName as C;
    let name = a.name;
    let beta = || need(a.beta, "beta", name);
    let small_n = || need(a.n, "n", name);
    let big_n = || need(a.big_n, "N", name);
    let spec = || -> Result<EnsembleSpec> {
        Ok(ensemble(need(a.ensemble, "ensemble", name)?, big_n()?, beta()?, a.lambda1, a.lambda2))
    };
    let c: ScalingCoefficient = match name {
        C::S => selberg_s(small_n()?, a.lambda1, a.lambda2, need(a.lambda3, "lambda3", name)?)?,
        C::W => laguerre_w(a.lambda1, beta()?, big_n()?)?,
        C::G => gaussian_g(beta()?, big_n()?)?,
        C::Gamma => gamma_beta_n(beta()?, small_n()?)?,
        C::M => morris_m(small_n()?, need(a.a, "a", name)?, need(a.b, "b", name)?, need(a.alpha, "alpha", name)?)?,
        C::Phi => coefficient_phi(&spec()?, small_n()?)?,
        C::Psi => match a.l {
            None => coefficient_psi_even(&spec()?, need(a.m, "m", name)?, need(a.u, "u", name)?)?,
            Some(l) => coefficient_psi_odd(&spec()?, need(a.m, "m", name)?, l, need(a.u, "u", name)?)?,
        },
        C::Xi => coefficient_xi(&spec()?, small_n()?)?,
        C::Ak => coefficient_a_k(beta()?, need(a.k, "k", name)?)?,
        C::Bk => coefficient_b_k(beta()?, need(a.k, "k", name)?)?,
        C::Gammam => coefficient_gamma_m(beta()?, need(a.m, "m", name)?)?,
    };
    Ok(Output::Record(json!({
        "log_re": c.log_value.re,
        "log_im": c.log_value.im,
        "value_re": c.value.re,
        "value_im": c.value.im,
    })))
}

fn expect(cli: &Cli, a: &ExpectArgs) -> Result<Output> {
    let spec = ensemble(a.ensemble, a.big_n, a.beta, a.lambda1, a.lambda2);
    let s = parse_all(&a.s)?;
    let r = match a.mc {
        Some(draws) => mc_expect(&spec, &s, draws, cli.seed)?,
        None => expect_exact(&spec, &s)?,
    };
    Ok(Output::Record(json!({
        "K_re": r.k.re,
        "K_im": r.k.im,
        "phi_re": r.phi.re,
        "phi_im": r.phi.im,
        "ln_K_re": r.ln_k.re,
        "ln_K_im": r.ln_k.im,
        "method": r.method,
        "stderr": r.stderr,
    })))
}

fn limit_check(cli: &Cli, a: &LimitArgs) -> Result<Output> {
    let template = ensemble(a.ensemble, a.n_list.first().copied().unwrap_or(1), a.beta, a.lambda1, a.lambda2);
    let grid = chunk(&a.s, a.n, "--s")?;
    let method = match a.mc {
        Some(draws) => FiniteMethod::MonteCarlo { draws, seed: cli.seed },
        None => FiniteMethod::Exact,
    };
    let r = convergence_report(&template, regime(a.regime), a.u, &grid, &a.n_list, method)?;
    let mut rows = Vec::new();
    for (i, &nn) in r.n_values.iter().enumerate() {
        for (p, v) in r.rescaled[i].iter().enumerate() {
            rows.push(vec![nn as f64, p as f64, v.re, v.im, r.limit[p].re, r.limit[p].im, r.rel_errors[i], r.phases[i]]);
        }
    }
    let summary = json!({
        "fitted_order": r.fitted_order,
        "fit_residual": r.fit_residual,
        "limit_value": r.limit.iter().map(|&z| cjson(z)).collect::<Vec<_>>(),
        "rel_errors": r.rel_errors,
    });
    Ok(Output::Table {
        header: vec!["N", "point", "rescaled_re", "rescaled_im", "limit_re", "limit_im", "rel_error", "phase"],
        rows,
        summary: Some(summary),
    })
}

fn pde_check(cli: &Cli, a: &PdeArgs) -> Result<Output> {
    let grid = chunk(&a.grid, a.n, "--grid")?;
    let source = match a.source {
        SourceArg::Series => FSource::Series { max_weight: cli.max_weight.unwrap_or(DEFAULT_PDE_WEIGHT) },
        SourceArg::Classical => FSource::Classical,
        SourceArg::Quadrature => FSource::Quadrature,
        SourceArg::Separable => FSource::Separable { j: a.j },
    };
    let r = pde_residual(regime(a.regime), a.beta, a.lambda1, a.n, source, &grid)?;
    let mut map = Map::new();
    map.insert("max_residual".into(), json!(r.max_residual));
    map.insert("per_point".into(), json!(r.per_point));
    map.insert("equation_index".into(), json!(r.equation_index));
    map.insert("note".into(), json!(r.note));
    Ok(Output::Record(Value::Object(map)))
}

fn saddle_verify(case: CaseArg, n_list: &[f64]) -> Result<Output> {
    let case = match case {
        CaseArg::Watson2 => SaddleCase::Watson2,
        CaseArg::Gauss2 => SaddleCase::Gauss2,
        CaseArg::Airy1 => SaddleCase::Airy1,
        CaseArg::Twosaddle2 => SaddleCase::TwoSaddle2,
    };
    let rows = verify_case(case, n_list)?
        .into_iter()
        .map(|r| {
            vec![
                r.big_n,
                r.ratio.re,
                r.ratio.im,
                r.brute.re,
                r.brute.im,
                r.brute_error,
                r.leading.re,
                r.leading.im,
                r.scale,
            ]
        })
        .collect();
    Ok(Output::Table {
        header: vec!["N", "ratio_re", "ratio_im", "brute_re", "brute_im", "brute_error", "leading_re", "leading_im", "log_scale"],
        rows,
        summary: None,
    })
}
