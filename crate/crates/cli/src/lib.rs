//! JSON request handling for the `jtorsion` binary.
//!
//! A request is `{"cmd": ..., "payload": {...}, "seed": n}`. Responses are
//! `{"value": ..., "report": {...}}`; failures are `{"error": {...}}` with
//! exit code 2 (domain) or 3 (parse).

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use jtorsion::complex::{BasedExactSequence, ChainComplex};
use jtorsion::joint::{joint_torsion_quad, JointTorsionReport};
use jtorsion::toeplitz::exact::{
    make_symbol, tame_symbol, toeplitz_joint_torsion, toeplitz_pseudoinverse_formula,
    AnalyticSymbol,
};
use jtorsion::toeplitz::numeric::{
    closed_form_di, default_buffer, numeric_det_invariant, TrigPoly,
};
use jtorsion::verify::{run_instance, Suite};
use jtorsion::{Error, ExactMatrix, KoszulQuadruple, QiScalar};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_PARSE: u8 = 3;

pub const DEFAULT_COUNT: u64 = 100;
pub const DEFAULT_SIZES: [usize; 3] = [32, 64, 128];

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Parse(String),
    Domain { name: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Domain { .. } => EXIT_DOMAIN,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Parse(m) => json!({"error": {"name": "parse_error", "message": m}}),
            CliError::Domain { name, message } => {
                json!({"error": {"name": name, "message": message}})
            }
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => CliError::Parse(e.to_string()),
            other => CliError::Domain {
                name: other.name(),
                message: other.to_string(),
            },
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Torsion,
    JointTorsionPair,
    JointTorsionQuad,
    ToeplitzExact,
    ToeplitzNumeric,
    Verify,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub cmd: Command,
    #[serde(default)]
    pub payload: Value,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    /// Adds wall-clock timing to the report, which makes output nondeterministic.
    pub timing: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TorsionPayload {
    /// Dimensions `V_n, …, V_0`.
    spaces: Vec<usize>,
    /// `d_n, …, d_1`.
    differentials: Vec<ExactMatrix>,
    /// Basis matrices for `V_n, …, V_0`, columns in standard coordinates.
    #[serde(default)]
    bases: Option<Vec<ExactMatrix>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairPayload {
    a: ExactMatrix,
    b: ExactMatrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuadPayload {
    a: ExactMatrix,
    b: ExactMatrix,
    c: ExactMatrix,
    d: ExactMatrix,
}

/// Symbol as written; classification happens after parsing so that a root
/// on the circle is a domain error rather than a schema error.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolPayload {
    leading: QiScalar,
    #[serde(default)]
    roots: Vec<QiScalar>,
}

impl SymbolPayload {
    fn build(self) -> CliResult<AnalyticSymbol> {
        Ok(make_symbol(self.leading, self.roots)?)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ToeplitzExactPayload {
    f: SymbolPayload,
    g: SymbolPayload,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ToeplitzNumericPayload {
    f: TrigPoly,
    g: TrigPoly,
    #[serde(default)]
    sizes: Option<Vec<usize>>,
    #[serde(default)]
    buffer: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyPayload {
    suite: String,
    #[serde(default)]
    count: Option<u64>,
    #[serde(default)]
    start: u64,
}

/// Rounds to 15 significant digits; the JSON writer then prints the shortest
/// decimal for the rounded value.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn float(x: f64) -> Value {
    serde_json::Number::from_f64(round15(x)).map_or(Value::Null, Value::Number)
}

fn complex(z: Complex64) -> Value {
    json!([float(z.re), float(z.im)])
}

fn parse_payload<T: DeserializeOwned>(payload: &Value) -> CliResult<T> {
    serde_path_to_error::deserialize(payload).map_err(|e| {
        let path = e.path().to_string();
        CliError::Parse(format!("payload at {path}: {}", e.into_inner()))
    })
}

pub fn parse_request(text: &str) -> CliResult<Request> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Parse(format!("request at {path}: {}", e.into_inner()))
    })
}

pub fn run_text(text: &str, opts: Options) -> CliResult<Value> {
    run_request(&parse_request(text)?, opts)
}

pub fn run_request(r: &Request, opts: Options) -> CliResult<Value> {
    let start = Instant::now();
    let mut out = match r.cmd {
        Command::Torsion => torsion(parse_payload(&r.payload)?),
        Command::JointTorsionPair => {
            let p: PairPayload = parse_payload(&r.payload)?;
            let q = KoszulQuadruple::from_pair(p.a, p.b)?;
            Ok(joint_response(&joint_torsion_quad(&q)?))
        }
        Command::JointTorsionQuad => {
            let p: QuadPayload = parse_payload(&r.payload)?;
            let q = KoszulQuadruple::new(p.a, p.b, p.c, p.d)?;
            Ok(joint_response(&joint_torsion_quad(&q)?))
        }
        Command::ToeplitzExact => toeplitz_exact(parse_payload(&r.payload)?),
        Command::ToeplitzNumeric => toeplitz_numeric(parse_payload(&r.payload)?),
        Command::Verify => verify(parse_payload(&r.payload)?, r.seed.unwrap_or(0)),
    }?;
    if opts.timing {
        if let Some(Value::Object(report)) = out.get_mut("report") {
            report.insert(
                "timing_ms".into(),
                float(start.elapsed().as_secs_f64() * 1e3),
            );
        }
    }
    Ok(out)
}

fn torsion(p: TorsionPayload) -> CliResult<Value> {
    let complex = ChainComplex::from_top(&p.spaces, &p.differentials)?;
    let seq = match p.bases {
        None => BasedExactSequence::new(complex)?,
        Some(mut bases) => {
            bases.reverse();
            BasedExactSequence::with_bases(complex, bases)?
        }
    };
    let t = seq.torsion_scalar();
    Ok(json!({
        "value": t.value.to_string(),
        "report": {
            "basis_fingerprint": format!("{:016x}", t.basis_fingerprint),
            "spaces": p.spaces,
        }
    }))
}

fn joint_response(r: &JointTorsionReport) -> Value {
    let mut report = serde_json::to_value(r).expect("report serializes");
    if let Value::Object(m) = &mut report {
        m.remove("value");
        m.insert("tau_ad".into(), json!(r.tau_ad.value.to_string()));
        m.insert("tau_bc".into(), json!(r.tau_bc.value.to_string()));
    }
    json!({"value": r.value.to_string(), "report": report})
}

fn toeplitz_exact(p: ToeplitzExactPayload) -> CliResult<Value> {
    let (f, g) = (p.f.build()?, p.g.build()?);
    let value = toeplitz_joint_torsion(&f, &g)?;
    Ok(json!({
        "value": value.to_string(),
        "report": {
            "tame_symbol": tame_symbol(&f, &g)?.to_string(),
            "pseudoinverse_formula": toeplitz_pseudoinverse_formula(&f, &g)?.to_string(),
            "winding": [f.winding(), g.winding()],
        }
    }))
}

fn toeplitz_numeric(p: ToeplitzNumericPayload) -> CliResult<Value> {
    let sizes = p.sizes.unwrap_or_else(|| DEFAULT_SIZES.to_vec());
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::InvalidArgument(
            "sizes must be a nonempty list of positive integers".into(),
        )
        .into());
    }
    let buffer = p.buffer.unwrap_or_else(|| default_buffer(&p.f, &p.g));
    let exact = closed_form_di(&p.f, &p.g);
    let rows = sizes
        .par_iter()
        .map(|&n| numeric_det_invariant(&p.f, &p.g, n, buffer).map(|v| (n, v)))
        .collect::<jtorsion::Result<Vec<_>>>()?;
    let table: Vec<Value> = rows
        .iter()
        .map(|&(n, v)| json!({"n": n, "value": complex(v), "error": float((v - exact).norm())}))
        .collect();
    let last = rows.last().expect("nonempty").1;
    Ok(json!({
        "value": complex(last),
        "report": {"closed_form": complex(exact), "buffer": buffer, "table": table},
    }))
}

/// A request that reruns exactly one instance of a suite.
pub fn reproducer(suite: Suite, seed: u64, index: u64) -> Value {
    json!({"cmd": "verify", "seed": seed, "payload": {"suite": suite.name(), "start": index, "count": 1}})
}

fn verify(p: VerifyPayload, seed: u64) -> CliResult<Value> {
    let suite: Suite = p.suite.parse()?;
    let count = p.count.unwrap_or(DEFAULT_COUNT);
    let end = p
        .start
        .checked_add(count)
        .ok_or_else(|| CliError::from(Error::InvalidArgument("start + count overflows".into())))?;
    let mut results: Vec<(u64, jtorsion::Result<jtorsion::verify::Check>)> = (p.start..end)
        .into_par_iter()
        .map(|i| (i, run_instance(suite, seed, i)))
        .collect();
    results.sort_by_key(|r| r.0);

    let mut tallies: Map<String, Value> = Map::new();
    let mut failures = Vec::new();
    let mut passed = 0u64;
    for (i, res) in &results {
        match res {
            Ok(check) => {
                for &(name, ok) in &check.properties {
                    let entry = tallies
                        .entry(name)
                        .or_insert_with(|| json!({"pass": 0, "fail": 0}));
                    let key = if ok { "pass" } else { "fail" };
                    entry[key] = json!(entry[key].as_u64().unwrap_or(0) + 1);
                }
                if check.pass() {
                    passed += 1;
                } else {
                    let failed: Vec<&str> = check
                        .properties
                        .iter()
                        .filter(|p| !p.1)
                        .map(|p| p.0)
                        .collect();
                    failures.push(json!({
                        "index": i,
                        "failed": failed,
                        "detail": check.detail,
                        "reproducer": reproducer(suite, seed, *i),
                    }));
                }
            }
            Err(e) => failures.push(json!({
                "index": i,
                "error": {"name": e.name(), "message": e.to_string()},
                "reproducer": reproducer(suite, seed, *i),
            })),
        }
    }
    let mut report = json!({
        "suite": suite.name(),
        "seed": seed,
        "start": p.start,
        "count": count,
        "passed": passed,
        "failed": count - passed,
        "properties": tallies,
        "failures": failures,
    });
    if suite == Suite::NumericConvergence {
        let details: Vec<Value> = results
            .iter()
            .filter_map(|(i, r)| {
                r.as_ref()
                    .ok()
                    .map(|c| json!({"index": i, "detail": c.detail}))
            })
            .collect();
        report["instances"] = json!(details);
    }
    Ok(json!({"value": format!("{passed}/{count}"), "report": report}))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_fifteen_digits() {
        assert_eq!(
            round15(std::f64::consts::PI).to_string(),
            "3.14159265358979"
        );
        assert_eq!(round15(0.0), 0.0);
        assert_eq!(float(1.0 / 3.0).to_string(), "0.333333333333333");
    }

    #[test]
    fn errors_map_to_exit_codes() {
        assert_eq!(CliError::from(Error::ZeroDivisor).exit_code(), EXIT_DOMAIN);
        let parse: CliError = "1/0".parse::<QiScalar>().unwrap_err().into();
        assert_eq!(parse.exit_code(), EXIT_PARSE);
    }
}
