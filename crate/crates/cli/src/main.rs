use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use jtorsion_cli::{
    parse_request, run_request, CliError, Command, Options, Request, DEFAULT_COUNT,
};

/// Exact joint torsion and determinant invariants from JSON requests.
///
/// Reads one request from FILE (or stdin) and writes one JSON response to
/// stdout. With --suite no input is read and the named verification suite runs.
#[derive(Parser, Debug)]
#[command(name = "jtorsion", version)]
struct Args {
    /// Request file; stdin when absent.
    file: Option<PathBuf>,
    /// Run a verification suite instead of reading a request.
    #[arg(long)]
    suite: Option<String>,
    /// Random seed; overrides the request's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of suite instances.
    #[arg(long, requires = "suite")]
    count: Option<u64>,
    /// Add wall-clock timing to the report.
    #[arg(long)]
    timing: bool,
    /// Pretty-print the response.
    #[arg(long)]
    pretty: bool,
}

fn load(args: &Args) -> Result<Request, CliError> {
    if let Some(suite) = &args.suite {
        return Ok(Request {
            cmd: Command::Verify,
            payload: json!({"suite": suite, "count": args.count.unwrap_or(DEFAULT_COUNT)}),
            seed: Some(args.seed.unwrap_or(0)),
        });
    }
    let mut text = String::new();
    match &args.file {
        Some(p) => {
            text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Parse(format!("stdin: {e}")))?;
        }
    }
    let mut req = parse_request(&text)?;
    if args.seed.is_some() {
        req.seed = args.seed;
    }
    Ok(req)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options {
        timing: args.timing,
    };
    let result = load(&args).and_then(|r| run_request(&r, opts));
    let (body, code) = match result {
        Ok(v) => (v, 0),
        Err(e) => {
            eprintln!(
                "jtorsion: {}",
                e.to_json()["error"]["message"].as_str().unwrap_or("")
            );
            (e.to_json(), e.exit_code())
        }
    };
    let text = if args.pretty {
        serde_json::to_string_pretty(&body)
    } else {
        serde_json::to_string(&body)
    }
    .expect("JSON value serializes");
    println!("{text}");
    ExitCode::from(code)
}
