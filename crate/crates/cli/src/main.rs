mod cli;
mod commands;
mod config;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use sha2::{Digest, Sha256};

use cli::{Cli, Command, Format};
use commands::{Failure, Outcome, INPUT};
use config::Config;

/// Everything printed for one invocation. Deterministic unless `--timings` is given.
#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a [String],
    input_digest: String,
    status: &'a str,
    exit_code: u8,
    output: &'a serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<u128>,
}

fn digest(text: &str) -> String {
    format!("sha256:{:x}", Sha256::digest(text.as_bytes()))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let cfg = Config::load(cli.config.as_deref()).map_err(|message| Failure { exit: INPUT, message })?;
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure { exit: INPUT, message: e.to_string() })?;
    }
    match &cli.command {
        Command::Mutate(a) => commands::mutate(a),
        Command::Class(a) => commands::class(a, &cfg),
        Command::Growth(a) => commands::growth(a, &cfg),
        Command::Certify(a) => commands::certify(a),
        Command::Unfold(c) => commands::unfold(c, &cfg),
        Command::Catalog(c) => commands::catalog(c),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(INPUT),
            };
        }
    };
    let start = Instant::now();
    let result = run(&cli);
    let elapsed = cli.timings.then(|| start.elapsed().as_millis());
    let echo = &argv[1..];
    let (outcome, error) = match result {
        Ok(o) => (o, None),
        Err(f) => {
            let status = if f.exit == INPUT { "InputError" } else { "LimitExceeded" };
            let o = Outcome {
                status: status.into(),
                exit: f.exit,
                output: serde_json::json!({ "error": f.message }),
                text: String::new(),
                input: String::new(),
            };
            (o, Some(f.message))
        }
    };
    match cli.format {
        Format::Text => {
            if let Some(msg) = &error {
                eprintln!("error: {msg}");
            }
            print!("{}", outcome.text);
            println!("status: {}", outcome.status);
            if let Some(ms) = elapsed {
                println!("wall time: {ms} ms");
            }
        }
        Format::Structured => {
            let report = RunReport {
                command: echo,
                input_digest: digest(&outcome.input),
                status: &outcome.status,
                exit_code: outcome.exit,
                output: &outcome.output,
                wall_time_ms: elapsed,
            };
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
    }
    ExitCode::from(outcome.exit)
}
