mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use edge_ends::Error;

/// Version of the JSON report layout.
pub const SCHEMA: &str = "edge-ends/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "edge-ends", version, about = "Edge-ends, Menger duality and T-path packing on presented infinite graphs")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Deepest truncation examined before giving up on stabilization
    #[arg(long, global = true)]
    pub nmax: Option<u32>,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Most free vertices the parity enumeration may visit
    #[arg(long, global = true, default_value_t = edge_ends::tpath::DEFAULT_ENUMERATION_BOUND as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub bound: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Strands, edge-end classes and dominators of a presentation
    Analyze { file: String },
    /// The finite truncation G_n
    Truncate {
        file: String,
        #[arg(short = 'n', long = "depth", default_value_t = 3)]
        depth: u32,
    },
    /// Edge-disjoint A-B paths and a minimum cut lying on them
    Menger {
        #[arg(long)]
        graph: String,
        /// Comma-separated vertex labels
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Edge-disjoint T-paths in an inner-Eulerian multigraph
    Pack {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        terminals: String,
    },
    /// Menger duality between two sets of edge-ends
    MengerEnds {
        file: String,
        /// Comma-separated selectors: class:N, N, strand:ARM or strand:ARM:COMPONENT:RESIDUE
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// T-path packing where terminals are core vertices and edge-ends
    LcEnds {
        file: String,
        /// Comma-separated core vertex labels and end selectors
        #[arg(long)]
        terminals: String,
    },
    /// Check a menger-ends or lc-ends report against its presentation
    Verify {
        file: String,
        result: String,
    },
    /// Randomized or exhaustive property suite
    Oracle {
        suite: String,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long = "max-v", value_parser = clap::value_parser!(u32).range(1..))]
        max_v: Option<u32>,
        #[arg(long = "max-e", value_parser = clap::value_parser!(u64).range(1..))]
        max_e: Option<u64>,
    },
}

/// A failure together with its exit code: 1 for domain errors, 2 for input errors.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
    pub detail: Value,
}

impl Failure {
    pub fn io(path: &str, err: std::io::Error) -> Failure {
        Failure { code: 2, kind: "io", message: format!("{path}: {err}"), detail: Value::Null }
    }

    pub fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, kind: "usage", message: message.into(), detail: Value::Null }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let message = e.to_string();
        match e {
            Error::Parse(_) | Error::Presentation(_) => Failure { code: 2, kind: "parse", message, detail: Value::Null },
            Error::ParityViolation { side, cut_size } => {
                Failure { code: 1, kind: "parity_violation", message, detail: json!({ "side": side, "cut_size": cut_size }) }
            }
            _ => Failure { code: 1, kind: "domain", message, detail: Value::Null },
        }
    }
}

/// Output of a successful command and whether it counts as a pass.
pub struct Outcome {
    pub body: String,
    pub ok: bool,
}

fn error_json(f: &Failure) -> String {
    let mut err = json!({ "kind": f.kind, "message": f.message });
    if !f.detail.is_null() {
        err["detail"] = f.detail.clone();
    }
    serde_json::to_string_pretty(&json!({ "schema": SCHEMA, "error": err })).expect("json")
}

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            println!("{}", error_json(&Failure::usage(e.render().to_string().trim())));
            return ExitCode::from(2);
        }
    };
    match commands::run(&cfg) {
        Ok(out) => {
            print!("{}", out.body);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            println!("{}", error_json(&f));
            ExitCode::from(f.code)
        }
    }
}
