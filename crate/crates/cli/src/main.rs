//! `qwitt`: JSON front end for the qwitt library.
//!
//! Exit codes: 0 success, 2 parse error, 3 domain error, 4 integrality violation.

mod commands;
mod doc;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;

use commands::{BridgeOp, NeckOp, Opts, SeriesOp, SymOp, WittOp};

#[derive(Parser, Debug)]
#[command(name = "qwitt", version, about = "Exact deformed Witt vector and necklace ring arithmetic")]
struct Cli {
    #[command(subcommand)]
    group: Group,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Witt vector operations
    Witt {
        #[arg(value_enum)]
        op: WittOp,
    },
    /// Necklace ring operations
    Neck {
        #[arg(value_enum)]
        op: NeckOp,
    },
    /// Power-series presentation
    Series {
        #[arg(value_enum)]
        op: SeriesOp,
    },
    /// Maps between Witt and necklace coordinates
    Bridge {
        #[arg(value_enum)]
        op: BridgeOp,
    },
    /// q-deformed symmetric functions
    Symfun {
        #[arg(value_enum)]
        op: SymOp,
    },
}

fn exit_code(e: &qwitt::Error) -> u8 {
    match e {
        qwitt::Error::Parse(_) => 2,
        qwitt::Error::IntegralityViolation(_) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let detail = e.to_string();
            println!("{}", json!({"error": "ParseError", "detail": detail.trim()}));
            return ExitCode::from(2);
        }
    };
    let o = &cli.opts;
    let result = match cli.group {
        Group::Witt { op } => commands::witt(op, o),
        Group::Neck { op } => commands::neck(op, o),
        Group::Series { op } => commands::series(op, o),
        Group::Bridge { op } => commands::bridge(op, o),
        Group::Symfun { op } => commands::symfun(op, o),
    };
    match result {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", json!({"error": e.name(), "detail": e.to_string()}));
            ExitCode::from(exit_code(&e))
        }
    }
}
