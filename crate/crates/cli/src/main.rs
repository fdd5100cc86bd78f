//! `gts`: canonical map checks from small session scripts.
//!
//! `gts run script.gts` executes a script; `gts corpus` replays the built-in
//! examples against their pinned verdicts. Exit codes: 0 all verdicts
//! computed (and matched, where pinned); 1 a pin or oracle comparison
//! mismatched; 2 bad input.

mod corpus;
mod lex;
mod parse;
mod report;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};
use gts_core::polyring::MonomialOrder;

use crate::run::Flags;

#[derive(Parser)]
#[command(name = "gts", version, about = "divided power vs symmetric tensor comparisons")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CommonFlags {
    /// Monomial order underlying every Groebner computation.
    #[arg(long, value_parser = ["degrevlex", "lex"], default_value = "degrevlex")]
    order: String,
    /// Coefficient degree budget for the graded oracle.
    #[arg(long, default_value_t = 6)]
    dmax: u32,
    /// Largest tolerated ambient tensor rank m^n.
    #[arg(long, default_value_t = 100_000)]
    guardrail: u128,
    /// Run the graded oracle alongside each canonical check and compare
    /// verdicts.
    #[arg(long)]
    oracle: bool,
    /// Re-verify each reported witness against the defining submodules.
    #[arg(long, value_name = "BOOL", default_value_t = true, action = ArgAction::Set)]
    witness_verify: bool,
    /// Machine-readable report (schema 1) instead of text.
    #[arg(long)]
    json: bool,
    /// Include wall-clock timings; output stops being byte-stable.
    #[arg(long)]
    timings: bool,
    /// Run independent queries on separate threads; report order is kept.
    #[arg(long)]
    parallel: bool,
}

impl CommonFlags {
    fn flags(&self) -> Flags {
        Flags {
            order: match self.order.as_str() {
                "lex" => MonomialOrder::Lex,
                _ => MonomialOrder::DegRevLex,
            },
            d_max: self.dmax,
            guardrail: self.guardrail,
            oracle: self.oracle,
            witness_verify: self.witness_verify,
            timings: self.timings,
            parallel: self.parallel,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and execute a session script.
    Run {
        /// Path to a .gts script.
        file: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Replay built-in example cases against pinned verdicts.
    Corpus {
        /// Run every non-stretch case (the default).
        #[arg(long)]
        all: bool,
        /// Run a single case by id (stretch cases only run this way).
        #[arg(long, value_name = "ID", conflicts_with = "all")]
        case: Option<String>,
        #[command(flatten)]
        flags: CommonFlags,
    },
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Run { file, flags } => run_cmd(&file, &flags),
        Cmd::Corpus { all: _, case, flags } => corpus_cmd(case.as_deref(), &flags),
    }
}

fn run_cmd(file: &std::path::Path, common: &CommonFlags) -> ExitCode {
    let flags = common.flags();
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let script = match parse::parse(&src) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let outcomes = match run::run_script(&script, &flags) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    if common.json {
        let json = report::to_json(&outcomes, &flags);
        println!("{}", serde_json::to_string_pretty(&json).expect("serializable report"));
    } else {
        print!("{}", report::render_text(&outcomes, &flags));
    }
    if outcomes.iter().any(|o| o.result.is_err()) {
        ExitCode::from(2)
    } else if outcomes.iter().any(|o| o.oracle_agrees() == Some(false)) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn corpus_cmd(case: Option<&str>, common: &CommonFlags) -> ExitCode {
    let flags = common.flags();
    let selection: Vec<&'static corpus::Case> = match case {
        Some(id) => match corpus::find_case(id) {
            Some(c) => vec![c],
            None => {
                let known: Vec<&str> = corpus::CASES.iter().map(|c| c.id).collect();
                eprintln!("unknown corpus case `{id}`; known cases: {}", known.join(", "));
                return ExitCode::from(2);
            }
        },
        None => corpus::CASES.iter().filter(|c| !c.stretch).collect(),
    };
    let results: Vec<corpus::CaseResult> =
        selection.iter().map(|c| corpus::run_case(c, &flags)).collect();
    if common.json {
        let cases: Vec<serde_json::Value> = results
            .iter()
            .map(|r| {
                let case = corpus::find_case(r.id).expect("known case");
                let queries = match &r.outcomes {
                    Ok(outs) => serde_json::to_value(report::to_json(outs, &flags).queries)
                        .expect("serializable report"),
                    Err(e) => serde_json::Value::String(e.clone()),
                };
                serde_json::json!({
                    "id": r.id,
                    "label": case.label,
                    "status": if r.mismatches.is_empty() { "ok" } else { "mismatch" },
                    "mismatches": r.mismatches,
                    "queries": queries,
                })
            })
            .collect();
        let doc = serde_json::json!({ "schema": report::SCHEMA, "cases": cases });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable report"));
    } else {
        print!("{}", corpus::summary_table(&results, &flags));
    }
    if results.iter().all(|r| r.mismatches.is_empty()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
