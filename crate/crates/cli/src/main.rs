//! `stackcoh`: cohomology with coefficients in prestacks of abelian 2-groups
//! on finite spaces and simplicial complexes.

mod builtins;
mod commands;
mod error;
mod manifest;
mod report;
mod verify;

use clap::{Parser, Subcommand};
use commands::{
    execute, CohomologyArgs, CompareArgs, GzArgs, Settings, StackifyArgs, StalkArgs, Task, TuSequenceArgs, VerifyArgs,
};
use error::CliError;
use manifest::{Context, Manifest};
use report::Report;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "stackcoh", version, about = "Cohomology with coefficients in prestacks of abelian 2-groups")]
struct Cli {
    /// JSON manifest with named definitions and a task list.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    /// Machine-readable JSON report on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// H^n_U and the secondary cohomology 2-groups over a space.
    Cohomology(CohomologyArgs),
    /// The long exact sequence linking pi^-1, H_U and pi^0.
    TuSequence(TuSequenceArgs),
    /// The six-term kernel sequence of a morphism of 2-groups.
    GzSequence(GzArgs),
    /// Stalks of a prestack and of its Pi sheaves.
    Stalk(StalkArgs),
    /// Two plus steps and the resulting stack.
    Stackify(StackifyArgs),
    /// Čech against Berishvili cohomology, degree by degree.
    Compare(CompareArgs),
    /// Run verification suites on the manifest and fixed corpora.
    Verify(VerifyArgs),
    /// Run the manifest's task list in order.
    Run,
}

impl Command {
    fn task(self) -> Option<Task> {
        Some(match self {
            Command::Cohomology(a) => Task::Cohomology(a),
            Command::TuSequence(a) => Task::TuSequence(a),
            Command::GzSequence(a) => Task::GzSequence(a),
            Command::Stalk(a) => Task::Stalk(a),
            Command::Stackify(a) => Task::Stackify(a),
            Command::Compare(a) => Task::Compare(a),
            Command::Verify(a) => Task::Verify(a),
            Command::Run => return None,
        })
    }
}

fn load(path: Option<&PathBuf>) -> Result<Context, CliError> {
    let user = match path {
        None => Manifest { schema: manifest::SCHEMA, ..Manifest::default() },
        Some(p) => {
            let src = std::fs::read_to_string(p)
                .map_err(|e| CliError::input(format!("cannot read {}: {e}", p.display())))?;
            manifest::parse(&src, &p.display().to_string())?
        }
    };
    Context::new(user)
}

/// Runs the task list; tasks are independent, so they run on separate
/// threads and are reported in manifest order.
fn run_tasks(ctx: &Context, settings: &Settings) -> Result<Report, CliError> {
    if ctx.user.tasks.is_empty() {
        return Err(CliError::input("the manifest has no tasks"));
    }
    let results: Vec<Result<Report, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> =
            ctx.user.tasks.iter().map(|t| s.spawn(move || execute(ctx, t, settings))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(CliError::input("task panicked"))))
            .collect()
    });
    let mut texts = Vec::new();
    let mut jsons = Vec::new();
    let mut ok = true;
    for (k, (t, r)) in ctx.user.tasks.iter().zip(results).enumerate() {
        let r = r.map_err(|e| CliError::input(format!("task {k} ({}): {e}", t.name())))?;
        ok &= r.ok;
        texts.push(format!("[task {k}] {}", r.text));
        jsons.push(r.json);
    }
    Ok(Report { json: json!({ "command": "run", "tasks": jsons, "ok": ok }), text: texts.join("\n\n"), ok })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Settings::from_env().and_then(|settings| {
        let ctx = load(cli.manifest.as_ref())?;
        match cli.command.task() {
            Some(t) => execute(&ctx, &t, &settings),
            None => run_tasks(&ctx, &settings),
        }
    });
    match result {
        Ok(r) => {
            let out = if cli.json {
                serde_json::to_string_pretty(&r.json).expect("reports serialize")
            } else {
                r.text
            };
            // a closed pipe downstream is not a failure of the computation
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("stackcoh: {e}");
            e.exit_code()
        }
    }
}
