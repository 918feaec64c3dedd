use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use kirwan_verify::{
    emit_report, exit_code, registry::registry, run_checks, CheckResult, Context, Format, ReportOptions, RunOptions,
    Status, VerifyError,
};

#[derive(Parser, Debug)]
#[command(name = "kirwan-verify", version, about = "Run the registered checks and report")]
struct Cli {
    /// Conductor of the cyclotomic field used for coefficients.
    #[arg(long, global = true, default_value_t = kirwan_core::cyclotomic::DEFAULT_CONDUCTOR)]
    conductor: u32,
    /// Number of worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Per-check time limit in seconds.
    #[arg(long, global = true, default_value_t = 30)]
    timeout: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every check.
    All,
    /// List check ids in registration order.
    List,
    /// Run checks and write a report file.
    Report {
        #[arg(long, value_enum)]
        format: ReportFormat,
        #[arg(long)]
        out: PathBuf,
        /// Include per-check runtimes (makes reports non-reproducible).
        #[arg(long)]
        timings: bool,
        /// Glob over check ids.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Run the checks whose id matches a glob, e.g. `ledger.*`.
    #[command(external_subcommand)]
    Glob(Vec<String>),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Json,
    Md,
}

fn print_results(results: &[CheckResult]) {
    for r in results {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        let mut line = format!("{status} {}: {}", r.check_id, r.computed);
        if r.status != Status::Pass {
            line.push_str(&format!(" (expected: {})", r.expected));
        }
        if let Some(n) = &r.note {
            line.push_str(&format!(" [{n}]"));
        }
        if let Some(e) = &r.reason {
            line.push_str(&format!(" [{e}]"));
        }
        println!("{line}");
    }
}

fn run(cli: Cli) -> Result<i32, VerifyError> {
    let context = Context::new(cli.conductor)?;
    let opts = |filter: Option<String>| RunOptions {
        filter,
        jobs: cli.jobs,
        timeout: Duration::from_secs(cli.timeout),
        context,
    };
    let execute = |filter: Option<String>| -> Result<Vec<CheckResult>, VerifyError> {
        let results = run_checks(registry(), &opts(filter.clone()))?;
        if results.is_empty() {
            eprintln!("warning: no check matches `{}`", filter.unwrap_or_default());
        }
        Ok(results)
    };
    match cli.command {
        Command::List => {
            for c in registry() {
                println!("{}", c.id);
            }
            Ok(0)
        }
        Command::All => {
            let r = execute(None)?;
            print_results(&r);
            Ok(exit_code(&r))
        }
        Command::Glob(args) => {
            let [pattern] = args.as_slice() else {
                eprintln!("error: expected a single glob, got {args:?}");
                return Ok(2);
            };
            let r = execute(Some(pattern.clone()))?;
            print_results(&r);
            Ok(exit_code(&r))
        }
        Command::Report { format, out, timings, filter } => {
            let r = execute(filter.clone())?;
            let format = match format {
                ReportFormat::Json => Format::Json,
                ReportFormat::Md => Format::Markdown,
            };
            let ropts = ReportOptions { timings, filter, conductor: Some(context.conductor) };
            emit_report(&r, format, &out, &ropts)?;
            Ok(exit_code(&r))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
