//! Check runner and report writer.
//!
//! A check is a row of data: an id, the module it exercises, a reference
//! tag, a formula quote, the expected canonical text and a producer. The
//! runner calls producers (possibly concurrently), compares texts and
//! returns the results in registration order.

use std::fmt;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use serde_json::{json, Map, Value};
use thiserror::Error;

pub mod registry;

pub const REPORT_VERSION: u32 = 1;
pub const SUITE_NAME: &str = "kirwan-verify";
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("invalid filter `{pattern}`: {message}")]
    Filter { pattern: String, message: String },
    #[error("conductor {0} must be a positive multiple of 24")]
    Conductor(u32),
    #[error("nothing to report")]
    EmptyReport,
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Inputs shared by all producers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Context {
    pub conductor: u32,
}

impl Context {
    pub fn new(conductor: u32) -> Result<Self, VerifyError> {
        // 8th roots for the screens, cube roots for the slice action
        if conductor == 0 || !conductor.is_multiple_of(24) {
            return Err(VerifyError::Conductor(conductor));
        }
        Ok(Context { conductor })
    }
}

impl Default for Context {
    fn default() -> Self {
        Context { conductor: kirwan_core::cyclotomic::DEFAULT_CONDUCTOR }
    }
}

/// What a producer computed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Outcome {
    pub computed: String,
    pub note: Option<String>,
    /// The producer reached no verdict.
    pub inconclusive: bool,
}

impl Outcome {
    pub fn new(computed: impl Into<String>) -> Self {
        Outcome { computed: computed.into(), ..Default::default() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl From<String> for Outcome {
    fn from(s: String) -> Self {
        Outcome::new(s)
    }
}

pub type Producer = fn(&Context) -> Result<Outcome, String>;

#[derive(Clone, Copy)]
pub struct Check {
    pub id: &'static str,
    pub module: &'static str,
    pub paper_ref: &'static str,
    pub quote: &'static str,
    pub expected: &'static str,
    pub producer: Producer,
}

impl fmt::Debug for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Check").field("id", &self.id).field("module", &self.module).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check_id: String,
    pub module: String,
    pub paper_ref: String,
    pub quote: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    pub note: Option<String>,
    /// Why a check failed without a comparison: an error or `timeout`.
    pub reason: Option<String>,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub filter: Option<String>,
    pub jobs: usize,
    pub timeout: Duration,
    pub context: Context,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { filter: None, jobs: 1, timeout: DEFAULT_TIMEOUT, context: Context::default() }
    }
}

/// Checks whose id matches the glob, in registration order.
pub fn select<'a>(checks: &'a [Check], filter: Option<&str>) -> Result<Vec<&'a Check>, VerifyError> {
    let Some(f) = filter else { return Ok(checks.iter().collect()) };
    let pattern = glob::Pattern::new(f).map_err(|e| VerifyError::Filter {
        pattern: f.to_string(),
        message: e.to_string(),
    })?;
    Ok(checks.iter().filter(|c| pattern.matches(c.id)).collect())
}

fn run_one(check: &Check, ctx: Context, timeout: Duration) -> CheckResult {
    let (tx, rx) = mpsc::channel();
    let producer = check.producer;
    let start = Instant::now();
    // detached on timeout; it finishes or dies with the process
    thread::spawn(move || {
        let _ = tx.send(producer(&ctx));
    });
    let received = rx.recv_timeout(timeout);
    let runtime_ms = start.elapsed().as_millis() as u64;
    let mut r = CheckResult {
        check_id: check.id.to_string(),
        module: check.module.to_string(),
        paper_ref: check.paper_ref.to_string(),
        quote: check.quote.to_string(),
        status: Status::Fail,
        expected: check.expected.to_string(),
        computed: String::new(),
        note: None,
        reason: None,
        runtime_ms,
    };
    match received {
        Ok(Ok(out)) => {
            r.status = if out.inconclusive {
                Status::Inconclusive
            } else if out.computed == check.expected {
                Status::Pass
            } else {
                Status::Fail
            };
            r.computed = out.computed;
            r.note = out.note;
        }
        Ok(Err(e)) => r.reason = Some(e),
        Err(mpsc::RecvTimeoutError::Timeout) => r.reason = Some("timeout".into()),
        Err(mpsc::RecvTimeoutError::Disconnected) => r.reason = Some("producer panicked".into()),
    }
    r
}

/// Runs the selected checks on up to `jobs` threads. Results come back in
/// registration order whatever the scheduling.
pub fn run_checks(checks: &[Check], opts: &RunOptions) -> Result<Vec<CheckResult>, VerifyError> {
    let selected = select(checks, opts.filter.as_deref())?;
    let jobs = opts.jobs.clamp(1, selected.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<CheckResult>>> = Mutex::new(vec![None; selected.len()]);
    thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(check) = selected.get(i) else { break };
                let r = run_one(check, opts.context, opts.timeout);
                slots.lock().expect("no worker panics while holding the lock")[i] = Some(r);
            });
        }
    });
    Ok(slots
        .into_inner()
        .expect("workers joined")
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

pub fn counts(results: &[CheckResult]) -> Counts {
    let mut c = Counts::default();
    for r in results {
        match r.status {
            Status::Pass => c.pass += 1,
            Status::Fail => c.fail += 1,
            Status::Inconclusive => c.inconclusive += 1,
        }
    }
    c
}

/// 0 when everything passed, 1 otherwise. Every registered check expects a
/// verdict, so an inconclusive result counts against the run.
pub fn exit_code(results: &[CheckResult]) -> i32 {
    let c = counts(results);
    if c.fail == 0 && c.inconclusive == 0 {
        0
    } else {
        1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub timings: bool,
    pub filter: Option<String>,
    pub conductor: Option<u32>,
}

fn result_json(r: &CheckResult, timings: bool) -> Value {
    let mut m = Map::new();
    m.insert("check_id".into(), json!(r.check_id));
    m.insert("module".into(), json!(r.module));
    m.insert("paper_ref".into(), json!(r.paper_ref));
    m.insert("quote".into(), json!(r.quote));
    m.insert("status".into(), json!(r.status.as_str()));
    m.insert("expected".into(), json!(r.expected));
    m.insert("computed".into(), json!(r.computed));
    if let Some(n) = &r.note {
        m.insert("note".into(), json!(n));
    }
    if let Some(reason) = &r.reason {
        m.insert("reason".into(), json!(reason));
    }
    if timings {
        m.insert("runtime_ms".into(), json!(r.runtime_ms));
    }
    Value::Object(m)
}

/// Keys come out sorted because `serde_json::Map` is ordered by key.
pub fn render_json(results: &[CheckResult], opts: &ReportOptions) -> String {
    let c = counts(results);
    let report = json!({
        "version": REPORT_VERSION,
        "suite": {
            "name": SUITE_NAME,
            "conductor": opts.conductor,
            "filter": opts.filter,
            "counts": { "pass": c.pass, "fail": c.fail, "inconclusive": c.inconclusive },
        },
        "results": results.iter().map(|r| result_json(r, opts.timings)).collect::<Vec<_>>(),
    });
    let mut s = serde_json::to_string_pretty(&report).expect("values serialize");
    s.push('\n');
    s
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

/// One table per module, modules in order of first appearance.
pub fn render_markdown(results: &[CheckResult], opts: &ReportOptions) -> String {
    let c = counts(results);
    let mut out = format!(
        "# {SUITE_NAME} report\n\npass: {}, fail: {}, inconclusive: {}\n",
        c.pass, c.fail, c.inconclusive
    );
    let mut modules: Vec<&str> = Vec::new();
    for r in results {
        if !modules.contains(&r.module.as_str()) {
            modules.push(&r.module);
        }
    }
    for m in modules {
        out.push_str(&format!("\n## {m}\n\n"));
        let mut header = "| check | status | expected | computed | paper_ref | quote | note |".to_string();
        let mut rule = "|---|---|---|---|---|---|---|".to_string();
        if opts.timings {
            header.push_str(" runtime_ms |");
            rule.push_str("---|");
        }
        out.push_str(&header);
        out.push('\n');
        out.push_str(&rule);
        out.push('\n');
        for r in results.iter().filter(|r| r.module == m) {
            let note = match (&r.note, &r.reason) {
                (Some(n), Some(e)) => format!("{n}; {e}"),
                (Some(n), None) => n.clone(),
                (None, Some(e)) => e.clone(),
                (None, None) => String::new(),
            };
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} |",
                cell(&r.check_id),
                r.status,
                cell(&r.expected),
                cell(&r.computed),
                cell(&r.paper_ref),
                cell(&r.quote),
                cell(&note)
            ));
            if opts.timings {
                out.push_str(&format!(" {} |", r.runtime_ms));
            }
            out.push('\n');
        }
    }
    out
}

pub fn render(results: &[CheckResult], format: Format, opts: &ReportOptions) -> String {
    match format {
        Format::Json => render_json(results, opts),
        Format::Markdown => render_markdown(results, opts),
    }
}

pub fn emit_report(results: &[CheckResult], format: Format, out: &Path, opts: &ReportOptions) -> Result<(), VerifyError> {
    if results.is_empty() {
        return Err(VerifyError::EmptyReport);
    }
    std::fs::write(out, render(results, format, opts)).map_err(|source| VerifyError::Io {
        path: out.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(_: &Context) -> Result<Outcome, String> {
        Ok(Outcome::new("1"))
    }

    fn wrong(_: &Context) -> Result<Outcome, String> {
        Ok(Outcome::new("2"))
    }

    fn err(_: &Context) -> Result<Outcome, String> {
        Err("boom".into())
    }

    fn slow(_: &Context) -> Result<Outcome, String> {
        thread::sleep(Duration::from_millis(500));
        Ok(Outcome::new("1"))
    }

    fn undecided(_: &Context) -> Result<Outcome, String> {
        Ok(Outcome { computed: "?".into(), note: None, inconclusive: true })
    }

    fn check(id: &'static str, producer: Producer) -> Check {
        Check { id, module: "m", paper_ref: "r", quote: "q | x", expected: "1", producer }
    }

    #[test]
    fn statuses() {
        let cs = [check("a.ok", ok), check("a.wrong", wrong), check("b.err", err), check("b.undecided", undecided)];
        let r = run_checks(&cs, &RunOptions::default()).unwrap();
        let st: Vec<Status> = r.iter().map(|r| r.status).collect();
        assert_eq!(st, [Status::Pass, Status::Fail, Status::Fail, Status::Inconclusive]);
        assert_eq!(r[2].reason.as_deref(), Some("boom"));
        assert_eq!(exit_code(&r[..1]), 0);
        assert_eq!(exit_code(&r[3..]), 1);
    }

    #[test]
    fn timeout() {
        let cs = [check("slow", slow)];
        let opts = RunOptions { timeout: Duration::from_millis(20), ..Default::default() };
        let r = run_checks(&cs, &opts).unwrap();
        assert_eq!(r[0].status, Status::Fail);
        assert_eq!(r[0].reason.as_deref(), Some("timeout"));
    }

    #[test]
    fn order_survives_concurrency() {
        let cs = [check("s1", slow), check("o1", ok), check("s2", slow), check("o2", ok)];
        let opts = RunOptions { jobs: 4, ..Default::default() };
        let ids: Vec<String> = run_checks(&cs, &opts).unwrap().into_iter().map(|r| r.check_id).collect();
        assert_eq!(ids, ["s1", "o1", "s2", "o2"]);
    }

    #[test]
    fn filters() {
        let cs = [check("a.ok", ok), check("a.wrong", wrong), check("b.err", err)];
        assert_eq!(select(&cs, Some("a.*")).unwrap().len(), 2);
        assert!(select(&cs, Some("zzz")).unwrap().is_empty());
        assert!(select(&cs, Some("a[")).is_err());
    }

    #[test]
    fn rendering() {
        let cs = [check("a.ok", ok)];
        let r = run_checks(&cs, &RunOptions::default()).unwrap();
        let opts = ReportOptions::default();
        let j = render_json(&r, &opts);
        assert!(j.ends_with('\n'));
        assert!(!j.contains("runtime_ms"));
        let v: Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["suite"]["counts"]["pass"], 1);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["results", "suite", "version"]);
        let timed = render_json(&r, &ReportOptions { timings: true, ..Default::default() });
        assert!(timed.contains("runtime_ms"));
        let md = render_markdown(&r, &opts);
        assert!(md.contains("## m"));
        assert!(md.contains("q \\| x"));
        assert!(Context::new(16).is_err());
        assert!(Context::new(48).is_ok());
    }
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/verify-cli.md")]
mod book_verify_cli {}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
