//! The `workbench` command line.
//!
//! Exit codes: 0 success; 1 a verification counterexample or an unstable
//! sequence; 2 invalid input or a guard-rail violation; 3 a cache integrity
//! failure.

pub mod verify;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use chrono::{DateTime, SecondsFormat, Utc};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::enumeration::{cache_lookup, cache_store, count_partitioned, count_points, CountRecord};
use crate::error::{Error, Result};
use crate::motives::{is_stable_sequence, SlopeFunction, SplitTateMotive};
use crate::schemes::FamilySpec;
use crate::tate::class_poly_family;
use verify::Check;

pub const DEFAULT_CACHE: &str = ".workbench-cache.jsonl";

#[derive(Parser, Debug)]
#[command(name = "workbench", version, about = "Point counts, Grothendieck classes and split Tate motives")]
pub struct Cli {
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Emit CSV rows (count and class).
    #[arg(long, global = true, conflicts_with = "json")]
    pub csv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// Multiplicity bound ν: no common root of multiplicity ≥ ν.
    #[arg(long)]
    pub nu: u32,
    /// Number of polynomials m.
    #[arg(long)]
    pub m: u32,
    /// Degree d.
    #[arg(long, required_unless_present = "max_d")]
    pub d: Option<u32>,
    /// Run every degree 0..=max_d instead of a single --d.
    #[arg(long, conflicts_with = "d")]
    pub max_d: Option<u32>,
}

impl FamilyArgs {
    fn degrees(&self) -> Vec<u32> {
        match (self.d, self.max_d) {
            (Some(d), _) => vec![d],
            (None, Some(max)) => (0..=max).collect(),
            (None, None) => Vec::new(),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact number of F_p-points of Poly_ν^{d,m}.
    Count {
        #[command(flatten)]
        family: FamilyArgs,
        /// Primes to count over.
        #[arg(long = "p", visible_alias = "primes", value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        /// Split the search space into this many blocks.
        #[arg(long)]
        parts: Option<u64>,
        /// JSON-lines cache file.
        #[arg(long, env = "WORKBENCH_CACHE", default_value = DEFAULT_CACHE)]
        cache: PathBuf,
    },
    /// Grothendieck class [Poly_ν^{d,m}] as a Laurent polynomial in L.
    Class {
        #[command(flatten)]
        family: FamilyArgs,
        /// Specialize at L = q.
        #[arg(long, allow_negative_numbers = true)]
        at: Option<i64>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        max_d: u32,
        #[arg(long = "primes", visible_alias = "p", value_delimiter = ',', default_value = "2,3")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check homological stability of a JSON sequence of split motives.
    Stability {
        path: PathBuf,
        /// `default` or `table:<path>`.
        #[arg(long, default_value = "default")]
        slope: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Scan,
    Recursion,
    Resultant,
}

/// One row of a report. All values are strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub case: BTreeMap<String, String>,
    pub result: BTreeMap<String, String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: String,
    pub passed: String,
    pub failed: String,
    pub ok: bool,
}

/// Machine-readable record of one invocation. `started_at` and
/// `duration_ms` are the only fields that vary between identical runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub parameters: BTreeMap<String, String>,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
    pub started_at: String,
    pub duration_ms: String,
}

fn kv<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn summarize(cases: &[CaseResult]) -> Summary {
    let passed = cases.iter().filter(|c| c.pass).count();
    Summary {
        total: cases.len().to_string(),
        passed: passed.to_string(),
        failed: (cases.len() - passed).to_string(),
        ok: passed == cases.len(),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CacheIntegrity { .. } => 3,
        _ => 2,
    }
}

struct Outcome {
    parameters: BTreeMap<String, String>,
    cases: Vec<CaseResult>,
    human: Vec<String>,
    csv: Option<Vec<String>>,
    fail_code: i32,
}

/// Parses `args` (including the program name), runs the command and writes
/// its report to `out`. Errors go to `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let started_at = Utc::now();
    let clock = Instant::now();
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let summary = summarize(&outcome.cases);
    let code = if summary.ok { 0 } else { outcome.fail_code };
    let written = if cli.json {
        let report = RunReport {
            command: echo,
            parameters: outcome.parameters,
            cases: outcome.cases,
            summary,
            started_at: stamp(started_at),
            duration_ms: clock.elapsed().as_millis().to_string(),
        };
        serde_json::to_string_pretty(&report)
            .map_err(Error::from)
            .and_then(|s| writeln!(out, "{s}").map_err(Error::from))
    } else {
        let lines = match (cli.csv, outcome.csv) {
            (true, Some(rows)) => rows,
            _ => outcome.human,
        };
        lines.iter().try_for_each(|l| writeln!(out, "{l}")).map_err(Error::from)
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    code
}

/// Entry point used by the binary.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn stamp(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::Millis, true)
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Count { family, primes, parts, cache } => cmd_count(family, primes, *parts, cache),
        Command::Class { family, at } => cmd_class(family, *at),
        Command::Verify { suite, max_d, primes, trials, seed } => {
            cmd_verify(*suite, *max_d, primes, *trials, *seed)
        }
        Command::Stability { path, slope } => cmd_stability(path, slope),
    }
}

fn specs(family: &FamilyArgs) -> Result<Vec<FamilySpec>> {
    family
        .degrees()
        .into_iter()
        .map(|d| FamilySpec::new(family.nu, family.m, d))
        .collect()
}

fn family_params(family: &FamilyArgs) -> BTreeMap<String, String> {
    let mut p = kv([("nu", family.nu.to_string()), ("m", family.m.to_string())]);
    if let Some(d) = family.d {
        p.insert("d".into(), d.to_string());
    }
    if let Some(d) = family.max_d {
        p.insert("max_d".into(), d.to_string());
    }
    p
}

fn cached_count(spec: &FamilySpec, p: u64, parts: Option<u64>, cache: &Path) -> Result<CountRecord> {
    if let Some(hit) = cache_lookup(spec, p, cache)? {
        return Ok(hit);
    }
    let rec = match parts {
        Some(k) => count_partitioned(spec, p, k)?,
        None => count_points(spec, p)?,
    };
    cache_store(&rec, cache)?;
    Ok(rec)
}

fn cmd_count(family: &FamilyArgs, primes: &[u64], parts: Option<u64>, cache: &Path) -> Result<Outcome> {
    let specs = specs(family)?;
    // fail on any guard-rail violation before counting anything
    for spec in &specs {
        for &p in primes {
            crate::exact::Prime::new(p)?;
            crate::enumeration::search_space(spec, p)?;
        }
    }
    let mut parameters = family_params(family);
    parameters.insert("primes".into(), join(primes));
    if let Some(k) = parts {
        parameters.insert("parts".into(), k.to_string());
    }
    let mut cases = Vec::new();
    let mut human = Vec::new();
    let mut csv = vec!["nu,m,d,p,count,method".to_string()];
    for spec in &specs {
        for &p in primes {
            let rec = cached_count(spec, p, parts, cache)?;
            let method = serde_json::to_value(rec.method)?
                .as_str()
                .unwrap_or_default()
                .to_string();
            human.push(format!("{spec} p={p} count={} ({method})", rec.count));
            csv.push(format!("{},{},{},{p},{},{method}", spec.nu, spec.m, spec.d, rec.count));
            cases.push(CaseResult {
                case: kv([
                    ("nu", spec.nu.to_string()),
                    ("m", spec.m.to_string()),
                    ("d", spec.d.to_string()),
                    ("p", p.to_string()),
                ]),
                result: kv([("count", rec.count.to_string()), ("method", method)]),
                pass: true,
            });
        }
    }
    Ok(Outcome { parameters, cases, human, csv: Some(csv), fail_code: 1 })
}

fn cmd_class(family: &FamilyArgs, at: Option<i64>) -> Result<Outcome> {
    let specs = specs(family)?;
    let mut parameters = family_params(family);
    if let Some(q) = at {
        parameters.insert("at".into(), q.to_string());
    }
    let mut cases = Vec::new();
    let mut human = Vec::new();
    let mut csv = vec!["nu,m,d,class,value".to_string()];
    let single = specs.len() == 1;
    for spec in &specs {
        let class = class_poly_family(spec);
        let value = at.map(|q| class.specialize(&BigInt::from(q))).transpose()?;
        let mut result = kv([("class", class.to_string())]);
        if let Some(v) = &value {
            result.insert("value".into(), v.to_string());
        }
        let shown = match &value {
            Some(v) => v.to_string(),
            None => class.to_string(),
        };
        human.push(if single { shown } else { format!("{spec}: {shown}") });
        csv.push(format!(
            "{},{},{},{class},{}",
            spec.nu,
            spec.m,
            spec.d,
            value.map(|v| v.to_string()).unwrap_or_default()
        ));
        cases.push(CaseResult {
            case: kv([
                ("nu", spec.nu.to_string()),
                ("m", spec.m.to_string()),
                ("d", spec.d.to_string()),
            ]),
            result,
            pass: true,
        });
    }
    Ok(Outcome { parameters, cases, human, csv: Some(csv), fail_code: 1 })
}

fn cmd_verify(suite: Suite, max_d: u32, primes: &[u64], trials: u64, seed: u64) -> Result<Outcome> {
    let (parameters, checks) = match suite {
        Suite::Scan => (
            kv([("max_d", max_d.to_string()), ("primes", join(primes))]),
            verify::scan_suite(max_d, primes)?,
        ),
        Suite::Recursion => (
            kv([("max_d", max_d.to_string()), ("primes", join(primes))]),
            verify::recursion_suite(max_d, primes)?,
        ),
        Suite::Resultant => (
            kv([("trials", trials.to_string()), ("seed", seed.to_string())]),
            verify::resultant_suite(trials, seed)?,
        ),
    };
    let mut parameters = parameters;
    parameters.insert("suite".into(), format!("{suite:?}").to_lowercase());
    let mut human = Vec::new();
    let mut cases = Vec::new();
    for Check { label, checked, counterexample } in checks {
        let pass = counterexample.is_none();
        human.push(match &counterexample {
            None => format!("pass  {label} ({checked} checked)"),
            Some(c) => format!("FAIL  {label}: counterexample {c}"),
        });
        let mut result = kv([("checked", checked.to_string())]);
        if let Some(c) = counterexample {
            result.insert("counterexample".into(), c);
        }
        cases.push(CaseResult { case: kv([("check", label)]), result, pass });
    }
    let failed = cases.iter().filter(|c| !c.pass).count();
    human.push(if failed == 0 {
        format!("{}: pass", parameters["suite"])
    } else {
        format!("{}: {failed} failing check(s)", parameters["suite"])
    });
    Ok(Outcome { parameters, cases, human, csv: None, fail_code: 1 })
}

fn parse_slope(spec: &str) -> Result<SlopeFunction> {
    match spec.split_once(':') {
        None if spec == "default" => Ok(SlopeFunction::Default),
        Some(("table", path)) => SlopeFunction::from_path(Path::new(path)),
        _ => Err(Error::Malformed(format!("slope must be `default` or `table:<path>`, got `{spec}`"))),
    }
}

fn cmd_stability(path: &Path, slope_arg: &str) -> Result<Outcome> {
    let slope = parse_slope(slope_arg)?;
    let text = std::fs::read_to_string(path)?;
    let seq: Vec<SplitTateMotive> =
        serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    let verdicts = is_stable_sequence(&seq, &slope)?;
    let parameters = kv([
        ("path", path.display().to_string()),
        ("slope", slope_arg.to_string()),
        ("length", seq.len().to_string()),
    ]);
    let mut human = vec![format!("{:>4} {:>6}  verdict", "d", "l(d)")];
    let mut cases = Vec::new();
    for v in &verdicts {
        human.push(format!(
            "{:>4} {:>6}  {}",
            v.d,
            v.cutoff,
            if v.stable { "stable" } else { "UNSTABLE" }
        ));
        cases.push(CaseResult {
            case: kv([("d", v.d.to_string()), ("cutoff", v.cutoff.to_string())]),
            result: kv([("stable", v.stable.to_string())]),
            pass: v.stable,
        });
    }
    let all = verdicts.iter().all(|v| v.stable);
    human.push(format!("overall: {}", if all { "stable" } else { "unstable" }));
    Ok(Outcome { parameters, cases, human, csv: None, fail_code: 1 })
}
