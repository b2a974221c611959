//! Command-line front end: enumeration tables, expectation sums, Monte
//! Carlo simulation, and the acceptance suites, with reproducible configs
//! and machine-readable output (CSV for flat sweeps, JSON for nested
//! results).
//!
//! Every command is a pure function of its validated [`RunConfig`]: the
//! output bytes depend only on the flags, never on time, environment, or
//! thread count. Exit codes: 0 success, 1 verification failure, 2 usage
//! error, 3 resource-limit error.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use crate::enumeration::asymptotics::asym_connected_count_ln;
use crate::enumeration::egf::wright_upper_bound;
use crate::enumeration::lambda::wright_lambda_table;
use crate::enumeration::oracle::{connected_count, connected_count_oracle, excess_slice};
use crate::error::{Error, Result};
use crate::expectation::{
    expected_ell_creations, expected_unicyclic_creations, expected_unicyclic_statics,
    expected_v0_mass, expected_vell_mass, gamma_sum_check, ExpectationResult,
};
use crate::sim::{monte_carlo, StopRule, SummaryStat, DEFAULT_L_MAX};
use crate::verify::run_suite;

/// Environment variable naming the directory relative `--out` paths
/// resolve under.
pub const OUT_DIR_ENV: &str = "HYPERPHASE_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "hyperphase",
    version,
    about = "Component-excess accounting for the random b-uniform hypergraph process"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    output: OutputFormat,

    /// Write to this file instead of stdout; relative paths resolve under
    /// $HYPERPHASE_OUT_DIR when that variable is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for Monte Carlo (0 = machine parallelism). Results
    /// never depend on this value.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact component counts by excess, with majorants and asymptotics.
    Enumerate(EnumerateArgs),
    /// Analytic expectation sums for lifetime event counts.
    #[command(subcommand)]
    Expect(ExpectCommand),
    /// Monte Carlo over the random process: per-excess means with errors.
    Simulate(SimulateArgs),
    /// Run acceptance suites; exit 0 iff every selected check passes.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    /// Edge size b ≥ 2.
    #[arg(long)]
    b: usize,
    /// Sweep mode: largest vertex count, paired with --ell.
    #[arg(long)]
    n_max: Option<u64>,
    /// Sweep mode: excess value or inclusive range such as `-1..2`.
    #[arg(long, allow_hyphen_values = true)]
    ell: Option<String>,
    /// Point mode: vertex count, paired with --k.
    #[arg(long)]
    n: Option<u64>,
    /// Point mode: edge count.
    #[arg(long)]
    k: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum ExpectCommand {
    /// Expected lifetime cycle creations at excess 0, against (1/3)·ln n.
    Unicyclic(NbArgs),
    /// Expected static excess-0 components, against c·(b−1)^{1/3}·n^{1/3}.
    Static0(NbArgs),
    /// Expected excess-0 creation mass, against c·n^{2/3}/(b−1)^{1/3}.
    V0(NbArgs),
    /// Damped power sum Σ k^u·exp(−γk³) against its Γ-integral limit.
    GammaSum(GammaSumArgs),
    /// Expected creations at a fixed excess ℓ ≥ 1 (limit value 1).
    EllCreations(EllArgs),
    /// Expected vertex mass at excess ℓ, against (12ℓ(b−1))^{1/3}·n^{2/3}.
    Vell(EllArgs),
}

#[derive(Debug, Args)]
struct NbArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 3)]
    b: usize,
}

#[derive(Debug, Args)]
struct GammaSumArgs {
    /// Power of k inside the damped sum (u ≥ 0).
    #[arg(long)]
    u: f64,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 3)]
    b: usize,
}

#[derive(Debug, Args)]
struct EllArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 3)]
    b: usize,
    /// Excess ℓ ≥ 1.
    #[arg(long)]
    ell: u64,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 3)]
    b: usize,
    #[arg(long, default_value_t = 1)]
    reps: u64,
    /// Master seed; per-rep seeds derive from it deterministically.
    #[arg(long, default_value_t = crate::DEFAULT_SEED)]
    seed: u64,
    /// Largest excess reported; runs stop once the graph is connected
    /// with excess above this (or earlier when edges run out).
    #[arg(long, default_value_t = DEFAULT_L_MAX)]
    lmax: i64,
    /// Stop after exactly this many accepted edges instead.
    #[arg(long)]
    edges: Option<u64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// One of: identities, asymptotics, saddle, montecarlo, all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Wall-clock budget such as `120s` or `5m`; exceeding it fails the run.
    #[arg(long)]
    budget: Option<String>,
}

/// A validated invocation: what every dispatch reads from.
#[derive(Debug)]
pub struct RunConfig {
    command: Command,
    output: OutputFormat,
    out: Option<PathBuf>,
    threads: usize,
    config_hash: u64,
    seed: u64,
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<RunConfig> {
        // The hash identifies the scientific configuration; plumbing flags
        // (threads, output format, destination) never change the results,
        // so they stay out of it.
        let config_hash = fnv1a64(format!("{:?}", cli.command).as_bytes());
        let seed = match &cli.command {
            Command::Simulate(a) => a.seed,
            _ => crate::DEFAULT_SEED,
        };
        let config = RunConfig {
            command: cli.command,
            output: cli.output,
            out: cli.out,
            threads: cli.threads,
            config_hash,
            seed,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        let check_b = |b: usize| -> Result<()> {
            if !(2..=6).contains(&b) {
                return Err(Error::Domain(format!("edge size b = {b} outside 2..=6")));
            }
            Ok(())
        };
        match &self.command {
            Command::Enumerate(a) => {
                check_b(a.b)?;
                match (&a.n_max, &a.ell, &a.n, &a.k) {
                    (Some(_), Some(ell), None, None) => {
                        parse_ell_range(ell)?;
                    }
                    (None, None, Some(n), Some(_)) => {
                        if *n < 1 {
                            return Err(Error::Domain("need n >= 1".into()));
                        }
                    }
                    _ => {
                        return Err(Error::Domain(
                            "choose either --n-max with --ell (sweep) or --n with --k (point)"
                                .into(),
                        ))
                    }
                }
            }
            Command::Expect(what) => {
                let (n, b) = match what {
                    ExpectCommand::Unicyclic(a) | ExpectCommand::Static0(a)
                    | ExpectCommand::V0(a) => (a.n, a.b),
                    ExpectCommand::GammaSum(a) => {
                        if !a.u.is_finite() || a.u < 0.0 {
                            return Err(Error::Domain(format!(
                                "power u = {} must be finite and nonnegative",
                                a.u
                            )));
                        }
                        (a.n, a.b)
                    }
                    ExpectCommand::EllCreations(a) | ExpectCommand::Vell(a) => {
                        if a.ell < 1 {
                            return Err(Error::Domain("need ell >= 1".into()));
                        }
                        (a.n, a.b)
                    }
                };
                check_b(b)?;
                if n < b as u64 {
                    return Err(Error::Domain(format!("need n >= b, got n = {n}, b = {b}")));
                }
            }
            Command::Simulate(a) => {
                check_b(a.b)?;
                if a.n < a.b as u64 || a.n >= (1 << 21) {
                    return Err(Error::Domain(format!(
                        "need b <= n < 2^21, got n = {}, b = {}",
                        a.n, a.b
                    )));
                }
                if a.reps < 1 {
                    return Err(Error::Domain("need reps >= 1".into()));
                }
                if a.lmax < 0 {
                    return Err(Error::Domain("need lmax >= 0".into()));
                }
            }
            Command::Verify(a) => {
                if !crate::verify::suite_names().contains(&a.suite.as_str()) {
                    return Err(Error::Domain(format!(
                        "unknown suite '{}'; expected one of {}",
                        a.suite,
                        crate::verify::suite_names().join(", ")
                    )));
                }
                if let Some(budget) = &a.budget {
                    parse_budget(budget)?;
                }
            }
        }
        Ok(())
    }
}

/// Inclusive excess range: `"-1..2"`, or a single value like `"1"`.
fn parse_ell_range(s: &str) -> Result<(i64, i64)> {
    let parse_one = |t: &str| -> Result<i64> {
        let v: i64 = t
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse excess '{t}'")))?;
        if v < -1 {
            return Err(Error::Domain(format!("excess {v} below -1")));
        }
        Ok(v)
    };
    match s.split_once("..") {
        Some((lo, hi)) => Ok((parse_one(lo)?, parse_one(hi)?)),
        None => {
            let v = parse_one(s)?;
            Ok((v, v))
        }
    }
}

/// Budget strings: `"90"` or `"90s"` (seconds), `"5m"` (minutes).
fn parse_budget(s: &str) -> Result<f64> {
    let (num, scale) = match s.strip_suffix('s') {
        Some(rest) => (rest, 1.0),
        None => match s.strip_suffix('m') {
            Some(rest) => (rest, 60.0),
            None => (s, 1.0),
        },
    };
    let v: f64 = num
        .trim()
        .parse()
        .map_err(|_| Error::Domain(format!("cannot parse budget '{s}'")))?;
    if !v.is_finite() || v <= 0.0 {
        return Err(Error::Domain(format!("budget '{s}' must be positive")));
    }
    Ok(v * scale)
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

/// What a command hands back: a flat table, an optional nested JSON
/// alternative, and the exit code.
struct Outcome {
    table: Table,
    nested: Option<serde_json::Value>,
    exit: i32,
}

impl Outcome {
    fn ok(table: Table) -> Outcome {
        Outcome { table, nested: None, exit: 0 }
    }
}

fn fmt_f(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x.is_finite() && (x.abs() >= 1e7 || x.abs() < 1e-4) {
        format!("{x:.6e}")
    } else {
        format!("{x:.6}")
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn meta_line(config: &RunConfig) -> String {
    format!(
        "# hyperphase {} config={:016x} seed={}",
        env!("CARGO_PKG_VERSION"),
        config.config_hash,
        config.seed
    )
}

fn meta_json(config: &RunConfig) -> serde_json::Value {
    serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "config": format!("{:016x}", config.config_hash),
        "seed": config.seed,
    })
}

fn render(config: &RunConfig, outcome: &Outcome) -> String {
    match config.output {
        OutputFormat::Csv => {
            let mut s = meta_line(config);
            s.push('\n');
            s.push_str(&outcome.table.columns.join(","));
            s.push('\n');
            for row in &outcome.table.rows {
                let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
        OutputFormat::Json => {
            let value = outcome.nested.clone().unwrap_or_else(|| {
                serde_json::json!({
                    "meta": meta_json(config),
                    "columns": outcome.table.columns,
                    "rows": outcome.table.rows,
                })
            });
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            s
        }
    }
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<Outcome> {
    let b = args.b;
    let columns = vec!["b", "ell", "n", "k", "exact", "wright_bound", "asymptotic", "ratio"];
    let mut rows = Vec::new();
    match (&args.n_max, &args.ell, &args.n, &args.k) {
        (Some(n_max), Some(ell_spec), None, None) => {
            let (lo, hi) = parse_ell_range(ell_spec)?;
            if lo <= hi {
                let k_max = ((*n_max as i64 + hi.max(0)) / (b as i64 - 1) + 1) as usize;
                let oracle = connected_count_oracle(b, *n_max as usize, k_max)?;
                for ell in lo..=hi {
                    let bound = if ell >= 1 {
                        let lambda = wright_lambda_table(ell as usize);
                        Some(wright_upper_bound(b, ell as usize, &lambda, *n_max as usize))
                    } else {
                        None
                    };
                    for (a, count) in excess_slice(&oracle, b, ell) {
                        let k = (a as i64 + ell) / (b as i64 - 1);
                        let bound_cell = bound
                            .as_ref()
                            .map(|s| fmt_f(s.egf_count(a).to_f64().unwrap_or(f64::INFINITY)))
                            .unwrap_or_default();
                        let asym = if ell >= 1 {
                            asym_connected_count_ln(a as u64, ell as u64, b).ok()
                        } else {
                            None
                        };
                        let (asym_cell, ratio_cell) = match asym {
                            Some(ln) => {
                                let approx = ln.exp();
                                let exact = count.to_f64().unwrap_or(f64::INFINITY);
                                (fmt_f(approx), fmt_f(exact / approx))
                            }
                            None => (String::new(), String::new()),
                        };
                        rows.push(vec![
                            b.to_string(),
                            ell.to_string(),
                            a.to_string(),
                            k.to_string(),
                            count.to_string(),
                            bound_cell,
                            asym_cell,
                            ratio_cell,
                        ]);
                    }
                }
            }
        }
        (None, None, Some(n), Some(k)) => {
            let oracle = connected_count_oracle(b, *n as usize, *k as usize)?;
            let count = connected_count(&oracle, *n as usize, *k as usize);
            let ell = *k as i64 * (b as i64 - 1) - *n as i64;
            rows.push(vec![
                b.to_string(),
                ell.to_string(),
                n.to_string(),
                k.to_string(),
                count.to_string(),
                String::new(),
                String::new(),
                String::new(),
            ]);
        }
        _ => unreachable!("validated"),
    }
    Ok(Outcome::ok(Table { columns, rows }))
}

fn expectation_row(prefix: Vec<String>, r: &ExpectationResult) -> Vec<String> {
    let mut row = prefix;
    row.push(fmt_f(r.value));
    row.push(fmt_f(r.asymptotic));
    row.push(fmt_f(r.ratio));
    row
}

fn cmd_expect(what: &ExpectCommand) -> Result<Outcome> {
    let table = match what {
        ExpectCommand::Unicyclic(a) => {
            let r = expected_unicyclic_creations(a.n, a.b);
            Table {
                columns: vec!["n", "b", "value", "asymptotic", "ratio"],
                rows: vec![expectation_row(vec![a.n.to_string(), a.b.to_string()], &r)],
            }
        }
        ExpectCommand::Static0(a) => {
            let r = expected_unicyclic_statics(a.n, a.b);
            let constant =
                r.asymptotic / ((a.b as f64 - 1.0).powf(1.0 / 3.0) * (a.n as f64).powf(1.0 / 3.0));
            let mut row = vec![a.n.to_string(), a.b.to_string(), fmt_f(constant)];
            row.push(fmt_f(r.value));
            row.push(fmt_f(r.asymptotic));
            row.push(fmt_f(r.ratio));
            Table {
                columns: vec!["n", "b", "constant", "value", "asymptotic", "ratio"],
                rows: vec![row],
            }
        }
        ExpectCommand::V0(a) => {
            let r = expected_v0_mass(a.n, a.b);
            let constant =
                r.asymptotic * (a.b as f64 - 1.0).powf(1.0 / 3.0) / (a.n as f64).powf(2.0 / 3.0);
            let mut row = vec![a.n.to_string(), a.b.to_string(), fmt_f(constant)];
            row.push(fmt_f(r.value));
            row.push(fmt_f(r.asymptotic));
            row.push(fmt_f(r.ratio));
            Table {
                columns: vec!["n", "b", "constant", "value", "asymptotic", "ratio"],
                rows: vec![row],
            }
        }
        ExpectCommand::GammaSum(a) => {
            let r = gamma_sum_check(a.u, a.n, a.b);
            Table {
                columns: vec!["u", "n", "b", "value", "asymptotic", "ratio"],
                rows: vec![expectation_row(
                    vec![fmt_f(a.u), a.n.to_string(), a.b.to_string()],
                    &r,
                )],
            }
        }
        ExpectCommand::EllCreations(a) => {
            let r = expected_ell_creations(a.n, a.b, a.ell)?;
            let mut row = expectation_row(
                vec![a.n.to_string(), a.b.to_string(), a.ell.to_string()],
                &r,
            );
            row.push(r.regime_ok.to_string());
            Table {
                columns: vec!["n", "b", "ell", "value", "asymptotic", "ratio", "regime_ok"],
                rows: vec![row],
            }
        }
        ExpectCommand::Vell(a) => {
            let r = expected_vell_mass(a.n, a.b, a.ell)?;
            let mut row = expectation_row(
                vec![a.n.to_string(), a.b.to_string(), a.ell.to_string()],
                &r,
            );
            row.push(r.regime_ok.to_string());
            Table {
                columns: vec!["n", "b", "ell", "value", "asymptotic", "ratio", "regime_ok"],
                rows: vec![row],
            }
        }
    };
    Ok(Outcome::ok(table))
}

fn cmd_simulate(config: &RunConfig, args: &SimulateArgs) -> Result<Outcome> {
    let stop = match args.edges {
        Some(e) => StopRule::EdgeBudget(e),
        None => StopRule::ConnectedAndExcessExceeds(args.lmax),
    };
    let summary = monte_carlo(args.n, args.b, args.reps, args.seed, stop);
    let stat = |map: &BTreeMap<i64, SummaryStat>, ell: i64| -> SummaryStat {
        map.get(&ell).copied().unwrap_or_default()
    };
    let columns = vec![
        "ell",
        "creations_mean",
        "creations_se",
        "statics_mean",
        "statics_se",
        "v_mean",
        "v_se",
        "vmax_mean",
        "vmax_se",
        "beta_mean",
        "beta_se",
    ];
    let mut rows = Vec::new();
    let mut per_ell = BTreeMap::new();
    for ell in 0..=args.lmax {
        let groups = [
            ("creations", stat(&summary.creations, ell)),
            ("statics", stat(&summary.statics, ell)),
            ("v", stat(&summary.v, ell)),
            ("vmax", stat(&summary.vmax, ell)),
            ("beta", stat(&summary.beta_events, ell)),
        ];
        let mut row = vec![ell.to_string()];
        for (_, s) in &groups {
            row.push(fmt_f(s.mean));
            row.push(fmt_f(s.std_error));
        }
        rows.push(row);
        per_ell.insert(
            ell.to_string(),
            serde_json::Value::Object(
                groups
                    .iter()
                    .map(|(name, s)| {
                        (name.to_string(), serde_json::to_value(s).expect("serializable"))
                    })
                    .collect(),
            ),
        );
    }
    let nested = serde_json::json!({
        "meta": meta_json(config),
        "n": args.n,
        "b": args.b,
        "reps": args.reps,
        "per_ell": per_ell,
    });
    Ok(Outcome {
        table: Table { columns, rows },
        nested: Some(nested),
        exit: 0,
    })
}

fn cmd_verify(config: &RunConfig, args: &VerifyArgs) -> Result<Outcome> {
    let checks = run_suite(&args.suite)?;
    let mut rows = Vec::new();
    let mut json_checks = Vec::new();
    let mut all_pass = true;
    let mut total = 0.0;
    for c in &checks {
        all_pass &= c.pass;
        total += c.seconds;
        eprintln!("{}: {} ({:.2} s)", c.name, if c.pass { "pass" } else { "FAIL" }, c.seconds);
        rows.push(vec![
            c.name.to_string(),
            if c.pass { "pass" } else { "FAIL" }.to_string(),
            c.detail.clone(),
        ]);
        json_checks.push(serde_json::json!({
            "criterion": c.name,
            "pass": c.pass,
            "detail": c.detail,
        }));
    }
    let mut exit = if all_pass { 0 } else { 1 };
    if let Some(budget) = &args.budget {
        let limit = parse_budget(budget)?;
        if total > limit {
            eprintln!("budget exceeded: {total:.1} s > {limit:.1} s");
            exit = 1;
        }
    }
    let nested = serde_json::json!({
        "meta": meta_json(config),
        "suite": args.suite,
        "all_pass": all_pass,
        "checks": json_checks,
    });
    Ok(Outcome {
        table: Table {
            columns: vec!["criterion", "pass", "detail"],
            rows,
        },
        nested: Some(nested),
        exit,
    })
}

fn dispatch(config: &RunConfig) -> Result<Outcome> {
    match &config.command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Expect(what) => cmd_expect(what),
        Command::Simulate(args) => cmd_simulate(config, args),
        Command::Verify(args) => cmd_verify(config, args),
    }
}

fn resolve_out(path: &PathBuf) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.clone()
}

fn run() -> i32 {
    let cli = Cli::parse();
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    if config.threads > 0 {
        // Build the global pool before any parallel section; a second call
        // in the same process would fail, which is fine to ignore.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build_global();
    }
    let outcome = match dispatch(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let rendered = render(&config, &outcome);
    match &config.out {
        Some(path) => {
            let target = resolve_out(path);
            if let Some(parent) = target.parent() {
                if !parent.as_os_str().is_empty() {
                    if let Err(e) = std::fs::create_dir_all(parent) {
                        eprintln!("error: cannot create {}: {e}", parent.display());
                        return 1;
                    }
                }
            }
            if let Err(e) = std::fs::write(&target, rendered) {
                eprintln!("error: cannot write {}: {e}", target.display());
                return 1;
            }
        }
        None => print!("{rendered}"),
    }
    outcome.exit
}

/// Binary entry point.
pub fn main() {
    std::process::exit(run());
}
