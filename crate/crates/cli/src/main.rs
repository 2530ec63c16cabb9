//! barscan: detect bar-chart patterns in OHLC series, backtest them by the
//! buy-on-confirmation / sell-on-invalidation rule, and report true/false
//! counts with chi-square validation.

use barscan_core::config::{OutputFormat, RunConfig};
use barscan_core::fixtures;
use barscan_core::market::{self, Series, Severity};
use barscan_core::pipeline::{analyze_all_with_threads, SecurityResult};
use barscan_core::report;
use clap::{Args, Parser, Subcommand};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_DATA: u8 = 1;
const EXIT_ENV: u8 = 2;

#[derive(Parser)]
#[command(name = "barscan", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check CSV files against the bar/series invariants.
    Validate {
        /// CSV files, one security each.
        paths: Vec<PathBuf>,
    },
    /// Detect pattern instances and list them chronologically.
    Scan(RunArgs),
    /// Detect, backtest and report count tables with chi-square tests.
    Backtest(RunArgs),
    /// Write the bundled fixture corpus (showcase and synthetic securities).
    GenFixtures {
        /// Output directory; showcase/ and corpus/ are created below it.
        #[arg(long)]
        out: PathBuf,
        /// Seed for the synthetic corpus.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// CSV files, one security each (may also come from the config file).
    paths: Vec<PathBuf>,
    /// Config file of `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads for per-security parallelism (0 = default pool).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Security id overrides, applied to the inputs in order.
    #[arg(long = "security-id")]
    security_ids: Vec<String>,
    /// Write the per-trade CSV next to the report (backtest only).
    #[arg(long)]
    trades_csv: Option<PathBuf>,
    /// Emit per-bar data plus instance annotations as CSV (scan only).
    #[arg(long, default_value_t = false)]
    plot_data: bool,
    /// Any config key, repeatable: -S breakout_pct=0.05 -S alpha=0.01
    #[arg(short = 'S', long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    #[arg(long)]
    swing_k: Option<usize>,
    #[arg(long)]
    breakout_pct: Option<f64>,
    #[arg(long)]
    three_bar_strict: Option<bool>,
    #[arg(long)]
    flatness_tol: Option<f64>,
    #[arg(long)]
    double_tol: Option<f64>,
    #[arg(long)]
    channel_parallel_tol: Option<f64>,
    #[arg(long)]
    containment_tol: Option<f64>,
    #[arg(long)]
    hs_head_min: Option<f64>,
    #[arg(long)]
    hs_shoulder_tol: Option<f64>,
    #[arg(long)]
    max_flag_bars: Option<usize>,
    #[arg(long)]
    flag_move_pct: Option<f64>,
    #[arg(long)]
    flag_move_bars: Option<usize>,
    #[arg(long)]
    formation_min_sep: Option<usize>,
    #[arg(long)]
    fan_anchor_tol: Option<usize>,
    #[arg(long)]
    overlap_suppression: Option<f64>,
    /// open | close
    #[arg(long)]
    entry_mode: Option<String>,
    #[arg(long)]
    include_end_of_data: Option<bool>,
    /// independent | sequential
    #[arg(long)]
    trade_mode: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    /// text | csv | structured
    #[arg(long)]
    format: Option<String>,
    /// Keep only instances confirmed on or after this date (YYYY-MM-DD).
    #[arg(long)]
    from: Option<String>,
    /// Keep only instances confirmed on or before this date (YYYY-MM-DD).
    #[arg(long)]
    to: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

fn fail_env(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_ENV)
}

fn fail_data(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_DATA)
}

fn build_config(args: &RunArgs) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &args.config {
        let text =
            fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        cfg.apply(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if !args.paths.is_empty() {
        cfg.inputs = args.paths.iter().map(|p| p.display().to_string()).collect();
    }
    if !args.security_ids.is_empty() {
        cfg.security_ids = args.security_ids.clone();
    }
    let mut set = |key: &str, value: Option<String>| -> Result<(), String> {
        if let Some(v) = value {
            cfg.set(key, &v).map_err(|e| match e {
                barscan_core::config::SetError::Unknown => format!("unknown key {key}"),
                barscan_core::config::SetError::Bad(r) => format!("bad value for {key}: {r}"),
            })?;
        }
        Ok(())
    };
    set("swing_k", args.swing_k.map(|v| v.to_string()))?;
    set("breakout_pct", args.breakout_pct.map(|v| v.to_string()))?;
    set("three_bar_strict", args.three_bar_strict.map(|v| v.to_string()))?;
    set("flatness_tol", args.flatness_tol.map(|v| v.to_string()))?;
    set("double_tol", args.double_tol.map(|v| v.to_string()))?;
    set("channel_parallel_tol", args.channel_parallel_tol.map(|v| v.to_string()))?;
    set("containment_tol", args.containment_tol.map(|v| v.to_string()))?;
    set("hs_head_min", args.hs_head_min.map(|v| v.to_string()))?;
    set("hs_shoulder_tol", args.hs_shoulder_tol.map(|v| v.to_string()))?;
    set("max_flag_bars", args.max_flag_bars.map(|v| v.to_string()))?;
    set("flag_move_pct", args.flag_move_pct.map(|v| v.to_string()))?;
    set("flag_move_bars", args.flag_move_bars.map(|v| v.to_string()))?;
    set("formation_min_sep", args.formation_min_sep.map(|v| v.to_string()))?;
    set("fan_anchor_tol", args.fan_anchor_tol.map(|v| v.to_string()))?;
    set("overlap_suppression", args.overlap_suppression.map(|v| v.to_string()))?;
    set("entry_mode", args.entry_mode.clone())?;
    set("include_end_of_data", args.include_end_of_data.map(|v| v.to_string()))?;
    set("trade_mode", args.trade_mode.clone())?;
    set("alpha", args.alpha.map(|v| v.to_string()))?;
    set("format", args.format.clone())?;
    set("from", args.from.clone())?;
    set("to", args.to.clone())?;
    set("seed", args.seed.map(|v| v.to_string()))?;
    for kv in &args.sets {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| format!("--set expects KEY=VALUE, got `{kv}`"))?;
        set(k.trim(), Some(v.trim().to_string()))?;
    }
    if cfg.swing_k == 0 {
        return Err("swing_k must be at least 1".into());
    }
    Ok(cfg)
}

fn security_id(path: &Path, overrides: &[String], index: usize) -> String {
    overrides
        .get(index)
        .filter(|s| !s.is_empty())
        .cloned()
        .unwrap_or_else(|| {
            path.file_stem().map(|s| s.to_string_lossy().to_string()).unwrap_or_else(|| {
                path.display().to_string()
            })
        })
}

fn load_series(cfg: &RunConfig) -> Result<Vec<Series>, (u8, String)> {
    if cfg.inputs.is_empty() {
        return Err((EXIT_ENV, "no input files given".into()));
    }
    let mut out = Vec::new();
    for (i, input) in cfg.inputs.iter().enumerate() {
        let path = Path::new(input);
        let file = fs::File::open(path)
            .map_err(|e| (EXIT_ENV, format!("{}: {e}", path.display())))?;
        let id = security_id(path, &cfg.security_ids, i);
        let series = market::parse_csv(file, &id)
            .map_err(|e| (EXIT_DATA, format!("{}: {e}", path.display())))?;
        out.push(series);
    }
    Ok(out)
}

fn run_analysis(args: &RunArgs) -> Result<(Vec<SecurityResult>, RunConfig), (u8, String)> {
    let cfg = build_config(args).map_err(|e| (EXIT_ENV, e))?;
    let series = load_series(&cfg)?;
    let threads = if args.threads == 0 { None } else { Some(args.threads) };
    let results = analyze_all_with_threads(series, &cfg, threads)
        .map_err(|e| (EXIT_DATA, e.to_string()))?;
    Ok((results, cfg))
}

fn cmd_validate(paths: &[PathBuf]) -> ExitCode {
    if paths.is_empty() {
        return fail_env("no input files given");
    }
    let mut worst = EXIT_OK;
    for path in paths {
        let file = match fs::File::open(path) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(EXIT_ENV);
            }
        };
        let id = security_id(path, &[], usize::MAX);
        match market::parse_csv_lossy(file, &id) {
            Ok((_, anomalies)) => {
                for a in &anomalies {
                    println!("{}: {a}", path.display());
                }
                if anomalies.iter().any(|a| a.severity == Severity::Error) {
                    worst = worst.max(EXIT_DATA);
                }
            }
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                worst = worst.max(EXIT_DATA);
            }
        }
    }
    ExitCode::from(worst)
}

fn cmd_scan(args: &RunArgs) -> ExitCode {
    match run_analysis(args) {
        Ok((results, cfg)) => {
            let text = if args.plot_data {
                report::render_plot_data(&results, &cfg)
            } else {
                report::render_scan(&results, &cfg)
            };
            print!("{text}");
            ExitCode::from(EXIT_OK)
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn cmd_backtest(args: &RunArgs) -> ExitCode {
    match run_analysis(args) {
        Ok((results, cfg)) => {
            let text = report::render_backtest_report(&results, &cfg);
            print!("{text}");
            if let Some(path) = &args.trades_csv {
                let trades: Vec<_> = results
                    .iter()
                    .flat_map(|r| r.outcome.trades.iter().cloned())
                    .collect();
                let csv = report::render_trades_csv(&trades, &results);
                if let Err(e) = fs::write(path, csv) {
                    return fail_env(format!("{}: {e}", path.display()));
                }
            }
            ExitCode::from(EXIT_OK)
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn cmd_gen_fixtures(out: &Path, seed: Option<u64>) -> ExitCode {
    let seed = seed.unwrap_or_else(|| RunConfig::default().seed);
    let showcase_dir = out.join("showcase");
    let corpus_dir = out.join("corpus");
    if let Err(e) = fs::create_dir_all(&showcase_dir).and_then(|_| fs::create_dir_all(&corpus_dir))
    {
        return fail_env(format!("{}: {e}", out.display()));
    }
    let mut annotations = String::from("security,kind,confirm_index\n");
    for a in fixtures::showcase() {
        let path = showcase_dir.join(format!("{}.csv", a.series.security_id));
        if let Err(e) = fs::write(&path, market::write_csv(&a.series)) {
            return fail_env(format!("{}: {e}", path.display()));
        }
        annotations.push_str(&format!(
            "{},{},{}\n",
            a.series.security_id,
            a.kind.ident(),
            a.confirm_index
        ));
    }
    if let Err(e) = fs::write(out.join("showcase_annotations.csv"), annotations) {
        return fail_env(e);
    }
    for s in fixtures::synthetic_corpus(seed) {
        let path = corpus_dir.join(format!("{}.csv", s.security_id));
        if let Err(e) = fs::write(&path, market::write_csv(&s)) {
            return fail_env(format!("{}: {e}", path.display()));
        }
    }
    let _ = writeln!(std::io::stdout(), "fixtures written to {}", out.display());
    ExitCode::from(EXIT_OK)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Validate { paths } => cmd_validate(&paths),
        Command::Scan(args) => {
            if args.format.as_deref() == Some("plot") {
                return fail_data("use --plot-data for plot output");
            }
            cmd_scan(&args)
        }
        Command::Backtest(args) => cmd_backtest(&args),
        Command::GenFixtures { out, seed } => cmd_gen_fixtures(&out, seed),
    }
}
