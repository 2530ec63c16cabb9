//! Report rendering: scan listings and the backtest report with its
//! pattern/top-pattern/security tables and chi-square section. All output is
//! assembled into strings with fixed column orders, so identical inputs and
//! configuration produce identical bytes.

use crate::backtest::{ClosedBy, Side, Trade, Verdict};
use crate::config::{OutputFormat, RunConfig};
use crate::patterns::{PatternInstance, TrendDirection};
use crate::pipeline::SecurityResult;
use crate::stats::{aggregate_by_pattern, aggregate_by_security, chi_square_gof, CountRow};
use std::fmt::Write as _;

pub const SCAN_CSV_HEADER: &str =
    "security,kind,direction,first_index,first_date,confirm_index,confirm_date,entry_trigger";
pub const TRADES_CSV_HEADER: &str = "security,kind,side,entry_index,entry_date,entry_price,\
exit_index,exit_date,exit_price,closed_by,verdict";
pub const PLOT_CSV_HEADER: &str =
    "row_type,security,index,date,open,high,low,close,volume,kind,direction,confirm_index";

fn direction_name(d: TrendDirection) -> &'static str {
    match d {
        TrendDirection::Bullish => "bullish",
        TrendDirection::Bearish => "bearish",
    }
}

fn in_window(r: &SecurityResult, inst: &PatternInstance, cfg: &RunConfig) -> bool {
    let date = r.series.bars[inst.confirm_index].date;
    cfg.from.is_none_or(|d| date >= d) && cfg.to.is_none_or(|d| date <= d)
}

/// Instances per security, filtered to the configured confirmation-date
/// window.
pub fn render_scan(results: &[SecurityResult], cfg: &RunConfig) -> String {
    let mut out = String::new();
    match cfg.format {
        OutputFormat::Csv => {
            out.push_str(SCAN_CSV_HEADER);
            out.push('\n');
            for r in results {
                for inst in r.instances.iter().filter(|i| in_window(r, i, cfg)) {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{}",
                        r.series.security_id,
                        inst.kind.ident(),
                        direction_name(inst.direction),
                        inst.span.0,
                        r.series.bars[inst.span.0].date,
                        inst.confirm_index,
                        r.series.bars[inst.confirm_index].date,
                        inst.entry_trigger
                    );
                }
            }
        }
        OutputFormat::Structured => {
            for r in results {
                for inst in r.instances.iter().filter(|i| in_window(r, i, cfg)) {
                    let _ = writeln!(
                        out,
                        "instance security={} kind={} direction={} first={} confirm={} date={} trigger=\"{}\"",
                        r.series.security_id,
                        inst.kind.ident(),
                        direction_name(inst.direction),
                        inst.span.0,
                        inst.confirm_index,
                        r.series.bars[inst.confirm_index].date,
                        inst.entry_trigger
                    );
                }
            }
        }
        OutputFormat::Text => {
            for r in results {
                let shown: Vec<&PatternInstance> =
                    r.instances.iter().filter(|i| in_window(r, i, cfg)).collect();
                let _ = writeln!(
                    out,
                    "{}: {} instance(s) over {} bars",
                    r.series.security_id,
                    shown.len(),
                    r.series.len()
                );
                for inst in shown {
                    let _ = writeln!(
                        out,
                        "  {:>4}  {}  {:28} {:7}  {}",
                        inst.confirm_index,
                        r.series.bars[inst.confirm_index].date,
                        inst.kind.display_name(),
                        direction_name(inst.direction),
                        inst.entry_trigger
                    );
                }
            }
        }
    }
    out
}

/// Per-bar series plus instance annotations in one CSV stream.
pub fn render_plot_data(results: &[SecurityResult], cfg: &RunConfig) -> String {
    let mut out = String::from(PLOT_CSV_HEADER);
    out.push('\n');
    for r in results {
        for (i, bar) in r.series.bars.iter().enumerate() {
            let _ = writeln!(
                out,
                "bar,{},{},{},{},{},{},{},{},,,",
                r.series.security_id,
                i,
                bar.date,
                bar.open,
                bar.high,
                bar.low,
                bar.close,
                bar.volume.map(|v| v.to_string()).unwrap_or_default()
            );
        }
        for inst in r.instances.iter().filter(|i| in_window(r, i, cfg)) {
            let _ = writeln!(
                out,
                "instance,{},{},{},,,,,,{},{},{}",
                r.series.security_id,
                inst.span.0,
                r.series.bars[inst.span.0].date,
                inst.kind.ident(),
                direction_name(inst.direction),
                inst.confirm_index
            );
        }
    }
    out
}

pub fn render_trades_csv(trades: &[Trade], results: &[SecurityResult]) -> String {
    let dates = |id: &str, i: usize| {
        results
            .iter()
            .find(|r| r.series.security_id == id)
            .map(|r| r.series.bars[i].date.to_string())
            .unwrap_or_default()
    };
    let mut out = String::from(TRADES_CSV_HEADER);
    out.push('\n');
    for t in trades {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            t.security_id,
            t.kind.ident(),
            match t.side {
                Side::Long => "long",
                Side::Short => "short",
            },
            t.entry_index,
            dates(&t.security_id, t.entry_index),
            t.entry_price,
            t.exit_index,
            dates(&t.security_id, t.exit_index),
            t.exit_price,
            match t.closed_by {
                ClosedBy::Invalidation => "invalidation",
                ClosedBy::EndOfData => "end_of_data",
            },
            match t.verdict {
                Verdict::True => "true",
                Verdict::False => "false",
            }
        );
    }
    out
}

fn fmt_pct(x: f64) -> String {
    format!("{x:.1}")
}

fn pattern_table(rows: &[CountRow], out: &mut String) {
    let _ = writeln!(
        out,
        "{:<36} {:>6} {:>7} {:>8} {:>6} {:>7} {:>6} {:>7}",
        "pattern", "total", "pct", "cum_pct", "true", "t_pct", "false", "f_pct"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<36} {:>6} {:>7} {:>8} {:>6} {:>7} {:>6} {:>7}",
            r.key,
            r.total,
            fmt_pct(r.pct_of_total),
            fmt_pct(r.cum_pct),
            r.true_count,
            fmt_pct(r.true_pct),
            r.false_count,
            fmt_pct(r.false_pct)
        );
    }
}

fn security_table(rows: &[CountRow], out: &mut String) {
    let _ = writeln!(
        out,
        "{:<24} {:>6} {:>7} {:>6} {:>7} {:>6}",
        "security", "true", "t_pct", "false", "f_pct", "total"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<24} {:>6} {:>7} {:>6} {:>7} {:>6}",
            r.key,
            r.true_count,
            fmt_pct(r.true_pct),
            r.false_count,
            fmt_pct(r.false_pct),
            r.total
        );
    }
}

fn chi_line(label: &str, observed: &[u64], alpha: f64, out: &mut String) {
    let n: u64 = observed.iter().sum();
    if observed.len() < 2 || n == 0 {
        let _ = writeln!(out, "{label}: not enough data");
        return;
    }
    let expected: Vec<f64> = vec![n as f64 / observed.len() as f64; observed.len()];
    match chi_square_gof(observed, &expected, alpha) {
        Ok(r) => {
            let _ = writeln!(
                out,
                "{label}: statistic={:.2} df={} alpha={} critical={:.3} significant={}",
                r.statistic,
                r.degrees_of_freedom,
                r.alpha,
                r.critical_value,
                if r.significant { "yes" } else { "no" }
            );
        }
        Err(e) => {
            let _ = writeln!(out, "{label}: {e}");
        }
    }
}

/// The full backtest report. The header embeds the effective configuration
/// between markers so a report can be replayed from its own text.
pub fn render_backtest_report(results: &[SecurityResult], cfg: &RunConfig) -> String {
    let mut out = String::new();
    out.push_str("barscan backtest report\n");
    out.push_str("=======================\n\n");
    out.push_str("-- config --\n");
    out.push_str(&cfg.serialize());
    out.push_str("-- end config --\n\n");

    // assemble trades in deterministic (security, confirmation, kind) order,
    // windowed by confirmation date and optionally excluding open-ended ones
    let mut trades: Vec<Trade> = Vec::new();
    let mut dropped = 0usize;
    let mut end_of_data = 0usize;
    for r in results {
        for (inst, trade) in r
            .instances
            .iter()
            .filter(|i| in_window(r, i, cfg))
            .filter_map(|i| {
                r.outcome
                    .trades
                    .iter()
                    .find(|t| t.pattern_confirm == i.confirm_index && t.kind == i.kind)
                    .map(|t| (i, t))
            })
        {
            let _ = inst;
            if trade.closed_by == ClosedBy::EndOfData {
                end_of_data += 1;
                if !cfg.include_end_of_data {
                    continue;
                }
            }
            trades.push(trade.clone());
        }
        dropped += r.outcome.dropped.len();
    }

    let _ = writeln!(
        out,
        "securities: {}   trades: {}   dropped instances: {}   open at end of data: {}{}",
        results.len(),
        trades.len(),
        dropped,
        end_of_data,
        if cfg.include_end_of_data { " (included)" } else { " (excluded)" }
    );
    out.push('\n');

    out.push_str("PATTERNS (all securities)\n");
    let by_pattern = aggregate_by_pattern(&trades);
    pattern_table(&by_pattern, &mut out);
    out.push('\n');

    out.push_str("TOP PATTERNS\n");
    let top: Vec<CountRow> = by_pattern
        .iter()
        .filter(|r| r.key != "TOTAL")
        .take(4)
        .cloned()
        .collect();
    pattern_table(&top, &mut out);
    out.push('\n');

    out.push_str("SECURITIES\n");
    let by_security = aggregate_by_security(&trades);
    security_table(&by_security, &mut out);
    out.push('\n');

    out.push_str("CHI-SQUARE\n");
    out.push_str("null: true and false outcomes equally likely\n");
    let total_row = by_pattern.last().expect("total row");
    chi_line(
        "all patterns, true vs false",
        &[total_row.true_count, total_row.false_count],
        cfg.alpha,
        &mut out,
    );
    let (t4t, t4f) = top.iter().fold((0, 0), |acc, r| (acc.0 + r.true_count, acc.1 + r.false_count));
    chi_line("top four patterns, true vs false", &[t4t, t4f], cfg.alpha, &mut out);
    let per_pattern: Vec<u64> = by_pattern
        .iter()
        .filter(|r| r.key != "TOTAL")
        .flat_map(|r| [r.true_count, r.false_count])
        .collect();
    chi_line("per-pattern cells, true/false per kind", &per_pattern, cfg.alpha, &mut out);

    out
}

/// Extract the config block embedded in a rendered report.
pub fn extract_config_block(report: &str) -> Option<String> {
    let start = report.find("-- config --\n")? + "-- config --\n".len();
    let end = report.find("-- end config --")?;
    Some(report[start..end].to_string())
}
