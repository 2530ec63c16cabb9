//! Per-security analysis pipeline. Securities are independent, so the scan
//! and backtest fan out across them; results are merged in a fixed order so
//! output never depends on the degree of parallelism.

use crate::backtest::{run_backtest, BacktestError, BacktestOutcome};
use crate::config::RunConfig;
use crate::market::Series;
use crate::patterns::{scan, PatternInstance};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct SecurityResult {
    pub series: Series,
    pub instances: Vec<PatternInstance>,
    pub outcome: BacktestOutcome,
}

/// Scan one security and backtest every instance.
pub fn analyze_series(series: Series, cfg: &RunConfig) -> Result<SecurityResult, BacktestError> {
    let instances = scan(&series, cfg);
    let outcome = run_backtest(&series, &instances, cfg)?;
    Ok(SecurityResult { series, instances, outcome })
}

fn sort_results(mut results: Vec<SecurityResult>) -> Vec<SecurityResult> {
    results.sort_by(|a, b| a.series.security_id.cmp(&b.series.security_id));
    results
}

/// Analyze all securities, in parallel when the `parallel` feature is
/// enabled. Results are sorted by security id either way.
pub fn analyze_all(
    series: Vec<Series>,
    cfg: &RunConfig,
) -> Result<Vec<SecurityResult>, BacktestError> {
    #[cfg(feature = "parallel")]
    {
        let results: Result<Vec<_>, _> =
            series.into_par_iter().map(|s| analyze_series(s, cfg)).collect();
        results.map(sort_results)
    }
    #[cfg(not(feature = "parallel"))]
    {
        analyze_all_sequential(series, cfg)
    }
}

/// Single-threaded reference path; the benchmark suite compares this
/// against [`analyze_all`].
pub fn analyze_all_sequential(
    series: Vec<Series>,
    cfg: &RunConfig,
) -> Result<Vec<SecurityResult>, BacktestError> {
    let results: Result<Vec<_>, _> = series.into_iter().map(|s| analyze_series(s, cfg)).collect();
    results.map(sort_results)
}

/// Run `analyze_all` on a dedicated pool of `threads` workers (`None` uses
/// the default pool). With the `parallel` feature disabled the thread count
/// is irrelevant and the sequential path runs.
pub fn analyze_all_with_threads(
    series: Vec<Series>,
    cfg: &RunConfig,
    threads: Option<usize>,
) -> Result<Vec<SecurityResult>, BacktestError> {
    #[cfg(feature = "parallel")]
    {
        match threads {
            Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool")
                .install(|| analyze_all(series, cfg)),
            _ => analyze_all(series, cfg),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        analyze_all_sequential(series, cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::synthetic_corpus;

    #[test]
    fn parallel_and_sequential_agree() {
        let cfg = RunConfig::default();
        let a = analyze_all(synthetic_corpus(7), &cfg).unwrap();
        let b = analyze_all_sequential(synthetic_corpus(7), &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn results_are_sorted_by_security() {
        let cfg = RunConfig::default();
        let mut series = synthetic_corpus(7);
        series.reverse();
        let r = analyze_all(series, &cfg).unwrap();
        let ids: Vec<&str> = r.iter().map(|x| x.series.security_id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }
}
