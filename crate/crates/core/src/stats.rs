//! Count-table aggregation and chi-square goodness of fit.
//!
//! Percentages are computed from exact integer counts and rounded half away
//! from zero to one decimal, matching how the result tables are rendered.
//! The chi-square critical value comes from inverting the regularized lower
//! incomplete gamma function, evaluated by series/continued fraction to an
//! absolute tolerance of 1e-10.

use crate::backtest::{Trade, Verdict};
use crate::patterns::PatternKind;
use std::collections::BTreeMap;
use thiserror::Error;

/// One line of a result table: a pattern kind, a security, or the TOTAL row.
/// Percentage fields are already rounded for rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct CountRow {
    pub key: String,
    pub total: u64,
    pub true_count: u64,
    pub false_count: u64,
    /// Share of the grand total.
    pub pct_of_total: f64,
    /// Cumulative share in table order, computed from exact counts.
    pub cum_pct: f64,
    pub true_pct: f64,
    pub false_pct: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub alpha: f64,
    pub critical_value: f64,
    pub significant: bool,
}

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("observed and expected must have the same length of at least 2")]
    ShapeMismatch,
    #[error("degenerate expectation: expected counts must all be positive")]
    DegenerateExpectation,
}

/// Half-away-from-zero rounding to one decimal.
pub fn round_pct(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

fn ratio_pct(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        round_pct(100.0 * num as f64 / den as f64)
    }
}

fn count(trades: &[Trade], pred: impl Fn(&Trade) -> bool) -> (u64, u64) {
    let mut total = 0;
    let mut true_count = 0;
    for t in trades.iter().filter(|t| pred(t)) {
        total += 1;
        if t.verdict == Verdict::True {
            true_count += 1;
        }
    }
    (total, true_count)
}

fn total_row(trades: &[Trade]) -> CountRow {
    let (total, true_count) = count(trades, |_| true);
    CountRow {
        key: "TOTAL".into(),
        total,
        true_count,
        false_count: total - true_count,
        pct_of_total: if total == 0 { 0.0 } else { 100.0 },
        cum_pct: if total == 0 { 0.0 } else { 100.0 },
        true_pct: ratio_pct(true_count, total),
        false_pct: ratio_pct(total - true_count, total),
    }
}

/// One row per pattern kind with a nonzero count, sorted by total descending
/// and then by kind order, with cumulative percentages over that order and a
/// TOTAL row last.
pub fn aggregate_by_pattern(trades: &[Trade]) -> Vec<CountRow> {
    let mut per_kind: BTreeMap<PatternKind, (u64, u64)> = BTreeMap::new();
    for t in trades {
        let e = per_kind.entry(t.kind).or_default();
        e.0 += 1;
        if t.verdict == Verdict::True {
            e.1 += 1;
        }
    }
    let grand: u64 = trades.len() as u64;
    let mut kinds: Vec<(PatternKind, (u64, u64))> = per_kind.into_iter().collect();
    kinds.sort_by(|a, b| b.1 .0.cmp(&a.1 .0).then(a.0.cmp(&b.0)));

    let mut rows = Vec::new();
    let mut running: u64 = 0;
    for (kind, (total, true_count)) in kinds {
        running += total;
        rows.push(CountRow {
            key: kind.display_name().to_string(),
            total,
            true_count,
            false_count: total - true_count,
            pct_of_total: ratio_pct(total, grand),
            cum_pct: ratio_pct(running, grand),
            true_pct: ratio_pct(true_count, total),
            false_pct: ratio_pct(total - true_count, total),
        });
    }
    rows.push(total_row(trades));
    rows
}

/// One row per security sorted by exact true share descending (ties by id),
/// TOTAL row last. Cumulative percentages accumulate in that order.
pub fn aggregate_by_security(trades: &[Trade]) -> Vec<CountRow> {
    let mut per_sec: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    for t in trades {
        let e = per_sec.entry(t.security_id.clone()).or_default();
        e.0 += 1;
        if t.verdict == Verdict::True {
            e.1 += 1;
        }
    }
    let grand: u64 = trades.len() as u64;
    let mut secs: Vec<(String, (u64, u64))> = per_sec.into_iter().collect();
    secs.sort_by(|a, b| {
        let ra = a.1 .1 as f64 * b.1 .0 as f64;
        let rb = b.1 .1 as f64 * a.1 .0 as f64;
        rb.partial_cmp(&ra).unwrap().then_with(|| a.0.cmp(&b.0))
    });

    let mut rows = Vec::new();
    let mut running: u64 = 0;
    for (id, (total, true_count)) in secs {
        running += total;
        rows.push(CountRow {
            key: id,
            total,
            true_count,
            false_count: total - true_count,
            pct_of_total: ratio_pct(total, grand),
            cum_pct: ratio_pct(running, grand),
            true_pct: ratio_pct(true_count, total),
            false_pct: ratio_pct(total - true_count, total),
        });
    }
    rows.push(total_row(trades));
    rows
}

/// Pearson goodness of fit: `sum((O - E)^2 / E)` against the chi-square
/// critical value at `(len - 1)` degrees of freedom.
pub fn chi_square_gof(
    observed: &[u64],
    expected: &[f64],
    alpha: f64,
) -> Result<ChiSquareResult, StatsError> {
    if observed.len() != expected.len() || observed.len() < 2 {
        return Err(StatsError::ShapeMismatch);
    }
    if expected.iter().any(|&e| !(e > 0.0)) {
        return Err(StatsError::DegenerateExpectation);
    }
    let statistic: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum();
    let degrees_of_freedom = observed.len() - 1;
    let critical_value = chi_square_critical(degrees_of_freedom, alpha);
    Ok(ChiSquareResult {
        statistic,
        degrees_of_freedom,
        alpha,
        critical_value,
        significant: statistic > critical_value,
    })
}

/// Critical value `x` with upper tail mass `alpha` at `df` degrees of
/// freedom: solves `P(df/2, x/2) = 1 - alpha` by bisection.
pub fn chi_square_critical(df: usize, alpha: f64) -> f64 {
    assert!(df >= 1, "degrees of freedom must be positive");
    assert!(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    let target = 1.0 - alpha;
    let a = df as f64 / 2.0;
    let mut lo = 0.0_f64;
    let mut hi = df as f64 + 10.0;
    while reg_lower_gamma(a, hi / 2.0) < target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if reg_lower_gamma(a, mid / 2.0) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 * hi.max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Regularized lower incomplete gamma P(a, x), series expansion for
/// `x < a + 1` and Lentz continued fraction otherwise.
pub fn reg_lower_gamma(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    if x < a + 1.0 {
        // series: P(a,x) = x^a e^-x / Gamma(a) * sum x^n / (a(a+1)...(a+n))
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut ap = a;
        for _ in 0..500 {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * 1e-16 {
                break;
            }
        }
        sum * (a * x.ln() - x - ln_gamma(a)).exp()
    } else {
        // continued fraction for Q(a,x), modified Lentz
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        let q = (a * x.ln() - x - ln_gamma(a)).exp() * h;
        1.0 - q
    }
}

/// Lanczos approximation (g = 7, 9 coefficients), accurate to ~1e-15.
fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // reflection
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * x).sin().ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEF[0];
    for (i, c) in COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backtest::{ClosedBy, Side};

    pub(crate) fn trade(kind: PatternKind, security: &str, verdict: Verdict) -> Trade {
        Trade {
            security_id: security.into(),
            kind,
            side: Side::Long,
            pattern_confirm: 0,
            entry_index: 1,
            entry_price: 1.0,
            exit_index: 2,
            exit_price: 1.0,
            closed_by: ClosedBy::EndOfData,
            verdict,
        }
    }

    fn trades(kind: PatternKind, t: usize, f: usize) -> Vec<Trade> {
        let mut v = Vec::new();
        for _ in 0..t {
            v.push(trade(kind, "s", Verdict::True));
        }
        for _ in 0..f {
            v.push(trade(kind, "s", Verdict::False));
        }
        v
    }

    #[test]
    fn single_kind_percentages() {
        let t = trades(PatternKind::UpTrendline, 153, 50);
        let rows = aggregate_by_pattern(&t);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].total, 203);
        assert_eq!(rows[0].true_pct, 75.4);
        assert_eq!(rows[0].false_pct, 24.6);
        assert_eq!(rows[1].key, "TOTAL");
    }

    #[test]
    fn empty_trades_give_zeroed_total_row() {
        let rows = aggregate_by_pattern(&[]);
        assert_eq!(rows.len(), 1);
        let t = &rows[0];
        assert_eq!((t.total, t.true_count, t.false_count), (0, 0, 0));
        assert_eq!(t.true_pct, 0.0);
        assert_eq!(t.false_pct, 0.0);
        assert_eq!(t.pct_of_total, 0.0);
    }

    #[test]
    fn security_rows_sort_by_true_share() {
        let mut all = Vec::new();
        for _ in 0..83 {
            all.push(trade(PatternKind::UpTrendline, "bradesco", Verdict::True));
        }
        for _ in 0..11 {
            all.push(trade(PatternKind::UpTrendline, "bradesco", Verdict::False));
        }
        for _ in 0..56 {
            all.push(trade(PatternKind::UpTrendline, "usiminas", Verdict::True));
        }
        for _ in 0..26 {
            all.push(trade(PatternKind::UpTrendline, "usiminas", Verdict::False));
        }
        let rows = aggregate_by_security(&all);
        assert_eq!(rows[0].key, "bradesco");
        assert_eq!(rows[0].true_pct, 88.3);
        assert_eq!(rows[0].false_pct, 11.7);
        assert_eq!(rows[1].key, "usiminas");
        assert_eq!(rows[1].true_pct, 68.3);
        assert_eq!(rows[1].false_pct, 31.7);
    }

    #[test]
    fn single_true_trade_is_hundred_percent() {
        let all = vec![trade(PatternKind::Channel, "only", Verdict::True)];
        let rows = aggregate_by_security(&all);
        assert_eq!(rows[0].true_pct, 100.0);
        assert_eq!(rows[0].false_pct, 0.0);
    }

    #[test]
    fn chi_square_of_equal_counts_is_zero() {
        let r = chi_square_gof(&[50, 50], &[50.0, 50.0], 0.005).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!(!r.significant);
    }

    #[test]
    fn chi_square_of_55_45_is_exactly_one() {
        let r = chi_square_gof(&[55, 45], &[50.0, 50.0], 0.005).unwrap();
        assert!((r.statistic - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi_square_is_permutation_invariant() {
        let a = chi_square_gof(&[10, 30, 60], &[20.0, 30.0, 50.0], 0.01).unwrap();
        let b = chi_square_gof(&[60, 10, 30], &[50.0, 20.0, 30.0], 0.01).unwrap();
        assert!((a.statistic - b.statistic).abs() < 1e-12);
        assert_eq!(a.critical_value, b.critical_value);
    }

    #[test]
    fn degenerate_expectation_is_rejected() {
        assert_eq!(
            chi_square_gof(&[1, 2], &[0.0, 3.0], 0.05),
            Err(StatsError::DegenerateExpectation)
        );
        assert_eq!(chi_square_gof(&[1], &[1.0], 0.05), Err(StatsError::ShapeMismatch));
    }

    #[test]
    fn critical_values_match_reference_points() {
        // frozen from an independent incomplete-gamma inversion
        assert!((chi_square_critical(1, 0.005) - 7.879439).abs() < 1e-4);
        assert!((chi_square_critical(1, 0.01) - 6.634897).abs() < 1e-4);
        assert!((chi_square_critical(1, 0.05) - 3.841459).abs() < 1e-4);
        assert!((chi_square_critical(3, 0.005) - 12.838156).abs() < 1e-4);
        assert!((chi_square_critical(19, 0.005) - 38.582257).abs() < 1e-4);
    }

    #[test]
    fn lower_alpha_raises_critical_value() {
        for df in [1usize, 2, 5, 10] {
            let c5 = chi_square_critical(df, 0.05);
            let c1 = chi_square_critical(df, 0.01);
            let c05 = chi_square_critical(df, 0.005);
            assert!(c5 < c1 && c1 < c05);
        }
    }

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(round_pct(75.25), 75.3);
        assert_eq!(round_pct(97.5), 97.5);
        assert_eq!(round_pct(24.76), 24.8);
        assert_eq!(round_pct(0.04), 0.0);
    }
}
