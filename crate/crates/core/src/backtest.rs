//! Trade simulation: enter the bar after a pattern confirms, exit the bar
//! after its invalidation confirms, and classify the pattern true or false
//! by whether the trade profited. Ties are false.

use crate::config::{EntryMode, RunConfig, TradeMode};
use crate::lines::next_breakout;
use crate::market::Series;
use crate::patterns::{PatternInstance, PatternKind, TrendDirection};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Long,
    Short,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedBy {
    Invalidation,
    EndOfData,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trade {
    pub security_id: String,
    pub kind: PatternKind,
    pub side: Side,
    /// Confirmation bar of the pattern that opened the trade.
    pub pattern_confirm: usize,
    pub entry_index: usize,
    pub entry_price: f64,
    pub exit_index: usize,
    pub exit_price: f64,
    pub closed_by: ClosedBy,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DropReason {
    /// The pattern confirmed on the final bar; there is no next bar to
    /// enter on.
    ConfirmedOnFinalBar,
    /// Sequential mode only: a position was already open.
    PositionOpen,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DroppedInstance {
    pub kind: PatternKind,
    pub confirm_index: usize,
    pub reason: DropReason,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BacktestOutcome {
    pub trades: Vec<Trade>,
    pub dropped: Vec<DroppedInstance>,
}

#[derive(Debug, Error, PartialEq)]
pub enum BacktestError {
    #[error("instance confirmed at {confirm_index} outside series of length {len}")]
    InconsistentInputs { confirm_index: usize, len: usize },
}

fn price_at(series: &Series, index: usize, mode: EntryMode) -> f64 {
    match mode {
        EntryMode::Open => series.open(index),
        EntryMode::Close => series.close(index),
    }
}

/// Simulate one hypothetical trade per instance. Entry executes at the bar
/// after confirmation; the invalidation boundary is watched from entry and a
/// confirmed adverse breakout exits at the following bar. Trades still open
/// at the end of the data close at the final close and are flagged.
///
/// Exactly one verdict or drop diagnostic is produced per instance.
pub fn run_backtest(
    series: &Series,
    instances: &[PatternInstance],
    cfg: &RunConfig,
) -> Result<BacktestOutcome, BacktestError> {
    let n = series.len();
    let params = cfg.breakout_params();
    let mut outcome = BacktestOutcome::default();
    let mut busy_until = 0usize; // sequential mode: first bar a new entry may use

    for inst in instances {
        let c = inst.confirm_index;
        if c >= n {
            return Err(BacktestError::InconsistentInputs { confirm_index: c, len: n });
        }
        let entry_index = c + 1;
        if entry_index >= n {
            outcome.dropped.push(DroppedInstance {
                kind: inst.kind,
                confirm_index: c,
                reason: DropReason::ConfirmedOnFinalBar,
            });
            continue;
        }
        if cfg.trade_mode == TradeMode::Sequential && entry_index < busy_until {
            outcome.dropped.push(DroppedInstance {
                kind: inst.kind,
                confirm_index: c,
                reason: DropReason::PositionOpen,
            });
            continue;
        }

        let entry_price = price_at(series, entry_index, cfg.entry_mode);
        let invalidation = next_breakout(
            series,
            &inst.invalidation.boundary,
            entry_index,
            inst.invalidation.direction,
            &params,
        );
        let (exit_index, exit_price, closed_by) = match invalidation {
            Some(b) if b.confirm_index + 1 < n => (
                b.confirm_index + 1,
                price_at(series, b.confirm_index + 1, cfg.entry_mode),
                ClosedBy::Invalidation,
            ),
            // invalidation confirmed on the final bar leaves no bar to exit
            // on; the trade closes with the data
            _ => (n - 1, series.close(n - 1), ClosedBy::EndOfData),
        };

        let side = match inst.direction {
            TrendDirection::Bullish => Side::Long,
            TrendDirection::Bearish => Side::Short,
        };
        let profitable = match side {
            Side::Long => exit_price > entry_price,
            Side::Short => exit_price < entry_price,
        };
        outcome.trades.push(Trade {
            security_id: series.security_id.clone(),
            kind: inst.kind,
            side,
            pattern_confirm: c,
            entry_index,
            entry_price,
            exit_index,
            exit_price,
            closed_by,
            verdict: if profitable { Verdict::True } else { Verdict::False },
        });
        busy_until = busy_until.max(exit_index);
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::series_from_ohlc;
    use crate::lines::{Boundary, Direction};
    use crate::patterns::{Invalidation, Trigger};

    fn instance(kind: PatternKind, confirm: usize, boundary: Boundary, adverse: Direction) -> PatternInstance {
        PatternInstance {
            kind,
            direction: kind.direction(),
            span: (0, confirm),
            confirm_index: confirm,
            entry_trigger: "test".into(),
            invalidation: Invalidation { boundary, direction: adverse },
            trigger: Trigger::LineEstablished,
        }
    }

    /// Flat tape at 20 except opens pinned for entry/exit checks, with a
    /// plunge through 18 near the end.
    fn long_fixture() -> Series {
        // index:      0..=10 ride up, invalidation (close < 18 by 3%) at 20
        let mut bars: Vec<(f64, f64, f64, f64)> = Vec::new();
        for i in 0..=10 {
            let p = 20.0 + i as f64 * 0.1;
            bars.push((p, p + 0.2, p - 0.2, p));
        }
        bars[10] = (20.0, 21.5, 19.8, 21.0); // open[11−1]… bar 10 is confirm bar
        // bar 11: entry bar, open 20.0
        bars.push((20.0, 21.0, 19.5, 20.5));
        for i in 12..=19 {
            let p = 20.5 + (i as f64 - 12.0) * 0.1;
            bars.push((p, p + 0.3, p - 0.3, p));
        }
        // bar 20: close plunges 3% under the 18 boundary -> single-day confirm
        bars.push((18.0, 18.2, 17.0, 17.4));
        // bar 21: exit bar, open 23.0 (gap up for the tie/true variants)
        bars.push((23.0, 23.5, 17.0, 17.2));
        series_from_ohlc("t", &bars)
    }

    #[test]
    fn long_trade_profit_is_true() {
        let s = long_fixture();
        let cfg = RunConfig::default();
        let inst = instance(
            PatternKind::UpTrendline,
            10,
            Boundary::Level { price: 18.0 },
            Direction::Down,
        );
        let out = run_backtest(&s, &[inst], &cfg).unwrap();
        assert_eq!(out.trades.len(), 1);
        let t = &out.trades[0];
        assert_eq!(t.side, Side::Long);
        assert_eq!(t.entry_index, 11);
        assert_eq!(t.entry_price, 20.0);
        assert_eq!(t.exit_index, 21);
        assert_eq!(t.exit_price, 23.0);
        assert_eq!(t.closed_by, ClosedBy::Invalidation);
        assert_eq!(t.verdict, Verdict::True);
    }

    #[test]
    fn tie_is_false() {
        let mut s = long_fixture();
        s.bars[21].open = 20.0; // exit exactly at entry
        let cfg = RunConfig::default();
        let inst = instance(
            PatternKind::UpTrendline,
            10,
            Boundary::Level { price: 18.0 },
            Direction::Down,
        );
        let out = run_backtest(&s, &[inst], &cfg).unwrap();
        assert_eq!(out.trades[0].verdict, Verdict::False);
    }

    #[test]
    fn short_trade_profits_on_decline() {
        let mut s = long_fixture();
        s.bars[11].open = 30.0;
        s.bars[11].high = 30.5;
        s.bars[21].open = 27.0;
        let cfg = RunConfig::default();
        // bearish instance invalidated by the same downward plunge through 18
        let inst = instance(
            PatternKind::DownTrendline,
            10,
            Boundary::Level { price: 18.0 },
            Direction::Down,
        );
        let out = run_backtest(&s, &[inst], &cfg).unwrap();
        let t = &out.trades[0];
        assert_eq!(t.side, Side::Short);
        assert_eq!((t.entry_price, t.exit_price), (30.0, 27.0));
        assert_eq!(t.verdict, Verdict::True);
    }

    #[test]
    fn no_invalidation_closes_at_end_of_data() {
        let bars: Vec<(f64, f64, f64, f64)> =
            (0..12).map(|i| { let p = 20.0 + i as f64 * 0.2; (p, p + 0.1, p - 0.1, p) }).collect();
        let s = series_from_ohlc("t", &bars);
        let cfg = RunConfig::default();
        let inst = instance(
            PatternKind::UpTrendline,
            5,
            Boundary::Level { price: 15.0 },
            Direction::Down,
        );
        let out = run_backtest(&s, &[inst], &cfg).unwrap();
        let t = &out.trades[0];
        assert_eq!(t.closed_by, ClosedBy::EndOfData);
        assert_eq!(t.exit_index, 11);
        assert_eq!(t.exit_price, s.close(11));
    }

    #[test]
    fn final_bar_confirmation_is_dropped_with_diagnostic() {
        let bars: Vec<(f64, f64, f64, f64)> =
            (0..6).map(|i| { let p = 20.0 + i as f64 * 0.2; (p, p + 0.1, p - 0.1, p) }).collect();
        let s = series_from_ohlc("t", &bars);
        let cfg = RunConfig::default();
        let inst = instance(
            PatternKind::UpTrendline,
            5,
            Boundary::Level { price: 15.0 },
            Direction::Down,
        );
        let out = run_backtest(&s, &[inst], &cfg).unwrap();
        assert!(out.trades.is_empty());
        assert_eq!(out.dropped.len(), 1);
        assert_eq!(out.dropped[0].reason, DropReason::ConfirmedOnFinalBar);
    }

    #[test]
    fn instance_out_of_range_is_an_error() {
        let bars: Vec<(f64, f64, f64, f64)> =
            (0..4).map(|i| { let p = 20.0 + i as f64 * 0.2; (p, p + 0.1, p - 0.1, p) }).collect();
        let s = series_from_ohlc("t", &bars);
        let cfg = RunConfig::default();
        let inst = instance(
            PatternKind::UpTrendline,
            9,
            Boundary::Level { price: 15.0 },
            Direction::Down,
        );
        assert_eq!(
            run_backtest(&s, &[inst], &cfg),
            Err(BacktestError::InconsistentInputs { confirm_index: 9, len: 4 })
        );
    }

    #[test]
    fn every_instance_gets_exactly_one_outcome() {
        let s = long_fixture();
        let cfg = RunConfig::default();
        let instances: Vec<PatternInstance> = vec![
            instance(PatternKind::UpTrendline, 10, Boundary::Level { price: 18.0 }, Direction::Down),
            instance(PatternKind::DoubleBottom, 12, Boundary::Level { price: 18.0 }, Direction::Down),
            instance(PatternKind::Channel, 21, Boundary::Level { price: 18.0 }, Direction::Down),
        ];
        let out = run_backtest(&s, &instances, &cfg).unwrap();
        assert_eq!(out.trades.len() + out.dropped.len(), instances.len());
    }

    #[test]
    fn sequential_mode_skips_instances_while_a_position_is_open() {
        let s = long_fixture();
        let mut cfg = RunConfig::default();
        cfg.trade_mode = TradeMode::Sequential;
        let instances: Vec<PatternInstance> = vec![
            instance(PatternKind::UpTrendline, 10, Boundary::Level { price: 18.0 }, Direction::Down),
            instance(PatternKind::DoubleBottom, 12, Boundary::Level { price: 18.0 }, Direction::Down),
        ];
        let out = run_backtest(&s, &instances, &cfg).unwrap();
        assert_eq!(out.trades.len(), 1);
        assert_eq!(out.dropped.len(), 1);
        assert_eq!(out.dropped[0].reason, DropReason::PositionOpen);
    }

    #[test]
    fn truncation_past_exit_does_not_change_the_trade() {
        let s = long_fixture();
        let cfg = RunConfig::default();
        let inst = instance(
            PatternKind::UpTrendline,
            10,
            Boundary::Level { price: 18.0 },
            Direction::Down,
        );
        let full = run_backtest(&s, &[inst.clone()], &cfg).unwrap();
        let t = &full.trades[0];
        // any prefix containing the exit bar reproduces the identical trade
        let prefix = Series::new("t", s.bars[..=t.exit_index].to_vec());
        let again = run_backtest(&prefix, &[inst], &cfg).unwrap();
        assert_eq!(again.trades[0], *t);
    }
}
