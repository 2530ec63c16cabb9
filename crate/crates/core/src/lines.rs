//! Trendlines, horizontal levels, the breakout confirmation rule and
//! arithmetic moving averages.
//!
//! A breakout needs more than a close on the far side of a boundary. It is
//! confirmed by the earliest of three tests, all stated on closes:
//!
//! 1. single day: the crossing close is at least `pct` (default 3%) beyond
//!    the boundary value at that bar;
//! 2. cumulative: one of the next two closes reaches `pct` beyond the
//!    boundary, with every close since the crossing still beyond it;
//! 3. bar count: three consecutive closes beyond the boundary, each further
//!    from it than the last.
//!
//! A close back on the origin side voids the attempt and scanning resumes.

use crate::market::Series;
use crate::swings::{SwingKind, SwingPoint};
use thiserror::Error;

/// Absolute slack on the `pct` comparison so that "at least 3%" is inclusive
/// at exactly 3% despite binary rounding of `pct * boundary`.
pub const PCT_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }

    fn sign(self) -> f64 {
        match self {
            Direction::Up => 1.0,
            Direction::Down => -1.0,
        }
    }
}

/// A sloped line through two same-kind swing anchors. Up lines run along
/// rising lows, down lines along falling highs; the anchors must be
/// separated by at least 3 bars and the line is established 3 bars after
/// the second anchor, so every line spans at least 8 bars from first anchor
/// to establishment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trendline {
    pub direction: Direction,
    pub anchor1: (usize, f64),
    pub anchor2: (usize, f64),
    /// Price change per bar.
    pub slope: f64,
    pub confirm_index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelKind {
    Support,
    Resistance,
}

/// A horizontal price boundary formed by flat consecutive swings.
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub kind: LevelKind,
    /// Mean of the touch prices.
    pub price: f64,
    /// Bar indices of the touching swings.
    pub formed_by: Vec<usize>,
    /// Index of the first touch.
    pub from_index: usize,
    /// Bar at which the last touch is a confirmed swing; the level is only
    /// known (and watchable for breakouts) from here on.
    pub confirm_index: usize,
}

/// Anything a close can break through: a horizontal price, a sloped line, or
/// a per-bar sequence such as a moving average.
#[derive(Debug, Clone, PartialEq)]
pub enum Boundary {
    Level { price: f64 },
    Line { origin_index: usize, origin_price: f64, slope: f64 },
    Steps { start_index: usize, values: Vec<f64> },
}

impl Boundary {
    pub fn from_trendline(line: &Trendline) -> Boundary {
        Boundary::Line {
            origin_index: line.anchor1.0,
            origin_price: line.anchor1.1,
            slope: line.slope,
        }
    }

    pub fn from_level(level: &Level) -> Boundary {
        Boundary::Level { price: level.price }
    }

    /// Boundary value at a bar, `None` outside the boundary's domain.
    pub fn value_at(&self, index: usize) -> Option<f64> {
        match self {
            Boundary::Level { price } => Some(*price),
            Boundary::Line { origin_index, origin_price, slope } => {
                if index < *origin_index {
                    None
                } else {
                    Some(origin_price + slope * (index - origin_index) as f64)
                }
            }
            Boundary::Steps { start_index, values } => {
                if index < *start_index {
                    None
                } else {
                    values.get(index - start_index).copied()
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreakoutRule {
    SingleDayPct,
    CumulativePct,
    ThreeBar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakout {
    pub direction: Direction,
    /// First bar of the confirmed attempt whose close is beyond the boundary.
    pub cross_index: usize,
    pub confirm_index: usize,
    pub rule: BreakoutRule,
}

/// Knobs of the confirmation rule. `window` is the attempt length in bars
/// (the paper's "two following days" plus the crossing day); `strict_bars`
/// demands strictly receding closes for the bar-count rule, the lenient
/// alternative accepts any `window` closes beyond the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BreakoutParams {
    pub pct: f64,
    pub window: usize,
    pub strict_bars: bool,
}

impl Default for BreakoutParams {
    fn default() -> Self {
        BreakoutParams { pct: 0.03, window: 3, strict_bars: true }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinesError {
    #[error("index {index} precedes the line origin {origin}")]
    OutOfDomain { index: usize, origin: usize },
    #[error("watch_from {watch_from} out of range for series of length {len}")]
    WatchFromOutOfRange { watch_from: usize, len: usize },
}

/// Fit trendlines through every qualifying pair of consecutive same-kind
/// swings: rising bottom pairs give up lines, falling top pairs give down
/// lines. Pairs closer than 4 bars, pairs ordered the wrong way, and pairs
/// whose establishment bar lies past the series end are skipped.
pub fn fit_trendlines(series: &Series, swings: &[SwingPoint]) -> Vec<Trendline> {
    let mut out = Vec::new();
    for kind in [SwingKind::Bottom, SwingKind::Top] {
        let pts: Vec<&SwingPoint> = swings.iter().filter(|s| s.kind == kind).collect();
        for pair in pts.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if b.index - a.index < 4 {
                continue;
            }
            let direction = match kind {
                SwingKind::Bottom if b.price > a.price => Direction::Up,
                SwingKind::Top if b.price < a.price => Direction::Down,
                _ => continue,
            };
            let confirm_index = b.index + 3;
            if confirm_index >= series.len() {
                continue;
            }
            out.push(Trendline {
                direction,
                anchor1: (a.index, a.price),
                anchor2: (b.index, b.price),
                slope: (b.price - a.price) / (b.index - a.index) as f64,
                confirm_index,
            });
        }
    }
    out.sort_by(|x, y| {
        (x.confirm_index, x.anchor1.0).cmp(&(y.confirm_index, y.anchor1.0))
    });
    out
}

/// Linear extension of a trendline; errors before the first anchor.
pub fn line_value_at(line: &Trendline, index: usize) -> Result<f64, LinesError> {
    if index < line.anchor1.0 {
        return Err(LinesError::OutOfDomain { index, origin: line.anchor1.0 });
    }
    Ok(line.anchor1.1 + line.slope * (index - line.anchor1.0) as f64)
}

/// Group consecutive same-kind swings into horizontal levels, greedily left
/// to right: a swing joins the current group while every member stays within
/// `flatness_tol` (relative) of the group mean. Groups of two or more touches
/// become levels priced at the touch mean.
pub fn detect_levels(series: &Series, swings: &[SwingPoint], flatness_tol: f64) -> Vec<Level> {
    let _ = series;
    let mut out = Vec::new();
    for kind in [SwingKind::Bottom, SwingKind::Top] {
        let pts: Vec<&SwingPoint> = swings.iter().filter(|s| s.kind == kind).collect();
        let mut group: Vec<&SwingPoint> = Vec::new();
        let mut flush = |group: &mut Vec<&SwingPoint>, out: &mut Vec<Level>| {
            if group.len() >= 2 {
                let mean = group.iter().map(|p| p.price).sum::<f64>() / group.len() as f64;
                out.push(Level {
                    kind: match kind {
                        SwingKind::Top => LevelKind::Resistance,
                        SwingKind::Bottom => LevelKind::Support,
                    },
                    price: mean,
                    formed_by: group.iter().map(|p| p.index).collect(),
                    from_index: group[0].index,
                    confirm_index: group.iter().map(|p| p.confirm_index).max().unwrap(),
                });
            }
            group.clear();
        };
        for p in pts {
            let mut candidate: Vec<&SwingPoint> = group.clone();
            candidate.push(p);
            let mean = candidate.iter().map(|q| q.price).sum::<f64>() / candidate.len() as f64;
            let fits = candidate.iter().all(|q| (q.price - mean).abs() <= flatness_tol * mean);
            if fits {
                group = candidate;
            } else {
                flush(&mut group, &mut out);
                group.push(p);
            }
        }
        flush(&mut group, &mut out);
    }
    out.sort_by(|a, b| (a.from_index, a.formed_by[0]).cmp(&(b.from_index, b.formed_by[0])));
    out
}

fn beyond(close: f64, boundary: f64, dir: Direction) -> bool {
    dir.sign() * (close - boundary) > 0.0
}

fn pct_beyond(close: f64, boundary: f64, dir: Direction, pct: f64) -> bool {
    boundary > 0.0 && dir.sign() * (close - boundary) >= pct * boundary - PCT_SLACK
}

/// Earliest confirmation inside a maximal run of beyond-the-boundary closes
/// `[run_start, run_end)`. Attempts roll forward through the run, so the
/// percentage test applies at every bar of the run and the bar-count test at
/// every in-run window; the percentage test wins ties at the same bar.
fn confirm_in_run(
    series: &Series,
    boundary: &Boundary,
    run: (usize, usize),
    dir: Direction,
    params: &BreakoutParams,
) -> Option<Breakout> {
    let (start, end) = run;
    let w = params.window;
    for t in start..end {
        let b = boundary.value_at(t)?;
        if pct_beyond(series.close(t), b, dir, params.pct) {
            let (cross, rule) = if t == start {
                (start, BreakoutRule::SingleDayPct)
            } else {
                (start.max(t + 1 - w), BreakoutRule::CumulativePct)
            };
            return Some(Breakout { direction: dir, cross_index: cross, confirm_index: t, rule });
        }
        if w >= 2 && t >= start + w - 1 {
            let first = t + 1 - w;
            let ok = if params.strict_bars {
                (first..t).all(|i| {
                    let di = dir.sign() * (series.close(i) - boundary.value_at(i).unwrap());
                    let dn = dir.sign() * (series.close(i + 1) - boundary.value_at(i + 1).unwrap());
                    di < dn
                })
            } else {
                true // every close in the run is beyond by construction
            };
            if ok {
                return Some(Breakout {
                    direction: dir,
                    cross_index: first,
                    confirm_index: t,
                    rule: BreakoutRule::ThreeBar,
                });
            }
        }
    }
    None
}

/// Advance to the next maximal run of closes beyond the boundary at or after
/// `from`. Returns `(run_start, run_end)`, or `None` when the boundary
/// domain ends, turns non-positive, or the series runs out first.
fn next_run(
    series: &Series,
    boundary: &Boundary,
    from: usize,
    dir: Direction,
) -> Option<(usize, usize)> {
    let n = series.len();
    let mut i = from;
    let start = loop {
        if i >= n {
            return None;
        }
        let b = boundary.value_at(i)?;
        if b <= 0.0 {
            return None; // extrapolated boundary lost meaning
        }
        if beyond(series.close(i), b, dir) {
            break i;
        }
        i += 1;
    };
    let mut end = start + 1;
    while end < n {
        match boundary.value_at(end) {
            Some(b) if b > 0.0 && beyond(series.close(end), b, dir) => end += 1,
            _ => break,
        }
    }
    Some((start, end))
}

/// First confirmed breakout of `boundary` in `dir`, scanning forward from
/// `watch_from`. Voided attempts (a close back on the origin side before
/// confirmation) resume the scan, so later runs are still considered.
pub fn detect_breakout(
    series: &Series,
    boundary: &Boundary,
    watch_from: usize,
    dir: Direction,
    params: &BreakoutParams,
) -> Result<Option<Breakout>, LinesError> {
    if watch_from >= series.len() {
        return Err(LinesError::WatchFromOutOfRange { watch_from, len: series.len() });
    }
    Ok(next_breakout(series, boundary, watch_from, dir, params))
}

pub(crate) fn next_breakout(
    series: &Series,
    boundary: &Boundary,
    from: usize,
    dir: Direction,
    params: &BreakoutParams,
) -> Option<Breakout> {
    let mut i = from;
    while let Some(run) = next_run(series, boundary, i, dir) {
        if let Some(b) = confirm_in_run(series, boundary, run, dir, params) {
            return Some(b);
        }
        i = run.1;
    }
    None
}

/// Every confirmed breakout, at most one per beyond-run: after a
/// confirmation the price must return across the boundary before the next
/// breakout can begin. This is how one boundary yields repeated signals.
pub(crate) fn all_breakouts(
    series: &Series,
    boundary: &Boundary,
    from: usize,
    dir: Direction,
    params: &BreakoutParams,
) -> Vec<Breakout> {
    let mut out = Vec::new();
    let mut i = from;
    while let Some(run) = next_run(series, boundary, i, dir) {
        if let Some(b) = confirm_in_run(series, boundary, run, dir, params) {
            out.push(b);
        }
        i = run.1;
    }
    out
}

/// Arithmetic moving average of closes over an `n`-bar window, defined from
/// index `n - 1`. Windows longer than the series yield an empty result.
pub fn moving_average(series: &Series, n: usize) -> Vec<(usize, f64)> {
    assert!(n >= 1, "window must be at least 1 bar");
    if n > series.len() {
        return Vec::new();
    }
    (n - 1..series.len())
        .map(|i| {
            let sum: f64 = (i + 1 - n..=i).map(|j| series.close(j)).sum();
            (i, sum / n as f64)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signal {
    Buy,
    Sell,
}

/// Crossing signals against a moving average used as a piecewise boundary.
/// Each maximal run of closes beyond the average yields at most one signal,
/// at the bar where the breakout confirmation first passes within that run.
pub fn ma_cross_signal(
    series: &Series,
    ma: &[(usize, f64)],
    spread_bars: usize,
    spread_pct: f64,
) -> Vec<(usize, Signal)> {
    if ma.is_empty() {
        return Vec::new();
    }
    let boundary = Boundary::Steps { start_index: ma[0].0, values: ma.iter().map(|m| m.1).collect() };
    let params = BreakoutParams { pct: spread_pct, window: spread_bars, strict_bars: true };
    let mut out = Vec::new();
    for (dir, sig) in [(Direction::Up, Signal::Buy), (Direction::Down, Signal::Sell)] {
        for b in all_breakouts(series, &boundary, ma[0].0, dir, &params) {
            out.push((b.confirm_index, sig));
        }
    }
    out.sort_by_key(|&(i, s)| (i, s == Signal::Sell));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::series_from_closes;
    use crate::swings::detect_swings;

    fn swing(index: usize, kind: SwingKind, price: f64) -> SwingPoint {
        SwingPoint { index, kind, price, confirm_index: index + 3 }
    }

    #[test]
    fn fits_up_line_from_rising_bottoms() {
        let s = series_from_closes("t", &vec![10.0; 9]);
        let swings = vec![
            swing(0, SwingKind::Bottom, 10.0),
            swing(3, SwingKind::Top, 14.0),
            swing(5, SwingKind::Bottom, 12.0),
        ];
        let lines = fit_trendlines(&s, &swings);
        assert_eq!(lines.len(), 1);
        let l = lines[0];
        assert_eq!(l.direction, Direction::Up);
        assert!((l.slope - 0.4).abs() < 1e-12);
        assert_eq!(l.confirm_index, 8);
        assert!(l.confirm_index - l.anchor1.0 >= 7);
    }

    #[test]
    fn separation_below_four_bars_is_skipped() {
        let s = series_from_closes("t", &vec![10.0; 9]);
        let swings = vec![
            swing(0, SwingKind::Bottom, 10.0),
            swing(1, SwingKind::Top, 14.0),
            swing(2, SwingKind::Bottom, 12.0),
        ];
        assert!(fit_trendlines(&s, &swings).is_empty());
    }

    #[test]
    fn falling_second_low_gives_no_up_line() {
        let s = series_from_closes("t", &vec![10.0; 9]);
        let swings = vec![
            swing(0, SwingKind::Bottom, 10.0),
            swing(3, SwingKind::Top, 14.0),
            swing(5, SwingKind::Bottom, 9.0),
        ];
        assert!(fit_trendlines(&s, &swings).is_empty());
    }

    #[test]
    fn line_needs_room_to_confirm() {
        // second anchor at 5 needs bar 8; an 8-bar series has none
        let s = series_from_closes("t", &vec![10.0; 8]);
        let swings = vec![
            swing(0, SwingKind::Bottom, 10.0),
            swing(3, SwingKind::Top, 14.0),
            swing(5, SwingKind::Bottom, 12.0),
        ];
        assert!(fit_trendlines(&s, &swings).is_empty());
    }

    #[test]
    fn line_value_extends_linearly() {
        let line = Trendline {
            direction: Direction::Up,
            anchor1: (0, 10.0),
            anchor2: (5, 12.0),
            slope: 0.4,
            confirm_index: 8,
        };
        assert_eq!(line_value_at(&line, 10).unwrap(), 14.0);
        assert_eq!(line_value_at(&line, 0).unwrap(), 10.0);
        assert_eq!(line_value_at(&line, 5).unwrap(), 12.0);
    }

    #[test]
    fn line_value_before_origin_errors() {
        let line = Trendline {
            direction: Direction::Up,
            anchor1: (4, 10.0),
            anchor2: (9, 12.0),
            slope: 0.4,
            confirm_index: 12,
        };
        assert_eq!(
            line_value_at(&line, 2),
            Err(LinesError::OutOfDomain { index: 2, origin: 4 })
        );
    }

    #[test]
    fn two_flat_tops_form_a_resistance() {
        let s = series_from_closes("t", &vec![10.0; 12]);
        let swings = vec![
            swing(0, SwingKind::Top, 100.0),
            swing(2, SwingKind::Bottom, 95.0),
            swing(5, SwingKind::Top, 100.5),
        ];
        let levels = detect_levels(&s, &swings, 0.01);
        assert_eq!(levels.len(), 1);
        assert_eq!(levels[0].kind, LevelKind::Resistance);
        assert!((levels[0].price - 100.25).abs() < 1e-12);
        assert_eq!(levels[0].formed_by, vec![0, 5]);
        assert_eq!(levels[0].from_index, 0);
        assert_eq!(levels[0].confirm_index, 8);
    }

    #[test]
    fn spread_tops_form_no_level() {
        let s = series_from_closes("t", &vec![10.0; 12]);
        let swings = vec![
            swing(0, SwingKind::Top, 100.0),
            swing(2, SwingKind::Bottom, 95.0),
            swing(5, SwingKind::Top, 103.0),
        ];
        assert!(detect_levels(&s, &swings, 0.01).is_empty());
    }

    #[test]
    fn four_flat_tops_group_into_one_level() {
        let s = series_from_closes("t", &vec![10.0; 20]);
        let swings = vec![
            swing(0, SwingKind::Top, 50.0),
            swing(2, SwingKind::Bottom, 45.0),
            swing(4, SwingKind::Top, 50.2),
            swing(6, SwingKind::Bottom, 45.1),
            swing(8, SwingKind::Top, 49.9),
            swing(10, SwingKind::Bottom, 45.2),
            swing(12, SwingKind::Top, 50.1),
        ];
        let levels = detect_levels(&s, &swings, 0.01);
        let res: Vec<&Level> = levels.iter().filter(|l| l.kind == LevelKind::Resistance).collect();
        assert_eq!(res.len(), 1);
        assert!((res[0].price - 50.05).abs() < 1e-12);
        assert_eq!(res[0].formed_by.len(), 4);
    }

    fn level(price: f64) -> Boundary {
        Boundary::Level { price }
    }

    fn bo(series: &Series, b: &Boundary, dir: Direction) -> Option<Breakout> {
        detect_breakout(series, b, 0, dir, &BreakoutParams::default()).unwrap()
    }

    #[test]
    fn single_day_three_percent_is_inclusive() {
        let s = series_from_closes("t", &[99.0, 103.0, 104.0, 105.0]);
        let b = bo(&s, &level(100.0), Direction::Up).unwrap();
        assert_eq!(b.rule, BreakoutRule::SingleDayPct);
        assert_eq!(b.cross_index, 1);
        assert_eq!(b.confirm_index, 1);
    }

    #[test]
    fn cumulative_rule_confirms_on_third_close() {
        let s = series_from_closes("t", &[99.0, 101.0, 102.0, 103.1, 104.0]);
        let b = bo(&s, &level(100.0), Direction::Up).unwrap();
        assert_eq!(b.rule, BreakoutRule::CumulativePct);
        assert_eq!(b.cross_index, 1);
        assert_eq!(b.confirm_index, 3);
    }

    #[test]
    fn three_receding_closes_confirm_without_pct() {
        let s = series_from_closes("t", &[99.0, 100.5, 100.8, 101.0, 101.2]);
        let b = bo(&s, &level(100.0), Direction::Up).unwrap();
        assert_eq!(b.rule, BreakoutRule::ThreeBar);
        assert_eq!(b.cross_index, 1);
        assert_eq!(b.confirm_index, 3);
    }

    #[test]
    fn return_to_origin_side_voids_the_attempt() {
        // cross at 1, back under at 2, fresh cross at 3 confirms at 3
        let s = series_from_closes("t", &[99.0, 101.0, 99.5, 103.5, 104.0]);
        let b = bo(&s, &level(100.0), Direction::Up).unwrap();
        assert_eq!(b.cross_index, 3);
        assert_eq!(b.confirm_index, 3);
        assert_eq!(b.rule, BreakoutRule::SingleDayPct);
    }

    #[test]
    fn stalled_closes_never_confirm() {
        let s = series_from_closes("t", &[99.0, 100.5, 100.4, 100.5, 100.4, 100.5]);
        assert!(bo(&s, &level(100.0), Direction::Up).is_none());
    }

    #[test]
    fn lenient_bar_rule_accepts_a_stall() {
        let s = series_from_closes("t", &[99.0, 100.5, 100.4, 100.5, 100.4]);
        let params = BreakoutParams { strict_bars: false, ..Default::default() };
        let b = detect_breakout(&s, &level(100.0), 0, Direction::Up, &params).unwrap().unwrap();
        assert_eq!(b.rule, BreakoutRule::ThreeBar);
        assert_eq!(b.confirm_index, 3);
    }

    #[test]
    fn downward_breakout_mirrors() {
        let s = series_from_closes("t", &[101.0, 97.0, 96.0, 95.0]);
        let b = bo(&s, &level(100.0), Direction::Down).unwrap();
        assert_eq!(b.rule, BreakoutRule::SingleDayPct);
        assert_eq!(b.confirm_index, 1);
    }

    #[test]
    fn watch_from_out_of_range_errors() {
        let s = series_from_closes("t", &[100.0, 101.0]);
        assert!(matches!(
            detect_breakout(&s, &level(100.0), 2, Direction::Up, &BreakoutParams::default()),
            Err(LinesError::WatchFromOutOfRange { watch_from: 2, len: 2 })
        ));
    }

    #[test]
    fn repeated_breakouts_need_a_recross() {
        let closes = [99.0, 104.0, 104.5, 99.0, 98.0, 105.0, 106.0];
        let s = series_from_closes("t", &closes);
        let all = all_breakouts(&s, &level(100.0), 0, Direction::Up, &BreakoutParams::default());
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].confirm_index, 1);
        assert_eq!(all[1].confirm_index, 5);
    }

    #[test]
    fn ma_of_one_to_five_is_three() {
        let s = series_from_closes("t", &[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(moving_average(&s, 5), vec![(4, 3.0)]);
    }

    #[test]
    fn ma_of_constants_is_constant() {
        let s = series_from_closes("t", &vec![7.0; 10]);
        for n in [1usize, 2, 3, 5, 10] {
            assert!(moving_average(&s, n).iter().all(|&(_, v)| v == 7.0));
        }
    }

    #[test]
    fn ma_window_one_is_identity() {
        let closes = [3.0, 1.0, 4.0, 1.5, 9.0];
        let s = series_from_closes("t", &closes);
        let ma = moving_average(&s, 1);
        assert_eq!(ma.len(), closes.len());
        for (i, v) in ma {
            assert_eq!(v, closes[i]);
        }
    }

    #[test]
    fn ma_longer_than_series_is_empty() {
        let s = series_from_closes("t", &[1.0, 2.0]);
        assert!(moving_average(&s, 3).is_empty());
    }

    #[test]
    fn closes_below_ma_give_no_signals() {
        let s = series_from_closes("t", &vec![50.0; 30]);
        let ma: Vec<(usize, f64)> = (0..30).map(|i| (i, 60.0)).collect();
        assert!(ma_cross_signal(&s, &ma, 3, 0.03).is_empty());
    }

    #[test]
    fn cross_and_spread_is_one_buy() {
        let mut closes = vec![50.0; 6];
        closes.extend([61.0, 63.0]); // cross above 60, +5% on the next bar
        let s = series_from_closes("t", &closes);
        let ma: Vec<(usize, f64)> = (0..s.len()).map(|i| (i, 60.0)).collect();
        let signals = ma_cross_signal(&s, &ma, 3, 0.03);
        assert_eq!(signals, vec![(7, Signal::Buy)]);
    }
}
