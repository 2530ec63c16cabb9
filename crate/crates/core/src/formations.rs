//! Bounded formations: price ranges enclosed by a line over tops and a line
//! over bottoms. Channels, flags, pennants and symmetrical triangles are all
//! classifications of such a pair plus its exit breakout.
//!
//! Formation lines are built directly from consecutive same-kind swing pairs
//! with a relaxed minimum separation: consolidations are short, and their
//! boundary lines are internal to the formation rather than standalone
//! trendlines.

use crate::config::RunConfig;
use crate::lines::{next_breakout, Boundary, Breakout, Direction};
use crate::market::Series;
use crate::patterns::PatternKind;
use crate::swings::{SwingKind, SwingPoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct FormationLine {
    pub over: SwingKind,
    pub a1: (usize, f64),
    pub a2: (usize, f64),
    pub slope: f64,
    /// Bar at which the line is established (second anchor + 3).
    pub confirm: usize,
}

impl FormationLine {
    pub fn boundary(&self) -> Boundary {
        Boundary::Line { origin_index: self.a1.0, origin_price: self.a1.1, slope: self.slope }
    }

    /// Line value with backward extrapolation, for containment checks only.
    fn value(&self, index: usize) -> f64 {
        self.a1.1 + self.slope * (index as f64 - self.a1.0 as f64)
    }
}

/// Lines through consecutive same-kind swing pairs, any slope direction,
/// separated by at least `min_sep` bars and established within the series.
pub(crate) fn formation_lines(
    swings: &[SwingPoint],
    min_sep: usize,
    series_len: usize,
) -> Vec<FormationLine> {
    let mut out = Vec::new();
    for kind in [SwingKind::Top, SwingKind::Bottom] {
        let pts: Vec<&SwingPoint> = swings.iter().filter(|s| s.kind == kind).collect();
        for pair in pts.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let sep = b.index - a.index;
            if sep < min_sep || b.index + 3 >= series_len {
                continue;
            }
            out.push(FormationLine {
                over: kind,
                a1: (a.index, a.price),
                a2: (b.index, b.price),
                slope: (b.price - a.price) / sep as f64,
                confirm: b.index + 3,
            });
        }
    }
    out
}

/// A classified formation with its confirmed exit breakout.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct FormationHit {
    pub kind: PatternKind,
    pub span_start: usize,
    pub breakout: Breakout,
    /// The boundary line the exit broke through.
    pub broken: Boundary,
}

fn contained(series: &Series, upper: &FormationLine, lower: &FormationLine, span: (usize, usize), tol: f64) -> bool {
    for i in span.0..=span.1 {
        let u = upper.value(i);
        let l = lower.value(i);
        if u <= l {
            return false;
        }
        if series.high(i) > u * (1.0 + tol) || series.low(i) < l * (1.0 - tol) {
            return false;
        }
    }
    true
}

fn prior_move(series: &Series, start: usize, cfg: &RunConfig, dir: Direction) -> bool {
    if start == 0 {
        return false;
    }
    let w0 = start.saturating_sub(cfg.flag_move_bars);
    let here = series.close(start);
    match dir {
        Direction::Up => {
            let m = (w0..start).map(|i| series.close(i)).fold(f64::INFINITY, f64::min);
            here >= m * (1.0 + cfg.flag_move_pct)
        }
        Direction::Down => {
            let m = (w0..start).map(|i| series.close(i)).fold(f64::NEG_INFINITY, f64::max);
            here <= m * (1.0 - cfg.flag_move_pct)
        }
    }
}

/// Enumerate upper/lower line pairs and classify each qualifying pair:
///
/// * flag — short parallel channel sloping against a strong prior move,
///   confirmed by a breakout back in the prior move's direction;
/// * pennant — like a flag but with converging boundaries;
/// * symmetrical triangle — converging lines of opposite slope sign with no
///   prior-move requirement, confirmed in either direction;
/// * channel — parallel same-direction lines, confirmed by an upward exit.
///
/// Flags and pennants take precedence over channels and triangles for the
/// same pair, so one formation is never reported twice under two names.
pub(crate) fn enumerate_formations(
    series: &Series,
    swings: &[SwingPoint],
    cfg: &RunConfig,
) -> Vec<FormationHit> {
    let lines = formation_lines(swings, cfg.formation_min_sep, series.len());
    let uppers: Vec<&FormationLine> = lines.iter().filter(|l| l.over == SwingKind::Top).collect();
    let lowers: Vec<&FormationLine> =
        lines.iter().filter(|l| l.over == SwingKind::Bottom).collect();
    let params = cfg.breakout_params();
    let mut out = Vec::new();

    for u in &uppers {
        for l in &lowers {
            // anchor ranges must overlap in time
            if u.a1.0.max(l.a1.0) > u.a2.0.min(l.a2.0) {
                continue;
            }
            let span = (u.a1.0.min(l.a1.0), u.a2.0.max(l.a2.0));
            let watch = u.confirm.max(l.confirm);
            if watch >= series.len() {
                continue;
            }
            if !contained(series, u, l, span, cfg.containment_tol) {
                continue;
            }

            let (su, sl) = (u.slope, l.slope);
            let steepest = su.abs().max(sl.abs());
            let parallel = steepest > 0.0 && (su - sl).abs() <= cfg.channel_parallel_tol * steepest;
            let short = span.1 - span.0 <= cfg.max_flag_bars;
            let pole_up = prior_move(series, span.0, cfg, Direction::Up);
            let pole_down = prior_move(series, span.0, cfg, Direction::Down);

            let hit = if parallel {
                if short && pole_up && su < 0.0 && sl < 0.0 {
                    next_breakout(series, &u.boundary(), watch, Direction::Up, &params)
                        .map(|b| (PatternKind::UpFlag, b, u.boundary()))
                } else if short && pole_down && su > 0.0 && sl > 0.0 {
                    next_breakout(series, &l.boundary(), watch, Direction::Down, &params)
                        .map(|b| (PatternKind::DownFlag, b, l.boundary()))
                } else if su * sl > 0.0 {
                    next_breakout(series, &u.boundary(), watch, Direction::Up, &params)
                        .map(|b| (PatternKind::Channel, b, u.boundary()))
                } else {
                    None
                }
            } else {
                let width_shrinks =
                    u.value(span.1) - l.value(span.1) < u.value(span.0) - l.value(span.0);
                if !width_shrinks {
                    None
                } else if short && pole_up {
                    next_breakout(series, &u.boundary(), watch, Direction::Up, &params)
                        .map(|b| (PatternKind::UpPennant, b, u.boundary()))
                } else if short && pole_down {
                    next_breakout(series, &l.boundary(), watch, Direction::Down, &params)
                        .map(|b| (PatternKind::DownPennant, b, l.boundary()))
                } else if su < 0.0 && sl > 0.0 {
                    let up = next_breakout(series, &u.boundary(), watch, Direction::Up, &params);
                    let down =
                        next_breakout(series, &l.boundary(), watch, Direction::Down, &params);
                    match (up, down) {
                        (Some(a), Some(b)) => {
                            if a.confirm_index <= b.confirm_index {
                                Some((PatternKind::UpSymmetricalTriangle, a, u.boundary()))
                            } else {
                                Some((PatternKind::DownSymmetricalTriangle, b, l.boundary()))
                            }
                        }
                        (Some(a), None) => {
                            Some((PatternKind::UpSymmetricalTriangle, a, u.boundary()))
                        }
                        (None, Some(b)) => {
                            Some((PatternKind::DownSymmetricalTriangle, b, l.boundary()))
                        }
                        (None, None) => None,
                    }
                } else {
                    None
                }
            };

            if let Some((kind, breakout, broken)) = hit {
                out.push(FormationHit { kind, span_start: span.0, breakout, broken });
            }
        }
    }
    out.sort_by_key(|h| (h.breakout.confirm_index, h.kind, h.span_start));
    out
}
