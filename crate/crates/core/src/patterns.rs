//! Recognition of the twenty bar-chart pattern kinds.
//!
//! Every recognizer reads only bars up to each instance's confirmation, and
//! every instance carries the boundary whose confirmed breach in the adverse
//! direction ends it, fixed at confirmation time. `scan` merges all
//! recognizers into one chronological, duplicate-suppressed listing.

use crate::config::RunConfig;
use crate::formations::enumerate_formations;
use crate::lines::{
    all_breakouts, line_value_at, next_breakout, Boundary, Breakout, BreakoutRule, Direction,
    Level, LevelKind, Trendline,
};
use crate::market::Series;
use crate::swings::{detect_swings, SwingKind, SwingPoint};

/// The pattern taxonomy, declared in result-table row order (which also
/// breaks sorting ties).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternKind {
    UpTrendline,
    BreakingDownTrendline,
    BreakingUpTrendline,
    DownTrendline,
    BreakingHorizontalResistance,
    DoubleBottom,
    BreakingHorizontalSupport,
    DoubleTop,
    UpFlag,
    DownFanPrinciple,
    Channel,
    DownHeadShoulders,
    HighFanPrinciple,
    UpSymmetricalTriangle,
    Rectangle,
    UpHeadShoulders,
    DownFlag,
    UpPennant,
    DownPennant,
    DownSymmetricalTriangle,
}

pub const ALL_KINDS: [PatternKind; 20] = [
    PatternKind::UpTrendline,
    PatternKind::BreakingDownTrendline,
    PatternKind::BreakingUpTrendline,
    PatternKind::DownTrendline,
    PatternKind::BreakingHorizontalResistance,
    PatternKind::DoubleBottom,
    PatternKind::BreakingHorizontalSupport,
    PatternKind::DoubleTop,
    PatternKind::UpFlag,
    PatternKind::DownFanPrinciple,
    PatternKind::Channel,
    PatternKind::DownHeadShoulders,
    PatternKind::HighFanPrinciple,
    PatternKind::UpSymmetricalTriangle,
    PatternKind::Rectangle,
    PatternKind::UpHeadShoulders,
    PatternKind::DownFlag,
    PatternKind::UpPennant,
    PatternKind::DownPennant,
    PatternKind::DownSymmetricalTriangle,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrendDirection {
    Bullish,
    Bearish,
}

impl PatternKind {
    /// Fixed direction of each kind: the up-movement list is bullish, the
    /// down-movement list bearish.
    pub fn direction(self) -> TrendDirection {
        use PatternKind::*;
        match self {
            UpTrendline | BreakingDownTrendline | BreakingHorizontalResistance | DoubleBottom
            | UpFlag | Channel | HighFanPrinciple | UpSymmetricalTriangle | Rectangle
            | UpHeadShoulders | UpPennant => TrendDirection::Bullish,
            BreakingUpTrendline | DownTrendline | BreakingHorizontalSupport | DoubleTop
            | DownFanPrinciple | DownHeadShoulders | DownFlag | DownPennant
            | DownSymmetricalTriangle => TrendDirection::Bearish,
        }
    }

    /// Stable identifier used in CSV and structured output.
    pub fn ident(self) -> &'static str {
        use PatternKind::*;
        match self {
            UpTrendline => "UpTrendline",
            BreakingDownTrendline => "BreakingDownTrendline",
            BreakingUpTrendline => "BreakingUpTrendline",
            DownTrendline => "DownTrendline",
            BreakingHorizontalResistance => "BreakingHorizontalResistance",
            DoubleBottom => "DoubleBottom",
            BreakingHorizontalSupport => "BreakingHorizontalSupport",
            DoubleTop => "DoubleTop",
            UpFlag => "UpFlag",
            DownFanPrinciple => "DownFanPrinciple",
            Channel => "Channel",
            DownHeadShoulders => "DownHeadShoulders",
            HighFanPrinciple => "HighFanPrinciple",
            UpSymmetricalTriangle => "UpSymmetricalTriangle",
            Rectangle => "Rectangle",
            UpHeadShoulders => "UpHeadShoulders",
            DownFlag => "DownFlag",
            UpPennant => "UpPennant",
            DownPennant => "DownPennant",
            DownSymmetricalTriangle => "DownSymmetricalTriangle",
        }
    }

    /// Human-readable table row name.
    pub fn display_name(self) -> &'static str {
        use PatternKind::*;
        match self {
            UpTrendline => "Up Trendline",
            BreakingDownTrendline => "Breaking of a Down Trendline",
            BreakingUpTrendline => "Breaking of an Up Trendline",
            DownTrendline => "Down Trendline",
            BreakingHorizontalResistance => "Breaking of a Horizontal Resistance",
            DoubleBottom => "Double Bottom",
            BreakingHorizontalSupport => "Breaking of a Horizontal Support",
            DoubleTop => "Double Top",
            UpFlag => "Up Flag",
            DownFanPrinciple => "Down Fan Principle",
            Channel => "Channel",
            DownHeadShoulders => "Down Head & Shoulders",
            HighFanPrinciple => "High Fan Principle",
            UpSymmetricalTriangle => "Up Symmetrical Triangle",
            Rectangle => "Rectangle",
            UpHeadShoulders => "Up Head & Shoulders",
            DownFlag => "Down Flag",
            UpPennant => "Up Pennant",
            DownPennant => "Down Pennant",
            DownSymmetricalTriangle => "Down Symmetrical Triangle",
        }
    }

    pub fn from_ident(s: &str) -> Option<PatternKind> {
        ALL_KINDS.iter().copied().find(|k| k.ident() == s)
    }
}

/// The boundary whose confirmed breach in `direction` invalidates the
/// pattern, fixed when the instance confirms.
#[derive(Debug, Clone, PartialEq)]
pub struct Invalidation {
    pub boundary: Boundary,
    pub direction: Direction,
}

/// What confirmed the instance; used to recognize two recognizers reporting
/// the same market event under different names.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Trigger {
    /// A trendline became established.
    LineEstablished,
    /// A confirmed breakout through a boundary whose value at the confirming
    /// bar was `boundary_value`.
    BreakoutConfirmed { boundary_value: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternInstance {
    pub kind: PatternKind,
    pub direction: TrendDirection,
    /// First formation bar and confirmation bar.
    pub span: (usize, usize),
    pub confirm_index: usize,
    pub entry_trigger: String,
    pub invalidation: Invalidation,
    pub trigger: Trigger,
}

fn rule_name(rule: BreakoutRule) -> &'static str {
    match rule {
        BreakoutRule::SingleDayPct => "single_day_pct",
        BreakoutRule::CumulativePct => "cumulative_pct",
        BreakoutRule::ThreeBar => "three_bar",
    }
}

fn breakout_trigger(series: &Series, boundary: &Boundary, b: &Breakout) -> (String, Trigger) {
    let value = boundary.value_at(b.confirm_index).unwrap_or(f64::NAN);
    let dir = match b.direction {
        Direction::Up => "up",
        Direction::Down => "down",
    };
    let _ = series;
    (
        format!("breakout {dir} confirmed by {}", rule_name(b.rule)),
        Trigger::BreakoutConfirmed { boundary_value: value },
    )
}

/// Trendline patterns: an established line whose confirmation-bar close sits
/// on the trend side is itself a pattern; every confirmed breakout against a
/// line is a breaking pattern. A line whose establishment bar already closes
/// on the wrong side never stood as a trend and is reported only through its
/// breaking.
pub fn recognize_trendline_patterns(
    series: &Series,
    swings: &[SwingPoint],
    lines: &[Trendline],
    cfg: &RunConfig,
) -> Vec<PatternInstance> {
    let _ = swings;
    let params = cfg.breakout_params();
    let mut out = Vec::new();
    for line in lines {
        let value = line_value_at(line, line.confirm_index).expect("confirm after anchor1");
        let close = series.close(line.confirm_index);
        let (trend_kind, adverse) = match line.direction {
            Direction::Up => (PatternKind::UpTrendline, Direction::Down),
            Direction::Down => (PatternKind::DownTrendline, Direction::Up),
        };
        let on_trend_side = match line.direction {
            Direction::Up => close > value,
            Direction::Down => close < value,
        };
        if on_trend_side {
            out.push(PatternInstance {
                kind: trend_kind,
                direction: trend_kind.direction(),
                span: (line.anchor1.0, line.confirm_index),
                confirm_index: line.confirm_index,
                entry_trigger: "trendline established".into(),
                invalidation: Invalidation {
                    boundary: Boundary::from_trendline(line),
                    direction: adverse,
                },
                trigger: Trigger::LineEstablished,
            });
        }
        let breaking_kind = match line.direction {
            Direction::Up => PatternKind::BreakingUpTrendline,
            Direction::Down => PatternKind::BreakingDownTrendline,
        };
        let boundary = Boundary::from_trendline(line);
        for b in all_breakouts(series, &boundary, line.confirm_index, adverse, &params) {
            let (entry_trigger, trigger) = breakout_trigger(series, &boundary, &b);
            out.push(PatternInstance {
                kind: breaking_kind,
                direction: breaking_kind.direction(),
                span: (line.anchor1.0, b.confirm_index),
                confirm_index: b.confirm_index,
                entry_trigger,
                invalidation: Invalidation {
                    boundary: boundary.clone(),
                    direction: adverse.opposite(),
                },
                trigger,
            });
        }
    }
    out.sort_by_key(|i| (i.confirm_index, i.kind, i.span.0));
    out
}

/// Level patterns: confirmed breakouts of horizontal levels, rectangles
/// (a coexisting support/resistance box leaving upward), and channels. A
/// rectangle's upward exit subsumes the same resistance breakout; a downward
/// exit is reported as a support breaking instead.
pub fn recognize_level_patterns(
    series: &Series,
    swings: &[SwingPoint],
    levels: &[Level],
    cfg: &RunConfig,
) -> Vec<PatternInstance> {
    let params = cfg.breakout_params();
    let mut out = Vec::new();

    let mut level_breaks: Vec<(usize, Breakout)> = Vec::new();
    for (li, level) in levels.iter().enumerate() {
        if level.confirm_index >= series.len() {
            continue;
        }
        let dir = match level.kind {
            LevelKind::Resistance => Direction::Up,
            LevelKind::Support => Direction::Down,
        };
        for b in all_breakouts(
            series,
            &Boundary::from_level(level),
            level.confirm_index,
            dir,
            &params,
        ) {
            level_breaks.push((li, b));
        }
    }

    // rectangles and the breakouts they claim
    let mut claimed: Vec<(usize, usize)> = Vec::new(); // (level index, confirm bar)
    for (ri, res) in levels.iter().enumerate() {
        if res.kind != LevelKind::Resistance {
            continue;
        }
        for sup in levels.iter().filter(|l| l.kind == LevelKind::Support) {
            if sup.price >= res.price {
                continue;
            }
            let r_span = (res.from_index, *res.formed_by.last().unwrap());
            let s_span = (sup.from_index, *sup.formed_by.last().unwrap());
            if r_span.0.max(s_span.0) > r_span.1.min(s_span.1) {
                continue; // touches do not interleave in time
            }
            let watch = res.confirm_index.max(sup.confirm_index);
            if watch >= series.len() {
                continue;
            }
            let up = next_breakout(series, &Boundary::from_level(res), watch, Direction::Up, &params);
            let down =
                next_breakout(series, &Boundary::from_level(sup), watch, Direction::Down, &params);
            let exit_up = match (up, down) {
                (Some(u), Some(d)) => {
                    if u.confirm_index <= d.confirm_index {
                        Some(u)
                    } else {
                        None // downward exit: reported as the support breaking
                    }
                }
                (Some(u), None) => Some(u),
                _ => None,
            };
            if let Some(b) = exit_up {
                let boundary = Boundary::from_level(res);
                let (entry_trigger, trigger) = breakout_trigger(series, &boundary, &b);
                claimed.push((ri, b.confirm_index));
                out.push(PatternInstance {
                    kind: PatternKind::Rectangle,
                    direction: TrendDirection::Bullish,
                    span: (r_span.0.min(s_span.0), b.confirm_index),
                    confirm_index: b.confirm_index,
                    entry_trigger,
                    invalidation: Invalidation { boundary, direction: Direction::Down },
                    trigger,
                });
            }
        }
    }

    for (li, b) in level_breaks {
        if claimed.contains(&(li, b.confirm_index)) {
            continue;
        }
        let level = &levels[li];
        let (kind, adverse) = match level.kind {
            LevelKind::Resistance => (PatternKind::BreakingHorizontalResistance, Direction::Down),
            LevelKind::Support => (PatternKind::BreakingHorizontalSupport, Direction::Up),
        };
        let boundary = Boundary::from_level(level);
        let (entry_trigger, trigger) = breakout_trigger(series, &boundary, &b);
        out.push(PatternInstance {
            kind,
            direction: kind.direction(),
            span: (level.from_index, b.confirm_index),
            confirm_index: b.confirm_index,
            entry_trigger,
            invalidation: Invalidation { boundary, direction: adverse },
            trigger,
        });
    }

    // channels come from the shared formation enumerator
    for hit in enumerate_formations(series, swings, cfg) {
        if hit.kind != PatternKind::Channel {
            continue;
        }
        let (entry_trigger, trigger) = breakout_trigger(series, &hit.broken, &hit.breakout);
        out.push(PatternInstance {
            kind: PatternKind::Channel,
            direction: TrendDirection::Bullish,
            span: (hit.span_start, hit.breakout.confirm_index),
            confirm_index: hit.breakout.confirm_index,
            entry_trigger,
            invalidation: Invalidation { boundary: hit.broken, direction: Direction::Down },
            trigger,
        });
    }

    out.sort_by_key(|i| (i.confirm_index, i.kind, i.span.0));
    out
}

/// Doubles: two consecutive same-kind swings within `double_tol` of each
/// other, confirmed when the intervening opposite swing's price is broken
/// in the reversal direction.
pub fn recognize_double_patterns(
    series: &Series,
    swings: &[SwingPoint],
    cfg: &RunConfig,
) -> Vec<PatternInstance> {
    let params = cfg.breakout_params();
    let mut out = Vec::new();
    for (kind, swing_kind, break_dir) in [
        (PatternKind::DoubleBottom, SwingKind::Bottom, Direction::Up),
        (PatternKind::DoubleTop, SwingKind::Top, Direction::Down),
    ] {
        let pts: Vec<&SwingPoint> = swings.iter().filter(|s| s.kind == swing_kind).collect();
        for pair in pts.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let mean = 0.5 * (a.price + b.price);
            if (a.price - b.price).abs() > cfg.double_tol * mean {
                continue;
            }
            // exactly one opposite swing sits between consecutive same-kind
            // swings after the alternation reduction
            let Some(neck) = swings
                .iter()
                .find(|s| s.kind == swing_kind.opposite() && s.index > a.index && s.index < b.index)
            else {
                continue;
            };
            if b.confirm_index >= series.len() {
                continue;
            }
            let boundary = Boundary::Level { price: neck.price };
            let Some(bo) = next_breakout(series, &boundary, b.confirm_index, break_dir, &params)
            else {
                continue;
            };
            let (entry_trigger, trigger) = breakout_trigger(series, &boundary, &bo);
            out.push(PatternInstance {
                kind,
                direction: kind.direction(),
                span: (a.index, bo.confirm_index),
                confirm_index: bo.confirm_index,
                entry_trigger,
                invalidation: Invalidation { boundary, direction: break_dir.opposite() },
                trigger,
            });
        }
    }
    out.sort_by_key(|i| (i.confirm_index, i.kind, i.span.0));
    out
}

/// Head and shoulders: three consecutive tops with a dominant head and
/// matching shoulders, confirmed on a downward break of the neckline drawn
/// through the two intervening bottoms. The inverse formation on bottoms
/// confirms upward.
pub fn recognize_head_shoulders(
    series: &Series,
    swings: &[SwingPoint],
    cfg: &RunConfig,
) -> Vec<PatternInstance> {
    let params = cfg.breakout_params();
    let mut out = Vec::new();
    for (kind, swing_kind, break_dir) in [
        (PatternKind::DownHeadShoulders, SwingKind::Top, Direction::Down),
        (PatternKind::UpHeadShoulders, SwingKind::Bottom, Direction::Up),
    ] {
        let pts: Vec<&SwingPoint> = swings.iter().filter(|s| s.kind == swing_kind).collect();
        for triple in pts.windows(3) {
            let (s1, head, s2) = (triple[0], triple[1], triple[2]);
            let dominant = match swing_kind {
                SwingKind::Top => {
                    head.price >= s1.price * (1.0 + cfg.hs_head_min)
                        && head.price >= s2.price * (1.0 + cfg.hs_head_min)
                }
                SwingKind::Bottom => {
                    head.price <= s1.price * (1.0 - cfg.hs_head_min)
                        && head.price <= s2.price * (1.0 - cfg.hs_head_min)
                }
            };
            let shoulders_match =
                (s1.price - s2.price).abs() <= cfg.hs_shoulder_tol * 0.5 * (s1.price + s2.price);
            if !dominant || !shoulders_match {
                continue;
            }
            let necks: Vec<&SwingPoint> = swings
                .iter()
                .filter(|s| {
                    s.kind == swing_kind.opposite() && s.index > s1.index && s.index < s2.index
                })
                .collect();
            if necks.len() != 2 {
                continue;
            }
            let (n1, n2) = (necks[0], necks[1]);
            if s2.confirm_index >= series.len() {
                continue;
            }
            let boundary = Boundary::Line {
                origin_index: n1.index,
                origin_price: n1.price,
                slope: (n2.price - n1.price) / (n2.index - n1.index) as f64,
            };
            let Some(bo) = next_breakout(series, &boundary, s2.confirm_index, break_dir, &params)
            else {
                continue;
            };
            let (entry_trigger, trigger) = breakout_trigger(series, &boundary, &bo);
            out.push(PatternInstance {
                kind,
                direction: kind.direction(),
                span: (s1.index, bo.confirm_index),
                confirm_index: bo.confirm_index,
                entry_trigger,
                invalidation: Invalidation { boundary, direction: break_dir.opposite() },
                trigger,
            });
        }
    }
    out.sort_by_key(|i| (i.confirm_index, i.kind, i.span.0));
    out
}

/// Flags, pennants and symmetrical triangles from the shared formation
/// enumerator (channels are reported by the level recognizer).
pub fn recognize_consolidations(
    series: &Series,
    swings: &[SwingPoint],
    cfg: &RunConfig,
) -> Vec<PatternInstance> {
    let mut out = Vec::new();
    for hit in enumerate_formations(series, swings, cfg) {
        let adverse = match hit.kind {
            PatternKind::UpFlag | PatternKind::UpPennant | PatternKind::UpSymmetricalTriangle => {
                Direction::Down
            }
            PatternKind::DownFlag
            | PatternKind::DownPennant
            | PatternKind::DownSymmetricalTriangle => Direction::Up,
            _ => continue, // channels belong to the level recognizer
        };
        let (entry_trigger, trigger) = breakout_trigger(series, &hit.broken, &hit.breakout);
        out.push(PatternInstance {
            kind: hit.kind,
            direction: hit.kind.direction(),
            span: (hit.span_start, hit.breakout.confirm_index),
            confirm_index: hit.breakout.confirm_index,
            entry_trigger,
            invalidation: Invalidation { boundary: hit.broken, direction: adverse },
            trigger,
        });
    }
    out.sort_by_key(|i| (i.confirm_index, i.kind, i.span.0));
    out
}

/// Fan principle: three successively flatter lines from a common pivot, each
/// broken in turn; the third confirmed break reverses the trend. Down-lines
/// from a pivot top broken upward give the bullish high fan; up-lines from a
/// pivot bottom broken downward give the bearish down fan.
pub fn recognize_fan_principle(
    series: &Series,
    swings: &[SwingPoint],
    cfg: &RunConfig,
) -> Vec<PatternInstance> {
    let params = cfg.breakout_params();
    let mut out = Vec::new();
    for (kind, swing_kind, break_dir) in [
        (PatternKind::HighFanPrinciple, SwingKind::Top, Direction::Up),
        (PatternKind::DownFanPrinciple, SwingKind::Bottom, Direction::Down),
    ] {
        let pts: Vec<&SwingPoint> = swings.iter().filter(|s| s.kind == swing_kind).collect();
        for (pi, pivot) in pts.iter().enumerate() {
            // lines may originate from any same-kind swing within the
            // anchor tolerance of the pivot
            let origins: Vec<&&SwingPoint> = pts[pi..]
                .iter()
                .take_while(|p| p.index <= pivot.index + cfg.fan_anchor_tol)
                .collect();
            let rest = &pts[pi + origins.len()..];

            let mut prev_slope = match swing_kind {
                SwingKind::Top => f64::NEG_INFINITY,
                SwingKind::Bottom => f64::INFINITY,
            };
            let mut prev_confirm = 0usize;
            let mut accepted = 0usize;
            let mut first_anchor = pivot.index;
            let mut emitted = false;

            for t in rest {
                if t.index + 3 >= series.len() {
                    break;
                }
                let mut found = None;
                for g in &origins {
                    let sep = t.index - g.index;
                    if sep < cfg.formation_min_sep {
                        continue;
                    }
                    let slope = (t.price - g.price) / sep as f64;
                    let ok = match swing_kind {
                        // down lines, successively flatter: slope rises toward zero
                        SwingKind::Top => t.price < g.price && slope > prev_slope,
                        // up lines, successively flatter: slope falls toward zero
                        SwingKind::Bottom => t.price > g.price && slope < prev_slope && slope > 0.0,
                    };
                    if !ok {
                        continue;
                    }
                    let boundary = Boundary::Line {
                        origin_index: g.index,
                        origin_price: g.price,
                        slope,
                    };
                    if let Some(bo) =
                        next_breakout(series, &boundary, t.index + 3, break_dir, &params)
                    {
                        if bo.confirm_index > prev_confirm {
                            found = Some((g.index, slope, bo, boundary));
                            break;
                        }
                    }
                }
                if let Some((g_index, slope, bo, boundary)) = found {
                    if accepted == 0 {
                        first_anchor = g_index;
                    }
                    accepted += 1;
                    prev_slope = slope;
                    prev_confirm = bo.confirm_index;
                    if accepted == 3 {
                        let (entry_trigger, trigger) = breakout_trigger(series, &boundary, &bo);
                        out.push(PatternInstance {
                            kind,
                            direction: kind.direction(),
                            span: (first_anchor, bo.confirm_index),
                            confirm_index: bo.confirm_index,
                            entry_trigger,
                            invalidation: Invalidation {
                                boundary,
                                direction: break_dir.opposite(),
                            },
                            trigger,
                        });
                        emitted = true;
                        break;
                    }
                }
            }
            let _ = emitted;
        }
    }
    out.sort_by_key(|i| (i.confirm_index, i.kind, i.span.0));
    out
}

/// Precedence when two recognizers confirm on the same market event: the
/// more specific formation wins.
fn specificity(kind: PatternKind) -> u8 {
    use PatternKind::*;
    match kind {
        Rectangle => 0,
        Channel => 1,
        UpFlag => 2,
        DownFlag => 3,
        UpPennant => 4,
        DownPennant => 5,
        UpSymmetricalTriangle => 6,
        DownSymmetricalTriangle => 7,
        UpHeadShoulders => 8,
        DownHeadShoulders => 9,
        DoubleBottom => 10,
        DoubleTop => 11,
        HighFanPrinciple => 12,
        DownFanPrinciple => 13,
        BreakingHorizontalResistance => 14,
        BreakingHorizontalSupport => 15,
        BreakingDownTrendline => 16,
        BreakingUpTrendline => 17,
        UpTrendline => 18,
        DownTrendline => 19,
    }
}

/// Two instances describe one event when they confirm at the same bar, in
/// the same direction, through boundaries whose values at that bar agree to
/// 0.5%.
fn same_event(a: &PatternInstance, b: &PatternInstance) -> bool {
    if a.confirm_index != b.confirm_index || a.direction != b.direction {
        return false;
    }
    match (a.trigger, b.trigger) {
        (
            Trigger::BreakoutConfirmed { boundary_value: va },
            Trigger::BreakoutConfirmed { boundary_value: vb },
        ) => (va - vb).abs() <= 0.005 * 0.5 * (va + vb).abs(),
        _ => false,
    }
}

fn suppress_same_event(instances: Vec<PatternInstance>) -> Vec<PatternInstance> {
    let mut keep = vec![true; instances.len()];
    for i in 0..instances.len() {
        if !keep[i] {
            continue;
        }
        for j in i + 1..instances.len() {
            if !keep[j] || instances[j].confirm_index != instances[i].confirm_index {
                continue;
            }
            if same_event(&instances[i], &instances[j]) {
                if specificity(instances[i].kind) <= specificity(instances[j].kind) {
                    keep[j] = false;
                } else {
                    keep[i] = false;
                }
            }
        }
    }
    instances
        .into_iter()
        .zip(keep)
        .filter_map(|(inst, k)| k.then_some(inst))
        .collect()
}

fn span_jaccard(a: (usize, usize), b: (usize, usize)) -> f64 {
    let inter_lo = a.0.max(b.0);
    let inter_hi = a.1.min(b.1);
    if inter_hi < inter_lo {
        return 0.0;
    }
    let inter = (inter_hi - inter_lo + 1) as f64;
    let union = (a.1 - a.0 + 1) as f64 + (b.1 - b.0 + 1) as f64 - inter;
    inter / union
}

/// Same-kind instances whose spans overlap (intersection over union) beyond
/// the threshold keep only the earlier-confirmed one.
fn suppress_overlaps(instances: Vec<PatternInstance>, threshold: f64) -> Vec<PatternInstance> {
    let mut kept: Vec<PatternInstance> = Vec::new();
    for inst in instances {
        let dup = kept.iter().any(|k| {
            k.kind == inst.kind && span_jaccard(k.span, inst.span) > threshold
        });
        if !dup {
            kept.push(inst);
        }
    }
    kept
}

/// Run every recognizer and merge the results into one chronological list:
/// sorted by (confirmation bar, kind order), one instance per market event,
/// same-kind near-duplicates suppressed. Deterministic for a fixed config.
pub fn scan(series: &Series, cfg: &RunConfig) -> Vec<PatternInstance> {
    let swings = detect_swings(series, cfg.swing_k);
    let lines = crate::lines::fit_trendlines(series, &swings);
    let levels = crate::lines::detect_levels(series, &swings, cfg.flatness_tol);

    let mut all = recognize_trendline_patterns(series, &swings, &lines, cfg);
    all.extend(recognize_level_patterns(series, &swings, &levels, cfg));
    all.extend(recognize_double_patterns(series, &swings, cfg));
    all.extend(recognize_head_shoulders(series, &swings, cfg));
    all.extend(recognize_consolidations(series, &swings, cfg));
    all.extend(recognize_fan_principle(series, &swings, cfg));

    all.sort_by(|a, b| {
        (a.confirm_index, a.kind, a.span.0).cmp(&(b.confirm_index, b.kind, b.span.0))
    });
    let all = suppress_same_event(all);
    suppress_overlaps(all, cfg.overlap_suppression)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::series_from_closes;

    #[test]
    fn kind_direction_table_matches_the_movement_lists() {
        use PatternKind::*;
        let bullish = [
            UpTrendline,
            BreakingDownTrendline,
            BreakingHorizontalResistance,
            DoubleBottom,
            UpFlag,
            Channel,
            HighFanPrinciple,
            UpSymmetricalTriangle,
            Rectangle,
            UpHeadShoulders,
            UpPennant,
        ];
        let bearish = [
            DownTrendline,
            BreakingUpTrendline,
            BreakingHorizontalSupport,
            DoubleTop,
            DownFanPrinciple,
            DownHeadShoulders,
            DownFlag,
            DownPennant,
            DownSymmetricalTriangle,
        ];
        for k in bullish {
            assert_eq!(k.direction(), TrendDirection::Bullish, "{k:?}");
        }
        for k in bearish {
            assert_eq!(k.direction(), TrendDirection::Bearish, "{k:?}");
        }
        assert_eq!(bullish.len() + bearish.len(), ALL_KINDS.len());
    }

    #[test]
    fn empty_and_constant_series_scan_to_nothing() {
        let cfg = RunConfig::default();
        let empty = series_from_closes("e", &[]);
        assert!(scan(&empty, &cfg).is_empty());
        let constant = series_from_closes("c", &vec![50.0; 120]);
        assert!(scan(&constant, &cfg).is_empty());
    }

    #[test]
    fn scan_is_deterministic() {
        let closes: Vec<f64> = (0..160)
            .map(|i| 100.0 + 12.0 * ((i as f64) * 0.21).sin() + 0.05 * i as f64)
            .collect();
        let s = series_from_closes("d", &closes);
        let cfg = RunConfig::default();
        let a = scan(&s, &cfg);
        let b = scan(&s, &cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn ident_round_trips() {
        for k in ALL_KINDS {
            assert_eq!(PatternKind::from_ident(k.ident()), Some(k));
        }
    }
}
