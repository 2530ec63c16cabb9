//! Confirmed tops and bottoms.
//!
//! A bar is a top once `k` following bars (default 3) all print strictly
//! lower highs, and a bottom once `k` following bars print strictly higher
//! lows. A swing is therefore only known `k` bars after the fact, which the
//! `confirm_index` records. Candidates are then reduced to an alternating
//! top/bottom sequence so that line anchoring sees one extreme per leg.

use crate::market::Series;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwingKind {
    Top,
    Bottom,
}

impl SwingKind {
    pub fn opposite(self) -> SwingKind {
        match self {
            SwingKind::Top => SwingKind::Bottom,
            SwingKind::Bottom => SwingKind::Top,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwingPoint {
    pub index: usize,
    pub kind: SwingKind,
    /// The bar's high for a top, its low for a bottom.
    pub price: f64,
    /// `index + k`: the first bar at which the swing is known.
    pub confirm_index: usize,
}

/// Raw window-rule candidates in index order, before the alternation
/// reduction. A wide bar can be both a top and a bottom candidate; at equal
/// index the top is listed first. Candidate status at index `i` depends on
/// bars `i..=i+k` only, so it is stable under extending the series.
pub fn swing_candidates(series: &Series, k: usize) -> Vec<SwingPoint> {
    assert!(k >= 1, "confirmation window must be at least 1 bar");
    let n = series.len();
    let mut out = Vec::new();
    if n < k + 1 {
        return out;
    }
    for i in 0..n - k {
        let hi = series.high(i);
        if (i + 1..=i + k).all(|j| series.high(j) < hi) {
            out.push(SwingPoint { index: i, kind: SwingKind::Top, price: hi, confirm_index: i + k });
        }
        let lo = series.low(i);
        if (i + 1..=i + k).all(|j| series.low(j) > lo) {
            out.push(SwingPoint {
                index: i,
                kind: SwingKind::Bottom,
                price: lo,
                confirm_index: i + k,
            });
        }
    }
    out
}

/// Detect confirmed swings and reduce them to an alternating sequence: when
/// two same-kind candidates arrive with no opposite candidate between them,
/// the more extreme one wins (higher top, lower bottom) and ties keep the
/// earlier. Series shorter than `k + 1` bars yield no swings.
pub fn detect_swings(series: &Series, k: usize) -> Vec<SwingPoint> {
    let mut out: Vec<SwingPoint> = Vec::new();
    for cand in swing_candidates(series, k) {
        match out.last_mut() {
            Some(last) if last.kind == cand.kind => {
                let more_extreme = match cand.kind {
                    SwingKind::Top => cand.price > last.price,
                    SwingKind::Bottom => cand.price < last.price,
                };
                if more_extreme {
                    *last = cand;
                }
            }
            _ => out.push(cand),
        }
    }
    out
}

/// The tops (or bottoms) subsequence, in index order.
pub fn of_kind(swings: &[SwingPoint], kind: SwingKind) -> Vec<SwingPoint> {
    swings.iter().copied().filter(|s| s.kind == kind).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::series_from_closes;
    use crate::market::{Bar, Series};
    use chrono::NaiveDate;

    fn series_from_hl(pairs: &[(f64, f64)]) -> Series {
        let d0 = NaiveDate::from_ymd_opt(1995, 1, 2).unwrap();
        let bars = pairs
            .iter()
            .enumerate()
            .map(|(i, &(h, l))| Bar {
                date: d0 + chrono::Days::new(i as u64),
                open: (h + l) / 2.0,
                high: h,
                low: l,
                close: (h + l) / 2.0,
                volume: None,
            })
            .collect();
        Series::new("t", bars)
    }

    #[test]
    fn monotone_rise_has_no_tops() {
        let s = series_from_hl(&(1..=10).map(|i| (i as f64, i as f64 - 0.5)).collect::<Vec<_>>());
        assert!(detect_swings(&s, 3).iter().all(|p| p.kind != SwingKind::Top));
    }

    #[test]
    fn single_top_with_three_lower_highs() {
        // highs 1 2 5 4 3 2 -> top at index 2, confirmed at 5
        let s = series_from_hl(&[(1.0, 0.5), (2.0, 1.5), (5.0, 4.5), (4.0, 3.5), (3.0, 2.5), (2.0, 1.5)]);
        let tops = of_kind(&detect_swings(&s, 3), SwingKind::Top);
        assert_eq!(tops.len(), 1);
        assert_eq!(tops[0].index, 2);
        assert_eq!(tops[0].price, 5.0);
        assert_eq!(tops[0].confirm_index, 5);
    }

    #[test]
    fn short_series_yields_nothing() {
        let s = series_from_hl(&[(5.0, 4.0), (4.0, 3.0), (3.0, 2.0)]);
        assert!(detect_swings(&s, 3).is_empty());
        assert!(detect_swings(&s, 5).is_empty());
    }

    #[test]
    fn tie_in_window_defeats_confirmation() {
        // highs 5 5 4 4 3: index 0 not a top (equal high at 1)
        let s = series_from_hl(&[(5.0, 1.0), (5.0, 1.1), (4.0, 1.2), (4.0, 1.3), (3.0, 1.4)]);
        let tops = of_kind(&detect_swings(&s, 3), SwingKind::Top);
        assert_eq!(tops.len(), 1);
        assert_eq!(tops[0].index, 1);
    }

    #[test]
    fn output_alternates_and_keeps_extremes() {
        let closes: Vec<f64> =
            vec![10.0, 12.0, 11.0, 13.0, 9.0, 8.0, 7.5, 9.5, 10.5, 11.5, 10.0, 9.0, 8.0, 8.5, 9.0, 9.5];
        let s = series_from_closes("t", &closes);
        let swings = detect_swings(&s, 3);
        for w in swings.windows(2) {
            assert_ne!(w[0].kind, w[1].kind, "consecutive swings share a kind: {swings:?}");
        }
    }

    #[test]
    fn mirror_symmetry_maps_tops_to_bottoms() {
        // Negating prices and swapping high/low roles is an exact mirror for
        // the comparative window rule (positivity does not matter here, so
        // bars are built directly).
        let d0 = NaiveDate::from_ymd_opt(1995, 1, 2).unwrap();
        let highs = [3.0, 5.0, 4.0, 6.0, 5.5, 4.5, 4.0, 5.0, 7.0, 6.0, 5.0, 4.0];
        let lows: Vec<f64> = highs.iter().map(|h| h - 1.0).collect();
        let mk = |hs: &[f64], ls: &[f64]| {
            let bars = hs
                .iter()
                .zip(ls)
                .enumerate()
                .map(|(i, (&h, &l))| Bar {
                    date: d0 + chrono::Days::new(i as u64),
                    open: l,
                    high: h,
                    low: l,
                    close: h,
                    volume: None,
                })
                .collect();
            Series::new("m", bars)
        };
        let plain = mk(&highs, &lows);
        let neg_highs: Vec<f64> = lows.iter().map(|l| -l).collect();
        let neg_lows: Vec<f64> = highs.iter().map(|h| -h).collect();
        let mirrored = mk(&neg_highs, &neg_lows);

        for k in [1usize, 2, 3] {
            let a = detect_swings(&plain, k);
            let b = detect_swings(&mirrored, k);
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(x.index, y.index);
                assert_eq!(x.kind, y.kind.opposite());
                assert!((x.price + y.price).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn candidate_decisions_are_prefix_stable() {
        let closes: Vec<f64> = (0..60)
            .map(|i| 50.0 + 6.0 * ((i as f64) * 0.7).sin() + 2.0 * ((i as f64) * 0.23).cos())
            .collect();
        let s = series_from_closes("t", &closes);
        for k in [1usize, 2, 3, 5] {
            let full = swing_candidates(&s, k);
            for cut in k + 1..=s.len() {
                let prefix = Series::new("t", s.bars[..cut].to_vec());
                let pre = swing_candidates(&prefix, k);
                // every candidate decided in the prefix matches the full series
                for c in &pre {
                    assert!(full.contains(c));
                }
                // and the full list restricted to decided indices equals it
                let decided: Vec<_> =
                    full.iter().copied().filter(|c| c.index + k < cut).collect();
                assert_eq!(decided, pre);
            }
        }
    }
}
