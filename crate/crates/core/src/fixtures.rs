//! Bundled fixtures: deterministic series builders, the 20-pattern
//! showcase (one mini-series per pattern kind, each constructed so exactly
//! its target pattern confirms), and a seeded synthetic corpus for
//! end-to-end runs.

use crate::market::{Bar, Series};
use crate::patterns::PatternKind;
use chrono::NaiveDate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn base_date() -> NaiveDate {
    NaiveDate::from_ymd_opt(1995, 1, 2).unwrap()
}

/// Bars from (open, high, low, close) rows with sequential dates.
pub fn series_from_ohlc(id: &str, rows: &[(f64, f64, f64, f64)]) -> Series {
    let d0 = base_date();
    let bars = rows
        .iter()
        .enumerate()
        .map(|(i, &(open, high, low, close))| Bar {
            date: d0 + chrono::Days::new(i as u64),
            open,
            high,
            low,
            close,
            volume: None,
        })
        .collect();
    Series::new(id, bars)
}

/// Close-only bars (open = high = low = close), for tests that exercise
/// close-based rules.
pub fn series_from_closes(id: &str, closes: &[f64]) -> Series {
    let rows: Vec<(f64, f64, f64, f64)> = closes.iter().map(|&c| (c, c, c, c)).collect();
    series_from_ohlc(id, &rows)
}

/// A showcase entry: one mini-series plus the single instance its geometry
/// is built to confirm.
#[derive(Debug, Clone)]
pub struct Annotated {
    pub series: Series,
    pub kind: PatternKind,
    pub confirm_index: usize,
}

fn flat(p: f64, n: usize) -> Vec<(f64, f64, f64, f64)> {
    vec![(p, p, p, p); n]
}

fn up_trendline() -> Vec<(f64, f64, f64, f64)> {
    vec![
        (102.0, 103.0, 101.5, 102.0),
        (102.0, 102.5, 100.8, 101.0),
        (101.0, 101.5, 100.0, 101.0), // bottom anchor 1
        (101.0, 104.0, 100.9, 103.5),
        (105.0, 107.0, 104.5, 106.0), // top
        (106.0, 106.5, 104.8, 105.0),
        (105.0, 105.5, 104.2, 104.5),
        (104.5, 105.0, 104.0, 104.8), // bottom anchor 2
        (104.8, 106.0, 104.4, 105.8),
        (105.8, 106.8, 105.2, 106.5),
        (106.5, 107.5, 106.0, 107.2), // line established, close above it
        (107.2, 108.0, 106.8, 107.5),
        (107.5, 108.8, 107.2, 108.5),
    ]
}

fn down_trendline() -> Vec<(f64, f64, f64, f64)> {
    vec![
        (106.0, 106.5, 105.0, 106.0),
        (106.0, 107.2, 105.5, 107.0),
        (107.0, 108.0, 106.5, 107.0), // top anchor 1
        (107.0, 107.1, 104.0, 104.5),
        (104.5, 104.6, 101.0, 101.5), // bottom
        (101.5, 103.5, 101.3, 103.0),
        (103.0, 104.0, 102.5, 103.8),
        (103.8, 104.2, 103.2, 103.5), // top anchor 2
        (103.5, 103.8, 102.0, 102.2),
        (102.2, 102.6, 101.4, 101.8),
        (101.8, 102.0, 101.0, 101.2), // line established, close below it
        (101.2, 101.5, 100.5, 100.8),
        (100.8, 101.0, 100.0, 100.2),
    ]
}

fn breaking_down_trendline() -> Vec<(f64, f64, f64, f64)> {
    vec![
        (108.0, 108.5, 107.0, 108.0),
        (108.0, 109.0, 107.5, 108.5),
        (108.5, 110.0, 108.0, 109.0), // top anchor 1
        (109.0, 109.5, 103.0, 103.5),
        (103.5, 103.8, 100.0, 100.5), // bottom
        (100.5, 102.0, 100.3, 101.5),
        (101.5, 103.0, 101.2, 102.5),
        (102.5, 104.0, 102.2, 103.0), // top anchor 2
        (103.0, 103.5, 101.8, 102.0),
        (102.0, 103.2, 101.8, 103.0),
        (103.0, 103.8, 101.8, 103.6), // line established; close already beyond, 3% clear
        (103.6, 104.5, 103.2, 104.0),
        (104.0, 105.0, 103.8, 104.8),
    ]
}

fn breaking_up_trendline() -> Vec<(f64, f64, f64, f64)> {
    vec![
        (102.0, 103.0, 101.0, 102.0),
        (102.0, 102.5, 100.8, 101.5),
        (101.5, 102.0, 100.0, 101.0), // bottom anchor 1
        (101.0, 106.5, 100.9, 106.0),
        (106.0, 107.0, 105.5, 106.2), // top
        (106.2, 106.8, 105.0, 105.2),
        (105.2, 106.0, 104.5, 104.8),
        (104.8, 105.2, 104.0, 104.5), // bottom anchor 2
        (104.5, 105.0, 104.2, 104.6),
        (104.6, 105.0, 104.15, 104.4),
        (104.4, 105.0, 104.1, 104.5), // line established, close already below
        (104.5, 105.0, 103.2, 103.5), // cumulative 3% under the line
        (103.5, 103.8, 102.8, 103.0),
        (103.0, 103.4, 102.5, 102.8),
    ]
}

fn breaking_horizontal_resistance() -> Vec<(f64, f64, f64, f64)> {
    vec![
        (97.0, 98.0, 96.5, 97.5),
        (97.5, 99.0, 97.0, 98.5),
        (98.5, 100.0, 98.0, 99.0), // resistance touch 1
        (99.0, 99.2, 96.0, 96.5),  // bottom between touches
        (96.5, 98.0, 96.2, 97.5),
        (97.5, 99.4, 97.2, 98.2), // resistance touch 2
        (98.2, 98.6, 97.0, 97.4),
        (97.4, 98.2, 96.8, 97.8),
        (97.8, 99.0, 96.8, 98.6), // level known from here
        (98.6, 103.5, 96.8, 102.8), // close 3% above the level
        (102.8, 104.0, 102.5, 103.5),
        (103.5, 104.5, 103.2, 104.0),
    ]
}

fn breaking_horizontal_support() -> Vec<(f64, f64, f64, f64)> {
    vec![
        (103.0, 103.8, 102.5, 103.2),
        (103.2, 103.5, 101.0, 101.5),
        (101.5, 102.0, 100.0, 100.8), // support touch 1
        (100.8, 104.5, 100.7, 104.0), // top between touches
        (104.0, 104.2, 101.5, 102.0),
        (102.0, 102.5, 100.6, 101.2), // support touch 2
        (101.2, 101.3, 100.9, 101.1),
        (101.1, 101.45, 100.8, 101.0),
        (101.0, 101.6, 100.7, 100.9), // level known from here
        (100.9, 101.7, 96.9, 97.2),   // close 3% below the level
        (97.2, 97.5, 96.5, 96.8),
        (96.8, 97.0, 96.0, 96.4),
    ]
}

fn double_bottom() -> Vec<(f64, f64, f64, f64)> {
    vec![
        (51.5, 52.0, 51.0, 51.8),
        (51.8, 52.2, 50.8, 51.0),
        (51.0, 51.3, 50.0, 50.6), // first bottom
        (50.6, 52.8, 50.5, 52.2), // neckline top
        (52.2, 52.4, 51.0, 51.3),
        (51.3, 51.6, 50.4, 50.9), // second bottom, 0.8% above the first
        (50.9, 51.5, 50.6, 51.2),
        (51.2, 52.0, 51.0, 51.8),
        (51.8, 52.5, 51.5, 52.3), // second bottom confirmed
        (52.3, 54.6, 52.2, 54.4), // close 3% above the neckline
        (54.4, 55.0, 54.0, 54.8),
        (54.8, 55.2, 54.5, 55.0),
    ]
}

fn double_top() -> Vec<(f64, f64, f64, f64)> {
    vec![
        (58.5, 59.0, 58.0, 58.8),
        (58.8, 59.5, 58.4, 59.2),
        (59.2, 60.0, 58.8, 59.5), // first top
        (59.5, 59.6, 57.0, 57.4), // neckline bottom
        (57.4, 58.8, 57.2, 58.5),
        (58.5, 59.7, 58.2, 59.0), // second top, 0.5% under the first
        (59.0, 59.3, 58.0, 58.4),
        (58.4, 59.35, 57.8, 58.0),
        (58.0, 59.4, 57.9, 58.2), // second top confirmed
        (58.2, 58.4, 55.0, 55.2), // close 3% below the neckline
        (55.2, 55.5, 54.5, 54.8),
        (54.8, 55.0, 54.0, 54.3),
    ]
}

fn up_flag() -> Vec<(f64, f64, f64, f64)> {
    let mut rows = flat(100.0, 4);
    rows.extend([
        (100.0, 104.0, 100.0, 103.8), // pole
        (103.8, 109.0, 103.6, 108.8),
        (108.8, 114.0, 108.5, 112.8), // flag upper anchor 1
        (112.8, 113.2, 111.4, 111.8), // flag lower anchor 1
        (111.8, 112.9, 111.5, 112.4),
        (112.4, 113.1, 111.6, 112.2), // flag upper anchor 2
        (112.2, 112.6, 111.5, 111.9),
        (111.9, 112.0, 110.2, 110.5), // flag lower anchor 2
        (110.5, 111.2, 110.4, 111.0),
        (111.0, 111.6, 110.7, 111.5),
        (111.5, 112.3, 111.0, 112.0), // leaves the flag upward
        (112.0, 112.8, 111.6, 112.5),
        (112.5, 113.4, 112.1, 113.1), // three receding closes
        (113.1, 113.7, 112.8, 113.5),
        (113.5, 113.8, 113.2, 113.4),
    ]);
    rows
}

fn down_flag() -> Vec<(f64, f64, f64, f64)> {
    let mut rows = flat(100.0, 4);
    rows.extend([
        (100.0, 100.0, 96.0, 96.2), // pole
        (96.2, 96.4, 91.0, 91.2),
        (91.2, 91.5, 86.0, 87.2),   // flag lower anchor 1
        (87.2, 88.6, 86.8, 88.2),   // flag upper anchor 1
        (88.2, 88.5, 87.1, 87.6),
        (87.6, 88.4, 86.9, 87.8),   // flag lower anchor 2
        (87.8, 88.5, 87.3, 88.1),
        (88.1, 89.8, 87.9, 89.4),   // flag upper anchor 2
        (89.4, 89.6, 87.9, 88.6),
        (88.6, 89.2, 88.0, 88.4),
        (88.4, 89.0, 88.0, 88.2),   // leaves the flag downward
        (88.2, 88.6, 87.6, 87.9),
        (87.9, 88.2, 87.0, 87.2),   // three receding closes
        (87.2, 87.5, 86.6, 86.9),
        (86.9, 87.2, 86.4, 87.0),
    ]);
    rows
}

fn up_pennant() -> Vec<(f64, f64, f64, f64)> {
    let mut rows = flat(100.0, 4);
    rows.extend([
        (100.0, 104.0, 100.0, 103.8), // pole
        (103.8, 109.0, 103.6, 108.8),
        (108.8, 114.0, 108.5, 112.8), // upper anchor 1
        (112.8, 113.2, 111.4, 111.8), // lower anchor 1
        (111.8, 112.9, 111.5, 112.4),
        (112.4, 113.3, 111.7, 112.2), // upper anchor 2 (converging)
        (112.2, 112.7, 111.8, 112.1), // lower anchor 2 (rising)
        (112.1, 112.5, 111.9, 112.3),
        (112.3, 112.6, 112.0, 112.2),
        (112.2, 112.8, 112.0, 112.5), // leaves the pennant upward
        (112.5, 113.1, 112.2, 112.9),
        (112.9, 113.6, 112.6, 113.4), // three receding closes
        (113.4, 113.9, 113.1, 113.7),
    ]);
    rows
}

fn down_pennant() -> Vec<(f64, f64, f64, f64)> {
    let mut rows = flat(100.0, 4);
    rows.extend([
        (100.0, 100.0, 96.0, 96.2), // pole
        (96.2, 96.4, 91.0, 91.2),
        (91.2, 91.5, 86.0, 87.2),   // lower anchor 1
        (87.2, 88.6, 86.8, 88.2),   // upper anchor 1
        (88.2, 88.5, 87.0, 87.6),
        (87.6, 88.4, 86.4, 87.8),   // lower anchor 2 (rising)
        (87.8, 88.0, 87.2, 87.5),   // upper anchor 2 (falling)
        (87.5, 87.8, 87.0, 87.3),
        (87.3, 87.7, 86.9, 87.1),
        (87.1, 87.4, 86.6, 86.8),   // leaves the pennant downward
        (86.8, 87.1, 86.3, 86.5),
        (86.5, 86.8, 85.8, 86.0),   // three receding closes
        (86.0, 86.3, 85.5, 85.7),
    ]);
    rows
}

fn up_symmetrical_triangle() -> Vec<(f64, f64, f64, f64)> {
    let mut rows = flat(100.0, 6);
    rows.extend([
        (100.0, 103.0, 99.8, 102.5), // upper anchor 1
        (102.5, 102.8, 99.0, 99.5),  // lower anchor 1
        (99.5, 101.0, 99.4, 100.8),
        (100.8, 102.2, 100.2, 101.5), // upper anchor 2
        (101.5, 101.8, 99.6, 100.0),  // lower anchor 2
        (100.0, 101.2, 99.8, 100.9),
        (100.9, 101.5, 100.2, 101.2),
        (101.2, 101.6, 100.8, 101.4), // leaves upward
        (101.4, 102.0, 101.1, 101.9),
        (101.9, 102.6, 101.6, 102.4), // three receding closes
        (102.4, 102.9, 102.0, 102.7),
    ]);
    rows
}

fn down_symmetrical_triangle() -> Vec<(f64, f64, f64, f64)> {
    let mut rows = flat(100.0, 6);
    rows.extend([
        (100.0, 103.0, 99.8, 102.5), // upper anchor 1
        (102.5, 102.8, 99.0, 99.5),  // lower anchor 1
        (99.5, 101.0, 99.4, 100.8),
        (100.8, 102.2, 100.2, 101.5), // upper anchor 2
        (101.5, 101.8, 99.6, 100.0),  // lower anchor 2
        (100.0, 101.2, 99.8, 100.6),
        (100.6, 101.0, 99.9, 100.3),
        (100.3, 100.5, 99.8, 100.0), // leaves downward
        (100.0, 100.2, 99.5, 99.7),
        (99.7, 99.9, 99.0, 99.2),   // three receding closes
        (99.2, 99.4, 98.7, 98.9),
    ]);
    rows
}

fn channel() -> Vec<(f64, f64, f64, f64)> {
    let mut rows = flat(100.0, 4);
    rows.extend([
        (100.0, 100.5, 99.8, 100.2), // lower anchor 1
        (100.2, 103.0, 100.0, 102.5), // upper anchor 1
        (102.5, 102.8, 102.2, 102.4),
        (102.4, 102.9, 102.0, 102.6), // lower anchor 2
        (102.6, 104.0, 102.4, 103.8),
        (103.8, 106.2, 103.6, 105.6), // upper anchor 2
        (105.6, 105.9, 104.2, 104.5),
        (104.5, 105.3, 104.0, 105.0),
        (105.0, 106.1, 104.8, 105.8),
        (105.8, 110.0, 105.5, 109.8), // leaves the channel upward
        (109.8, 111.5, 109.5, 111.2),
        (111.2, 113.0, 110.9, 112.8), // three receding closes
        (112.8, 113.4, 112.4, 113.1),
    ]);
    rows
}

fn rectangle() -> Vec<(f64, f64, f64, f64)> {
    let mut rows = flat(97.5, 3);
    rows.extend([
        (97.5, 100.0, 97.3, 99.5), // resistance touch 1
        (99.5, 99.7, 95.0, 95.5),  // support touch 1
        (95.5, 97.0, 95.3, 96.8),
        (96.8, 99.9, 96.5, 99.2),  // resistance touch 2
        (99.2, 99.5, 95.2, 95.8),  // support touch 2
        (95.8, 97.2, 95.6, 97.0),
        (97.0, 98.0, 96.6, 97.6),
        (97.6, 98.5, 97.3, 98.2),  // box known from here
        (98.2, 103.5, 98.0, 103.2), // exits upward, 3% above the resistance
        (103.2, 103.8, 102.9, 103.5),
        (103.5, 104.0, 103.2, 103.8),
    ]);
    rows
}

fn down_head_shoulders() -> Vec<(f64, f64, f64, f64)> {
    let mut rows = flat(98.2, 4);
    rows.extend([
        (99.3, 100.0, 98.9, 99.5), // left shoulder
        (99.5, 99.8, 97.6, 97.9),
        (97.9, 98.4, 97.0, 97.4),  // neckline point 1
        (97.4, 99.2, 97.2, 98.9),
        (98.9, 104.0, 98.7, 103.6),
        (103.6, 110.0, 103.3, 108.5), // head
        (108.5, 108.8, 99.0, 99.5),
        (99.5, 100.2, 95.0, 95.6),  // neckline point 2
        (95.6, 101.0, 95.4, 100.2), // right shoulder
        (100.2, 100.6, 96.8, 97.2),
        (97.2, 97.6, 95.8, 96.0),
        (96.0, 96.3, 90.2, 90.5),   // close 3% below the neckline
        (90.5, 91.0, 89.8, 90.2),
        (90.2, 90.6, 89.5, 89.9),
    ]);
    rows
}

fn up_head_shoulders() -> Vec<(f64, f64, f64, f64)> {
    let mut rows = flat(101.8, 4);
    rows.extend([
        (101.8, 102.2, 100.0, 100.5), // left shoulder (inverse)
        (100.5, 102.8, 100.3, 102.5),
        (102.5, 103.0, 100.8, 101.2), // neckline point 1
        (101.2, 101.6, 100.2, 100.6),
        (100.6, 100.9, 92.0, 92.4),
        (92.4, 93.0, 90.0, 91.5),     // head
        (91.5, 99.5, 91.2, 99.0),
        (99.0, 105.0, 98.8, 104.2),   // neckline point 2
        (104.2, 104.6, 98.8, 99.6),   // right shoulder
        (99.6, 101.5, 99.3, 101.2),
        (101.2, 103.0, 100.9, 102.6),
        (102.6, 110.5, 102.3, 110.0), // close 3% above the neckline
        (110.0, 110.8, 109.5, 110.4),
        (110.4, 111.0, 110.0, 110.7),
    ]);
    rows
}

fn high_fan_principle() -> Vec<(f64, f64, f64, f64)> {
    vec![
        (107.0, 108.0, 106.5, 107.5),
        (107.5, 109.0, 107.2, 108.0),
        (108.0, 110.0, 107.8, 108.5), // fan pivot top
        (108.5, 108.8, 102.0, 102.5),
        (102.5, 103.0, 100.0, 101.0),
        (101.0, 106.0, 100.8, 105.2), // line 1 second anchor
        (105.2, 105.6, 102.0, 102.4),
        (102.4, 103.0, 101.5, 102.0),
        (102.0, 104.8, 101.8, 104.0), // line 2 second anchor; line 1 crossed
        (104.0, 104.4, 102.9, 104.3), // line 1 break confirmed
        (104.3, 104.6, 102.8, 103.2),
        (103.2, 104.0, 103.0, 103.5), // line 3 second anchor; line 2 crossed
        (103.5, 103.9, 103.1, 103.3),
        (103.3, 103.95, 103.0, 103.4), // line 2 break confirmed
        (103.4, 103.98, 103.2, 103.9), // line 3 crossed
        (103.9, 106.0, 103.7, 105.5),  // line 3 break confirmed
        (105.5, 106.5, 105.2, 106.2),
    ]
}

fn down_fan_principle() -> Vec<(f64, f64, f64, f64)> {
    vec![
        (103.0, 103.5, 102.0, 102.5),
        (102.5, 102.8, 101.0, 102.0),
        (102.0, 102.2, 100.0, 101.5), // fan pivot bottom
        (101.5, 108.0, 101.2, 107.5),
        (107.5, 110.0, 107.0, 109.0),
        (109.0, 109.2, 104.0, 104.8), // line 1 second anchor
        (104.8, 108.0, 104.4, 107.6),
        (107.6, 108.5, 107.0, 108.0),
        (108.0, 108.2, 105.2, 106.0), // line 2 second anchor; line 1 crossed
        (106.0, 107.1, 105.6, 105.7), // line 1 break confirmed
        (105.7, 107.2, 105.4, 106.8),
        (106.8, 107.0, 106.0, 106.5), // line 3 second anchor; line 2 crossed
        (106.5, 106.9, 106.1, 106.7),
        (106.7, 107.0, 106.05, 106.6), // line 2 break confirmed
        (106.6, 106.8, 106.02, 106.1), // line 3 crossed
        (106.1, 106.3, 104.2, 104.5),  // line 3 break confirmed
        (104.5, 104.8, 103.6, 103.8),
    ]
}

/// The 20-pattern showcase: one mini-series per kind, each annotated with
/// the confirmation bar its target pattern fires at. Geometries were worked
/// out by hand from the detection rules; the annotations below are frozen
/// and the scan output is required to match them exactly.
pub fn showcase() -> Vec<Annotated> {
    use PatternKind::*;
    let entries: Vec<(PatternKind, usize, Vec<(f64, f64, f64, f64)>)> = vec![
        (UpTrendline, 10, up_trendline()),
        (BreakingDownTrendline, 10, breaking_down_trendline()),
        (BreakingUpTrendline, 11, breaking_up_trendline()),
        (DownTrendline, 10, down_trendline()),
        (BreakingHorizontalResistance, 9, breaking_horizontal_resistance()),
        (DoubleBottom, 9, double_bottom()),
        (BreakingHorizontalSupport, 9, breaking_horizontal_support()),
        (DoubleTop, 9, double_top()),
        (UpFlag, 16, up_flag()),
        (DownFanPrinciple, 15, down_fan_principle()),
        (Channel, 15, channel()),
        (DownHeadShoulders, 15, down_head_shoulders()),
        (HighFanPrinciple, 15, high_fan_principle()),
        (UpSymmetricalTriangle, 15, up_symmetrical_triangle()),
        (Rectangle, 11, rectangle()),
        (UpHeadShoulders, 15, up_head_shoulders()),
        (DownFlag, 16, down_flag()),
        (UpPennant, 15, up_pennant()),
        (DownPennant, 15, down_pennant()),
        (DownSymmetricalTriangle, 15, down_symmetrical_triangle()),
    ];
    entries
        .into_iter()
        .map(|(kind, confirm_index, rows)| Annotated {
            series: series_from_ohlc(&kind.ident().to_lowercase(), &rows),
            kind,
            confirm_index,
        })
        .collect()
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// One random-walk security with drifting regimes, seeded per id.
fn synthetic_series(id: &str, seed: u64, bars: usize) -> Series {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d0 = base_date();
    let mut close = 40.0 + rng.random_range(0.0..60.0);
    let mut drift = 0.0_f64;
    let mut out = Vec::with_capacity(bars);
    for i in 0..bars {
        if i % 60 == 0 {
            drift = rng.random_range(-0.004..0.004);
        }
        let open = round2(close * (1.0 + rng.random_range(-0.008..0.008)));
        let next = close * (1.0 + drift + rng.random_range(-0.02..0.02));
        let next = round2(next.max(1.0));
        let hi = open.max(next) * (1.0 + rng.random_range(0.0..0.01));
        let lo = open.min(next) * (1.0 - rng.random_range(0.0..0.01));
        out.push(Bar {
            date: d0 + chrono::Days::new(i as u64),
            open,
            high: round2(hi).max(open.max(next)),
            low: round2(lo).min(open.min(next)).max(0.01),
            close: next,
            volume: Some(rng.random_range(1_000..100_000)),
        });
        close = next;
    }
    Series::new(id, out)
}

/// A small multi-security corpus for deterministic end-to-end runs.
pub fn synthetic_corpus(seed: u64) -> Vec<Series> {
    let ids = ["alfa", "bravo", "carga", "delta", "extra"];
    ids.iter()
        .enumerate()
        .map(|(i, id)| synthetic_series(id, seed.wrapping_add(i as u64 * 7919), 420))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::validate;

    #[test]
    fn showcase_series_are_valid() {
        for a in showcase() {
            let errors: Vec<_> = validate(&a.series)
                .into_iter()
                .filter(|x| x.severity == crate::market::Severity::Error)
                .collect();
            assert!(errors.is_empty(), "{}: {errors:?}", a.series.security_id);
            assert!(a.confirm_index + 1 < a.series.len(), "{}", a.series.security_id);
        }
    }

    #[test]
    fn corpus_is_valid_and_deterministic() {
        let a = synthetic_corpus(42);
        let b = synthetic_corpus(42);
        assert_eq!(a, b);
        for s in &a {
            assert_eq!(s.len(), 420);
            assert!(validate(s).iter().all(|x| x.severity != crate::market::Severity::Error));
        }
        let c = synthetic_corpus(43);
        assert_ne!(a, c);
    }
}
