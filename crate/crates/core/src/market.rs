//! OHLC bar series: CSV ingestion, invariant validation and serialization.
//!
//! The CSV layout is fixed: a `date,open,high,low,close,volume` header, one
//! bar per line, dates formatted `YYYY-MM-DD`, decimal point `.`, and an
//! optionally empty volume field. One file holds one security; the security
//! id defaults to the file stem.

use chrono::NaiveDate;
use std::fmt;
use std::io::{BufRead, BufReader, Read};
use thiserror::Error;

/// One trading period. Dates are ordered labels only; nothing in the crate
/// does calendar arithmetic, a "day" is always one bar.
#[derive(Debug, Clone, PartialEq)]
pub struct Bar {
    pub date: NaiveDate,
    pub open: f64,
    pub high: f64,
    pub low: f64,
    pub close: f64,
    pub volume: Option<u64>,
}

impl Bar {
    /// High/low bracket open and close, and prices are strictly positive
    /// (the percentage rules downstream divide by price).
    pub fn is_coherent(&self) -> bool {
        self.low <= self.open.min(self.close)
            && self.high >= self.open.max(self.close)
            && self.low > 0.0
            && [self.open, self.high, self.low, self.close]
                .iter()
                .all(|p| p.is_finite())
    }
}

/// An ordered bar sequence for one security. All other modules address bars
/// by their 0-based position in `bars`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub security_id: String,
    pub bars: Vec<Bar>,
}

impl Series {
    pub fn new(security_id: impl Into<String>, bars: Vec<Bar>) -> Self {
        Series { security_id: security_id.into(), bars }
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn open(&self, i: usize) -> f64 {
        self.bars[i].open
    }

    pub fn high(&self, i: usize) -> f64 {
        self.bars[i].high
    }

    pub fn low(&self, i: usize) -> f64 {
        self.bars[i].low
    }

    pub fn close(&self, i: usize) -> f64 {
        self.bars[i].close
    }
}

#[derive(Debug, Error)]
pub enum DataError {
    #[error("row {row}: {reason}")]
    MalformedRow { row: usize, reason: String },
    #[error("row {row}: OHLC violation (high/low do not bracket open/close, or price not positive)")]
    OhlcViolation { row: usize },
    #[error("row {row}: non-monotonic dates ({prev} then {next})")]
    NonMonotonicDates { row: usize, prev: NaiveDate, next: NaiveDate },
    #[error("missing or malformed header, expected `{HEADER}`")]
    BadHeader,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Severity of a validation finding. Only `Error` entries mark invariant
/// violations; warnings are informational.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnomalyKind {
    Malformed,
    Ohlc,
    NonPositivePrice,
    NonMonotonicDate,
    ZeroVolume,
}

/// One validation finding, addressed by bar index (when a bar exists) and
/// CSV row number (when it came from a file).
#[derive(Debug, Clone)]
pub struct Anomaly {
    pub index: Option<usize>,
    pub row: Option<usize>,
    pub kind: AnomalyKind,
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for Anomaly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        match (self.row, self.index) {
            (Some(r), _) => write!(f, "{sev}: row {r}: {}", self.message),
            (None, Some(i)) => write!(f, "{sev}: bar {i}: {}", self.message),
            _ => write!(f, "{sev}: {}", self.message),
        }
    }
}

pub const HEADER: &str = "date,open,high,low,close,volume";

fn parse_price(field: &str, name: &str, row: usize) -> Result<f64, DataError> {
    let v: f64 = field.trim().parse().map_err(|_| DataError::MalformedRow {
        row,
        reason: format!("unparsable {name} `{field}`"),
    })?;
    if !v.is_finite() {
        return Err(DataError::MalformedRow { row, reason: format!("non-finite {name}") });
    }
    Ok(v)
}

fn parse_row(line: &str, row: usize) -> Result<Bar, DataError> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 6 {
        return Err(DataError::MalformedRow {
            row,
            reason: format!("expected 6 fields, found {}", fields.len()),
        });
    }
    let date = NaiveDate::parse_from_str(fields[0].trim(), "%Y-%m-%d").map_err(|_| {
        DataError::MalformedRow { row, reason: format!("unparsable date `{}`", fields[0]) }
    })?;
    let open = parse_price(fields[1], "open", row)?;
    let high = parse_price(fields[2], "high", row)?;
    let low = parse_price(fields[3], "low", row)?;
    let close = parse_price(fields[4], "close", row)?;
    let vol = fields[5].trim();
    let volume = if vol.is_empty() {
        None
    } else {
        Some(vol.parse::<u64>().map_err(|_| DataError::MalformedRow {
            row,
            reason: format!("unparsable volume `{vol}`"),
        })?)
    };
    Ok(Bar { date, open, high, low, close, volume })
}

/// Strict CSV parse: the first structural problem, OHLC violation or date
/// ordering breach aborts with a row-numbered error.
pub fn parse_csv<R: Read>(reader: R, security_id: &str) -> Result<Series, DataError> {
    let (series, anomalies) = parse_csv_lossy(reader, security_id)?;
    if let Some(a) = anomalies.iter().find(|a| a.severity == Severity::Error) {
        let row = a.row.unwrap_or(0);
        return Err(match a.kind {
            AnomalyKind::Ohlc | AnomalyKind::NonPositivePrice => DataError::OhlcViolation { row },
            AnomalyKind::NonMonotonicDate => {
                // the message already names the offending pair; reconstruct the dates
                let i = a.index.unwrap_or(0);
                DataError::NonMonotonicDates {
                    row,
                    prev: series.bars[i.saturating_sub(1)].date,
                    next: series.bars[i].date,
                }
            }
            AnomalyKind::Malformed => {
                DataError::MalformedRow { row, reason: a.message.clone() }
            }
            AnomalyKind::ZeroVolume => unreachable!("zero volume is a warning"),
        });
    }
    Ok(series)
}

/// Lenient CSV parse for diagnostics: structurally unreadable rows are
/// skipped and reported, invariant-violating bars are kept so that
/// [`validate`]-style findings can address them by index. I/O failures and a
/// bad header still fail hard.
pub fn parse_csv_lossy<R: Read>(
    reader: R,
    security_id: &str,
) -> Result<(Series, Vec<Anomaly>), DataError> {
    let mut lines = BufReader::new(reader).lines();
    let header = match lines.next() {
        Some(h) => h?,
        None => return Err(DataError::BadHeader),
    };
    if header.trim_end_matches('\r').trim() != HEADER {
        return Err(DataError::BadHeader);
    }

    let mut bars = Vec::new();
    let mut anomalies = Vec::new();
    let mut rows = Vec::new(); // csv row number per kept bar
    for (n, line) in lines.enumerate() {
        let row = n + 2; // header is row 1
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        match parse_row(line, row) {
            Ok(bar) => {
                bars.push(bar);
                rows.push(row);
            }
            Err(e) => anomalies.push(Anomaly {
                index: None,
                row: Some(row),
                kind: AnomalyKind::Malformed,
                severity: Severity::Error,
                message: e.to_string(),
            }),
        }
    }

    let series = Series::new(security_id, bars);
    let mut found = validate(&series);
    for a in &mut found {
        a.row = a.index.map(|i| rows[i]);
    }
    anomalies.extend(found);
    Ok((series, anomalies))
}

/// Check every Bar/Series invariant and report findings without mutating the
/// input. An empty error set means the series is sound; zero-volume bars are
/// reported as warnings only.
pub fn validate(series: &Series) -> Vec<Anomaly> {
    let mut out = Vec::new();
    for (i, bar) in series.bars.iter().enumerate() {
        let prices = [bar.open, bar.high, bar.low, bar.close];
        if prices.iter().any(|p| !p.is_finite() || *p <= 0.0) {
            out.push(Anomaly {
                index: Some(i),
                row: None,
                kind: AnomalyKind::NonPositivePrice,
                severity: Severity::Error,
                message: "price not strictly positive".into(),
            });
        } else if bar.low > bar.open.min(bar.close) || bar.high < bar.open.max(bar.close) {
            out.push(Anomaly {
                index: Some(i),
                row: None,
                kind: AnomalyKind::Ohlc,
                severity: Severity::Error,
                message: format!(
                    "high/low do not bracket open/close (o={} h={} l={} c={})",
                    bar.open, bar.high, bar.low, bar.close
                ),
            });
        }
        if bar.volume == Some(0) {
            out.push(Anomaly {
                index: Some(i),
                row: None,
                kind: AnomalyKind::ZeroVolume,
                severity: Severity::Warning,
                message: "zero volume".into(),
            });
        }
        if i > 0 {
            let prev = series.bars[i - 1].date;
            if bar.date <= prev {
                out.push(Anomaly {
                    index: Some(i),
                    row: None,
                    kind: AnomalyKind::NonMonotonicDate,
                    severity: Severity::Error,
                    message: format!("date {} not after {}", bar.date, prev),
                });
            }
        }
    }
    out
}

/// Inverse of [`parse_csv`] for valid series: `parse_csv(write_csv(s)) == s`.
pub fn write_csv(series: &Series) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for bar in &series.bars {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            bar.date.format("%Y-%m-%d"),
            bar.open,
            bar.high,
            bar.low,
            bar.close,
            bar.volume.map(|v| v.to_string()).unwrap_or_default()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn date(s: &str) -> NaiveDate {
        NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap()
    }

    #[test]
    fn parses_plain_row() {
        let csv = format!("{HEADER}\n1995-01-02,43.0,45.0,42.5,44.1,1000\n");
        let s = parse_csv(csv.as_bytes(), "petr4").unwrap();
        assert_eq!(s.security_id, "petr4");
        assert_eq!(
            s.bars,
            vec![Bar {
                date: date("1995-01-02"),
                open: 43.0,
                high: 45.0,
                low: 42.5,
                close: 44.1,
                volume: Some(1000),
            }]
        );
    }

    #[test]
    fn rejects_ohlc_violation_with_row_number() {
        let csv = format!("{HEADER}\n1995-01-02,48.0,45.0,50.0,47.0,\n");
        match parse_csv(csv.as_bytes(), "x") {
            Err(DataError::OhlcViolation { row }) => assert_eq!(row, 2),
            other => panic!("expected OHLC violation, got {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicate_dates() {
        let csv = format!(
            "{HEADER}\n1995-01-02,43.0,45.0,42.5,44.1,\n1995-01-02,44.0,46.0,43.5,45.1,\n"
        );
        match parse_csv(csv.as_bytes(), "x") {
            Err(DataError::NonMonotonicDates { row, prev, next }) => {
                assert_eq!(row, 3);
                assert_eq!(prev, date("1995-01-02"));
                assert_eq!(next, date("1995-01-02"));
            }
            other => panic!("expected date error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_wrong_field_count() {
        let csv = format!("{HEADER}\n1995-01-02,43.0,45.0,42.5\n");
        assert!(matches!(
            parse_csv(csv.as_bytes(), "x"),
            Err(DataError::MalformedRow { row: 2, .. })
        ));
    }

    #[test]
    fn empty_volume_is_none() {
        let csv = format!("{HEADER}\n1995-01-02,43.0,45.0,42.5,44.1,\n");
        let s = parse_csv(csv.as_bytes(), "x").unwrap();
        assert_eq!(s.bars[0].volume, None);
    }

    #[test]
    fn validate_clean_series_is_empty() {
        let csv = format!(
            "{HEADER}\n1995-01-02,10,11,9,10.5,5\n1995-01-03,10.5,12,10,11,6\n1995-01-04,11,11.5,10.2,10.4,7\n"
        );
        let s = parse_csv(csv.as_bytes(), "x").unwrap();
        assert!(validate(&s).is_empty());
    }

    #[test]
    fn validate_flags_zero_volume_as_warning() {
        let mut bars = vec![Bar {
            date: date("1995-01-02"),
            open: 10.0,
            high: 11.0,
            low: 9.0,
            close: 10.0,
            volume: Some(0),
        }];
        bars.push(Bar { date: date("1995-01-03"), volume: Some(3), ..bars[0].clone() });
        let report = validate(&Series::new("x", bars));
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].kind, AnomalyKind::ZeroVolume);
        assert_eq!(report[0].severity, Severity::Warning);
    }

    #[test]
    fn validate_reports_ohlc_breach_by_index() {
        let mut bars: Vec<Bar> = (0..10)
            .map(|i| Bar {
                date: date("1995-01-02") + chrono::Days::new(i),
                open: 10.0,
                high: 11.0,
                low: 9.0,
                close: 10.0,
                volume: None,
            })
            .collect();
        bars[7].close = 12.0; // above high
        let report = validate(&Series::new("x", bars));
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].index, Some(7));
        assert_eq!(report[0].kind, AnomalyKind::Ohlc);
    }

    #[test]
    fn lossy_parse_keeps_invalid_bars_and_skips_unreadable_rows() {
        let csv = format!(
            "{HEADER}\n1995-01-02,10,11,9,10,\nnot,a,row\n1995-01-03,10,9,11,10,\n"
        );
        let (s, anomalies) = parse_csv_lossy(csv.as_bytes(), "x").unwrap();
        assert_eq!(s.len(), 2);
        assert!(anomalies.iter().any(|a| a.kind == AnomalyKind::Malformed && a.row == Some(3)));
        assert!(anomalies.iter().any(|a| a.kind == AnomalyKind::Ohlc && a.index == Some(1)));
    }

    #[test]
    fn csv_round_trip() {
        let csv = format!(
            "{HEADER}\n1995-01-02,43.123456,45.0,42.5,44.1,1000\n1995-01-03,44.1,46.25,43.0,45.9,\n"
        );
        let s = parse_csv(csv.as_bytes(), "abc").unwrap();
        let back = parse_csv(write_csv(&s).as_bytes(), "abc").unwrap();
        assert_eq!(s, back);
    }
}
