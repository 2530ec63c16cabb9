//! Run configuration: every tolerance and switch in one record, serialized
//! as `key = value` lines. The full effective configuration is echoed into
//! every report header so a run can be reproduced from its own output.

use chrono::NaiveDate;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryMode {
    /// Enter and exit at next-bar open (first price available the next day).
    Open,
    /// Sensitivity alternative: next-bar close.
    Close,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TradeMode {
    /// Every instance becomes an independent hypothetical trade.
    Independent,
    /// One open position at a time per security; instances confirming while
    /// a position is open are dropped with a diagnostic.
    Sequential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Structured,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub inputs: Vec<String>,
    /// Overrides for the file-stem security ids, applied positionally.
    pub security_ids: Vec<String>,
    pub swing_k: usize,
    pub breakout_pct: f64,
    /// Strict bar-count rule: the three closes must recede from the
    /// boundary, not merely stay beyond it.
    pub three_bar_strict: bool,
    /// Relative flatness tolerance for horizontal levels.
    pub flatness_tol: f64,
    /// Relative tolerance for double-top/bottom price matching.
    pub double_tol: f64,
    /// Relative slope tolerance for channel/flag parallelism.
    pub channel_parallel_tol: f64,
    /// Relative tolerance for price containment between formation lines.
    pub containment_tol: f64,
    /// Head must exceed both shoulders by this fraction.
    pub hs_head_min: f64,
    /// Shoulders must match within this fraction.
    pub hs_shoulder_tol: f64,
    /// Maximum flag/pennant formation length, in bars.
    pub max_flag_bars: usize,
    /// A qualifying prior move gains/loses at least this fraction...
    pub flag_move_pct: f64,
    /// ...within at most this many bars before the formation.
    pub flag_move_bars: usize,
    /// Minimum anchor separation for self-built formation lines (fans,
    /// channels, flags, pennants, compressed triangles).
    pub formation_min_sep: usize,
    /// Fan lines may originate from tops/bottoms within this many bars of
    /// the pivot.
    pub fan_anchor_tol: usize,
    /// Same-kind instances whose spans overlap (intersection over union)
    /// beyond this fraction keep only the earlier-confirmed one.
    pub overlap_suppression: f64,
    pub entry_mode: EntryMode,
    /// Count trades still open at the end of the data (they are always
    /// flagged; this switch removes them from the tables).
    pub include_end_of_data: bool,
    pub trade_mode: TradeMode,
    pub alpha: f64,
    pub format: OutputFormat,
    pub from: Option<NaiveDate>,
    pub to: Option<NaiveDate>,
    /// Seed for the fixture generation subcommand.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: Vec::new(),
            security_ids: Vec::new(),
            swing_k: 3,
            breakout_pct: 0.03,
            three_bar_strict: true,
            flatness_tol: 0.01,
            double_tol: 0.02,
            channel_parallel_tol: 0.10,
            containment_tol: 0.01,
            hs_head_min: 0.03,
            hs_shoulder_tol: 0.05,
            max_flag_bars: 15,
            flag_move_pct: 0.10,
            flag_move_bars: 15,
            formation_min_sep: 2,
            fan_anchor_tol: 3,
            overlap_suppression: 0.80,
            entry_mode: EntryMode::Open,
            include_end_of_data: true,
            trade_mode: TradeMode::Independent,
            alpha: 0.005,
            format: OutputFormat::Text,
            from: None,
            to: None,
            seed: 42,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for `{key}`: {reason}")]
    BadValue { line: usize, key: String, reason: String },
}

fn fmt_list(items: &[String]) -> String {
    items.join(",")
}

fn fmt_date(d: Option<NaiveDate>) -> String {
    d.map(|d| d.format("%Y-%m-%d").to_string()).unwrap_or_default()
}

impl RunConfig {
    /// Fixed-order `key = value` rendering; parsing it back reproduces the
    /// config exactly.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(&v);
            s.push('\n');
        };
        kv("inputs", fmt_list(&self.inputs));
        kv("security_ids", fmt_list(&self.security_ids));
        kv("swing_k", self.swing_k.to_string());
        kv("breakout_pct", self.breakout_pct.to_string());
        kv("three_bar_strict", self.three_bar_strict.to_string());
        kv("flatness_tol", self.flatness_tol.to_string());
        kv("double_tol", self.double_tol.to_string());
        kv("channel_parallel_tol", self.channel_parallel_tol.to_string());
        kv("containment_tol", self.containment_tol.to_string());
        kv("hs_head_min", self.hs_head_min.to_string());
        kv("hs_shoulder_tol", self.hs_shoulder_tol.to_string());
        kv("max_flag_bars", self.max_flag_bars.to_string());
        kv("flag_move_pct", self.flag_move_pct.to_string());
        kv("flag_move_bars", self.flag_move_bars.to_string());
        kv("formation_min_sep", self.formation_min_sep.to_string());
        kv("fan_anchor_tol", self.fan_anchor_tol.to_string());
        kv("overlap_suppression", self.overlap_suppression.to_string());
        kv(
            "entry_mode",
            match self.entry_mode {
                EntryMode::Open => "open".into(),
                EntryMode::Close => "close".into(),
            },
        );
        kv("include_end_of_data", self.include_end_of_data.to_string());
        kv(
            "trade_mode",
            match self.trade_mode {
                TradeMode::Independent => "independent".into(),
                TradeMode::Sequential => "sequential".into(),
            },
        );
        kv("alpha", self.alpha.to_string());
        kv(
            "format",
            match self.format {
                OutputFormat::Text => "text".into(),
                OutputFormat::Csv => "csv".into(),
                OutputFormat::Structured => "structured".into(),
            },
        );
        kv("from", fmt_date(self.from));
        kv("to", fmt_date(self.to));
        kv("seed", self.seed.to_string());
        s
    }

    /// Parse `key = value` lines over the defaults. Blank lines and `#`
    /// comments are ignored; unknown keys are errors.
    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        cfg.apply(text)?;
        Ok(cfg)
    }

    pub fn apply(&mut self, text: &str) -> Result<(), ConfigError> {
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let (key, value) = t.split_once('=').ok_or(ConfigError::Syntax { line })?;
            let key = key.trim();
            let value = value.trim();
            self.set(key, value)
                .map_err(|reason| match reason {
                    SetError::Unknown => ConfigError::UnknownKey { line, key: key.into() },
                    SetError::Bad(reason) => {
                        ConfigError::BadValue { line, key: key.into(), reason }
                    }
                })?;
        }
        Ok(())
    }

    /// Set one field from its textual form (shared by config files and CLI
    /// flag overrides).
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), SetError> {
        fn num<T: std::str::FromStr>(v: &str) -> Result<T, SetError> {
            v.parse().map_err(|_| SetError::Bad(format!("unparsable `{v}`")))
        }
        fn list(v: &str) -> Vec<String> {
            if v.is_empty() {
                Vec::new()
            } else {
                v.split(',').map(|s| s.trim().to_string()).collect()
            }
        }
        fn date(v: &str) -> Result<Option<NaiveDate>, SetError> {
            if v.is_empty() {
                return Ok(None);
            }
            NaiveDate::parse_from_str(v, "%Y-%m-%d")
                .map(Some)
                .map_err(|_| SetError::Bad(format!("unparsable date `{v}`")))
        }
        match key {
            "inputs" => self.inputs = list(value),
            "security_ids" => self.security_ids = list(value),
            "swing_k" => self.swing_k = num(value)?,
            "breakout_pct" => self.breakout_pct = num(value)?,
            "three_bar_strict" => self.three_bar_strict = num(value)?,
            "flatness_tol" => self.flatness_tol = num(value)?,
            "double_tol" => self.double_tol = num(value)?,
            "channel_parallel_tol" => self.channel_parallel_tol = num(value)?,
            "containment_tol" => self.containment_tol = num(value)?,
            "hs_head_min" => self.hs_head_min = num(value)?,
            "hs_shoulder_tol" => self.hs_shoulder_tol = num(value)?,
            "max_flag_bars" => self.max_flag_bars = num(value)?,
            "flag_move_pct" => self.flag_move_pct = num(value)?,
            "flag_move_bars" => self.flag_move_bars = num(value)?,
            "formation_min_sep" => self.formation_min_sep = num(value)?,
            "fan_anchor_tol" => self.fan_anchor_tol = num(value)?,
            "overlap_suppression" => self.overlap_suppression = num(value)?,
            "entry_mode" => {
                self.entry_mode = match value {
                    "open" => EntryMode::Open,
                    "close" => EntryMode::Close,
                    _ => return Err(SetError::Bad("expected open|close".into())),
                }
            }
            "include_end_of_data" => self.include_end_of_data = num(value)?,
            "trade_mode" => {
                self.trade_mode = match value {
                    "independent" => TradeMode::Independent,
                    "sequential" => TradeMode::Sequential,
                    _ => return Err(SetError::Bad("expected independent|sequential".into())),
                }
            }
            "alpha" => self.alpha = num(value)?,
            "format" => {
                self.format = match value {
                    "text" => OutputFormat::Text,
                    "csv" => OutputFormat::Csv,
                    "structured" => OutputFormat::Structured,
                    _ => return Err(SetError::Bad("expected text|csv|structured".into())),
                }
            }
            "from" => self.from = date(value)?,
            "to" => self.to = date(value)?,
            "seed" => self.seed = num(value)?,
            _ => return Err(SetError::Unknown),
        }
        Ok(())
    }

    pub fn breakout_params(&self) -> crate::lines::BreakoutParams {
        crate::lines::BreakoutParams {
            pct: self.breakout_pct,
            window: 3,
            strict_bars: self.three_bar_strict,
        }
    }
}

#[derive(Debug)]
pub enum SetError {
    Unknown,
    Bad(String),
}
