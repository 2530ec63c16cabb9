//! Bar-chart technical analysis: swing detection, trendlines and levels,
//! breakout-confirmed pattern recognition, trade simulation with true/false
//! classification, and chi-square validation of the aggregate counts.

pub mod backtest;
pub mod config;
pub mod fixtures;
mod formations;
pub mod lines;
pub mod market;
pub mod patterns;
pub mod pipeline;
pub mod report;
pub mod stats;
pub mod swings;

pub use config::RunConfig;
pub use market::{Bar, Series};
pub use patterns::{scan, PatternInstance, PatternKind};
