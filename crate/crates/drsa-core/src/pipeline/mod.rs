//! Builds the observation table from raw snapshot files: smooths case
//! series, derives the five criteria, joins legislated tiers and tags
//! geographic segments.
//!
//! Criteria produced by [`build_dataset`]:
//! - `C1` daily cases, all ages, 7-day rolling average
//! - `C2` daily cases in ages 60+, 7-day rolling average
//! - `C3` day-over-day change of raw daily cases, 7-day rolling average
//! - `C4` test positivity rate, 7-day rolling average
//! - `C5` NHS pressure: occupied-bed ratio mapped from trusts to areas

use std::fmt;
use std::path::PathBuf;

use chrono::NaiveDate;
use thiserror::Error;

use crate::table::TableError;

mod build;
mod cases;
mod io;
mod pressure;
mod series;
mod tiers;

pub use build::{build_dataset, BuildOutput, PipelineConfig, SnapshotData};
pub use cases::{aggregate_cases, AgeBandedCases, AgeBandedRow, CasesAggregate};
pub use io::{
    load_age_banded_cases, load_capacity, load_daily_series, load_regions, load_snapshot_dir,
    load_tier_intervals, load_weights,
};
pub use pressure::{nhs_pressure, TrustMappingWeight};
pub use series::{rate_of_change, rolling_average, DailySeries, SeriesPoint};
pub use tiers::{join_tiers, segment_of_region, Segment, TierInterval};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Snapshot { path: String, message: String },
    #[error("series is empty")]
    EmptySeries,
    #[error("rolling window must be at least 1")]
    InvalidWindow,
    #[error("age band label '{0}' has no numeric lower bound")]
    BadBandLabel(String),
    #[error("duplicate value for {geo} on {date}")]
    DuplicatePoint { geo: String, date: NaiveDate },
    #[error("tier interval for {ltla} starting {start} ends before it starts")]
    InvalidInterval { ltla: String, start: NaiveDate },
    #[error("tier intervals overlap for {ltla} around {date}")]
    OverlappingIntervals { ltla: String, date: NaiveDate },
    #[error("the criterion join produced no rows")]
    EmptyJoin,
    #[error(transparent)]
    Table(#[from] TableError),
}

impl PipelineError {
    pub fn is_io(&self) -> bool {
        matches!(self, PipelineError::Io { .. })
    }
}

/// Non-fatal events recorded while building the dataset.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum PipelineDiagnostic {
    /// Trust dropped from the pressure computation.
    TrustExcluded { trust: String, reason: String },
    /// Days on which none of the area's mapped trusts reported.
    NoReportingTrust { ltla: String, days: usize },
    /// Grid days not covered by any tier interval.
    UncoveredTierDays { ltla: String, days: usize },
    /// Geo excluded from the rate-of-change series.
    SingleDateGeo { geo: String },
    /// Calendar gaps encountered while differencing.
    SeriesGap { geo: String, gaps: usize },
    /// Join rows dropped because one criterion had no value.
    MissingCriterion { criterion: String, dropped: usize },
    /// Area without a region entry, dropped from the dataset.
    UnmappedRegion { ltla: String },
}

impl fmt::Display for PipelineDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineDiagnostic::TrustExcluded { trust, reason } => {
                write!(f, "trust '{trust}' excluded: {reason}")
            }
            PipelineDiagnostic::NoReportingTrust { ltla, days } => {
                write!(f, "'{ltla}': no mapped trust reporting on {days} day(s)")
            }
            PipelineDiagnostic::UncoveredTierDays { ltla, days } => {
                write!(f, "'{ltla}': {days} day(s) not covered by any tier interval")
            }
            PipelineDiagnostic::SingleDateGeo { geo } => {
                write!(f, "'{geo}' has a single date, excluded from rate of change")
            }
            PipelineDiagnostic::SeriesGap { geo, gaps } => {
                write!(f, "'{geo}': {gaps} calendar gap(s) while differencing")
            }
            PipelineDiagnostic::MissingCriterion { criterion, dropped } => {
                write!(f, "{dropped} row(s) dropped for missing {criterion}")
            }
            PipelineDiagnostic::UnmappedRegion { ltla } => {
                write!(f, "'{ltla}' has no region entry, dropped")
            }
        }
    }
}

pub(crate) type Diagnostics = Vec<PipelineDiagnostic>;
