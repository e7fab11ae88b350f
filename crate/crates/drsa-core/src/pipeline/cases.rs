//! Age-banded case counts and their aggregation into the C1/C2 series.

use chrono::NaiveDate;

use super::series::{rolling_average, DailySeries};
use super::PipelineError;

/// One row of the age-banded cases snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct AgeBandedRow {
    pub geo_id: String,
    pub date: NaiveDate,
    pub age_band: String,
    pub count: f64,
}

/// Age-banded daily case counts for a set of geos.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AgeBandedCases {
    pub rows: Vec<AgeBandedRow>,
}

impl AgeBandedCases {
    pub fn push(
        &mut self,
        geo_id: impl Into<String>,
        date: NaiveDate,
        age_band: impl Into<String>,
        count: f64,
    ) {
        self.rows.push(AgeBandedRow {
            geo_id: geo_id.into(),
            date,
            age_band: age_band.into(),
            count,
        });
    }
}

/// Numeric lower bound of an age band label such as `60-64`, `80+` or `0_59`.
fn band_lower_bound(label: &str) -> Result<u32, PipelineError> {
    let digits: String = label
        .trim()
        .chars()
        .take_while(|c| c.is_ascii_digit())
        .collect();
    digits
        .parse()
        .map_err(|_| PipelineError::BadBandLabel(label.to_string()))
}

/// The case criteria, raw and smoothed.
#[derive(Debug, Clone)]
pub struct CasesAggregate {
    /// All-ages daily cases, smoothed.
    pub c1: DailySeries,
    /// Ages-60-plus daily cases, smoothed.
    pub c2: DailySeries,
    /// All-ages daily cases before smoothing (input to the rate of change).
    pub c1_raw: DailySeries,
    /// Ages-60-plus daily cases before smoothing.
    pub c2_raw: DailySeries,
}

/// Sums bands into the all-ages (C1) and 60-plus (C2) series, then smooths
/// both with the given rolling window.
pub fn aggregate_cases(
    cases: &AgeBandedCases,
    window: usize,
) -> Result<CasesAggregate, PipelineError> {
    if cases.rows.is_empty() {
        return Err(PipelineError::EmptySeries);
    }
    let mut c1_raw = DailySeries::new();
    let mut c2_raw = DailySeries::new();
    for row in &cases.rows {
        let lower = band_lower_bound(&row.age_band)?;
        c1_raw.accumulate(&row.geo_id, row.date, row.count);
        // make sure C2 has a (possibly zero) value wherever C1 does
        c2_raw.accumulate(
            &row.geo_id,
            row.date,
            if lower >= 60 { row.count } else { 0.0 },
        );
    }
    let c1 = rolling_average(&c1_raw, window)?;
    let c2 = rolling_average(&c2_raw, window)?;
    Ok(CasesAggregate {
        c1,
        c2,
        c1_raw,
        c2_raw,
    })
}
