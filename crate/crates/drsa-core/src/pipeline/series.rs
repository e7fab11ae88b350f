//! Geo-keyed daily time series and the smoothing/differencing transforms.

use std::collections::BTreeMap;

use chrono::{Days, NaiveDate};

use super::{Diagnostics, PipelineDiagnostic, PipelineError};

/// One series value; `partial` marks a rolling mean computed over fewer
/// days than the full window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPoint {
    pub value: f64,
    pub partial: bool,
}

impl SeriesPoint {
    pub fn new(value: f64) -> Self {
        SeriesPoint {
            value,
            partial: false,
        }
    }
}

/// A real value per (geo, date), sorted on both keys.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DailySeries {
    points: BTreeMap<String, BTreeMap<NaiveDate, SeriesPoint>>,
}

impl DailySeries {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a value; a second value for the same (geo, date) is an error.
    pub fn insert(
        &mut self,
        geo: impl Into<String>,
        date: NaiveDate,
        value: f64,
    ) -> Result<(), PipelineError> {
        let geo = geo.into();
        let per_geo = self.points.entry(geo.clone()).or_default();
        if per_geo.insert(date, SeriesPoint::new(value)).is_some() {
            return Err(PipelineError::DuplicatePoint { geo, date });
        }
        Ok(())
    }

    pub(crate) fn insert_point(&mut self, geo: &str, date: NaiveDate, point: SeriesPoint) {
        self.points
            .entry(geo.to_string())
            .or_default()
            .insert(date, point);
    }

    /// Adds `value` to the existing point (used when summing age bands).
    pub(crate) fn accumulate(&mut self, geo: &str, date: NaiveDate, value: f64) {
        self.points
            .entry(geo.to_string())
            .or_default()
            .entry(date)
            .and_modify(|p| p.value += value)
            .or_insert_with(|| SeriesPoint::new(value));
    }

    pub fn geos(&self) -> impl Iterator<Item = &str> {
        self.points.keys().map(String::as_str)
    }

    pub fn of_geo(&self, geo: &str) -> Option<&BTreeMap<NaiveDate, SeriesPoint>> {
        self.points.get(geo)
    }

    pub fn get(&self, geo: &str, date: NaiveDate) -> Option<SeriesPoint> {
        self.points.get(geo).and_then(|m| m.get(&date)).copied()
    }

    pub fn len(&self) -> usize {
        self.points.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, NaiveDate, SeriesPoint)> + '_ {
        self.points.iter().flat_map(|(geo, per_geo)| {
            per_geo
                .iter()
                .map(move |(date, point)| (geo.as_str(), *date, *point))
        })
    }
}

/// Trailing mean over the calendar window ending at each date. Dates backed
/// by fewer than `window` values (series start or gaps) are emitted with the
/// partial-window mean and flagged.
pub fn rolling_average(series: &DailySeries, window: usize) -> Result<DailySeries, PipelineError> {
    if window == 0 {
        return Err(PipelineError::InvalidWindow);
    }
    if series.is_empty() {
        return Err(PipelineError::EmptySeries);
    }
    let mut out = DailySeries::new();
    for (geo, per_geo) in &series.points {
        for &date in per_geo.keys() {
            let from = date
                .checked_sub_days(Days::new(window as u64 - 1))
                .unwrap_or(NaiveDate::MIN);
            let in_window: Vec<f64> = per_geo
                .range(from..=date)
                .map(|(_, p)| p.value)
                .collect();
            let mean = in_window.iter().sum::<f64>() / in_window.len() as f64;
            out.insert_point(
                geo,
                date,
                SeriesPoint {
                    value: mean,
                    partial: in_window.len() < window,
                },
            );
        }
    }
    Ok(out)
}

/// Day-over-day arithmetic difference of the raw series, then a rolling
/// average with the same window. The first date per geo has no value;
/// single-date geos are excluded and flagged.
pub fn rate_of_change(
    series: &DailySeries,
    window: usize,
) -> Result<(DailySeries, Diagnostics), PipelineError> {
    if window == 0 {
        return Err(PipelineError::InvalidWindow);
    }
    if series.is_empty() {
        return Err(PipelineError::EmptySeries);
    }
    let mut diffs = DailySeries::new();
    let mut diagnostics = Vec::new();
    for (geo, per_geo) in &series.points {
        if per_geo.len() < 2 {
            diagnostics.push(PipelineDiagnostic::SingleDateGeo { geo: geo.clone() });
            continue;
        }
        let mut gaps = 0usize;
        let mut prev: Option<(NaiveDate, f64)> = None;
        for (&date, point) in per_geo {
            if let Some((prev_date, prev_value)) = prev {
                if prev_date.succ_opt() == Some(date) {
                    diffs.insert_point(geo, date, SeriesPoint::new(point.value - prev_value));
                } else {
                    gaps += 1;
                }
            }
            prev = Some((date, point.value));
        }
        if gaps > 0 {
            diagnostics.push(PipelineDiagnostic::SeriesGap {
                geo: geo.clone(),
                gaps,
            });
        }
    }
    if diffs.is_empty() {
        return Err(PipelineError::EmptySeries);
    }
    let smoothed = rolling_average(&diffs, window)?;
    Ok((smoothed, diagnostics))
}
